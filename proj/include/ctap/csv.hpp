#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctap/experiments.hpp"
#include "ctap/spectra.hpp"

namespace ctap {

/// Shortest-faithful float formatting used in every CSV (17 significant
/// digits round-trips a double exactly).
std::string format_g17(double value);

/// Columns: t, per-site populations, purity, and optionally the
/// adiabaticity metric sampled on the same time grid.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory,
                          const std::optional<std::vector<double>>& adiab_metric,
                          const std::string& config_echo);

/// Columns: gamma,t_max,error,max_mid_pop,max_adiab,adiabatic_flag. Failed
/// points carry NaN in the value columns.
void write_sweep_csv(const std::string& path, const SweepResult& result,
                     const std::string& config_echo);

void write_disorder_csv(const std::string& path, const DisorderResult& result,
                        const std::string& config_echo);

void write_profile_csv(const std::string& path, const AdiabaticityProfile& profile,
                       const std::string& config_echo);

}  // namespace ctap
