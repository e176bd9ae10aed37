#pragma once

#include <string>
#include <variant>

#include "ctap/experiments.hpp"

namespace ctap {

/// Single-transport job plus its output options.
struct RunJob {
  RunConfig run;
  bool record_adiabaticity = false;  // adds a metric column to the CSV
};

/// Spectral analysis without any density-matrix propagation: adiabaticity
/// profile and dark-state composition along a schedule.
struct SpectraJob {
  Scheme scheme = Scheme::ctap3;
  int n_sites = 3;
  double omega_max = 62.83185307179586;
  double t_max = 0.0;
  double straddle_ratio = 3.0;
  StraddleEnvelope straddle_envelope = StraddleEnvelope::gaussian;
  int adiab_samples = 1001;
};

struct OutputOptions {
  std::string out_dir = ".";
  bool plot = false;
};

struct ExperimentConfig {
  std::variant<RunJob, SweepConfig, DisorderConfig, SpectraJob> job;
  OutputOptions output;
};

/// "run", "sweep", "disorder" or "spectra".
std::string config_kind(const ExperimentConfig& config);

/// Reads and validates a JSON experiment config. Unknown keys, missing
/// required fields and type mismatches raise ValidationError with the
/// offending field path in the message; defaults are applied for the rest.
ExperimentConfig parse_config(const std::string& path);

/// As parse_config, from in-memory JSON text.
ExperimentConfig parse_config_text(const std::string& text);

/// Canonical JSON echo of a config, parseable by parse_config_text.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace ctap
