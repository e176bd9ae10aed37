#pragma once

#include <string>

#include "ctap/experiments.hpp"

namespace ctap {

/// Static SVG: one error-vs-t_max curve per gamma value, log error axis.
void write_sweep_svg(const std::string& path, const SweepResult& result);

/// Static SVG: site populations and purity against time.
void write_trajectory_svg(const std::string& path, const Trajectory& trajectory);

}  // namespace ctap
