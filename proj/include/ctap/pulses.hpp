#pragma once

#include <string>
#include <vector>

#include "ctap/errors.hpp"

namespace ctap {

/// Control amplitude on one link as a function of time. Evaluation is pure
/// and defined for any t; schedules restrict use to [0, t_max].
struct Waveform {
  enum class Kind { zero, constant, gaussian };
  Kind kind = Kind::zero;
  double amplitude = 0.0;  // rad/ns; peak value for gaussian
  double center = 0.0;     // ns
  double width = 0.0;      // ns, gaussian standard deviation

  double operator()(double t) const;
};

Waveform zero_waveform();
Waveform constant_waveform(double amplitude);
Waveform gaussian_waveform(double amplitude, double center, double width);

enum class StraddleEnvelope { gaussian, constant };

/// One waveform per link of a chain, all defined on [0, t_max].
struct PulseSchedule {
  double t_max = 0.0;  // ns
  std::vector<Waveform> link_waveforms;
  std::string label;

  /// Largest peak amplitude over all links (sets the integrator step bound).
  double peak_amplitude() const;
};

/// Counter-intuitive three-donor sequence: width w = t_max/8, the (2,3)
/// pulse centered at (t_max - w)/2 ahead of the (1,2) pulse at
/// (t_max + w)/2, equal peaks.
PulseSchedule ctap3_schedule(double omega_max, double t_max);

/// Reference baseline with the two pulse centers swapped ((1,2) first).
PulseSchedule intuitive3_schedule(double omega_max, double t_max);

/// Straddling scheme for odd chains of 5 or more donors: the end links carry
/// the counter-intuitive pair, every interior link an identical waveform of
/// peak straddle_ratio*omega_max, either constant over [0, t_max] or a
/// gaussian centered at t_max/2 with width 2w.
PulseSchedule ctapn_schedule(int n_sites, double omega_max, double t_max,
                             double straddle_ratio = 3.0,
                             StraddleEnvelope envelope = StraddleEnvelope::gaussian);

/// Per-link amplitudes at time t, 0 <= t <= t_max.
std::vector<double> sample_schedule(const PulseSchedule& schedule, double t);

/// Pointwise multiplicative per-link scaling (tunnelling-rate disorder);
/// pulse shapes are never perturbed.
PulseSchedule with_link_scales(const PulseSchedule& schedule,
                               const std::vector<double>& factors);

}  // namespace ctap
