#include "ctap/pulses.hpp"

#include <algorithm>
#include <cmath>

namespace ctap {

double Waveform::operator()(double t) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return amplitude;
    case Kind::gaussian: {
      const double u = (t - center) / width;
      return amplitude * std::exp(-0.5 * u * u);
    }
  }
  return 0.0;
}

Waveform zero_waveform() { return Waveform{}; }

Waveform constant_waveform(double amplitude) {
  if (!(amplitude >= 0.0)) {
    throw ValidationError("constant_waveform: amplitude must be non-negative");
  }
  Waveform w;
  w.kind = Waveform::Kind::constant;
  w.amplitude = amplitude;
  return w;
}

Waveform gaussian_waveform(double amplitude, double center, double width) {
  if (!(amplitude >= 0.0)) {
    throw ValidationError("gaussian_waveform: amplitude must be non-negative");
  }
  if (!(width > 0.0)) {
    throw ValidationError("gaussian_waveform: width must be positive");
  }
  Waveform w;
  w.kind = Waveform::Kind::gaussian;
  w.amplitude = amplitude;
  w.center = center;
  w.width = width;
  return w;
}

double PulseSchedule::peak_amplitude() const {
  double peak = 0.0;
  for (const Waveform& w : link_waveforms) {
    peak = std::max(peak, w.amplitude);
  }
  return peak;
}

namespace {

void require_positive(double omega_max, double t_max, const char* who) {
  if (!(omega_max > 0.0)) {
    throw ValidationError(std::string(who) + ": omega_max must be positive");
  }
  if (!(t_max > 0.0)) {
    throw ValidationError(std::string(who) + ": t_max must be positive");
  }
}

}  // namespace

PulseSchedule ctap3_schedule(double omega_max, double t_max) {
  require_positive(omega_max, t_max, "ctap3_schedule");
  const double w = t_max / 8.0;
  const double t12 = (t_max + w) / 2.0;
  const double t23 = (t_max - w) / 2.0;
  PulseSchedule s;
  s.t_max = t_max;
  s.label = "ctap3";
  s.link_waveforms = {gaussian_waveform(omega_max, t12, w),
                      gaussian_waveform(omega_max, t23, w)};
  return s;
}

PulseSchedule intuitive3_schedule(double omega_max, double t_max) {
  require_positive(omega_max, t_max, "intuitive3_schedule");
  const double w = t_max / 8.0;
  const double t12 = (t_max - w) / 2.0;
  const double t23 = (t_max + w) / 2.0;
  PulseSchedule s;
  s.t_max = t_max;
  s.label = "intuitive3";
  s.link_waveforms = {gaussian_waveform(omega_max, t12, w),
                      gaussian_waveform(omega_max, t23, w)};
  return s;
}

PulseSchedule ctapn_schedule(int n_sites, double omega_max, double t_max,
                             double straddle_ratio, StraddleEnvelope envelope) {
  require_positive(omega_max, t_max, "ctapn_schedule");
  if (n_sites < 5 || n_sites % 2 == 0) {
    throw ValidationError("ctapn_schedule: n_sites must be odd and >= 5, got " +
                          std::to_string(n_sites));
  }
  if (!(straddle_ratio >= 1.0)) {
    throw ValidationError("ctapn_schedule: straddle_ratio must be >= 1");
  }
  const double w = t_max / 8.0;
  const double straddle_peak = straddle_ratio * omega_max;
  const Waveform straddle =
      envelope == StraddleEnvelope::constant
          ? constant_waveform(straddle_peak)
          : gaussian_waveform(straddle_peak, t_max / 2.0, 2.0 * w);

  PulseSchedule s;
  s.t_max = t_max;
  s.label = "ctapn_straddle";
  s.link_waveforms.assign(static_cast<std::size_t>(n_sites - 1), straddle);
  // End links carry the counter-intuitive pair: (n-1,n) early, (1,2) late.
  s.link_waveforms.front() = gaussian_waveform(omega_max, (t_max + w) / 2.0, w);
  s.link_waveforms.back() = gaussian_waveform(omega_max, (t_max - w) / 2.0, w);
  return s;
}

std::vector<double> sample_schedule(const PulseSchedule& schedule, double t) {
  if (!(t >= 0.0 && t <= schedule.t_max)) {
    throw ValidationError("sample_schedule: t = " + std::to_string(t) +
                          " outside [0, " + std::to_string(schedule.t_max) + "]");
  }
  std::vector<double> amps(schedule.link_waveforms.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = schedule.link_waveforms[i](t);
  }
  return amps;
}

PulseSchedule with_link_scales(const PulseSchedule& schedule,
                               const std::vector<double>& factors) {
  if (factors.size() != schedule.link_waveforms.size()) {
    throw ValidationError("with_link_scales: factor count " +
                          std::to_string(factors.size()) +
                          " does not match link count " +
                          std::to_string(schedule.link_waveforms.size()));
  }
  PulseSchedule scaled = schedule;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i] >= 0.0)) {
      throw ValidationError("with_link_scales: factors must be non-negative");
    }
    scaled.link_waveforms[i].amplitude *= factors[i];
  }
  return scaled;
}

}  // namespace ctap
