#include "ctap/spectra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ctap/hamiltonian.hpp"

namespace ctap {

DressedStates3 analytic_ctap3_states(double omega_12, double omega_23,
                                     double delta) {
  const double omega = std::hypot(omega_12, omega_23);
  if (omega == 0.0) {
    throw ValidationError(
        "analytic_ctap3_states: omega_12 and omega_23 are both zero, dressed "
        "basis undefined");
  }
  DressedStates3 out;
  out.theta1 = std::atan2(omega_12, omega_23);
  out.theta2 = 0.5 * std::atan2(2.0 * omega, delta);
  const double s1 = std::sin(out.theta1);
  const double c1 = std::cos(out.theta1);
  const double s2 = std::sin(out.theta2);
  const double c2 = std::cos(out.theta2);

  // With the tunnelling term entering the Hamiltonian with a minus sign, the
  // site-2 components of the bright states flip sign relative to the
  // plus-convention form; the dark state is unaffected.
  out.d_plus = Eigen::Vector3cd(s1 * s2, -c2, c1 * s2);
  out.d_minus = Eigen::Vector3cd(s1 * c2, s2, c1 * c2);
  out.d_zero = Eigen::Vector3cd(c1, 0.0, -s1);

  ChainSpec spec =
      make_chain(3, {0.0, delta, 0.0}, {0.0, 0.0}, SpinMode::charge_only);
  const double amps[2] = {omega_12, omega_23};
  const Eigen::MatrixXd h = charge_hamiltonian_real(spec, amps);
  auto rayleigh = [&h](const Eigen::Vector3cd& v) {
    return (v.adjoint() * h * v)(0).real();
  };
  out.energy_plus = rayleigh(out.d_plus);
  out.energy_zero = rayleigh(out.d_zero);
  out.energy_minus = rayleigh(out.d_minus);
  return out;
}

namespace {

struct EigenSample {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int dark = 0;  // column index of the eigenvalue nearest zero
};

// Eigensystem with the dark index identified and the resolvability of the
// nearest-zero eigenvalue checked.
EigenSample solve_sorted(const Eigen::MatrixXd& h, const char* who) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  EigenSample s;
  s.values = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  const int n = static_cast<int>(s.values.size());
  int dark = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(s.values[i]) < std::abs(s.values[dark])) {
      dark = i;
    }
  }
  s.dark = dark;
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (i != dark) {
      gap = std::min(gap, std::abs(s.values[i] - s.values[dark]));
    }
  }
  const double norm = s.values.cwiseAbs().maxCoeff();
  if (gap <= 1e-9 * norm) {
    throw NumericError(std::string(who) +
                       ": eigenvalues nearest zero are degenerate (gap " +
                       std::to_string(gap) + ", ||H|| " + std::to_string(norm) +
                       ")");
  }
  return s;
}

void require_transport_chain(const ChainSpec& spec, const char* who) {
  if (spec.n_sites % 2 == 0) {
    throw ValidationError(std::string(who) + ": chain length must be odd");
  }
  for (double d : spec.detunings) {
    if (d != 0.0) {
      throw ValidationError(std::string(who) + ": detunings must all be zero");
    }
  }
}

}  // namespace

Eigen::VectorXcd dark_state(const ChainSpec& spec,
                            std::span<const double> amplitudes) {
  require_transport_chain(spec, "dark_state");
  ChainSpec charge = spec;
  charge.spin_mode = SpinMode::charge_only;
  const EigenSample s =
      solve_sorted(charge_hamiltonian_real(charge, amplitudes), "dark_state");
  Eigen::VectorXd v = s.vectors.col(s.dark);
  int largest = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[largest])) {
      largest = i;
    }
  }
  if (v[largest] < 0.0) {
    v = -v;
  }
  return v.cast<std::complex<double>>();
}

AdiabaticityProfile adiabaticity_profile(const ChainSpec& spec,
                                         const PulseSchedule& schedule,
                                         int n_samples) {
  if (n_samples < 100) {
    throw ValidationError(
        "adiabaticity_profile: need at least 100 samples for stable "
        "differencing, got " +
        std::to_string(n_samples));
  }
  require_transport_chain(spec, "adiabaticity_profile");
  if (static_cast<int>(schedule.link_waveforms.size()) != spec.n_sites - 1) {
    throw ValidationError(
        "adiabaticity_profile: schedule link count does not match chain");
  }
  ChainSpec charge = spec;
  charge.spin_mode = SpinMode::charge_only;

  const int n = n_samples;
  const double dt = schedule.t_max / (n - 1);
  std::vector<EigenSample> samples;
  samples.reserve(n);
  std::vector<Eigen::VectorXd> dark(n);

  AdiabaticityProfile out;
  out.times.resize(n);
  for (int k = 0; k < n; ++k) {
    out.times[k] = k * dt;
    const std::vector<double> amps = sample_schedule(schedule, out.times[k]);
    samples.push_back(
        solve_sorted(charge_hamiltonian_real(charge, amps), "adiabaticity_profile"));
    dark[k] = samples[k].vectors.col(samples[k].dark);
    if (k == 0) {
      // fix the initial gauge by the largest component
      int largest = 0;
      for (int i = 1; i < dark[k].size(); ++i) {
        if (std::abs(dark[k][i]) > std::abs(dark[k][largest])) largest = i;
      }
      if (dark[k][largest] < 0.0) dark[k] = -dark[k];
    } else if (dark[k].dot(dark[k - 1]) < 0.0) {
      // continuity gauge: overlap with the previous sample stays positive
      dark[k] = -dark[k];
    }
  }

  out.metric.resize(n);
  Eigen::VectorXd deriv(dark[0].size());
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      deriv = (-3.0 * dark[0] + 4.0 * dark[1] - dark[2]) / (2.0 * dt);
    } else if (k == n - 1) {
      deriv = (3.0 * dark[n - 1] - 4.0 * dark[n - 2] + dark[n - 3]) / (2.0 * dt);
    } else {
      deriv = (dark[k + 1] - dark[k - 1]) / (2.0 * dt);
    }
    const EigenSample& s = samples[k];
    double metric = 0.0;
    for (int j = 0; j < s.values.size(); ++j) {
      if (j == s.dark) continue;
      const double overlap = std::abs(deriv.dot(s.vectors.col(j)));
      metric = std::max(metric,
                        overlap / std::abs(s.values[j] - s.values[s.dark]));
    }
    out.metric[k] = metric;
    out.max_metric = std::max(out.max_metric, metric);
  }
  return out;
}

}  // namespace ctap
