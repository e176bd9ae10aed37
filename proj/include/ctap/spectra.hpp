#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ctap/chain.hpp"
#include "ctap/pulses.hpp"

namespace ctap {

/// Analytic dressed basis of the three-donor chain at fixed couplings
/// (omega_12, omega_23) and middle-site detuning delta. The mixing angles
/// are theta1 = arctan(omega_12 / omega_23) and
/// theta2 = arctan2(2 * sqrt(omega_12^2 + omega_23^2), delta) / 2, so the
/// delta -> 0 limit gives theta2 = pi/4 and the branch stays continuous for
/// negative detuning. d_zero has no amplitude on site 2 for any delta.
struct DressedStates3 {
  double theta1 = 0.0;  // radians
  double theta2 = 0.0;  // radians
  Eigen::Vector3cd d_plus;
  Eigen::Vector3cd d_minus;
  Eigen::Vector3cd d_zero;
  double energy_plus = 0.0;   // rad/ns
  double energy_zero = 0.0;   // rad/ns
  double energy_minus = 0.0;  // rad/ns
};

DressedStates3 analytic_ctap3_states(double omega_12, double omega_23,
                                     double delta);

/// Zero-energy transport eigenvector of the charge Hamiltonian for an odd
/// chain with zero detunings, gauge-fixed so the largest-magnitude component
/// is real and positive. Throws NumericError when the two eigenvalues
/// nearest zero are degenerate beyond resolution (gap < 1e-9 * ||H||).
Eigen::VectorXcd dark_state(const ChainSpec& spec,
                            std::span<const double> amplitudes);

/// max over non-dark eigenstates of |<d(D0)/dt | D_k>| / |E0 - E_k|,
/// sampled along a schedule. Transfer is adiabatic when this stays well
/// below 1.
struct AdiabaticityProfile {
  std::vector<double> times;   // ns
  std::vector<double> metric;  // dimensionless
  double max_metric = 0.0;
};

AdiabaticityProfile adiabaticity_profile(const ChainSpec& spec,
                                         const PulseSchedule& schedule,
                                         int n_samples);

}  // namespace ctap
