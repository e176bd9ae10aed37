#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ctap/dynamics.hpp"
#include "ctap/hamiltonian.hpp"

namespace ctap {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

// Column-stacking vectorization: vec index of element (r, c) is c*d + r,
// so vec(H rho) = (I (x) H) vec(rho) and vec(rho H) = (H^T (x) I) vec(rho).
Eigen::MatrixXcd vectorized_generator(const Eigen::MatrixXd& h, double gamma,
                                      const Eigen::MatrixXd& mask) {
  const int d = static_cast<int>(h.rows());
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const int row = c * d + r;
      // -i (I (x) H): couples (r, c) to (k, c)
      for (int k = 0; k < d; ++k) {
        gen(row, c * d + k) -= kImag * h(r, k);
      }
      // +i (H^T (x) I): couples (r, c) to (r, k)
      for (int k = 0; k < d; ++k) {
        gen(row, k * d + r) += kImag * h(k, c);
      }
      gen(row, row) -= gamma * mask(r, c);
    }
  }
  return gen;
}

}  // namespace

Trajectory propagate_oracle(const ChainSpec& spec, const PulseSchedule& schedule,
                            const DensityMatrix& rho0, double gamma,
                            int substeps, int record_samples) {
  if (gamma < 0.0) {
    throw ValidationError("propagate_oracle: gamma must be non-negative");
  }
  if (!(schedule.t_max > 0.0)) {
    throw ValidationError("propagate_oracle: schedule t_max must be positive");
  }
  if (static_cast<int>(schedule.link_waveforms.size()) != spec.n_sites - 1) {
    throw ValidationError("propagate_oracle: schedule link count mismatch");
  }
  if (substeps < 10) {
    throw ValidationError(
        "propagate_oracle: need at least 10 micro-intervals per sample");
  }
  if (record_samples < 1) {
    throw ValidationError("propagate_oracle: record_samples must be positive");
  }
  const int d = dimension(spec);
  if (rho0.rows() != d || rho0.cols() != d) {
    throw ValidationError("propagate_oracle: rho0 dimension mismatch");
  }
  check_density_matrix(rho0);

  const Eigen::MatrixXd mask = dephasing_mask(spec);
  const double sample_dt = schedule.t_max / record_samples;
  const double micro_dt = sample_dt / substeps;

  Eigen::VectorXcd vec =
      Eigen::Map<const Eigen::VectorXcd>(rho0.data(), static_cast<Eigen::Index>(d) * d);

  Trajectory traj;
  traj.min_eigenvalue = std::numeric_limits<double>::infinity();
  double purity_prev = std::numeric_limits<double>::infinity();

  auto record = [&](double t) {
    const DensityMatrix state =
        Eigen::Map<const DensityMatrix>(vec.data(), d, d);
    const double trace_dev = std::abs(state.trace() - 1.0);
    traj.max_trace_deviation = std::max(traj.max_trace_deviation, trace_dev);
    const double herm_dev =
        0.5 * (state - state.adjoint()).cwiseAbs().maxCoeff();
    traj.max_hermiticity_deviation =
        std::max(traj.max_hermiticity_deviation, herm_dev);
    if (trace_dev > 1e-9 || herm_dev > 1e-10) {
      throw NumericError("propagate_oracle: state drifted (trace " +
                         std::to_string(trace_dev) + ", hermiticity " +
                         std::to_string(herm_dev) + ") at t = " +
                         std::to_string(t) + " ns");
    }
    Eigen::SelfAdjointEigenSolver<DensityMatrix> es(state, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_eig);
    if (min_eig < -1e-8) {
      throw NumericError("propagate_oracle: positivity lost (" +
                         std::to_string(min_eig) + ") at t = " +
                         std::to_string(t) + " ns");
    }
    const double purity = state.squaredNorm();
    if (gamma > 0.0 && purity > purity_prev + 1e-8) {
      throw NumericError("propagate_oracle: purity increased at t = " +
                         std::to_string(t) + " ns");
    }
    purity_prev = purity;

    traj.times.push_back(t);
    std::vector<double> pops(static_cast<std::size_t>(spec.n_sites), 0.0);
    for (int k = 0; k < d; ++k) {
      pops[static_cast<std::size_t>(site_of_index(spec, k))] += state(k, k).real();
    }
    traj.populations.push_back(std::move(pops));
    traj.purity.push_back(purity);
    traj.states.push_back(state);
  };

  record(0.0);
  std::vector<double> amps(static_cast<std::size_t>(spec.n_sites - 1));
  for (int s = 0; s < record_samples; ++s) {
    const double t0 = s * sample_dt;
    for (int m = 0; m < substeps; ++m) {
      const double t_mid = t0 + (m + 0.5) * micro_dt;
      for (std::size_t l = 0; l < amps.size(); ++l) {
        amps[l] = schedule.link_waveforms[l](t_mid);
      }
      const Eigen::MatrixXd h = hamiltonian_real(spec, amps);
      const Eigen::MatrixXcd propagator =
          (vectorized_generator(h, gamma, mask) * micro_dt).exp();
      vec = propagator * vec;
    }
    record((s + 1) * sample_dt);
  }
  return traj;
}

}  // namespace ctap
