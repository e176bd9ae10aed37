#include "ctap/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ctap/hamiltonian.hpp"

namespace ctap {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

std::string at_time(double t) { return " at t = " + std::to_string(t) + " ns"; }

}  // namespace

void check_density_matrix(const DensityMatrix& rho, const DensityTolerances& tol) {
  if (rho.rows() != rho.cols()) {
    throw NumericError("density matrix is not square");
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    throw NumericError("density matrix not Hermitian: deviation " +
                       std::to_string(herm));
  }
  const double trace_dev = std::abs(rho.trace() - 1.0);
  if (trace_dev > tol.trace) {
    throw NumericError("density matrix trace deviates from 1 by " +
                       std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < tol.min_eigenvalue) {
    throw NumericError("density matrix has negative eigenvalue " +
                       std::to_string(min_eig));
  }
}

DensityMatrix pure_state_density(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) {
    throw ValidationError("pure_state_density: zero state vector");
  }
  const Eigen::VectorXcd unit = psi / norm;
  return unit * unit.adjoint();
}

Eigen::MatrixXd dephasing_mask(const ChainSpec& spec) {
  const int d = dimension(spec);
  Eigen::MatrixXd mask(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      mask(r, c) = site_of_index(spec, r) != site_of_index(spec, c) ? 1.0 : 0.0;
    }
  }
  return mask;
}

DensityMatrix lindblad_rhs(const Eigen::MatrixXcd& hamiltonian,
                           const DensityMatrix& rho, double gamma,
                           const ChainSpec& spec) {
  if (gamma < 0.0) {
    throw ValidationError("lindblad_rhs: gamma must be non-negative");
  }
  const int d = dimension(spec);
  if (hamiltonian.rows() != d || hamiltonian.cols() != d || rho.rows() != d ||
      rho.cols() != d) {
    throw ValidationError("lindblad_rhs: dimension mismatch with chain spec");
  }
  DensityMatrix out = -kImag * (hamiltonian * rho - rho * hamiltonian);
  if (gamma > 0.0) {
    out -= gamma * dephasing_mask(spec).cast<std::complex<double>>().cwiseProduct(rho);
  }
  return out;
}

double rk4_step_bound(const PulseSchedule& schedule) {
  const double peak = schedule.peak_amplitude();
  double bound = schedule.t_max / 5000.0;
  if (peak > 0.0) {
    bound = std::min(bound, 0.01 / peak);
  }
  return bound;
}

namespace {

// Static index structure of H(t): the diagonal never changes, only the
// nearest-neighbour coupling entries follow the schedule.
struct HamiltonianLayout {
  Eigen::VectorXd diagonal;
  std::vector<std::array<int, 3>> couplings;  // {row, col, link}

  static HamiltonianLayout build(const ChainSpec& spec) {
    HamiltonianLayout layout;
    const int d = dimension(spec);
    layout.diagonal.resize(d);
    if (spec.spin_mode == SpinMode::site_spin) {
      for (int site = 0; site < spec.n_sites; ++site) {
        for (int spin = 0; spin < 2; ++spin) {
          layout.diagonal[2 * site + spin] =
              spec.detunings[site] + spec.spin_splittings[2 * site + spin];
        }
      }
      for (int link = 0; link + 1 < spec.n_sites; ++link) {
        for (int spin = 0; spin < 2; ++spin) {
          layout.couplings.push_back({2 * link + spin, 2 * (link + 1) + spin, link});
        }
      }
    } else {
      for (int site = 0; site < spec.n_sites; ++site) {
        layout.diagonal[site] = spec.detunings[site];
      }
      for (int link = 0; link + 1 < spec.n_sites; ++link) {
        layout.couplings.push_back({link, link + 1, link});
      }
    }
    return layout;
  }
};

// rk4 core on the split state rho = R + i*I with R symmetric, I
// antisymmetric and H real symmetric:
//   dR/dt =  H*I + (H*I)^T - gamma * mask o R
//   dI/dt = -H*R + (H*R)^T - gamma * mask o I
// One real matrix product per half of the right-hand side.
template <int N>
Trajectory rk4_run(const ChainSpec& spec, const PulseSchedule& schedule,
                   const DensityMatrix& rho0, double gamma, double step,
                   long long record_every) {
  using Mat = Eigen::Matrix<double, N, N>;
  const int d = dimension(spec);
  const double t_max = schedule.t_max;

  const long long n_steps =
      std::max<long long>(1, static_cast<long long>(std::ceil(t_max / step - 1e-9)));
  const double h = t_max / static_cast<double>(n_steps);

  const HamiltonianLayout layout = HamiltonianLayout::build(spec);
  const int n_links = spec.n_sites - 1;
  std::vector<double> amps(static_cast<std::size_t>(n_links));

  Mat ham = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) ham(i, i) = layout.diagonal[i];
  auto set_couplings = [&](double t) {
    for (int l = 0; l < n_links; ++l) {
      amps[static_cast<std::size_t>(l)] = schedule.link_waveforms[static_cast<std::size_t>(l)](t);
    }
    for (const auto& [r, c, link] : layout.couplings) {
      const double v = -amps[static_cast<std::size_t>(link)];
      ham(r, c) = v;
      ham(c, r) = v;
    }
  };

  const Mat gmask = gamma * dephasing_mask(spec);
  const bool damped = gamma > 0.0;

  Mat re = rho0.real(), im = rho0.imag();
  Mat kr1(d, d), ki1(d, d), kr2(d, d), ki2(d, d), kr3(d, d), ki3(d, d),
      kr4(d, d), ki4(d, d), rt(d, d), it(d, d), tmp(d, d);

  auto rhs = [&](const Mat& r, const Mat& i, Mat& dr, Mat& di) {
    tmp.noalias() = ham * i;
    dr = tmp + tmp.transpose();
    tmp.noalias() = ham * r;
    di = tmp.transpose() - tmp;
    if (damped) {
      dr -= gmask.cwiseProduct(r);
      di -= gmask.cwiseProduct(i);
    }
  };

  Trajectory traj;
  traj.min_eigenvalue = std::numeric_limits<double>::infinity();
  const long long n_records = n_steps / record_every + 2;
  traj.times.reserve(static_cast<std::size_t>(n_records));
  traj.states.reserve(static_cast<std::size_t>(n_records));
  traj.populations.reserve(static_cast<std::size_t>(n_records));
  traj.purity.reserve(static_cast<std::size_t>(n_records));

  double corrections = 0.0;
  double purity_prev = re.squaredNorm() + im.squaredNorm();

  auto record = [&](double t) {
    DensityMatrix state(d, d);
    state.real() = re;
    state.imag() = im;
    traj.times.push_back(t);
    std::vector<double> pops(static_cast<std::size_t>(spec.n_sites), 0.0);
    for (int k = 0; k < d; ++k) {
      pops[static_cast<std::size_t>(site_of_index(spec, k))] += re(k, k);
    }
    traj.populations.push_back(std::move(pops));
    traj.purity.push_back(re.squaredNorm() + im.squaredNorm());
    Eigen::SelfAdjointEigenSolver<DensityMatrix> es(state, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_eig);
    if (min_eig < -1e-8) {
      throw NumericError("evolve: density matrix lost positivity (" +
                         std::to_string(min_eig) + ")" + at_time(t));
    }
    traj.states.push_back(std::move(state));
  };

  record(0.0);

  for (long long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * h;

    set_couplings(t);
    rhs(re, im, kr1, ki1);
    rt = re + (0.5 * h) * kr1;
    it = im + (0.5 * h) * ki1;
    set_couplings(t + 0.5 * h);
    rhs(rt, it, kr2, ki2);
    rt = re + (0.5 * h) * kr2;
    it = im + (0.5 * h) * ki2;
    rhs(rt, it, kr3, ki3);
    rt = re + h * kr3;
    it = im + h * ki3;
    set_couplings(t + h);
    rhs(rt, it, kr4, ki4);
    re += (h / 6.0) * (kr1 + 2.0 * kr2 + 2.0 * kr3 + kr4);
    im += (h / 6.0) * (ki1 + 2.0 * ki2 + 2.0 * ki3 + ki4);

    const double t_next = static_cast<double>(k + 1) * h;

    // re-Hermitize, measuring the pre-fix deviation
    const double herm_dev =
        0.5 * std::sqrt(((re - re.transpose()).array().square() +
                         (im + im.transpose()).array().square())
                            .maxCoeff());
    traj.max_hermiticity_deviation =
        std::max(traj.max_hermiticity_deviation, herm_dev);
    if (herm_dev > 1e-10) {
      throw NumericError("evolve: hermiticity drift " + std::to_string(herm_dev) +
                         at_time(t_next));
    }
    rt = 0.5 * (re + re.transpose());
    re.swap(rt);
    it = 0.5 * (im - im.transpose());
    im.swap(it);

    // renormalise the trace
    const double tr = re.trace();
    const double trace_dev = std::abs(tr - 1.0);
    traj.max_trace_deviation = std::max(traj.max_trace_deviation, trace_dev);
    if (trace_dev > 1e-9) {
      throw NumericError("evolve: trace drifted by " + std::to_string(trace_dev) +
                         at_time(t_next));
    }
    re /= tr;
    im /= tr;
    corrections += trace_dev + herm_dev;

    const double purity = re.squaredNorm() + im.squaredNorm();
    if (damped && purity > purity_prev + 1e-8) {
      throw NumericError("evolve: purity increased by " +
                         std::to_string(purity - purity_prev) + at_time(t_next));
    }
    purity_prev = purity;

    if ((k + 1) % record_every == 0 || k + 1 == n_steps) {
      record(t_next);
    }
  }

  traj.trace_correction_total = corrections;
  traj.drift_flagged = corrections > 1e-9;
  return traj;
}

}  // namespace

Trajectory evolve(const ChainSpec& spec, const PulseSchedule& schedule,
                  const DensityMatrix& rho0, double gamma,
                  const IntegratorConfig& cfg) {
  if (gamma < 0.0) {
    throw ValidationError("evolve: gamma must be non-negative");
  }
  if (!(schedule.t_max > 0.0)) {
    throw ValidationError("evolve: schedule t_max must be positive");
  }
  if (static_cast<int>(schedule.link_waveforms.size()) != spec.n_sites - 1) {
    throw ValidationError("evolve: schedule link count does not match chain");
  }
  const int d = dimension(spec);
  if (rho0.rows() != d || rho0.cols() != d) {
    throw ValidationError("evolve: rho0 dimension does not match chain");
  }
  check_density_matrix(rho0);

  const double bound = rk4_step_bound(schedule);
  // Default to half the bound: the diabatic reference runs need the margin
  // to hold the positivity tolerance.
  const double step = cfg.step_ns.value_or(0.5 * bound);
  if (!(step > 0.0)) {
    throw ValidationError("evolve: step must be positive");
  }
  if (step > bound * (1.0 + 1e-12)) {
    throw ValidationError("evolve: step " + std::to_string(step) +
                          " ns exceeds the stability bound " +
                          std::to_string(bound) + " ns");
  }
  const long long n_steps = std::max<long long>(
      1, static_cast<long long>(std::ceil(schedule.t_max / step - 1e-9)));
  const long long record_every = cfg.record_every
                                     ? static_cast<long long>(*cfg.record_every)
                                     : std::max<long long>(1, n_steps / 1000);
  if (record_every < 1) {
    throw ValidationError("evolve: record_every must be positive");
  }

  switch (d) {
    case 3:
      return rk4_run<3>(spec, schedule, rho0, gamma, step, record_every);
    case 5:
      return rk4_run<5>(spec, schedule, rho0, gamma, step, record_every);
    case 6:
      return rk4_run<6>(spec, schedule, rho0, gamma, step, record_every);
    case 7:
      return rk4_run<7>(spec, schedule, rho0, gamma, step, record_every);
    case 9:
      return rk4_run<9>(spec, schedule, rho0, gamma, step, record_every);
    case 10:
      return rk4_run<10>(spec, schedule, rho0, gamma, step, record_every);
    case 14:
      return rk4_run<14>(spec, schedule, rho0, gamma, step, record_every);
    case 18:
      return rk4_run<18>(spec, schedule, rho0, gamma, step, record_every);
    default:
      return rk4_run<Eigen::Dynamic>(spec, schedule, rho0, gamma, step,
                                     record_every);
  }
}

double transfer_error(const DensityMatrix& rho_final,
                      const Eigen::VectorXcd& target) {
  if (rho_final.rows() != target.size() || rho_final.cols() != target.size()) {
    throw ValidationError("transfer_error: dimension mismatch");
  }
  if (std::abs(target.norm() - 1.0) > 1e-9) {
    throw ValidationError("transfer_error: target is not unit norm");
  }
  const std::complex<double> overlap = (target.adjoint() * rho_final * target)(0);
  if (std::abs(overlap.imag()) >= 1e-10) {
    throw NumericError("transfer_error: <target|rho|target> has imaginary part " +
                       std::to_string(overlap.imag()));
  }
  return 1.0 - overlap.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("trace_distance: dimension mismatch");
  }
  const DensityMatrix diff = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace ctap
