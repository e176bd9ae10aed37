#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "ctap/chain.hpp"
#include "ctap/pulses.hpp"

namespace ctap {

using DensityMatrix = Eigen::MatrixXcd;

struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
};

/// Throws NumericError when rho is not Hermitian / trace-one / positive
/// within the tolerances.
void check_density_matrix(const DensityMatrix& rho,
                          const DensityTolerances& tol = {});

DensityMatrix pure_state_density(const Eigen::VectorXcd& psi);

enum class IntegratorMethod { rk4_fixed, oracle_expm };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::rk4_fixed;
  // rk4 step in ns; must not exceed the bound
  // min(0.01 / peak_amplitude, t_max / 5000). Unset = half the bound.
  std::optional<double> step_ns;
  // oracle: piecewise-constant micro-intervals per recorded sample
  int substeps = 64;
  // rk4 recording stride; unset = aim for ~1000 recorded samples
  std::optional<int> record_every;
};

struct Trajectory {
  std::vector<double> times;  // ns, strictly increasing from 0 to t_max
  std::vector<DensityMatrix> states;
  std::vector<std::vector<double>> populations;  // per sample, per site
  std::vector<double> purity;                    // Tr rho^2 per sample

  // integration health, accumulated over every internal step
  double max_trace_deviation = 0.0;        // |Tr rho - 1| before renormalisation
  double max_hermiticity_deviation = 0.0;  // pre-fix max |rho - rho^dagger| / 2
  double min_eigenvalue = 0.0;             // over recorded samples
  double trace_correction_total = 0.0;
  bool drift_flagged = false;  // cumulative corrections exceeded 1e-9
};

/// 0/1 mask selecting the damped coherences: 1 where row and column belong
/// to different sites, 0 on same-site elements. In charge_only mode this is
/// every off-diagonal element; in site_spin mode same-site spin coherences
/// are left untouched (charge noise dephases position, not spin).
Eigen::MatrixXd dephasing_mask(const ChainSpec& spec);

/// drho/dt = -i [H, rho] - gamma * mask o rho  (site-projector dephasing).
DensityMatrix lindblad_rhs(const Eigen::MatrixXcd& hamiltonian,
                           const DensityMatrix& rho, double gamma,
                           const ChainSpec& spec);

/// Largest rk4 step permitted for a schedule.
double rk4_step_bound(const PulseSchedule& schedule);

/// Fixed-step rk4 integration of the master equation with H(t) sampled from
/// the schedule. Each step re-Hermitizes and trace-renormalises the state;
/// the correction sizes are monitored and the run is flagged when they
/// accumulate past 1e-9. Invariant violations beyond the DensityMatrix
/// tolerances throw NumericError with the offending time.
Trajectory evolve(const ChainSpec& spec, const PulseSchedule& schedule,
                  const DensityMatrix& rho0, double gamma,
                  const IntegratorConfig& cfg = {});

/// Independent verification propagator: piecewise-constant evolution where
/// each micro-interval applies the exact matrix exponential of the
/// vectorized generator (commutator plus dephasing mask acting on d^2
/// components), with H evaluated at the interval midpoint. Shares no
/// stepping code with evolve.
Trajectory propagate_oracle(const ChainSpec& spec, const PulseSchedule& schedule,
                            const DensityMatrix& rho0, double gamma,
                            int substeps, int record_samples = 200);

/// 1 - <target| rho |target>, the final-state infidelity to a pure target.
double transfer_error(const DensityMatrix& rho_final,
                      const Eigen::VectorXcd& target);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ctap
