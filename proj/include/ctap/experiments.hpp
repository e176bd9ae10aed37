#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ctap/chain.hpp"
#include "ctap/dynamics.hpp"
#include "ctap/pulses.hpp"

namespace ctap {

enum class Scheme { ctap3, intuitive3, ctapn };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// A run is flagged adiabatic when the worst-case adiabaticity metric stays
/// below this value.
inline constexpr double kAdiabaticThreshold = 0.01;

/// Everything needed to simulate one transport: chain, schedule, dephasing
/// rate, initial spin amplitudes, integrator settings.
struct RunConfig {
  Scheme scheme = Scheme::ctap3;
  int n_sites = 3;
  double omega_max = 62.83185307179586;  // rad/ns (20*pi, ~10 GHz tunnelling)
  double t_max = 0.0;                    // ns
  double gamma = 0.0;                    // rad/ns
  SpinMode spin_mode = SpinMode::charge_only;
  std::complex<double> alpha{1.0, 0.0};  // initial spin-down amplitude
  std::complex<double> beta{0.0, 0.0};   // initial spin-up amplitude
  double straddle_ratio = 3.0;
  StraddleEnvelope straddle_envelope = StraddleEnvelope::gaussian;
  IntegratorConfig integrator;
  int adiab_samples = 1001;
};

struct RunResult {
  Trajectory trajectory;
  double error = 0.0;                // infidelity to the end-site target
  double max_mid_population = 0.0;   // worst total population on interior sites
  double max_adiabaticity = 0.0;
  bool adiabatic = false;
  double final_spin_phase = 0.0;  // arg rho_(n down, n up); NaN in charge mode
};

ChainSpec chain_for(const RunConfig& config);
PulseSchedule schedule_for(const RunConfig& config);

/// Transport of |1> (x) (alpha |down> + beta |up>) to the far end of the
/// chain; error measured against the same spin state on site n.
RunResult run_transport(const RunConfig& config);

/// As run_transport, with a caller-supplied chain and schedule (disorder
/// trials scale link amplitudes before delegating here).
RunResult run_transport_prepared(const RunConfig& config, const ChainSpec& chain,
                                 const PulseSchedule& schedule);

struct SweepConfig {
  RunConfig base;  // t_max and gamma are taken from the grids per point
  std::vector<double> gamma_grid;  // rad/ns, strictly increasing
  std::vector<double> t_max_grid;  // ns, strictly increasing
  std::uint64_t seed = 0;          // recorded in metadata
  int threads = 0;                 // 0 = hardware concurrency
};

struct SweepRecord {
  double gamma = 0.0;
  double t_max = 0.0;
  double error = 0.0;
  double max_mid_population = 0.0;
  double max_adiabaticity = 0.0;
  bool adiabatic = false;
  bool failed = false;  // error carries a NaN sentinel when set
  std::string message;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // gamma-major grid order
  Scheme scheme = Scheme::ctap3;
  int n_sites = 0;
  double omega_max = 0.0;
  std::uint64_t seed = 0;
  std::string version;
};

using ProgressFn = std::function<void(int done, int total)>;

/// Transfer error over the (gamma, t_max) grid. Per-point failures are
/// recorded in-row and the sweep continues. Grid points run concurrently;
/// output order is by grid index, independent of the thread count.
SweepResult sweep_error_surface(const SweepConfig& config,
                                const ProgressFn& progress = {});

struct SchemeMetrics {
  double error = 0.0;
  double max_mid_population = 0.0;
};

struct OrderingComparison {
  SchemeMetrics counter_intuitive;  // ctap3
  SchemeMetrics intuitive;          // intuitive3
};

/// Runs both three-donor pulse orderings from |1> at equal parameters.
OrderingComparison compare_orderings(double omega_max, double t_max,
                                     double gamma);

struct DisorderConfig {
  RunConfig base;       // single (gamma, t_max) point
  double sigma = 0.0;   // relative spread of the link amplitudes
  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct DisorderTrial {
  int index = 0;
  std::vector<double> factors;  // per-link multiplicative amplitude factors
  double error = 0.0;
  bool failed = false;
  std::string message;
};

struct DisorderResult {
  std::vector<DisorderTrial> trials;
  double mean_error = 0.0;
  double max_error = 0.0;
  double std_error = 0.0;
  int failed_count = 0;
};

/// Monte Carlo over tunnelling-rate disorder: per trial, each link amplitude
/// is scaled by a factor drawn uniformly from [1 - sigma, 1 + sigma] using a
/// deterministic per-trial stream derived from (seed, trial index).
DisorderResult disorder_monte_carlo(const DisorderConfig& config);

/// 0 resolves to the hardware thread count (at least 1).
int resolve_threads(int requested);

}  // namespace ctap
