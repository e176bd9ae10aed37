#include "ctap/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "ctap/spectra.hpp"
#include "ctap/version.hpp"

namespace ctap {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::ctap3:
      return "ctap3";
    case Scheme::intuitive3:
      return "intuitive3";
    case Scheme::ctapn:
      return "ctapn";
  }
  return "ctap3";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "ctap3") return Scheme::ctap3;
  if (name == "intuitive3") return Scheme::intuitive3;
  if (name == "ctapn") return Scheme::ctapn;
  throw ValidationError("unknown scheme '" + name +
                        "' (expected ctap3, intuitive3 or ctapn)");
}

namespace {

void validate_run_config(const RunConfig& config) {
  if (!(config.omega_max >= 0.0)) {
    throw ValidationError("run config: omega_max must be non-negative");
  }
  if (!(config.t_max > 0.0)) {
    throw ValidationError("run config: t_max must be positive");
  }
  if (config.scheme != Scheme::ctapn && config.n_sites != 3) {
    throw ValidationError("run config: scheme " + to_string(config.scheme) +
                          " requires n_sites = 3");
  }
  const double norm =
      std::norm(config.alpha) + std::norm(config.beta);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw ValidationError(
        "run config: |alpha|^2 + |beta|^2 must be 1 within 1e-12");
  }
}

}  // namespace

ChainSpec chain_for(const RunConfig& config) {
  validate_run_config(config);
  const int n = config.n_sites;
  std::vector<double> peaks(static_cast<std::size_t>(n - 1), config.omega_max);
  if (config.scheme == Scheme::ctapn) {
    for (int link = 1; link < n - 2; ++link) {
      peaks[static_cast<std::size_t>(link)] =
          config.straddle_ratio * config.omega_max;
    }
  }
  return make_chain(n, std::vector<double>(static_cast<std::size_t>(n), 0.0),
                    std::move(peaks), config.spin_mode);
}

PulseSchedule schedule_for(const RunConfig& config) {
  validate_run_config(config);
  // A zero drive keeps the nominal pulse shapes: build at unit amplitude and
  // scale every link to zero.
  const double omega = config.omega_max > 0.0 ? config.omega_max : 1.0;
  PulseSchedule schedule;
  switch (config.scheme) {
    case Scheme::ctap3:
      schedule = ctap3_schedule(omega, config.t_max);
      break;
    case Scheme::intuitive3:
      schedule = intuitive3_schedule(omega, config.t_max);
      break;
    case Scheme::ctapn:
      schedule = ctapn_schedule(config.n_sites, omega, config.t_max,
                                config.straddle_ratio, config.straddle_envelope);
      break;
  }
  if (config.omega_max == 0.0) {
    schedule = with_link_scales(
        schedule,
        std::vector<double>(schedule.link_waveforms.size(), 0.0));
  }
  return schedule;
}

RunResult run_transport_prepared(const RunConfig& config, const ChainSpec& chain,
                                 const PulseSchedule& schedule) {
  validate_run_config(config);
  const int n = chain.n_sites;
  const int d = dimension(chain);

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(d);
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(d);
  if (chain.spin_mode == SpinMode::site_spin) {
    psi0(basis_index(chain, 0, 0)) = config.alpha;
    psi0(basis_index(chain, 0, 1)) = config.beta;
    target(basis_index(chain, n - 1, 0)) = config.alpha;
    target(basis_index(chain, n - 1, 1)) = config.beta;
  } else {
    psi0(0) = 1.0;
    target(n - 1) = 1.0;
  }

  RunResult result;
  result.trajectory = evolve(chain, schedule, pure_state_density(psi0),
                             config.gamma, config.integrator);
  result.error = transfer_error(result.trajectory.states.back(), target);

  for (const auto& pops : result.trajectory.populations) {
    double mid = 0.0;
    for (int site = 1; site + 1 < n; ++site) {
      mid += pops[static_cast<std::size_t>(site)];
    }
    result.max_mid_population = std::max(result.max_mid_population, mid);
  }

  if (schedule.peak_amplitude() > 0.0) {
    ChainSpec charge = chain;
    charge.spin_mode = SpinMode::charge_only;
    result.max_adiabaticity =
        adiabaticity_profile(charge, schedule, config.adiab_samples).max_metric;
    result.adiabatic = result.max_adiabaticity < kAdiabaticThreshold;
  } else {
    result.max_adiabaticity = std::numeric_limits<double>::infinity();
    result.adiabatic = false;
  }

  if (chain.spin_mode == SpinMode::site_spin &&
      std::abs(config.alpha) * std::abs(config.beta) > 0.0) {
    const std::complex<double> coherence = result.trajectory.states.back()(
        basis_index(chain, n - 1, 0), basis_index(chain, n - 1, 1));
    result.final_spin_phase = std::arg(coherence);
  } else {
    result.final_spin_phase = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

RunResult run_transport(const RunConfig& config) {
  return run_transport_prepared(config, chain_for(config), schedule_for(config));
}

namespace {

void validate_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) {
    throw ValidationError(std::string("sweep config: ") + name +
                          " must be non-empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError(std::string("sweep config: ") + name +
                            " must be strictly increasing");
    }
  }
}

// Runs jobs 0..count-1 on a small worker pool; job order in the output is by
// index regardless of scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& job) {
  const int workers = std::min(resolve_threads(threads), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        job(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepResult sweep_error_surface(const SweepConfig& config,
                                const ProgressFn& progress) {
  validate_grid(config.gamma_grid, "gamma_grid");
  validate_grid(config.t_max_grid, "t_max_grid");

  const int n_gamma = static_cast<int>(config.gamma_grid.size());
  const int n_t = static_cast<int>(config.t_max_grid.size());
  const int total = n_gamma * n_t;

  SweepResult result;
  result.records.resize(static_cast<std::size_t>(total));
  result.scheme = config.base.scheme;
  result.n_sites = config.base.n_sites;
  result.omega_max = config.base.omega_max;
  result.seed = config.seed;
  result.version = kVersion;

  std::mutex progress_mutex;
  int done = 0;

  parallel_for(total, config.threads, [&](int index) {
    const int gi = index / n_t;
    const int ti = index % n_t;
    SweepRecord& record = result.records[static_cast<std::size_t>(index)];
    record.gamma = config.gamma_grid[static_cast<std::size_t>(gi)];
    record.t_max = config.t_max_grid[static_cast<std::size_t>(ti)];
    try {
      RunConfig point = config.base;
      point.gamma = record.gamma;
      point.t_max = record.t_max;
      const RunResult run = run_transport(point);
      record.error = run.error;
      record.max_mid_population = run.max_mid_population;
      record.max_adiabaticity = run.max_adiabaticity;
      record.adiabatic = run.adiabatic;
    } catch (const std::exception& e) {
      record.failed = true;
      record.message = e.what();
      record.error = std::numeric_limits<double>::quiet_NaN();
      record.max_mid_population = std::numeric_limits<double>::quiet_NaN();
      record.max_adiabaticity = std::numeric_limits<double>::quiet_NaN();
      record.adiabatic = false;
    }
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(++done, total);
    }
  });
  return result;
}

OrderingComparison compare_orderings(double omega_max, double t_max,
                                     double gamma) {
  RunConfig config;
  config.omega_max = omega_max;
  config.t_max = t_max;
  config.gamma = gamma;

  OrderingComparison out;
  config.scheme = Scheme::ctap3;
  const RunResult counter = run_transport(config);
  out.counter_intuitive = {counter.error, counter.max_mid_population};
  config.scheme = Scheme::intuitive3;
  const RunResult intuitive = run_transport(config);
  out.intuitive = {intuitive.error, intuitive.max_mid_population};
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

DisorderResult disorder_monte_carlo(const DisorderConfig& config) {
  if (!(config.sigma >= 0.0)) {
    throw ValidationError("disorder config: sigma must be non-negative");
  }
  if (config.trials < 1) {
    throw ValidationError("disorder config: trials must be at least 1");
  }
  const ChainSpec chain = chain_for(config.base);
  const PulseSchedule nominal = schedule_for(config.base);
  const std::size_t n_links = nominal.link_waveforms.size();

  DisorderResult result;
  result.trials.resize(static_cast<std::size_t>(config.trials));

  // Per-trial factors come from a stream keyed on (seed, trial), so results
  // do not depend on the thread count.
  for (int trial = 0; trial < config.trials; ++trial) {
    std::uint64_t state =
        config.seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(trial + 1));
    auto& t = result.trials[static_cast<std::size_t>(trial)];
    t.index = trial;
    t.factors.resize(n_links);
    for (std::size_t l = 0; l < n_links; ++l) {
      t.factors[l] = 1.0 - config.sigma +
                     2.0 * config.sigma * uniform01(splitmix64(state));
    }
  }

  parallel_for(config.trials, config.threads, [&](int trial) {
    auto& t = result.trials[static_cast<std::size_t>(trial)];
    try {
      ChainSpec scaled_chain = chain;
      for (std::size_t l = 0; l < n_links; ++l) {
        scaled_chain.base_amplitudes[l] *= t.factors[l];
      }
      const PulseSchedule scaled = with_link_scales(nominal, t.factors);
      t.error = run_transport_prepared(config.base, scaled_chain, scaled).error;
    } catch (const std::exception& e) {
      t.failed = true;
      t.message = e.what();
      t.error = std::numeric_limits<double>::quiet_NaN();
    }
  });

  double sum = 0.0;
  double max = 0.0;
  int ok = 0;
  for (const auto& t : result.trials) {
    if (t.failed) {
      ++result.failed_count;
      continue;
    }
    sum += t.error;
    max = std::max(max, t.error);
    ++ok;
  }
  if (ok > 0) {
    result.mean_error = sum / ok;
    result.max_error = max;
    double sq = 0.0;
    for (const auto& t : result.trials) {
      if (!t.failed) {
        sq += (t.error - result.mean_error) * (t.error - result.mean_error);
      }
    }
    result.std_error = std::sqrt(sq / ok);
  }
  return result;
}

}  // namespace ctap
