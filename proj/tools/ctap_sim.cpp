#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ctap/config.hpp"
#include "ctap/csv.hpp"
#include "ctap/experiments.hpp"
#include "ctap/plot.hpp"
#include "ctap/spectra.hpp"
#include "ctap/version.hpp"

namespace {

using namespace ctap;

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

std::string g17(double v) { return format_g17(v); }

int resolve_thread_flag(const std::optional<int>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CTAP_SIM_THREADS")) {
    return std::atoi(env);
  }
  return 0;  // auto
}

std::string output_path(const std::string& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / name).string();
}

// linear interpolation of the adiabaticity profile onto the trajectory grid
std::vector<double> metric_on_times(const AdiabaticityProfile& profile,
                                    const std::vector<double>& times) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    std::size_t hi = 1;
    while (hi + 1 < profile.times.size() && profile.times[hi] < t) ++hi;
    const double t0 = profile.times[hi - 1], t1 = profile.times[hi];
    const double w = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
    out[k] = (1.0 - w) * profile.metric[hi - 1] + w * profile.metric[hi];
  }
  return out;
}

void apply_output_overrides(ExperimentConfig& config,
                            const std::optional<std::string>& out_dir,
                            bool plot) {
  if (out_dir) config.output.out_dir = *out_dir;
  if (plot) config.output.plot = true;
}

// The metadata echo describes the experiment itself; presentation options
// (--out, --plot) must not change the CSV bytes.
std::string experiment_echo(const ExperimentConfig& config) {
  ExperimentConfig normalized = config;
  normalized.output = OutputOptions{};
  return serialize_config(normalized);
}

int do_run(const std::string& config_path, const std::optional<std::string>& out_dir,
           bool plot, const std::optional<int>& threads) {
  ExperimentConfig config = parse_config(config_path);
  apply_output_overrides(config, out_dir, plot);
  (void)threads;  // single runs are sequential

  if (auto* job = std::get_if<RunJob>(&config.job)) {
    const RunResult result = run_transport(job->run);
    std::optional<std::vector<double>> metric;
    if (job->record_adiabaticity &&
        schedule_for(job->run).peak_amplitude() > 0.0) {
      ChainSpec charge = chain_for(job->run);
      charge.spin_mode = SpinMode::charge_only;
      const int samples =
          std::max(job->run.adiab_samples,
                   static_cast<int>(result.trajectory.times.size()));
      metric = metric_on_times(
          adiabaticity_profile(charge, schedule_for(job->run), samples),
          result.trajectory.times);
    }
    const std::string echo = experiment_echo(config);
    const std::string csv = output_path(config.output.out_dir, "trajectory.csv");
    write_trajectory_csv(csv, result.trajectory, metric, echo);
    if (config.output.plot) {
      write_trajectory_svg(output_path(config.output.out_dir, "trajectory.svg"),
                           result.trajectory);
    }
    std::cout << "error=" << g17(result.error)
              << " max_mid_pop=" << g17(result.max_mid_population)
              << " max_adiab=" << g17(result.max_adiabaticity)
              << " adiabatic=" << (result.adiabatic ? 1 : 0);
    if (std::isfinite(result.final_spin_phase)) {
      std::cout << " spin_phase=" << g17(result.final_spin_phase);
    }
    std::cout << " csv=" << csv << "\n";
    return 0;
  }
  if (auto* job = std::get_if<SpectraJob>(&config.job)) {
    RunConfig shape;
    shape.scheme = job->scheme;
    shape.n_sites = job->n_sites;
    shape.omega_max = job->omega_max;
    shape.t_max = job->t_max;
    shape.straddle_ratio = job->straddle_ratio;
    shape.straddle_envelope = job->straddle_envelope;
    shape.adiab_samples = job->adiab_samples;
    ChainSpec chain = chain_for(shape);
    chain.spin_mode = SpinMode::charge_only;
    const AdiabaticityProfile profile = adiabaticity_profile(
        chain, schedule_for(shape), job->adiab_samples);
    const std::string csv = output_path(config.output.out_dir, "adiabaticity.csv");
    write_profile_csv(csv, profile, experiment_echo(config));
    std::cout << "max_metric=" << g17(profile.max_metric) << " csv=" << csv
              << "\n";
    return 0;
  }
  throw ValidationError("config kind '" + config_kind(config) +
                        "' requires the " + config_kind(config) + " subcommand");
}

int do_sweep(const std::string& config_path, const std::optional<std::string>& out_dir,
             bool plot, const std::optional<std::uint64_t>& seed,
             const std::optional<int>& threads) {
  ExperimentConfig config = parse_config(config_path);
  apply_output_overrides(config, out_dir, plot);
  auto* job = std::get_if<SweepConfig>(&config.job);
  if (!job) {
    throw ValidationError("config kind '" + config_kind(config) +
                          "' cannot be used with the sweep subcommand");
  }
  if (seed) job->seed = *seed;
  job->threads = resolve_thread_flag(threads);

  const ProgressFn progress = [](int done, int total) {
    std::fprintf(stderr, "\r%d/%d", done, total);
    if (done == total) std::fprintf(stderr, "\n");
    std::fflush(stderr);
  };
  const SweepResult result = sweep_error_surface(*job, progress);

  int failures = 0;
  for (const auto& r : result.records) {
    if (r.failed) ++failures;
  }
  const std::string echo = experiment_echo(config);
  const std::string csv = output_path(config.output.out_dir, "sweep.csv");
  write_sweep_csv(csv, result, echo);
  if (config.output.plot) {
    write_sweep_svg(output_path(config.output.out_dir, "sweep.svg"), result);
  }
  std::cout << "points=" << result.records.size() << " failures=" << failures
            << " csv=" << csv << "\n";
  return 0;
}

int do_disorder(const std::string& config_path,
                const std::optional<std::string>& out_dir, bool plot,
                const std::optional<std::uint64_t>& seed,
                const std::optional<int>& threads) {
  ExperimentConfig config = parse_config(config_path);
  apply_output_overrides(config, out_dir, plot);
  auto* job = std::get_if<DisorderConfig>(&config.job);
  if (!job) {
    throw ValidationError("config kind '" + config_kind(config) +
                          "' cannot be used with the disorder subcommand");
  }
  if (seed) job->seed = *seed;
  job->threads = resolve_thread_flag(threads);

  const DisorderResult result = disorder_monte_carlo(*job);
  const std::string csv = output_path(config.output.out_dir, "disorder.csv");
  write_disorder_csv(csv, result, experiment_echo(config));
  std::cout << "mean=" << g17(result.mean_error) << " max=" << g17(result.max_error)
            << " std=" << g17(result.std_error) << " trials=" << result.trials.size()
            << " failures=" << result.failed_count << " csv=" << csv << "\n";
  return 0;
}

void print_vector(const char* name, const Eigen::Vector3cd& v) {
  std::printf("%s = (%.10g, %.10g, %.10g)\n", name, v(0).real(), v(1).real(),
              v(2).real());
}

int do_darkstate(double o12, double o23, double delta) {
  const DressedStates3 states = analytic_ctap3_states(o12, o23, delta);
  std::printf("theta1 = %.10g\n", states.theta1);
  std::printf("theta2 = %.10g\n", states.theta2);
  std::printf("E_plus = %.10g rad/ns\n", states.energy_plus);
  std::printf("E_zero = %.10g rad/ns\n", states.energy_zero);
  std::printf("E_minus = %.10g rad/ns\n", states.energy_minus);
  print_vector("D_plus", states.d_plus);
  print_vector("D_zero", states.d_zero);
  print_vector("D_minus", states.d_minus);
  return 0;
}

int do_compare(double omega_max, double t_max, double gamma) {
  const OrderingComparison cmp = compare_orderings(omega_max, t_max, gamma);
  std::cout << "ctap3: error=" << g17(cmp.counter_intuitive.error)
            << " max_mid_pop=" << g17(cmp.counter_intuitive.max_mid_population)
            << "\n";
  std::cout << "intuitive3: error=" << g17(cmp.intuitive.error)
            << " max_mid_pop=" << g17(cmp.intuitive.max_mid_population) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTAP donor-chain transport simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;

  auto add_common = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("-c,--config", config_path, "JSON experiment config")
        ->required();
    cmd->add_option("--out", out_dir, "output directory (default from config)");
    cmd->add_flag("--plot", plot, "also write a static SVG plot");
    cmd->add_option("--threads", threads,
                    "worker threads (0 = auto; env CTAP_SIM_THREADS)");
    if (with_seed) {
      cmd->add_option("--seed", seed, "override the config seed");
    }
  };

  CLI::App* run = app.add_subcommand("run", "single transport simulation");
  add_common(run, false);
  CLI::App* sweep = app.add_subcommand("sweep", "(gamma, t_max) error surface");
  add_common(sweep, true);
  CLI::App* disorder =
      app.add_subcommand("disorder", "tunnelling-rate disorder Monte Carlo");
  add_common(disorder, true);

  double o12 = 0.0, o23 = 0.0, delta = 0.0;
  CLI::App* darkstate = app.add_subcommand(
      "darkstate", "analytic three-donor dressed states, no simulation");
  darkstate->add_option("--o12", o12, "link (1,2) tunnelling rate, rad/ns")
      ->required();
  darkstate->add_option("--o23", o23, "link (2,3) tunnelling rate, rad/ns")
      ->required();
  darkstate->add_option("--delta", delta, "middle-site detuning, rad/ns");

  double omega_max = 62.83185307179586, t_max = 0.0, gamma = 0.0;
  CLI::App* compare = app.add_subcommand(
      "compare", "counter-intuitive vs intuitive pulse ordering");
  compare->add_option("--omega-max", omega_max, "peak tunnelling rate, rad/ns");
  compare->add_option("--t-max", t_max, "total transfer time, ns")->required();
  compare->add_option("--gamma", gamma, "charge dephasing rate, rad/ns");

  CLI::App* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (version->parsed()) {
      std::cout << "ctap_sim " << ctap::kVersion << "\n";
      return 0;
    }
    if (run->parsed()) return do_run(config_path, out_dir, plot, threads);
    if (sweep->parsed()) return do_sweep(config_path, out_dir, plot, seed, threads);
    if (disorder->parsed()) {
      return do_disorder(config_path, out_dir, plot, seed, threads);
    }
    if (darkstate->parsed()) return do_darkstate(o12, o23, delta);
    if (compare->parsed()) return do_compare(omega_max, t_max, gamma);
  } catch (const ctap::ValidationError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ctap::NumericError& e) {
    std::cerr << "error: runtime: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: runtime: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cerr << "error: usage: no subcommand given\n";
  return kExitUsage;
}
