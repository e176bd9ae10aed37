#include "ctap/csv.hpp"

#include <cstdio>
#include <fstream>

#include "ctap/version.hpp"

namespace ctap {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write output file: " + path);
  }
  return out;
}

void write_preamble(std::ofstream& out, const std::string& config_echo) {
  out << "# ctap_sim " << kVersion << "\n";
  out << "# config: " << config_echo << "\n";
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory,
                          const std::optional<std::vector<double>>& adiab_metric,
                          const std::string& config_echo) {
  std::ofstream out = open_output(path);
  write_preamble(out, config_echo);
  const std::size_t n_sites =
      trajectory.populations.empty() ? 0 : trajectory.populations.front().size();
  out << "t";
  for (std::size_t s = 0; s < n_sites; ++s) {
    out << ",pop" << (s + 1);
  }
  out << ",purity";
  if (adiab_metric) out << ",adiab";
  out << "\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << format_g17(trajectory.times[k]);
    for (double p : trajectory.populations[k]) {
      out << ',' << format_g17(p);
    }
    out << ',' << format_g17(trajectory.purity[k]);
    if (adiab_metric) out << ',' << format_g17((*adiab_metric)[k]);
    out << "\n";
  }
}

void write_sweep_csv(const std::string& path, const SweepResult& result,
                     const std::string& config_echo) {
  std::ofstream out = open_output(path);
  write_preamble(out, config_echo);
  out << "# scheme=" << to_string(result.scheme) << " n_sites=" << result.n_sites
      << " omega_max_rad_ns=" << format_g17(result.omega_max)
      << " seed=" << result.seed << " version=" << result.version << "\n";
  out << "gamma,t_max,error,max_mid_pop,max_adiab,adiabatic_flag\n";
  for (const SweepRecord& r : result.records) {
    out << format_g17(r.gamma) << ',' << format_g17(r.t_max) << ','
        << format_g17(r.error) << ',' << format_g17(r.max_mid_population) << ','
        << format_g17(r.max_adiabaticity) << ',' << (r.adiabatic ? 1 : 0)
        << "\n";
  }
}

void write_disorder_csv(const std::string& path, const DisorderResult& result,
                        const std::string& config_echo) {
  std::ofstream out = open_output(path);
  write_preamble(out, config_echo);
  out << "# mean_error=" << format_g17(result.mean_error)
      << " max_error=" << format_g17(result.max_error)
      << " std_error=" << format_g17(result.std_error)
      << " failed=" << result.failed_count << "\n";
  const std::size_t n_links =
      result.trials.empty() ? 0 : result.trials.front().factors.size();
  out << "trial,error";
  for (std::size_t l = 0; l < n_links; ++l) {
    out << ",factor" << (l + 1);
  }
  out << "\n";
  for (const DisorderTrial& t : result.trials) {
    out << t.index << ',' << format_g17(t.error);
    for (double f : t.factors) {
      out << ',' << format_g17(f);
    }
    out << "\n";
  }
}

void write_profile_csv(const std::string& path, const AdiabaticityProfile& profile,
                       const std::string& config_echo) {
  std::ofstream out = open_output(path);
  write_preamble(out, config_echo);
  out << "# max_metric=" << format_g17(profile.max_metric) << "\n";
  out << "t,metric\n";
  for (std::size_t k = 0; k < profile.times.size(); ++k) {
    out << format_g17(profile.times[k]) << ',' << format_g17(profile.metric[k])
        << "\n";
  }
}

}  // namespace ctap
