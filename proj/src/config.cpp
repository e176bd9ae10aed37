#include "ctap/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ctap {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError("config error at " + path + ": " + message);
}

// Tracks which keys of one JSON object have been consumed so leftovers can
// be rejected (silent typos in physics configs are worse than errors).
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_, "expected an object");
  }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string key_path(const char* key) const { return path_ + "." + key; }

  double number(const char* key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(key_path(key), "expected a number");
    return v->get<double>();
  }

  double required_number(const char* key) {
    const json* v = find(key);
    if (!v) fail(key_path(key), "missing required field");
    if (!v->is_number()) fail(key_path(key), "expected a number");
    return v->get<double>();
  }

  int integer(const char* key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
    return v->get<int>();
  }

  std::uint64_t seed(const char* key, std::uint64_t fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0)) {
      fail(key_path(key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  bool boolean(const char* key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key_path(key), "expected a boolean");
    return v->get<bool>();
  }

  std::string string(const char* key, std::string fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key_path(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> number_array(const char* key) {
    const json* v = find(key);
    if (!v) fail(key_path(key), "missing required field");
    if (!v->is_array() || v->empty()) fail(key_path(key), "expected a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(v->size());
    for (const auto& e : *v) {
      if (!e.is_number()) fail(key_path(key), "expected a non-empty array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::complex<double> complex_pair(const char* key, std::complex<double> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      fail(key_path(key), "expected [re, im]");
    }
    return {(*v)[0].get<double>(), (*v)[1].get<double>()};
  }

  void reject_unknown() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.count(item.key())) {
        fail(path_ + "." + item.key(), "unknown key");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Scheme parse_scheme(Fields& f) {
  const std::string name = f.string("scheme", "ctap3");
  try {
    return scheme_from_string(name);
  } catch (const ValidationError&) {
    fail(f.key_path("scheme"), "expected ctap3, intuitive3 or ctapn");
  }
}

SpinMode parse_spin_mode(Fields& f) {
  const std::string name = f.string("spin_mode", "charge_only");
  if (name == "charge_only") return SpinMode::charge_only;
  if (name == "site_spin") return SpinMode::site_spin;
  fail(f.key_path("spin_mode"), "expected charge_only or site_spin");
}

StraddleEnvelope parse_envelope(Fields& f) {
  const std::string name = f.string("straddle_envelope", "gaussian");
  if (name == "gaussian") return StraddleEnvelope::gaussian;
  if (name == "constant") return StraddleEnvelope::constant;
  fail(f.key_path("straddle_envelope"), "expected gaussian or constant");
}

IntegratorConfig parse_integrator(Fields& parent) {
  IntegratorConfig cfg;
  const json* v = parent.find("integrator");
  if (!v) return cfg;
  Fields f(*v, parent.key_path("integrator"));
  const std::string method = f.string("method", "rk4_fixed");
  if (method == "rk4_fixed") {
    cfg.method = IntegratorMethod::rk4_fixed;
  } else if (method == "oracle_expm") {
    cfg.method = IntegratorMethod::oracle_expm;
  } else {
    fail(f.key_path("method"), "expected rk4_fixed or oracle_expm");
  }
  if (const json* s = f.find("step_ns")) {
    if (!s->is_number() || !(s->get<double>() > 0.0)) {
      fail(f.key_path("step_ns"), "expected a positive number");
    }
    cfg.step_ns = s->get<double>();
  }
  cfg.substeps = f.integer("substeps", cfg.substeps);
  if (cfg.substeps < 10) fail(f.key_path("substeps"), "must be at least 10");
  if (const json* r = f.find("record_every")) {
    if (!r->is_number_integer() || r->get<int>() < 1) {
      fail(f.key_path("record_every"), "expected a positive integer");
    }
    cfg.record_every = r->get<int>();
  }
  f.reject_unknown();
  return cfg;
}

void parse_run_base(Fields& f, RunConfig& run, bool with_point) {
  run.scheme = parse_scheme(f);
  run.n_sites = f.integer("n_sites", run.scheme == Scheme::ctapn ? 5 : 3);
  if (run.scheme == Scheme::ctapn) {
    if (run.n_sites % 2 == 0) fail(f.key_path("n_sites"), "n_sites must be odd");
    if (run.n_sites < 5) fail(f.key_path("n_sites"), "ctapn needs at least 5 sites");
  } else if (run.n_sites != 3) {
    fail(f.key_path("n_sites"), "scheme " + to_string(run.scheme) + " requires n_sites = 3");
  }
  run.omega_max = f.number("omega_max_rad_ns", run.omega_max);
  if (!(run.omega_max >= 0.0)) {
    fail(f.key_path("omega_max_rad_ns"), "must be non-negative");
  }
  if (with_point) {
    run.t_max = f.required_number("t_max_ns");
    if (!(run.t_max > 0.0)) fail(f.key_path("t_max_ns"), "must be positive");
    run.gamma = f.number("gamma_rad_ns", 0.0);
    if (!(run.gamma >= 0.0)) fail(f.key_path("gamma_rad_ns"), "must be non-negative");
  }
  run.spin_mode = parse_spin_mode(f);
  run.alpha = f.complex_pair("alpha", run.alpha);
  run.beta = f.complex_pair("beta", run.beta);
  if (std::abs(std::norm(run.alpha) + std::norm(run.beta) - 1.0) > 1e-12) {
    fail(f.key_path("alpha"), "|alpha|^2 + |beta|^2 must equal 1 within 1e-12");
  }
  run.straddle_ratio = f.number("straddle_ratio", run.straddle_ratio);
  if (!(run.straddle_ratio >= 1.0)) {
    fail(f.key_path("straddle_ratio"), "must be at least 1");
  }
  run.straddle_envelope = parse_envelope(f);
  run.integrator = parse_integrator(f);
  run.adiab_samples = f.integer("adiab_samples", run.adiab_samples);
  if (run.adiab_samples < 100) {
    fail(f.key_path("adiab_samples"), "must be at least 100");
  }
}

OutputOptions parse_output(Fields& f) {
  OutputOptions out;
  out.out_dir = f.string("out_dir", out.out_dir);
  out.plot = f.boolean("plot", false);
  return out;
}

std::vector<double> parse_grid(Fields& f, const char* key) {
  std::vector<double> grid = f.number_array(key);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      fail(f.key_path(key), "must be strictly increasing");
    }
  }
  return grid;
}

ExperimentConfig parse_json(const json& root) {
  Fields f(root, "$");
  const json* kind_field = f.find("kind");
  if (!kind_field) fail("$.kind", "missing required field");
  if (!kind_field->is_string()) fail("$.kind", "expected a string");
  const std::string kind = kind_field->get<std::string>();

  ExperimentConfig config;
  if (kind == "run") {
    RunJob job;
    parse_run_base(f, job.run, true);
    job.record_adiabaticity = f.boolean("record_adiabaticity", false);
    config.job = job;
  } else if (kind == "sweep") {
    SweepConfig job;
    parse_run_base(f, job.base, false);
    job.gamma_grid = parse_grid(f, "gamma_grid_rad_ns");
    job.t_max_grid = parse_grid(f, "t_max_grid_ns");
    if (!(job.t_max_grid.front() > 0.0)) {
      fail(f.key_path("t_max_grid_ns"), "entries must be positive");
    }
    // the base still needs a nominal point so it validates on its own
    job.base.t_max = job.t_max_grid.front();
    job.seed = f.seed("seed", 0);
    config.job = job;
  } else if (kind == "disorder") {
    DisorderConfig job;
    parse_run_base(f, job.base, true);
    const double sigma = f.number("sigma", 0.0);
    if (!(sigma >= 0.0)) fail(f.key_path("sigma"), "must be non-negative");
    job.sigma = sigma;
    job.trials = f.integer("trials", 1);
    if (job.trials < 1) fail(f.key_path("trials"), "must be at least 1");
    job.seed = f.seed("seed", 0);
    config.job = job;
  } else if (kind == "spectra") {
    SpectraJob job;
    Fields& g = f;
    job.scheme = parse_scheme(g);
    job.n_sites = g.integer("n_sites", job.scheme == Scheme::ctapn ? 5 : 3);
    if (job.scheme == Scheme::ctapn && job.n_sites % 2 == 0) {
      fail(g.key_path("n_sites"), "n_sites must be odd");
    }
    job.omega_max = g.number("omega_max_rad_ns", job.omega_max);
    if (!(job.omega_max > 0.0)) {
      fail(g.key_path("omega_max_rad_ns"), "must be positive");
    }
    job.t_max = g.required_number("t_max_ns");
    if (!(job.t_max > 0.0)) fail(g.key_path("t_max_ns"), "must be positive");
    job.straddle_ratio = g.number("straddle_ratio", job.straddle_ratio);
    job.straddle_envelope = parse_envelope(g);
    job.adiab_samples = g.integer("adiab_samples", job.adiab_samples);
    if (job.adiab_samples < 100) {
      fail(g.key_path("adiab_samples"), "must be at least 100");
    }
    config.job = job;
  } else {
    fail("$.kind", "expected run, sweep, disorder or spectra");
  }
  config.output = parse_output(f);
  f.reject_unknown();
  return config;
}

json integrator_json(const IntegratorConfig& cfg) {
  json j;
  j["method"] =
      cfg.method == IntegratorMethod::rk4_fixed ? "rk4_fixed" : "oracle_expm";
  if (cfg.step_ns) j["step_ns"] = *cfg.step_ns;
  j["substeps"] = cfg.substeps;
  if (cfg.record_every) j["record_every"] = *cfg.record_every;
  return j;
}

void run_base_json(json& j, const RunConfig& run, bool with_point) {
  j["scheme"] = to_string(run.scheme);
  j["n_sites"] = run.n_sites;
  j["omega_max_rad_ns"] = run.omega_max;
  if (with_point) {
    j["t_max_ns"] = run.t_max;
    j["gamma_rad_ns"] = run.gamma;
  }
  j["spin_mode"] =
      run.spin_mode == SpinMode::site_spin ? "site_spin" : "charge_only";
  j["alpha"] = {run.alpha.real(), run.alpha.imag()};
  j["beta"] = {run.beta.real(), run.beta.imag()};
  j["straddle_ratio"] = run.straddle_ratio;
  j["straddle_envelope"] =
      run.straddle_envelope == StraddleEnvelope::gaussian ? "gaussian" : "constant";
  j["integrator"] = integrator_json(run.integrator);
  j["adiab_samples"] = run.adiab_samples;
}

}  // namespace

std::string config_kind(const ExperimentConfig& config) {
  if (std::holds_alternative<RunJob>(config.job)) return "run";
  if (std::holds_alternative<SweepConfig>(config.job)) return "sweep";
  if (std::holds_alternative<DisorderConfig>(config.job)) return "disorder";
  return "spectra";
}

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return parse_json(root);
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config file not found: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  json j;
  j["kind"] = config_kind(config);
  if (const auto* job = std::get_if<RunJob>(&config.job)) {
    run_base_json(j, job->run, true);
    j["record_adiabaticity"] = job->record_adiabaticity;
  } else if (const auto* sweep = std::get_if<SweepConfig>(&config.job)) {
    run_base_json(j, sweep->base, false);
    j["gamma_grid_rad_ns"] = sweep->gamma_grid;
    j["t_max_grid_ns"] = sweep->t_max_grid;
    j["seed"] = sweep->seed;
  } else if (const auto* dis = std::get_if<DisorderConfig>(&config.job)) {
    run_base_json(j, dis->base, true);
    j["sigma"] = dis->sigma;
    j["trials"] = dis->trials;
    j["seed"] = dis->seed;
  } else if (const auto* spectra = std::get_if<SpectraJob>(&config.job)) {
    j["scheme"] = to_string(spectra->scheme);
    j["n_sites"] = spectra->n_sites;
    j["omega_max_rad_ns"] = spectra->omega_max;
    j["t_max_ns"] = spectra->t_max;
    j["straddle_ratio"] = spectra->straddle_ratio;
    j["straddle_envelope"] =
        spectra->straddle_envelope == StraddleEnvelope::gaussian ? "gaussian"
                                                                 : "constant";
    j["adiab_samples"] = spectra->adiab_samples;
  }
  j["out_dir"] = config.output.out_dir;
  j["plot"] = config.output.plot;
  return j.dump();
}

}  // namespace ctap
