#include "pea/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "pea/design.hpp"
#include "pea/extrapolation.hpp"
#include "pea/oracle.hpp"
#include "pea/rng.hpp"
#include "pea/version.hpp"

namespace pea {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ConfigMap ConfigMap::parse(const std::string& text) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') {
      require(t.back() == ']', ErrorCode::config,
              "config line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      require(!section.empty(), ErrorCode::config,
              "config line " + std::to_string(line_no) + ": empty section name");
      continue;
    }
    std::size_t eq = t.find('=');
    require(eq != std::string::npos, ErrorCode::config,
            "config line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    require(!key.empty(), ErrorCode::config,
            "config line " + std::to_string(line_no) + ": empty key");
    cfg.values_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::config, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ConfigMap cfg = parse(buf.str());
  cfg.base_dir_ = std::filesystem::path(path).parent_path().string();
  return cfg;
}

void ConfigMap::set(const std::string& dotted_key, const std::string& value) {
  values_[dotted_key] = value;
}

void ConfigMap::apply_override(const std::string& key_equals_value) {
  std::size_t eq = key_equals_value.find('=');
  require(eq != std::string::npos && eq > 0, ErrorCode::config,
          "override must look like section.key=value: " + key_equals_value);
  set(trim(key_equals_value.substr(0, eq)), trim(key_equals_value.substr(eq + 1)));
}

bool ConfigMap::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ConfigMap::get_string(const std::string& key) const {
  auto it = values_.find(key);
  require(it != values_.end(), ErrorCode::config, "missing config key: " + key);
  return it->second;
}

std::string ConfigMap::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long long ConfigMap::get_int(const std::string& key) const {
  std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    long long out = std::stoll(v, &pos);
    require(pos == v.size(), ErrorCode::config, "");
    return out;
  } catch (...) {
    fail(ErrorCode::config, "config key " + key + ": expected an integer, got '" + v + "'");
  }
}

double ConfigMap::get_double(const std::string& key) const {
  std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    require(pos == v.size(), ErrorCode::config, "");
    return out;
  } catch (...) {
    fail(ErrorCode::config, "config key " + key + ": expected a number, got '" + v + "'");
  }
}

bool ConfigMap::get_bool(const std::string& key) const {
  std::string v = get_string(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(ErrorCode::config, "config key " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> ConfigMap::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(get_string(key))) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      fail(ErrorCode::config, "config key " + key + ": bad list entry '" + item + "'");
    }
  }
  return out;
}

std::vector<long long> ConfigMap::get_int_list(const std::string& key) const {
  std::vector<long long> out;
  for (const std::string& item : split_list(get_string(key))) {
    try {
      out.push_back(std::stoll(item));
    } catch (...) {
      fail(ErrorCode::config, "config key " + key + ": bad list entry '" + item + "'");
    }
  }
  return out;
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "scaling") return ExperimentKind::scaling;
  if (name == "tfim") return ExperimentKind::tfim;
  if (name == "predict") return ExperimentKind::predict;
  if (name == "design") return ExperimentKind::design;
  fail(ErrorCode::config, "unknown experiment kind: " + name);
}

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::scaling: return "scaling";
    case ExperimentKind::tfim: return "tfim";
    case ExperimentKind::predict: return "predict";
    case ExperimentKind::design: return "design";
  }
  fail(ErrorCode::internal, "corrupt experiment kind");
}

namespace {

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string compute_config_hash(const ConfigMap& config, const NoiseLayerModel& hardware,
                                const NoiseLayerModel& target) {
  std::uint64_t h = kFnvOffset;
  for (const auto& [key, value] : config.entries()) {
    // Execution knobs must not change the identity of the experiment.
    if (key == "run.out" || key == "run.threads" || key == "run.seed") continue;
    h = fnv1a(h, key + "=" + value + "\n");
  }
  h = fnv1a(h, "hardware:" + hardware.to_json());
  h = fnv1a(h, "target:" + target.to_json());
  return hex64(h);
}

}  // namespace

CircuitSpec ExperimentSetup::build_circuit() const {
  return build_ising_circuit(circuit_kind, n_qubits, coupling_j, field_h, dt, steps, hardware,
                             noise_on_single_qubit_layers);
}

ExperimentSetup resolve_setup(const ConfigMap& config, ExperimentKind kind) {
  ExperimentSetup s;
  s.kind = kind;
  if (config.has("run.kind")) {
    require(experiment_kind_from_string(config.get_string("run.kind")) == kind, ErrorCode::config,
            "config run.kind disagrees with the requested experiment");
  }

  std::string circuit_kind = config.get_string("circuit.kind");
  if (circuit_kind == "clifford_zz") s.circuit_kind = IsingKind::clifford_zz;
  else if (circuit_kind == "tfim") s.circuit_kind = IsingKind::tfim;
  else fail(ErrorCode::config, "circuit.kind must be clifford_zz or tfim, got " + circuit_kind);

  s.n_qubits = static_cast<int>(config.get_int("circuit.n_qubits"));
  s.dt = config.get_double("circuit.dt");
  s.steps = static_cast<int>(config.get_int("circuit.steps"));
  require(s.steps >= 1, ErrorCode::config, "circuit.steps must be >= 1");
  require(s.dt > 0.0, ErrorCode::config, "circuit.dt must be positive");
  s.field_h = config.has("circuit.h") ? config.get_double("circuit.h") : 0.0;
  if (s.circuit_kind == IsingKind::clifford_zz) {
    s.coupling_j =
        config.has("circuit.j") ? config.get_double("circuit.j") : clifford_zz_coupling(s.dt);
  } else {
    require(config.has("circuit.j"), ErrorCode::config, "tfim circuit needs circuit.j");
    s.coupling_j = config.get_double("circuit.j");
  }
  s.noise_on_single_qubit_layers =
      config.has("circuit.noise_on_single_qubit_layers")
          ? config.get_bool("circuit.noise_on_single_qubit_layers")
          : false;

  try {
    s.hardware = std::make_shared<const NoiseLayerModel>(
        NoiseLayerModel::load(resolve_path(config.base_dir(), config.get_string("models.hardware"))));
    s.target = std::make_shared<const NoiseLayerModel>(
        NoiseLayerModel::load(resolve_path(config.base_dir(), config.get_string("models.target"))));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    fail(ErrorCode::config, std::string("noise model: ") + e.what());
  }
  require(s.hardware->n_qubits() == s.n_qubits && s.target->n_qubits() == s.n_qubits,
          ErrorCode::config, "noise model register does not match circuit.n_qubits");

  try {
    s.observable = PauliString::from_text(config.get_string("observable.pauli"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    fail(ErrorCode::config, std::string("observable.pauli: ") + e.what());
  }
  require(s.observable.n_qubits() == s.n_qubits, ErrorCode::config,
          "observable length does not match circuit.n_qubits");

  std::string gains = config.get_or("run.gains", "optimal");
  if (gains == "optimal") {
    s.gains_optimal = true;
    require(kind != ExperimentKind::tfim, ErrorCode::config,
            "run.gains=optimal needs the Clifford closed form; give an explicit gain list");
  } else {
    s.gains_optimal = false;
    s.gains = config.get_double_list("run.gains");
    require(s.gains.size() >= 2, ErrorCode::config, "run.gains needs at least two gains");
    for (std::size_t i = 0; i < s.gains.size(); ++i) {
      require(s.gains[i] >= 1.0, ErrorCode::config, "sampling gains must be >= 1");
      if (i > 0) {
        require(s.gains[i] > s.gains[i - 1], ErrorCode::config,
                "run.gains must be strictly increasing");
      }
    }
  }

  if (kind == ExperimentKind::scaling || kind == ExperimentKind::tfim ||
      kind == ExperimentKind::design) {
    s.budgets = config.get_int_list("run.budgets");
    require(!s.budgets.empty(), ErrorCode::config, "run.budgets must not be empty");
    for (std::size_t i = 0; i < s.budgets.size(); ++i) {
      require(s.budgets[i] >= 1, ErrorCode::config, "budgets must be positive");
      if (i > 0) {
        require(s.budgets[i] > s.budgets[i - 1], ErrorCode::config,
                "budgets must be strictly increasing");
      }
    }
  }

  s.repetitions = static_cast<int>(config.has("run.repetitions")
                                       ? config.get_int("run.repetitions")
                                       : 20);
  require(s.repetitions >= 1, ErrorCode::config, "run.repetitions must be >= 1");
  s.seed = config.has("run.seed") ? static_cast<std::uint64_t>(config.get_int("run.seed")) : 1;
  s.out_dir = config.get_or("run.out", std::string("out/") + experiment_kind_name(kind));
  s.threads = static_cast<int>(config.has("run.threads") ? config.get_int("run.threads") : 1);
  require(s.threads >= 1, ErrorCode::config, "run.threads must be >= 1");
  s.config_hash = compute_config_hash(config, *s.hardware, *s.target);
  return s;
}

// ---------------------------------------------------------------------------
// Emission helpers
// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* kCsvHeader =
    "budget,repetition,step,time,gain,shots,mean,std_error,status,slope,intercept,"
    "intercept_error,extrapolated,extrapolated_error,oracle_reference,bound_partial,"
    "bound_regular,std_error_band,seed,config_hash,version";

struct FitOutcome {
  std::string status = "ok";
  bool ok = false;
  FitResult fit{};
  ExtrapolationResult extrapolated{};
  std::vector<double> residuals;
};

FitOutcome try_fit(const GainSeries& series) {
  FitOutcome out;
  try {
    out.fit = fit_log_linear(series);
    out.extrapolated = extrapolate(out.fit);
    out.ok = true;
    for (const GainPoint& p : series.points) {
      out.residuals.push_back(std::log(std::abs(p.mean)) -
                              (out.fit.slope * p.gain + out.fit.intercept));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::signal_lost) out.status = "signal_lost";
    else if (e.code() == ErrorCode::sign_inconsistency) out.status = "sign_inconsistency";
    else throw;
  }
  return out;
}

class CsvFile {
public:
  explicit CsvFile(const std::string& path) : out_(path) {
    require(out_.good(), ErrorCode::io, "cannot write " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void raw(const std::string& line) { out_ << line << '\n'; }

private:
  std::ofstream out_;
};

void write_reference_csv(const std::string& path, const ReferenceTrace& trace) {
  CsvFile csv(path);
  csv.raw("step,value");
  for (const TracePoint& p : trace) csv.row({std::to_string(p.step), fmt_double(p.value)});
}

nlohmann::ordered_json fit_json(const FitOutcome& o) {
  nlohmann::ordered_json j;
  j["status"] = o.status;
  if (o.ok) {
    j["slope"] = o.fit.slope;
    j["intercept"] = o.fit.intercept;
    j["intercept_error"] = o.fit.intercept_error;
    j["sign"] = o.fit.sign;
    j["residuals"] = o.residuals;
    j["extrapolated"] = o.extrapolated.value;
    j["extrapolated_error"] = o.extrapolated.error;
  }
  return j;
}

nlohmann::ordered_json config_echo_json(const ExperimentSetup& s) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_kind_name(s.kind);
  j["circuit_kind"] = s.circuit_kind == IsingKind::clifford_zz ? "clifford_zz" : "tfim";
  j["n_qubits"] = s.n_qubits;
  j["coupling_j"] = s.coupling_j;
  j["field_h"] = s.field_h;
  j["dt"] = s.dt;
  j["steps"] = s.steps;
  j["noise_on_single_qubit_layers"] = s.noise_on_single_qubit_layers;
  j["observable"] = s.observable.to_text();
  j["gains"] = s.gains_optimal ? nlohmann::ordered_json("optimal")
                               : nlohmann::ordered_json(s.gains);
  j["budgets"] = s.budgets;
  j["repetitions"] = s.repetitions;
  j["seed"] = s.seed;
  j["threads"] = s.threads;
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string write_outputs(const ExperimentSetup& setup, const std::string& csv_body,
                          const ReferenceTrace& trace, nlohmann::ordered_json summary,
                          ExperimentOutput& output) {
  std::filesystem::create_directories(setup.out_dir);
  std::string csv_path =
      (std::filesystem::path(setup.out_dir) / (std::string(experiment_kind_name(setup.kind)) + ".csv"))
          .string();
  {
    std::ofstream out(csv_path);
    require(out.good(), ErrorCode::io, "cannot write " + csv_path);
    out << csv_body;
  }
  output.files_written.push_back(csv_path);

  std::string ref_path = (std::filesystem::path(setup.out_dir) / "reference.csv").string();
  write_reference_csv(ref_path, trace);
  output.files_written.push_back(ref_path);

  std::string summary_path = (std::filesystem::path(setup.out_dir) / "summary.json").string();
  output.summary_json = summary.dump(2) + "\n";
  {
    std::ofstream out(summary_path);
    require(out.good(), ErrorCode::io, "cannot write " + summary_path);
    out << output.summary_json;
  }
  output.files_written.push_back(summary_path);

  std::ostringstream report;
  for (const std::string& f : output.files_written) report << "wrote " << f << '\n';
  output.report_text = report.str();
  return csv_path;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scaling experiment: optimal two-gain design per budget, extrapolation to
// the target model, analytic bounds alongside.
// ---------------------------------------------------------------------------

ExperimentOutput run_scaling_experiment(const ExperimentSetup& setup) {
  Timer timer;
  require(setup.circuit_kind == IsingKind::clifford_zz, ErrorCode::config,
          "the scaling experiment requires circuit.kind = clifford_zz");
  CircuitSpec circuit = setup.build_circuit();
  AmplificationPlan plan = AmplificationPlan::build(*setup.hardware, *setup.target);
  FidelityProduct fp = fidelity_products(circuit, plan, setup.observable);

  std::vector<double> gains;
  if (setup.gains_optimal) {
    GainPair gp = optimal_gains(fp);
    gains = {gp.g1, gp.g2};
  } else {
    gains = setup.gains;
  }

  ReferenceTrace trace = evolve_channel_composition(circuit, *setup.target,
                                                    zero_density(setup.n_qubits), setup.observable);
  double oracle_final = trace.back().value;
  double time_final = setup.steps * setup.dt;

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  nlohmann::ordered_json budgets_json = nlohmann::ordered_json::array();

  for (std::size_t bi = 0; bi < setup.budgets.size(); ++bi) {
    long long budget = setup.budgets[bi];
    ShotPlan shot_plan = optimal_shots(gains, fp, budget);

    std::string bound_partial, bound_regular;
    if (fp.kappa > 1.0) bound_partial = fmt_double(min_error_bound(fp, budget));
    if (fp.k < 1.0) {
      bound_regular = fmt_double(min_error_bound(make_fidelity_product(fp.k, 1.0), budget));
    }
    std::string band = fmt_double(1.0 / std::sqrt(static_cast<double>(budget)));

    nlohmann::ordered_json budget_json;
    budget_json["budget"] = budget;
    budget_json["gains"] = gains;
    budget_json["shots"] = shot_plan.shots;
    if (!bound_partial.empty()) budget_json["bound_partial"] = min_error_bound(fp, budget);
    if (!bound_regular.empty()) {
      budget_json["bound_regular"] = min_error_bound(make_fidelity_product(fp.k, 1.0), budget);
    }
    nlohmann::ordered_json reps_json = nlohmann::ordered_json::array();

    for (int rep = 0; rep < setup.repetitions; ++rep) {
      GainSeries series;
      for (std::size_t gi = 0; gi < gains.size(); ++gi) {
        std::uint64_t sample_seed = mix_key(setup.seed, bi, static_cast<std::uint64_t>(rep), gi);
        SampleResult r = sample_noisy_expectation(circuit, plan, setup.observable, gains[gi],
                                                  shot_plan.shots[gi], sample_seed, setup.threads);
        series.points.push_back({gains[gi], r.mean, r.std_error, r.shots});
      }
      FitOutcome outcome = try_fit(series);

      for (std::size_t gi = 0; gi < gains.size(); ++gi) {
        const GainPoint& p = series.points[gi];
        csv << budget << ',' << rep << ',' << setup.steps << ',' << fmt_double(time_final) << ','
            << fmt_double(p.gain) << ',' << p.shots << ',' << fmt_double(p.mean) << ','
            << fmt_double(p.std_error) << ',' << outcome.status << ',';
        if (outcome.ok) {
          csv << fmt_double(outcome.fit.slope) << ',' << fmt_double(outcome.fit.intercept) << ','
              << fmt_double(outcome.fit.intercept_error) << ','
              << fmt_double(outcome.extrapolated.value) << ','
              << fmt_double(outcome.extrapolated.error) << ',';
        } else {
          csv << ",,,,";
        }
        csv << fmt_double(oracle_final) << ',' << bound_partial << ',' << bound_regular << ','
            << band << ',' << setup.seed << ',' << setup.config_hash << ',' << kVersion << '\n';
      }

      nlohmann::ordered_json rep_json;
      rep_json["repetition"] = rep;
      rep_json["points"] = nlohmann::ordered_json::array();
      for (const GainPoint& p : series.points) {
        rep_json["points"].push_back({{"gain", p.gain},
                                      {"mean", p.mean},
                                      {"std_error", p.std_error},
                                      {"shots", p.shots}});
      }
      rep_json["fit"] = fit_json(outcome);
      reps_json.push_back(std::move(rep_json));
    }
    budget_json["repetitions"] = std::move(reps_json);
    budgets_json.push_back(std::move(budget_json));
  }

  nlohmann::ordered_json summary;
  summary["experiment"] = "scaling";
  summary["version"] = kVersion;
  summary["config_hash"] = setup.config_hash;
  summary["config"] = config_echo_json(setup);
  summary["plan"] = nlohmann::ordered_json::parse(plan.summary_json());
  summary["fidelity_products"] = {{"k", fp.k}, {"k_tilde", fp.k_tilde}, {"kappa", fp.kappa}};
  summary["oracle_reference_final"] = oracle_final;
  summary["budgets"] = std::move(budgets_json);

  ExperimentOutput output;
  summary["runtime_seconds"] = timer.seconds();
  write_outputs(setup, csv.str(), trace, std::move(summary), output);
  return output;
}

// ---------------------------------------------------------------------------
// TFIM experiment: per time step, sample the configured gains with an even
// shot split, fit a single exponential, compare with the exact composition.
// ---------------------------------------------------------------------------

ExperimentOutput run_tfim_experiment(const ExperimentSetup& setup) {
  Timer timer;
  require(setup.circuit_kind == IsingKind::tfim, ErrorCode::config,
          "the tfim experiment requires circuit.kind = tfim");
  CircuitSpec full = setup.build_circuit();
  AmplificationPlan plan = AmplificationPlan::build(*setup.hardware, *setup.target);
  const std::vector<double>& gains = setup.gains;

  ReferenceTrace trace = evolve_channel_composition(full, *setup.target,
                                                    zero_density(setup.n_qubits), setup.observable);

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  nlohmann::ordered_json budgets_json = nlohmann::ordered_json::array();
  int per_step = full.layers_per_step();

  for (std::size_t bi = 0; bi < setup.budgets.size(); ++bi) {
    long long budget = setup.budgets[bi];
    require(budget >= static_cast<long long>(gains.size()), ErrorCode::config,
            "budget below one shot per gain");
    // Even split of the per-step budget over the gains.
    std::vector<long long> shots(gains.size(), budget / static_cast<long long>(gains.size()));
    for (std::size_t gi = 0; gi < static_cast<std::size_t>(budget % gains.size()); ++gi) {
      shots[gi] += 1;
    }
    std::string band = fmt_double(1.0 / std::sqrt(static_cast<double>(budget)));

    nlohmann::ordered_json budget_json;
    budget_json["budget"] = budget;
    budget_json["gains"] = gains;
    budget_json["shots"] = shots;
    nlohmann::ordered_json reps_json = nlohmann::ordered_json::array();

    for (int rep = 0; rep < setup.repetitions; ++rep) {
      nlohmann::ordered_json steps_json = nlohmann::ordered_json::array();
      for (int step = 1; step <= setup.steps; ++step) {
        CircuitSpec sub{full.n_qubits, step,
                        std::vector<Layer>(full.layers.begin(),
                                           full.layers.begin() + step * per_step)};
        GainSeries series;
        for (std::size_t gi = 0; gi < gains.size(); ++gi) {
          std::uint64_t sample_seed = mix_key(mix_key(setup.seed, bi, static_cast<std::uint64_t>(rep)),
                                              static_cast<std::uint64_t>(step), gi);
          SampleResult r = sample_noisy_expectation(sub, plan, setup.observable, gains[gi],
                                                    shots[gi], sample_seed, setup.threads);
          series.points.push_back({gains[gi], r.mean, r.std_error, r.shots});
        }
        FitOutcome outcome = try_fit(series);
        double oracle_step = trace[static_cast<std::size_t>(step)].value;

        for (std::size_t gi = 0; gi < gains.size(); ++gi) {
          const GainPoint& p = series.points[gi];
          csv << budget << ',' << rep << ',' << step << ',' << fmt_double(step * setup.dt) << ','
              << fmt_double(p.gain) << ',' << p.shots << ',' << fmt_double(p.mean) << ','
              << fmt_double(p.std_error) << ',' << outcome.status << ',';
          if (outcome.ok) {
            csv << fmt_double(outcome.fit.slope) << ',' << fmt_double(outcome.fit.intercept) << ','
                << fmt_double(outcome.fit.intercept_error) << ','
                << fmt_double(outcome.extrapolated.value) << ','
                << fmt_double(outcome.extrapolated.error) << ',';
          } else {
            csv << ",,,,";
          }
          csv << fmt_double(oracle_step) << ",,," << band << ',' << setup.seed << ','
              << setup.config_hash << ',' << kVersion << '\n';
        }

        nlohmann::ordered_json step_json;
        step_json["step"] = step;
        step_json["time"] = step * setup.dt;
        step_json["oracle_reference"] = oracle_step;
        step_json["points"] = nlohmann::ordered_json::array();
        for (const GainPoint& p : series.points) {
          step_json["points"].push_back({{"gain", p.gain},
                                         {"mean", p.mean},
                                         {"std_error", p.std_error},
                                         {"shots", p.shots}});
        }
        step_json["fit"] = fit_json(outcome);
        steps_json.push_back(std::move(step_json));
      }
      reps_json.push_back({{"repetition", rep}, {"steps", std::move(steps_json)}});
    }
    budget_json["repetitions"] = std::move(reps_json);
    budgets_json.push_back(std::move(budget_json));
  }

  nlohmann::ordered_json summary;
  summary["experiment"] = "tfim";
  summary["version"] = kVersion;
  summary["config_hash"] = setup.config_hash;
  summary["config"] = config_echo_json(setup);
  summary["plan"] = nlohmann::ordered_json::parse(plan.summary_json());
  summary["oracle_reference"] = nlohmann::ordered_json::array();
  for (const TracePoint& p : trace) {
    summary["oracle_reference"].push_back({{"step", p.step}, {"value", p.value}});
  }
  summary["budgets"] = std::move(budgets_json);

  ExperimentOutput output;
  summary["runtime_seconds"] = timer.seconds();
  write_outputs(setup, csv.str(), trace, std::move(summary), output);
  return output;
}

// ---------------------------------------------------------------------------
// Predict: closed-form report, no sampling.
// ---------------------------------------------------------------------------

ExperimentOutput run_predict(const ExperimentSetup& setup) {
  CircuitSpec circuit = setup.build_circuit();
  AmplificationPlan plan = AmplificationPlan::build(*setup.hardware, *setup.target);

  std::vector<std::vector<CliffordGate>> layers;
  try {
    layers = clifford_layers(circuit);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_clifford) {
      fail(ErrorCode::not_clifford,
           "prediction needs a Clifford circuit (the closed form propagates a single Pauli); "
           "this circuit is not Clifford — use sampling instead");
    }
    throw;
  }
  std::vector<PauliString> seen = propagate_observable(layers, setup.observable);
  FidelityProduct fp = fidelity_products(circuit, plan, setup.observable);
  double ideal = ideal_expectation(circuit, setup.observable);
  double at_gain_one = predict_noisy_expectation(circuit, plan, setup.observable, 1.0);
  double at_gain_zero = predict_noisy_expectation(circuit, plan, setup.observable, 0.0);

  std::ostringstream report;
  report << "observable " << setup.observable.to_text() << " propagated through "
         << circuit.layers.size() << " layers\n";
  for (std::size_t l = 0; l < seen.size(); ++l) {
    report << "  layer " << l << ": sees " << seen[l].to_text()
           << (circuit.layers[l].noise ? "" : "  (noiseless layer)") << '\n';
  }
  report << "\nchannel plan:\n" << plan.summary_table() << '\n';
  char line[160];
  std::snprintf(line, sizeof(line),
                "K (hardware)        = %.10g\nK_tilde (target)    = %.10g\nkappa               = "
                "%.10g\n",
                fp.k, fp.k_tilde, fp.kappa);
  report << line;
  std::snprintf(line, sizeof(line),
                "ideal expectation   = %.10g\npredicted at G = 1  = %.10g\npredicted at G = 0  = "
                "%.10g\n",
                ideal, at_gain_one, at_gain_zero);
  report << line;

  nlohmann::ordered_json summary;
  summary["experiment"] = "predict";
  summary["version"] = kVersion;
  summary["config_hash"] = setup.config_hash;
  summary["config"] = config_echo_json(setup);
  summary["plan"] = nlohmann::ordered_json::parse(plan.summary_json());
  summary["propagated_observables"] = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < seen.size(); ++l) {
    summary["propagated_observables"].push_back(
        {{"layer", l}, {"pauli", seen[l].to_text()}, {"noisy", circuit.layers[l].noise != nullptr}});
  }
  summary["fidelity_products"] = {{"k", fp.k}, {"k_tilde", fp.k_tilde}, {"kappa", fp.kappa}};
  summary["ideal_expectation"] = ideal;
  summary["predicted_at_gain_1"] = at_gain_one;
  summary["predicted_at_gain_0"] = at_gain_zero;

  ExperimentOutput output;
  output.summary_json = summary.dump(2) + "\n";
  output.report_text = report.str();
  return output;
}

// ---------------------------------------------------------------------------
// Design: print the optimal experiment for the largest configured budget.
// ---------------------------------------------------------------------------

ExperimentOutput run_design(const ExperimentSetup& setup) {
  CircuitSpec circuit = setup.build_circuit();
  AmplificationPlan plan = AmplificationPlan::build(*setup.hardware, *setup.target);
  FidelityProduct fp = fidelity_products(circuit, plan, setup.observable);
  long long budget = setup.budgets.back();

  std::vector<double> gains;
  if (setup.gains_optimal) {
    GainPair gp = optimal_gains(fp);
    gains = {gp.g1, gp.g2};
  } else {
    gains = setup.gains;
  }
  ShotPlan shot_plan = optimal_shots(gains, fp, budget);
  std::vector<double> real_shots(shot_plan.shots.begin(), shot_plan.shots.end());
  double design_error = error_of_design(gains, real_shots, fp);

  std::ostringstream report;
  char line[160];
  std::snprintf(line, sizeof(line), "K = %.10g, K_tilde = %.10g, kappa = %.10g\n", fp.k,
                fp.k_tilde, fp.kappa);
  report << line;
  report << "total shots M = " << budget << '\n';
  for (std::size_t i = 0; i < gains.size(); ++i) {
    std::snprintf(line, sizeof(line), "G%zu = %.10g   S%zu = %lld\n", i + 1, gains[i], i + 1,
                  static_cast<long long>(shot_plan.shots[i]));
    report << line;
  }
  std::snprintf(line, sizeof(line), "random error of this design = %.10g\n", design_error);
  report << line;
  if (fp.kappa > 1.0) {
    std::snprintf(line, sizeof(line), "minimum-error bound         = %.10g\n",
                  min_error_bound(fp, budget));
    report << line;
  }

  nlohmann::ordered_json summary;
  summary["experiment"] = "design";
  summary["version"] = kVersion;
  summary["config_hash"] = setup.config_hash;
  summary["config"] = config_echo_json(setup);
  summary["fidelity_products"] = {{"k", fp.k}, {"k_tilde", fp.k_tilde}, {"kappa", fp.kappa}};
  summary["budget"] = budget;
  summary["gains"] = gains;
  summary["shots"] = shot_plan.shots;
  summary["design_error"] = design_error;
  if (fp.kappa > 1.0) summary["min_error_bound"] = min_error_bound(fp, budget);

  ExperimentOutput output;
  output.summary_json = summary.dump(2) + "\n";
  output.report_text = report.str();
  return output;
}

ExperimentOutput run_experiment_file(const std::string& config_path, const std::string& kind,
                                     const std::vector<std::string>& overrides) {
  ConfigMap config = ConfigMap::load(config_path);
  for (const std::string& o : overrides) config.apply_override(o);
  ExperimentKind k = experiment_kind_from_string(kind);
  ExperimentSetup setup = resolve_setup(config, k);
  switch (k) {
    case ExperimentKind::scaling: return run_scaling_experiment(setup);
    case ExperimentKind::tfim: return run_tfim_experiment(setup);
    case ExperimentKind::predict: return run_predict(setup);
    case ExperimentKind::design: return run_design(setup);
  }
  fail(ErrorCode::internal, "corrupt experiment kind");
}

}  // namespace pea
