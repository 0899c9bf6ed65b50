#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pea/amplification.hpp"
#include "pea/circuit.hpp"
#include "pea/noise_model.hpp"
#include "pea/pauli.hpp"

namespace pea {

// Flat "section.key = value" configuration. Sections come from INI-style
// headers; every key can be overridden ("run.seed=7") from the CLI.
class ConfigMap {
public:
  static ConfigMap parse(const std::string& text);
  static ConfigMap load(const std::string& path);

  void set(const std::string& dotted_key, const std::string& value);
  void apply_override(const std::string& key_equals_value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<long long> get_int_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

  // Directory of the file this config was loaded from; relative model paths
  // resolve against it.
  const std::string& base_dir() const { return base_dir_; }
  void set_base_dir(std::string dir) { base_dir_ = std::move(dir); }

private:
  std::map<std::string, std::string> values_;
  std::string base_dir_;
};

enum class ExperimentKind { scaling, tfim, predict, design };

ExperimentKind experiment_kind_from_string(const std::string& name);
const char* experiment_kind_name(ExperimentKind kind);

// Fully resolved experiment inputs.
struct ExperimentSetup {
  ExperimentKind kind;
  IsingKind circuit_kind;
  int n_qubits;
  double coupling_j;
  double field_h;
  double dt;
  int steps;
  bool noise_on_single_qubit_layers;
  std::shared_ptr<const NoiseLayerModel> hardware;
  std::shared_ptr<const NoiseLayerModel> target;
  PauliString observable;
  bool gains_optimal;
  std::vector<double> gains;  // empty when gains_optimal
  std::vector<long long> budgets;
  int repetitions;
  std::uint64_t seed;
  std::string out_dir;
  int threads;
  std::string config_hash;  // physics inputs only; excludes run.out / run.threads

  CircuitSpec build_circuit() const;
};

ExperimentSetup resolve_setup(const ConfigMap& config, ExperimentKind kind);

struct ExperimentOutput {
  std::string summary_json;
  std::string report_text;  // predict / design human-readable report
  std::vector<std::string> files_written;
};

ExperimentOutput run_scaling_experiment(const ExperimentSetup& setup);
ExperimentOutput run_tfim_experiment(const ExperimentSetup& setup);
ExperimentOutput run_predict(const ExperimentSetup& setup);
ExperimentOutput run_design(const ExperimentSetup& setup);

// Load config, apply "key=value" overrides, dispatch on kind.
ExperimentOutput run_experiment_file(const std::string& config_path, const std::string& kind,
                                     const std::vector<std::string>& overrides);

}  // namespace pea
