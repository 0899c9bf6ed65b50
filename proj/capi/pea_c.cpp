#include "pea.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "pea/amplification.hpp"
#include "pea/circuit.hpp"
#include "pea/density.hpp"
#include "pea/design.hpp"
#include "pea/error.hpp"
#include "pea/experiment.hpp"
#include "pea/extrapolation.hpp"
#include "pea/noise_model.hpp"
#include "pea/oracle.hpp"
#include "pea/version.hpp"

struct pea_noise_model {
  pea::NoiseLayerModel model;
};

struct pea_circuit {
  pea::CircuitSpec circuit;
};

struct pea_plan {
  pea::AmplificationPlan plan;
};

namespace {

thread_local std::string g_last_error;

pea_status status_of(pea::ErrorCode code) {
  switch (code) {
    case pea::ErrorCode::invalid_argument: return PEA_ERR_INVALID_ARGUMENT;
    case pea::ErrorCode::dimension_mismatch: return PEA_ERR_DIMENSION;
    case pea::ErrorCode::domain: return PEA_ERR_DOMAIN;
    case pea::ErrorCode::parse: return PEA_ERR_PARSE;
    case pea::ErrorCode::not_clifford: return PEA_ERR_NOT_CLIFFORD;
    case pea::ErrorCode::signal_lost: return PEA_ERR_SIGNAL_LOST;
    case pea::ErrorCode::sign_inconsistency: return PEA_ERR_SIGN_INCONSISTENCY;
    case pea::ErrorCode::design: return PEA_ERR_DESIGN;
    case pea::ErrorCode::config: return PEA_ERR_CONFIG;
    case pea::ErrorCode::convergence: return PEA_ERR_CONVERGENCE;
    case pea::ErrorCode::io: return PEA_ERR_IO;
    case pea::ErrorCode::internal: return PEA_ERR_INTERNAL;
  }
  return PEA_ERR_INTERNAL;
}

template <typename Fn>
pea_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PEA_OK;
  } catch (const pea::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PEA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PEA_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_arg(bool ok, const char* what) {
  pea::require(ok, pea::ErrorCode::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* pea_version(void) { return pea::kVersion; }

const char* pea_last_error(void) { return g_last_error.c_str(); }

void pea_string_free(char* s) { delete[] s; }

pea_status pea_noise_model_load(const char* path, pea_noise_model** out) {
  return guarded([&] {
    require_arg(path && out, "path and out must not be NULL");
    *out = new pea_noise_model{pea::NoiseLayerModel::load(path)};
  });
}

pea_status pea_noise_model_parse(const char* json_text, pea_noise_model** out) {
  return guarded([&] {
    require_arg(json_text && out, "json_text and out must not be NULL");
    *out = new pea_noise_model{pea::NoiseLayerModel::from_json(json_text)};
  });
}

void pea_noise_model_free(pea_noise_model* model) { delete model; }

pea_status pea_noise_model_n_qubits(const pea_noise_model* model, int* out) {
  return guarded([&] {
    require_arg(model && out, "model and out must not be NULL");
    *out = model->model.n_qubits();
  });
}

pea_status pea_noise_model_to_json(const pea_noise_model* model, char** out) {
  return guarded([&] {
    require_arg(model && out, "model and out must not be NULL");
    *out = copy_string(model->model.to_json());
  });
}

pea_status pea_pauli_fidelity(const pea_noise_model* model, const char* observable, double* out) {
  return guarded([&] {
    require_arg(model && observable && out, "model, observable and out must not be NULL");
    *out = model->model.pauli_fidelity(pea::PauliString::from_text(observable));
  });
}

pea_status pea_sample_probability(double lambda, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out must not be NULL");
    *out = pea::sample_probability(lambda);
  });
}

pea_status pea_circuit_build_ising(const char* kind, int n_qubits, double coupling_j,
                                   double field_h, double dt, int n_steps,
                                   const pea_noise_model* noise,
                                   int noise_on_single_qubit_layers, pea_circuit** out) {
  return guarded([&] {
    require_arg(kind && out, "kind and out must not be NULL");
    pea::IsingKind k;
    if (std::strcmp(kind, "clifford_zz") == 0) k = pea::IsingKind::clifford_zz;
    else if (std::strcmp(kind, "tfim") == 0) k = pea::IsingKind::tfim;
    else pea::fail(pea::ErrorCode::invalid_argument, "kind must be clifford_zz or tfim");
    std::shared_ptr<const pea::NoiseLayerModel> model;
    if (noise) model = std::make_shared<const pea::NoiseLayerModel>(noise->model);
    *out = new pea_circuit{pea::build_ising_circuit(k, n_qubits, coupling_j, field_h, dt, n_steps,
                                                    model, noise_on_single_qubit_layers != 0)};
  });
}

void pea_circuit_free(pea_circuit* circuit) { delete circuit; }

pea_status pea_circuit_n_steps(const pea_circuit* circuit, int* out) {
  return guarded([&] {
    require_arg(circuit && out, "circuit and out must not be NULL");
    *out = circuit->circuit.n_steps;
  });
}

pea_status pea_ideal_expectation(const pea_circuit* circuit, const char* observable, double* out) {
  return guarded([&] {
    require_arg(circuit && observable && out, "circuit, observable and out must not be NULL");
    *out = pea::ideal_expectation(circuit->circuit, pea::PauliString::from_text(observable));
  });
}

pea_status pea_plan_build(const pea_noise_model* hardware, const pea_noise_model* target,
                          pea_plan** out) {
  return guarded([&] {
    require_arg(hardware && target && out, "hardware, target and out must not be NULL");
    *out = new pea_plan{pea::AmplificationPlan::build(hardware->model, target->model)};
  });
}

void pea_plan_free(pea_plan* plan) { delete plan; }

pea_status pea_plan_summary_json(const pea_plan* plan, char** out) {
  return guarded([&] {
    require_arg(plan && out, "plan and out must not be NULL");
    *out = copy_string(plan->plan.summary_json());
  });
}

pea_status pea_plan_summary_table(const pea_plan* plan, char** out) {
  return guarded([&] {
    require_arg(plan && out, "plan and out must not be NULL");
    *out = copy_string(plan->plan.summary_table());
  });
}

pea_status pea_predict_expectation(const pea_circuit* circuit, const pea_plan* plan,
                                   const char* observable, double gain, double* out) {
  return guarded([&] {
    require_arg(circuit && plan && observable && out, "arguments must not be NULL");
    *out = pea::predict_noisy_expectation(circuit->circuit, plan->plan,
                                          pea::PauliString::from_text(observable), gain);
  });
}

pea_status pea_fidelity_products(const pea_circuit* circuit, const pea_plan* plan,
                                 const char* observable, double* out_k, double* out_k_tilde) {
  return guarded([&] {
    require_arg(circuit && plan && observable && out_k && out_k_tilde,
                "arguments must not be NULL");
    pea::FidelityProduct fp = pea::fidelity_products(circuit->circuit, plan->plan,
                                                     pea::PauliString::from_text(observable));
    *out_k = fp.k;
    *out_k_tilde = fp.k_tilde;
  });
}

pea_status pea_sample_expectation(const pea_circuit* circuit, const pea_plan* plan,
                                  const char* observable, double gain, long long shots,
                                  uint64_t seed, int threads, double* out_mean,
                                  double* out_std_error) {
  return guarded([&] {
    require_arg(circuit && plan && observable && out_mean && out_std_error,
                "arguments must not be NULL");
    pea::SampleResult r = pea::sample_noisy_expectation(
        circuit->circuit, plan->plan, pea::PauliString::from_text(observable), gain, shots, seed,
        threads);
    *out_mean = r.mean;
    *out_std_error = r.std_error;
  });
}

pea_status pea_fit_log_linear(const double* gains, const double* means, const double* std_errors,
                              const long long* shots, int n, double* out_slope,
                              double* out_intercept, double* out_intercept_error, int* out_sign) {
  return guarded([&] {
    require_arg(gains && means && std_errors && shots && n >= 0, "arrays must not be NULL");
    require_arg(out_slope && out_intercept && out_intercept_error && out_sign,
                "outputs must not be NULL");
    pea::GainSeries series;
    for (int i = 0; i < n; ++i) {
      series.points.push_back({gains[i], means[i], std_errors[i], shots[i]});
    }
    pea::FitResult fit = pea::fit_log_linear(series);
    *out_slope = fit.slope;
    *out_intercept = fit.intercept;
    *out_intercept_error = fit.intercept_error;
    *out_sign = fit.sign;
  });
}

pea_status pea_extrapolate(double slope, double intercept, double intercept_error, int sign,
                           double* out_value, double* out_error) {
  return guarded([&] {
    require_arg(out_value && out_error, "outputs must not be NULL");
    pea::ExtrapolationResult r = pea::extrapolate({slope, intercept, intercept_error, sign});
    *out_value = r.value;
    *out_error = r.error;
  });
}

pea_status pea_lambert_w0(double x, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out must not be NULL");
    *out = pea::lambert_w0(x);
  });
}

pea_status pea_optimal_gains(double k, double k_tilde, double* out_g1, double* out_g2) {
  return guarded([&] {
    require_arg(out_g1 && out_g2, "outputs must not be NULL");
    pea::GainPair gp = pea::optimal_gains(pea::make_fidelity_product(k, k_tilde));
    *out_g1 = gp.g1;
    *out_g2 = gp.g2;
  });
}

pea_status pea_optimal_shots(const double* gains, int n, double k, double k_tilde,
                             long long total, long long* out_shots) {
  return guarded([&] {
    require_arg(gains && out_shots && n >= 0, "arrays must not be NULL");
    pea::ShotPlan plan = pea::optimal_shots(std::vector<double>(gains, gains + n),
                                            pea::make_fidelity_product(k, k_tilde), total);
    for (int i = 0; i < n; ++i) out_shots[i] = plan.shots[static_cast<std::size_t>(i)];
  });
}

pea_status pea_min_error_bound(double k, double k_tilde, long long total, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out must not be NULL");
    *out = pea::min_error_bound(pea::make_fidelity_product(k, k_tilde), total);
  });
}

pea_status pea_error_of_design(const double* gains, const double* shots, int n, double k,
                               double k_tilde, double* out) {
  return guarded([&] {
    require_arg(gains && shots && out && n >= 0, "arrays must not be NULL");
    *out = pea::error_of_design(std::vector<double>(gains, gains + n),
                                std::vector<double>(shots, shots + n),
                                pea::make_fidelity_product(k, k_tilde));
  });
}

pea_status pea_oracle_reference_trace(const pea_circuit* circuit, const pea_noise_model* target,
                                      const char* observable, double* out_values,
                                      int* inout_len) {
  return guarded([&] {
    require_arg(circuit && target && observable && out_values && inout_len,
                "arguments must not be NULL");
    pea::ReferenceTrace trace = pea::evolve_channel_composition(
        circuit->circuit, target->model, pea::zero_density(circuit->circuit.n_qubits),
        pea::PauliString::from_text(observable));
    require_arg(*inout_len >= static_cast<int>(trace.size()), "out_values buffer too small");
    for (std::size_t i = 0; i < trace.size(); ++i) out_values[i] = trace[i].value;
    *inout_len = static_cast<int>(trace.size());
  });
}

pea_status pea_run_experiment(const char* config_path, const char* kind,
                              const char* const* overrides, int n_overrides, char** out_summary,
                              char** out_report) {
  return guarded([&] {
    require_arg(config_path && kind, "config_path and kind must not be NULL");
    require_arg(n_overrides == 0 || overrides, "overrides must not be NULL when counted");
    std::vector<std::string> ov;
    for (int i = 0; i < n_overrides; ++i) ov.emplace_back(overrides[i]);
    pea::ExperimentOutput result = pea::run_experiment_file(config_path, kind, ov);
    if (out_summary) *out_summary = copy_string(result.summary_json);
    if (out_report) *out_report = copy_string(result.report_text);
  });
}

}  // extern "C"
