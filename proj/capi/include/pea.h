/* C interface to the partial probabilistic error amplification library.
 *
 * All functions return a pea_status; outputs go through pointers. On any
 * non-OK status, pea_last_error() carries a thread-local message. Objects
 * returned through handle pointers must be released with the matching
 * *_free function; strings returned through char** must be released with
 * pea_string_free.
 *
 * Conventions: Pauli strings are text like "ZZ" or "-XI" with qubit 0
 * leftmost; statevector amplitude indexing is little-endian (qubit 0 is
 * the least significant bit).
 */

#ifndef PEA_H
#define PEA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pea_status {
  PEA_OK = 0,
  PEA_ERR_INVALID_ARGUMENT = 1,
  PEA_ERR_DIMENSION = 2,
  PEA_ERR_DOMAIN = 3,
  PEA_ERR_PARSE = 4,
  PEA_ERR_NOT_CLIFFORD = 5,
  PEA_ERR_SIGNAL_LOST = 6,
  PEA_ERR_SIGN_INCONSISTENCY = 7,
  PEA_ERR_DESIGN = 8,
  PEA_ERR_CONFIG = 9,
  PEA_ERR_CONVERGENCE = 10,
  PEA_ERR_IO = 11,
  PEA_ERR_INTERNAL = 12
} pea_status;

typedef struct pea_noise_model pea_noise_model;
typedef struct pea_circuit pea_circuit;
typedef struct pea_plan pea_plan;

const char* pea_version(void);
const char* pea_last_error(void);
void pea_string_free(char* s);

/* ---- noise models ---------------------------------------------------- */

pea_status pea_noise_model_load(const char* path, pea_noise_model** out);
pea_status pea_noise_model_parse(const char* json_text, pea_noise_model** out);
void pea_noise_model_free(pea_noise_model* model);
pea_status pea_noise_model_n_qubits(const pea_noise_model* model, int* out);
pea_status pea_noise_model_to_json(const pea_noise_model* model, char** out);

/* Product of exp(-2 lambda) over channels anticommuting with the observable. */
pea_status pea_pauli_fidelity(const pea_noise_model* model, const char* observable, double* out);

/* w = (1 + exp(-2 lambda)) / 2; the channel fires with probability 1 - w. */
pea_status pea_sample_probability(double lambda, double* out);

/* ---- circuits --------------------------------------------------------- */

/* kind: "clifford_zz" or "tfim". The noise model handle is attached to the
 * noisy layers; it may be freed after this call. */
pea_status pea_circuit_build_ising(const char* kind, int n_qubits, double coupling_j,
                                   double field_h, double dt, int n_steps,
                                   const pea_noise_model* noise,
                                   int noise_on_single_qubit_layers, pea_circuit** out);
void pea_circuit_free(pea_circuit* circuit);
pea_status pea_circuit_n_steps(const pea_circuit* circuit, int* out);

/* Noise-free expectation from |0...0>. */
pea_status pea_ideal_expectation(const pea_circuit* circuit, const char* observable, double* out);

/* ---- amplification plans ---------------------------------------------- */

pea_status pea_plan_build(const pea_noise_model* hardware, const pea_noise_model* target,
                          pea_plan** out);
void pea_plan_free(pea_plan* plan);
pea_status pea_plan_summary_json(const pea_plan* plan, char** out);
pea_status pea_plan_summary_table(const pea_plan* plan, char** out);

/* Clifford closed-form prediction at noise gain G >= 0. */
pea_status pea_predict_expectation(const pea_circuit* circuit, const pea_plan* plan,
                                   const char* observable, double gain, double* out);

/* K and K_tilde along the propagated observable (Clifford circuits only). */
pea_status pea_fidelity_products(const pea_circuit* circuit, const pea_plan* plan,
                                 const char* observable, double* out_k, double* out_k_tilde);

/* Monte Carlo estimate at gain G >= 1; deterministic in seed regardless of
 * the thread count. */
pea_status pea_sample_expectation(const pea_circuit* circuit, const pea_plan* plan,
                                  const char* observable, double gain, long long shots,
                                  uint64_t seed, int threads, double* out_mean,
                                  double* out_std_error);

/* ---- fitting and extrapolation ---------------------------------------- */

/* Ordinary least squares of ln|mean| against the gains, with the propagated
 * intercept error. Arrays have length n (n >= 2, gains strictly increasing). */
pea_status pea_fit_log_linear(const double* gains, const double* means, const double* std_errors,
                              const long long* shots, int n, double* out_slope,
                              double* out_intercept, double* out_intercept_error, int* out_sign);

pea_status pea_extrapolate(double slope, double intercept, double intercept_error, int sign,
                           double* out_value, double* out_error);

/* ---- experiment design ------------------------------------------------ */

pea_status pea_lambert_w0(double x, double* out);

/* G1 = 1 and the closed-form optimal second gain; needs k_tilde/k > 1. */
pea_status pea_optimal_gains(double k, double k_tilde, double* out_g1, double* out_g2);

/* Optimal integer shot allocation over n gains summing to total. */
pea_status pea_optimal_shots(const double* gains, int n, double k, double k_tilde,
                             long long total, long long* out_shots);

pea_status pea_min_error_bound(double k, double k_tilde, long long total, double* out);

/* Random error of an arbitrary design; shots may be real-valued. */
pea_status pea_error_of_design(const double* gains, const double* shots, int n, double k,
                               double k_tilde, double* out);

/* ---- exact reference oracle -------------------------------------------- */

/* Expectation of the observable after each time step of the circuit under
 * exact target-noise evolution from |0...0>. out_values must hold
 * n_steps + 1 entries (entry 0 is the initial state); *inout_len carries
 * the capacity in and the written count out. */
pea_status pea_oracle_reference_trace(const pea_circuit* circuit, const pea_noise_model* target,
                                      const char* observable, double* out_values, int* inout_len);

/* ---- experiment drivers ------------------------------------------------ */

/* Runs a bundled experiment: kind is "scaling", "tfim", "predict" or
 * "design". overrides is an optional array of "section.key=value" strings.
 * out_summary receives the JSON summary, out_report a human-readable
 * report (file listing for file-writing experiments); either may be NULL
 * if not wanted. */
pea_status pea_run_experiment(const char* config_path, const char* kind,
                              const char* const* overrides, int n_overrides, char** out_summary,
                              char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* PEA_H */
