#include "pea/amplification.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pea/numerics.hpp"
#include "pea/rng.hpp"

namespace pea {

const char* amplification_case_name(AmplificationCase c) {
  switch (c) {
    case AmplificationCase::reduce: return "reduce";
    case AmplificationCase::keep: return "keep";
    case AmplificationCase::raise: return "raise";
    case AmplificationCase::inject: return "inject";
    case AmplificationCase::mitigate: return "mitigate";
  }
  fail(ErrorCode::internal, "corrupt amplification case");
}

AmplificationCase classify_channel(double lambda, double lambda_tilde) {
  require(lambda >= 0.0 && lambda_tilde >= 0.0, ErrorCode::domain, "rates must be >= 0");
  if (lambda_tilde == lambda) return AmplificationCase::keep;
  if (lambda == 0.0) return AmplificationCase::inject;
  if (lambda_tilde == 0.0) return AmplificationCase::mitigate;
  return lambda_tilde < lambda ? AmplificationCase::reduce : AmplificationCase::raise;
}

double effective_rate(AmplificationCase c, double lambda, double lambda_tilde, double gain) {
  require(gain >= 0.0 && std::isfinite(gain), ErrorCode::domain, "gain must be finite and >= 0");
  double rate = 0.0;
  switch (c) {
    case AmplificationCase::reduce: rate = (lambda - lambda_tilde) * gain + lambda_tilde; break;
    case AmplificationCase::keep: rate = lambda; break;
    case AmplificationCase::raise:
    case AmplificationCase::inject: rate = lambda_tilde; break;
    case AmplificationCase::mitigate: rate = lambda * gain; break;
  }
  require(rate >= 0.0, ErrorCode::internal, "effective rate came out negative");
  return rate;
}

AmplificationPlan::AmplificationPlan(int n_qubits, std::vector<Channel> channels)
    : n_qubits_(n_qubits), channels_(std::move(channels)) {}

AmplificationPlan AmplificationPlan::build(const NoiseLayerModel& hardware,
                                           const NoiseLayerModel& target) {
  require(hardware.n_qubits() == target.n_qubits(), ErrorCode::dimension_mismatch,
          "hardware and target models must share the register");
  std::set<std::string> keys;
  for (const auto& c : hardware.channels()) keys.insert(c.pauli.to_text());
  for (const auto& c : target.channels()) keys.insert(c.pauli.to_text());
  std::vector<Channel> channels;
  for (const std::string& key : keys) {
    PauliString pauli = PauliString::from_text(key);
    double l = hardware.rate(pauli);
    double lt = target.rate(pauli);
    channels.push_back({pauli, classify_channel(l, lt), l, lt});
  }
  return AmplificationPlan(hardware.n_qubits(), std::move(channels));
}

AmplificationPlan AmplificationPlan::keep_model(const NoiseLayerModel& model) {
  return build(model, model);
}

double AmplificationPlan::effective_rate_at(std::size_t channel_index, double gain) const {
  const Channel& c = channels_.at(channel_index);
  return effective_rate(c.kase, c.lambda, c.lambda_tilde, gain);
}

std::string AmplificationPlan::summary_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Channel& c : channels_) {
    rows.push_back({{"pauli", c.pauli.to_text()},
                    {"case", amplification_case_name(c.kase)},
                    {"lambda", c.lambda},
                    {"lambda_tilde", c.lambda_tilde}});
  }
  return rows.dump(2);
}

std::string AmplificationPlan::summary_table() const {
  std::ostringstream out;
  out << "pauli  case      lambda    lambda_tilde\n";
  for (const Channel& c : channels_) {
    char line[96];
    std::snprintf(line, sizeof(line), "%-6s %-9s %-9.6g %-9.6g\n", c.pauli.to_text().c_str(),
                  amplification_case_name(c.kase), c.lambda, c.lambda_tilde);
    out << line;
  }
  return out.str();
}

namespace {

// -2 * sum of rates of plan channels anticommuting with the observable seen
// by each noisy layer; rate_of picks hardware/target/effective rates.
template <typename RateFn>
double log_noise_factor(const CircuitSpec& circuit, const AmplificationPlan& plan,
                        const PauliString& observable, RateFn rate_of) {
  require(observable.n_qubits() == circuit.n_qubits, ErrorCode::dimension_mismatch,
          "observable register mismatch");
  require(plan.n_qubits() == circuit.n_qubits, ErrorCode::dimension_mismatch,
          "plan register mismatch");
  std::vector<PauliString> seen = propagate_observable(clifford_layers(circuit), observable);
  double log_factor = 0.0;
  for (std::size_t l = 0; l < circuit.layers.size(); ++l) {
    if (!circuit.layers[l].noise) continue;
    for (const AmplificationPlan::Channel& c : plan.channels()) {
      if (anticommutes(c.pauli, seen[l])) log_factor -= 2.0 * rate_of(c);
    }
  }
  return log_factor;
}

}  // namespace

double predict_noisy_expectation(const CircuitSpec& circuit, const AmplificationPlan& plan,
                                 const PauliString& observable, double gain) {
  require(gain >= 0.0 && std::isfinite(gain), ErrorCode::domain, "gain must be finite and >= 0");
  double log_factor =
      log_noise_factor(circuit, plan, observable, [gain](const AmplificationPlan::Channel& c) {
        return effective_rate(c.kase, c.lambda, c.lambda_tilde, gain);
      });
  return std::exp(log_factor) * ideal_expectation(circuit, observable);
}

FidelityProduct fidelity_products(const CircuitSpec& circuit, const AmplificationPlan& plan,
                                  const PauliString& observable) {
  double log_k = log_noise_factor(circuit, plan, observable,
                                  [](const AmplificationPlan::Channel& c) { return c.lambda; });
  double log_kt = log_noise_factor(
      circuit, plan, observable,
      [](const AmplificationPlan::Channel& c) { return c.lambda_tilde; });
  return make_fidelity_product(std::exp(log_k), std::exp(log_kt));
}

namespace {

// Per-channel insertion probability frozen at the requested gain.
struct ChannelAction {
  PauliString pauli;
  double insert_probability;
};

double simulate_one_shot(const CircuitSpec& circuit, const std::vector<ChannelAction>& actions,
                         const PauliString& observable, std::uint64_t seed, std::uint64_t shot) {
  StateVector psi = StateVector::zero_state(circuit.n_qubits);
  for (std::size_t l = 0; l < circuit.layers.size(); ++l) {
    const Layer& layer = circuit.layers[l];
    if (layer.noise) {
      for (std::size_t c = 0; c < actions.size(); ++c) {
        if (actions[c].insert_probability > 0.0 &&
            channel_insertion_draw(seed, shot, l, c, actions[c].insert_probability)) {
          apply_pauli(psi, actions[c].pauli);
        }
      }
    }
    for (const Gate& g : layer.gates) apply_gate(psi, g);
  }
  return expectation(psi, observable);
}

}  // namespace

SampleResult sample_noisy_expectation(const CircuitSpec& circuit, const AmplificationPlan& plan,
                                      const PauliString& observable, double gain, long long shots,
                                      std::uint64_t seed, int threads) {
  require(shots >= 1, ErrorCode::invalid_argument, "shots must be >= 1");
  require(gain >= 1.0 && std::isfinite(gain), ErrorCode::domain,
          "sampling requires gain >= 1 (partial cancellation is out of scope)");
  require(observable.n_qubits() == circuit.n_qubits, ErrorCode::dimension_mismatch,
          "observable register mismatch");
  require(plan.n_qubits() == circuit.n_qubits, ErrorCode::dimension_mismatch,
          "plan register mismatch");

  std::vector<ChannelAction> actions;
  actions.reserve(plan.channels().size());
  for (std::size_t c = 0; c < plan.channels().size(); ++c) {
    const auto& ch = plan.channels()[c];
    double w = sample_probability(plan.effective_rate_at(c, gain));
    actions.push_back({ch.pauli, 1.0 - w});
  }

  std::vector<double> values(static_cast<std::size_t>(shots));
  int workers = std::max(1, std::min<long long>(threads <= 0 ? 1 : threads, shots));
  if (workers == 1) {
    for (long long s = 0; s < shots; ++s) {
      values[static_cast<std::size_t>(s)] =
          simulate_one_shot(circuit, actions, observable, seed, static_cast<std::uint64_t>(s));
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    long long chunk = (shots + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long long begin = w * chunk;
      long long end = std::min(shots, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end]() {
        for (long long s = begin; s < end; ++s) {
          values[static_cast<std::size_t>(s)] =
              simulate_one_shot(circuit, actions, observable, seed, static_cast<std::uint64_t>(s));
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  MeanStdError stats = mean_and_std_error(values);
  return {stats.mean, stats.std_error, shots};
}

}  // namespace pea
