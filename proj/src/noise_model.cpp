#include "pea/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pea {

NoiseLayerModel::NoiseLayerModel(int n_qubits, std::vector<Channel> channels)
    : n_qubits_(n_qubits), channels_(std::move(channels)) {
  require(n_qubits_ >= 1, ErrorCode::invalid_argument, "noise model needs >= 1 qubit");
  for (const Channel& c : channels_) {
    require(c.pauli.n_qubits() == n_qubits_, ErrorCode::dimension_mismatch,
            "channel Pauli register mismatch: " + c.pauli.to_text());
    require(c.pauli.sign() == +1, ErrorCode::invalid_argument,
            "channel Paulis carry no sign: " + c.pauli.to_text());
    int w = c.pauli.weight();
    require(w == 1 || w == 2, ErrorCode::invalid_argument,
            "channel weight must be 1 or 2: " + c.pauli.to_text());
    require(c.rate >= 0.0 && std::isfinite(c.rate), ErrorCode::domain,
            "channel rate must be finite and >= 0: " + c.pauli.to_text());
  }
  std::sort(channels_.begin(), channels_.end(),
            [](const Channel& a, const Channel& b) { return a.pauli.to_text() < b.pauli.to_text(); });
  for (std::size_t i = 1; i < channels_.size(); ++i) {
    require(!channels_[i].pauli.same_letters(channels_[i - 1].pauli), ErrorCode::invalid_argument,
            "duplicate channel " + channels_[i].pauli.to_text());
  }
}

double NoiseLayerModel::rate(const PauliString& pauli) const {
  for (const Channel& c : channels_) {
    if (c.pauli.same_letters(pauli)) return c.rate;
  }
  return 0.0;
}

bool NoiseLayerModel::has_channel(const PauliString& pauli) const {
  for (const Channel& c : channels_) {
    if (c.pauli.same_letters(pauli)) return true;
  }
  return false;
}

double NoiseLayerModel::pauli_fidelity(const PauliString& observable) const {
  require(observable.n_qubits() == n_qubits_, ErrorCode::dimension_mismatch,
          "pauli_fidelity: register mismatch");
  double log_f = 0.0;
  for (const Channel& c : channels_) {
    if (anticommutes(c.pauli, observable)) log_f -= 2.0 * c.rate;
  }
  return std::exp(log_f);
}

double sample_probability(double lambda) {
  require(lambda >= 0.0 && !std::isnan(lambda), ErrorCode::domain,
          "sample_probability: rate must be >= 0");
  return 0.5 * (1.0 + std::exp(-2.0 * lambda));
}

std::string NoiseLayerModel::to_json() const {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const Channel& c : channels_) {
    records.push_back({{"pauli", c.pauli.to_text()}, {"rate", c.rate}});
  }
  nlohmann::ordered_json doc;
  doc["n_qubits"] = n_qubits_;
  doc["channels"] = records;
  return doc.dump(2) + "\n";
}

NoiseLayerModel NoiseLayerModel::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("noise model JSON: ") + e.what());
  }
  try {
    require(doc.contains("n_qubits") && doc.contains("channels"), ErrorCode::parse,
            "noise model JSON needs 'n_qubits' and 'channels'");
    int n = doc["n_qubits"].get<int>();
    std::vector<Channel> channels;
    for (const auto& rec : doc["channels"]) {
      channels.push_back({PauliString::from_text(rec.at("pauli").get<std::string>()),
                          rec.at("rate").get<double>()});
    }
    return NoiseLayerModel(n, std::move(channels));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("noise model JSON: ") + e.what());
  }
}

NoiseLayerModel NoiseLayerModel::load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open noise model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void NoiseLayerModel::save(const std::string& path) const {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write noise model file: " + path);
  out << to_json();
}

}  // namespace pea
