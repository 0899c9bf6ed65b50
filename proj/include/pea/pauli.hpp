#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pea/error.hpp"

namespace pea {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_to_char(Pauli p);
Pauli pauli_from_char(char c);

// A signed Pauli word over {I,X,Y,Z}. Signs are restricted to +/-1: the
// operations below reject anything that would introduce an imaginary phase,
// which keeps every reachable string a Hermitian observable.
//
// Text form is "XIZY" with qubit 0 leftmost and an optional leading '-'.
class PauliString {
public:
  PauliString() = default;
  PauliString(std::vector<Pauli> letters, int sign = +1);

  static PauliString identity(int n_qubits);
  static PauliString from_text(const std::string& text);
  static PauliString single(int n_qubits, int qubit, Pauli p, int sign = +1);

  std::string to_text() const;

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  Pauli letter(int qubit) const { return letters_[static_cast<std::size_t>(qubit)]; }
  const std::vector<Pauli>& letters() const { return letters_; }
  int sign() const { return sign_; }

  // Number of non-identity sites.
  int weight() const;
  bool is_identity() const { return weight() == 0; }

  PauliString with_sign(int sign) const;
  PauliString negated() const { return with_sign(-sign_); }

  // Sign-insensitive letter comparison, used for channel keys.
  bool same_letters(const PauliString& other) const { return letters_ == other.letters_; }

  bool operator==(const PauliString& other) const = default;

private:
  std::vector<Pauli> letters_;
  std::int8_t sign_ = +1;
};

// True iff p and q anticommute: odd number of sites with distinct
// non-identity letters. Symmetric; signs are irrelevant.
bool anticommutes(const PauliString& p, const PauliString& q);

// Signed product p*q. Throws if the result carries a +/-i phase.
PauliString multiply(const PauliString& p, const PauliString& q);

// Clifford gates whose conjugation action keeps Pauli signs real.
// PauliExpHalfTurn(A) stands for exp(-i theta A / 2) with theta an odd
// multiple of pi; it conjugates like the Pauli A itself (up to sign).
struct CliffordGate {
  enum class Kind { X, Y, Z, H, S, CNOT, CZ, PauliExpHalfTurn };

  Kind kind;
  std::vector<int> support;  // CNOT: {control, target}
  PauliString axis;          // PauliExpHalfTurn only; support = non-identity sites of axis

  static CliffordGate single(Kind kind, int qubit);
  static CliffordGate cnot(int control, int target);
  static CliffordGate cz(int a, int b);
  static CliffordGate pauli_exp_half_turn(PauliString axis);
};

// Heisenberg conjugation g^dagger * p * g.
PauliString conjugate(const CliffordGate& g, const PauliString& p);

// Observable propagated backwards through a tail of Clifford layers:
// element l is p conjugated through layers l..L-1, i.e. the Pauli seen by
// the noise attached to layer l. An empty tail yields {p}.
std::vector<PauliString> propagate_observable(const std::vector<std::vector<CliffordGate>>& tail,
                                              const PauliString& p);

}  // namespace pea
