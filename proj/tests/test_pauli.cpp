#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pea/pauli.hpp"

using namespace pea;

namespace {

PauliString random_pauli(std::mt19937_64& rng, int n_qubits) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits));
  for (auto& l : letters) l = static_cast<Pauli>(letter(rng));
  bool all_identity = true;
  for (Pauli l : letters) {
    if (l != Pauli::I) all_identity = false;
  }
  if (all_identity) letters[0] = Pauli::X;
  int sign = (rng() & 1) ? +1 : -1;
  return PauliString(std::move(letters), sign);
}

CliffordGate random_clifford(std::mt19937_64& rng, int n_qubits) {
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
  switch (pick(rng)) {
    case 0: return CliffordGate::single(CliffordGate::Kind::X, qubit(rng));
    case 1: return CliffordGate::single(CliffordGate::Kind::Y, qubit(rng));
    case 2: return CliffordGate::single(CliffordGate::Kind::Z, qubit(rng));
    case 3: return CliffordGate::single(CliffordGate::Kind::H, qubit(rng));
    case 4: return CliffordGate::single(CliffordGate::Kind::S, qubit(rng));
    case 5: {
      int c = qubit(rng), t = qubit(rng);
      if (t == c) t = (c + 1) % n_qubits;
      return CliffordGate::cnot(c, t);
    }
    case 6: {
      int a = qubit(rng), b = qubit(rng);
      if (b == a) b = (a + 1) % n_qubits;
      return CliffordGate::cz(a, b);
    }
    default: return CliffordGate::pauli_exp_half_turn(random_pauli(rng, n_qubits).with_sign(+1));
  }
}

}  // namespace

TEST_CASE("text round trip and qubit-0-leftmost convention") {
  PauliString p = PauliString::from_text("XIZY");
  CHECK(p.n_qubits() == 4);
  CHECK(p.letter(0) == Pauli::X);
  CHECK(p.letter(2) == Pauli::Z);
  CHECK(p.to_text() == "XIZY");
  CHECK(PauliString::from_text("-XZ").sign() == -1);
  CHECK(PauliString::from_text("-XZ").to_text() == "-XZ");
  CHECK_THROWS_AS(PauliString::from_text("XQ"), Error);
  CHECK_THROWS_AS(PauliString::from_text(""), Error);
  CHECK_THROWS_AS(PauliString::from_text("-"), Error);
}

TEST_CASE("anticommutation basics") {
  CHECK(anticommutes(PauliString::from_text("XI"), PauliString::from_text("ZI")));
  CHECK_FALSE(anticommutes(PauliString::from_text("XI"), PauliString::from_text("IX")));
  CHECK_FALSE(anticommutes(PauliString::from_text("XX"), PauliString::from_text("ZZ")));
  CHECK_THROWS_AS(anticommutes(PauliString::from_text("X"), PauliString::from_text("XX")), Error);
}

TEST_CASE("anticommutation is symmetric on random pairs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    PauliString p = random_pauli(rng, 4);
    PauliString q = random_pauli(rng, 4);
    CHECK(anticommutes(p, q) == anticommutes(q, p));
  }
}

TEST_CASE("products keep real sign or reject") {
  // XX * ZZ = -YY: two i factors.
  PauliString r = multiply(PauliString::from_text("XX"), PauliString::from_text("ZZ"));
  CHECK(r.to_text() == "-YY");
  // X * Z = -iY carries an imaginary phase.
  CHECK_THROWS_AS(multiply(PauliString::from_text("X"), PauliString::from_text("Z")), Error);
  // Signs multiply through.
  PauliString s = multiply(PauliString::from_text("-XI"), PauliString::from_text("-IZ"));
  CHECK(s.to_text() == "XZ");
}

TEST_CASE("single-gate conjugations") {
  PauliString x = PauliString::from_text("XI");
  PauliString z = PauliString::from_text("ZI");

  CHECK(conjugate(CliffordGate::single(CliffordGate::Kind::H, 0), x).to_text() == "ZI");
  CHECK(conjugate(CliffordGate::single(CliffordGate::Kind::H, 0), z).to_text() == "XI");
  CHECK(conjugate(CliffordGate::single(CliffordGate::Kind::H, 0),
                  PauliString::from_text("YI")).to_text() == "-YI");

  // Z X Z = -X
  CHECK(conjugate(CliffordGate::single(CliffordGate::Kind::Z, 0), x).to_text() == "-XI");
  // S^dag X S = -Y, S^dag Y S = X
  CHECK(conjugate(CliffordGate::single(CliffordGate::Kind::S, 0), x).to_text() == "-YI");
  CHECK(conjugate(CliffordGate::single(CliffordGate::Kind::S, 0),
                  PauliString::from_text("YI")).to_text() == "XI");

  // CNOT propagation table.
  CHECK(conjugate(CliffordGate::cnot(0, 1), PauliString::from_text("XI")).to_text() == "XX");
  CHECK(conjugate(CliffordGate::cnot(0, 1), PauliString::from_text("IZ")).to_text() == "ZZ");
  CHECK(conjugate(CliffordGate::cnot(0, 1), PauliString::from_text("YY")).to_text() == "-XZ");

  // CZ propagation.
  CHECK(conjugate(CliffordGate::cz(0, 1), PauliString::from_text("XI")).to_text() == "XZ");
  CHECK(conjugate(CliffordGate::cz(0, 1), PauliString::from_text("XX")).to_text() == "YY");
}

TEST_CASE("half-turn conjugation acts like the axis Pauli") {
  CliffordGate zz = CliffordGate::pauli_exp_half_turn(PauliString::from_text("ZZ"));
  CHECK(conjugate(zz, PauliString::from_text("ZZ")).to_text() == "ZZ");
  CHECK(conjugate(zz, PauliString::from_text("XI")).to_text() == "-XI");
  CHECK(conjugate(zz, PauliString::from_text("XX")).to_text() == "XX");
}

TEST_CASE("conjugation preserves weight pattern under Pauli gates") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    PauliString p = random_pauli(rng, 3);
    for (auto kind : {CliffordGate::Kind::X, CliffordGate::Kind::Y, CliffordGate::Kind::Z}) {
      PauliString q = conjugate(CliffordGate::single(kind, static_cast<int>(rng() % 3)), p);
      CHECK(q.letters() == p.letters());
    }
  }
}

TEST_CASE("conjugation preserves commutation relations") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    PauliString p = random_pauli(rng, 4);
    PauliString q = random_pauli(rng, 4);
    CliffordGate g = random_clifford(rng, 4);
    CHECK(anticommutes(p, q) == anticommutes(conjugate(g, p), conjugate(g, q)));
  }
}

TEST_CASE("double conjugation by self-inverse gates is the identity") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    PauliString p = random_pauli(rng, 4);
    CliffordGate g = random_clifford(rng, 4);
    if (g.kind == CliffordGate::Kind::S) continue;  // S is not self-inverse
    PauliString back = conjugate(g, conjugate(g, p));
    CHECK(back == p);
  }
}

TEST_CASE("propagate_observable orders layers as seen by the noise") {
  // Empty tail: identity propagation.
  auto empty = propagate_observable({}, PauliString::from_text("ZZ"));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].to_text() == "ZZ");

  // ZZ commutes with every RZZ half-turn layer.
  std::vector<std::vector<CliffordGate>> five_layers(
      5, {CliffordGate::pauli_exp_half_turn(PauliString::from_text("ZZ"))});
  auto through = propagate_observable(five_layers, PauliString::from_text("ZZ"));
  REQUIRE(through.size() == 5);
  for (const auto& p : through) CHECK(p.to_text() == "ZZ");

  // One Hadamard layer: the noise before it sees the conjugated Pauli.
  std::vector<std::vector<CliffordGate>> h_layer(
      1, {CliffordGate::single(CliffordGate::Kind::H, 0)});
  auto seen = propagate_observable(h_layer, PauliString::from_text("ZI"));
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].to_text() == "XI");
}
