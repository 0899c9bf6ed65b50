#include "pea/pauli.hpp"

#include <algorithm>
#include <array>

namespace pea {

char pauli_to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  fail(ErrorCode::internal, "corrupt Pauli letter");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: fail(ErrorCode::parse, std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(std::vector<Pauli> letters, int sign)
    : letters_(std::move(letters)), sign_(static_cast<std::int8_t>(sign)) {
  require(!letters_.empty(), ErrorCode::invalid_argument, "PauliString needs at least one qubit");
  require(sign == 1 || sign == -1, ErrorCode::invalid_argument, "PauliString sign must be +/-1");
}

PauliString PauliString::identity(int n_qubits) {
  require(n_qubits >= 1, ErrorCode::invalid_argument, "n_qubits must be positive");
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n_qubits), Pauli::I));
}

PauliString PauliString::from_text(const std::string& text) {
  std::string body = text;
  int sign = +1;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    sign = body.front() == '-' ? -1 : +1;
    body.erase(body.begin());
  }
  require(!body.empty(), ErrorCode::parse, "empty Pauli string");
  std::vector<Pauli> letters;
  letters.reserve(body.size());
  for (char c : body) letters.push_back(pauli_from_char(c));
  return PauliString(std::move(letters), sign);
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p, int sign) {
  require(qubit >= 0 && qubit < n_qubits, ErrorCode::invalid_argument, "qubit index out of range");
  std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits), Pauli::I);
  letters[static_cast<std::size_t>(qubit)] = p;
  return PauliString(std::move(letters), sign);
}

std::string PauliString::to_text() const {
  std::string out;
  if (sign_ < 0) out.push_back('-');
  for (Pauli p : letters_) out.push_back(pauli_to_char(p));
  return out;
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                        [](Pauli p) { return p != Pauli::I; }));
}

PauliString PauliString::with_sign(int sign) const {
  PauliString out = *this;
  require(sign == 1 || sign == -1, ErrorCode::invalid_argument, "sign must be +/-1");
  out.sign_ = static_cast<std::int8_t>(sign);
  return out;
}

bool anticommutes(const PauliString& p, const PauliString& q) {
  require(p.n_qubits() == q.n_qubits(), ErrorCode::dimension_mismatch,
          "anticommutes: qubit counts differ");
  int clashes = 0;
  for (int i = 0; i < p.n_qubits(); ++i) {
    Pauli a = p.letter(i), b = q.letter(i);
    if (a != Pauli::I && b != Pauli::I && a != b) ++clashes;
  }
  return (clashes % 2) == 1;
}

namespace {

// Single-site product a*b = i^phase * c, phase in {0,1,3} (mod 4).
struct SiteProduct {
  Pauli letter;
  int phase;
};

SiteProduct site_multiply(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  // XY=iZ, YZ=iX, ZX=iY; reversed orders pick up -i.
  static constexpr std::array<std::array<int, 4>, 4> kPhase = {{
      {0, 0, 0, 0},
      {0, 0, 1, 3},  // X*Y=iZ, X*Z=-iY
      {0, 3, 0, 1},  // Y*X=-iZ, Y*Z=iX
      {0, 1, 3, 0},  // Z*X=iY, Z*Y=-iX
  }};
  Pauli c = static_cast<Pauli>(static_cast<int>(a) ^ static_cast<int>(b));
  return {c, kPhase[static_cast<int>(a)][static_cast<int>(b)]};
}

}  // namespace

PauliString multiply(const PauliString& p, const PauliString& q) {
  require(p.n_qubits() == q.n_qubits(), ErrorCode::dimension_mismatch,
          "multiply: qubit counts differ");
  std::vector<Pauli> letters(static_cast<std::size_t>(p.n_qubits()));
  int phase = 0;
  for (int i = 0; i < p.n_qubits(); ++i) {
    SiteProduct s = site_multiply(p.letter(i), q.letter(i));
    letters[static_cast<std::size_t>(i)] = s.letter;
    phase = (phase + s.phase) % 4;
  }
  require(phase % 2 == 0, ErrorCode::domain,
          "multiply: product carries an imaginary phase (anticommuting factors)");
  int sign = p.sign() * q.sign() * (phase == 2 ? -1 : +1);
  return PauliString(std::move(letters), sign);
}

CliffordGate CliffordGate::single(Kind kind, int qubit) {
  require(kind == Kind::X || kind == Kind::Y || kind == Kind::Z || kind == Kind::H ||
              kind == Kind::S,
          ErrorCode::invalid_argument, "not a single-qubit Clifford kind");
  return CliffordGate{kind, {qubit}, {}};
}

CliffordGate CliffordGate::cnot(int control, int target) {
  require(control != target, ErrorCode::invalid_argument, "CNOT qubits must differ");
  return CliffordGate{Kind::CNOT, {control, target}, {}};
}

CliffordGate CliffordGate::cz(int a, int b) {
  require(a != b, ErrorCode::invalid_argument, "CZ qubits must differ");
  return CliffordGate{Kind::CZ, {a, b}, {}};
}

CliffordGate CliffordGate::pauli_exp_half_turn(PauliString axis) {
  std::vector<int> support;
  for (int i = 0; i < axis.n_qubits(); ++i) {
    if (axis.letter(i) != Pauli::I) support.push_back(i);
  }
  require(!support.empty(), ErrorCode::invalid_argument, "half-turn axis must be non-identity");
  return CliffordGate{Kind::PauliExpHalfTurn, std::move(support), std::move(axis)};
}

namespace {

// Site letters as symplectic bits: I=(0,0) X=(1,0) Y=(1,1) Z=(0,1).
struct XZ {
  bool x, z;
};

XZ to_xz(Pauli p) {
  switch (p) {
    case Pauli::I: return {false, false};
    case Pauli::X: return {true, false};
    case Pauli::Y: return {true, true};
    case Pauli::Z: return {false, true};
  }
  fail(ErrorCode::internal, "corrupt Pauli letter");
}

Pauli from_xz(XZ v) {
  if (v.x && v.z) return Pauli::Y;
  if (v.x) return Pauli::X;
  if (v.z) return Pauli::Z;
  return Pauli::I;
}

PauliString conjugate_single(CliffordGate::Kind kind, int qubit, const PauliString& p) {
  std::vector<Pauli> letters = p.letters();
  Pauli& site = letters[static_cast<std::size_t>(qubit)];
  int sign = p.sign();
  switch (kind) {
    case CliffordGate::Kind::X:
    case CliffordGate::Kind::Y:
    case CliffordGate::Kind::Z: {
      Pauli g = kind == CliffordGate::Kind::X   ? Pauli::X
                : kind == CliffordGate::Kind::Y ? Pauli::Y
                                                : Pauli::Z;
      if (site != Pauli::I && site != g) sign = -sign;
      break;
    }
    case CliffordGate::Kind::H:
      // X <-> Z, Y -> -Y
      if (site == Pauli::X) site = Pauli::Z;
      else if (site == Pauli::Z) site = Pauli::X;
      else if (site == Pauli::Y) sign = -sign;
      break;
    case CliffordGate::Kind::S:
      // S^dag X S = -Y, S^dag Y S = X
      if (site == Pauli::X) {
        site = Pauli::Y;
        sign = -sign;
      } else if (site == Pauli::Y) {
        site = Pauli::X;
      }
      break;
    default: fail(ErrorCode::internal, "conjugate_single: not a single-qubit kind");
  }
  return PauliString(std::move(letters), sign);
}

PauliString conjugate_cnot(int control, int target, const PauliString& p) {
  std::vector<Pauli> letters = p.letters();
  XZ c = to_xz(letters[static_cast<std::size_t>(control)]);
  XZ t = to_xz(letters[static_cast<std::size_t>(target)]);
  int sign = p.sign();
  // CHP update rule; the sign flips exactly on the Y_c Y_t -like inputs.
  if (c.x && t.z && (t.x == c.z)) sign = -sign;
  XZ c2{c.x, c.z != t.z};
  XZ t2{t.x != c.x, t.z};
  letters[static_cast<std::size_t>(control)] = from_xz(c2);
  letters[static_cast<std::size_t>(target)] = from_xz(t2);
  return PauliString(std::move(letters), sign);
}

}  // namespace

PauliString conjugate(const CliffordGate& g, const PauliString& p) {
  for (int q : g.support) {
    require(q >= 0 && q < p.n_qubits(), ErrorCode::dimension_mismatch,
            "gate support outside Pauli register");
  }
  switch (g.kind) {
    case CliffordGate::Kind::X:
    case CliffordGate::Kind::Y:
    case CliffordGate::Kind::Z:
    case CliffordGate::Kind::H:
    case CliffordGate::Kind::S: return conjugate_single(g.kind, g.support[0], p);
    case CliffordGate::Kind::CNOT: return conjugate_cnot(g.support[0], g.support[1], p);
    case CliffordGate::Kind::CZ: {
      // CZ = (I (x) H) CNOT (I (x) H)
      int a = g.support[0], b = g.support[1];
      PauliString q = conjugate_single(CliffordGate::Kind::H, b, p);
      q = conjugate_cnot(a, b, q);
      return conjugate_single(CliffordGate::Kind::H, b, q);
    }
    case CliffordGate::Kind::PauliExpHalfTurn: {
      require(g.axis.n_qubits() == p.n_qubits(), ErrorCode::dimension_mismatch,
              "half-turn axis register mismatch");
      // exp(-i pi A / 2) = -iA up to phase, so conjugation is A p A.
      return anticommutes(g.axis, p) ? p.negated() : p;
    }
  }
  fail(ErrorCode::internal, "corrupt gate kind");
}

std::vector<PauliString> propagate_observable(const std::vector<std::vector<CliffordGate>>& tail,
                                              const PauliString& p) {
  if (tail.empty()) return {p};
  std::vector<PauliString> per_layer(tail.size());
  PauliString current = p;
  for (std::size_t m = tail.size(); m-- > 0;) {
    for (const CliffordGate& g : tail[m]) current = conjugate(g, current);
    per_layer[m] = current;
  }
  return per_layer;
}

}  // namespace pea
