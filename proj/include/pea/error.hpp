#pragma once

#include <stdexcept>
#include <string>

namespace pea {

// Error categories. Kept stable because the C API maps them 1:1 to status
// codes (see capi/include/pea.h).
enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch = 2,
  domain = 3,
  parse = 4,
  not_clifford = 5,
  signal_lost = 6,
  sign_inconsistency = 7,
  design = 8,
  config = 9,
  convergence = 10,
  io = 11,
  internal = 12,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace pea
