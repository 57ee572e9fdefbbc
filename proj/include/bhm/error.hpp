#pragma once

#include <stdexcept>
#include <string>

namespace bhm {

// Numeric values are part of the C ABI (see bhm.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  InvalidInput = 1,
  ZeroDivisor = 2,
  PoleEncountered = 3,
  OutOfDomain = 4,
  DegenerateDirection = 5,
  DegenerateAllComponents = 6,
  DegeneratePoint = 7,
  BranchJump = 8,
  NotInSlice = 9,
  NotPolynomial = 10,
  Schema = 11,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bhm
