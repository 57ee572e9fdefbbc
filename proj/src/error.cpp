#include "bhm/error.hpp"

namespace bhm {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::PoleEncountered: return "PoleEncountered";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::DegenerateAllComponents: return "DegenerateAllComponents";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::BranchJump: return "BranchJump";
    case ErrorCode::NotInSlice: return "NotInSlice";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

}  // namespace bhm
