#pragma once
#include <stdexcept>
#include <string>

namespace eqhh {

// Every failure mode the engine can raise. Validation routines that return
// reports instead of throwing reuse these kinds as report tags.
enum class ErrKind {
  MixedFields,
  DimensionMismatch,
  BudgetExceeded,
  WindowTooSmall,
  SignConventionViolation,
  InvalidAction,
  InvalidCocycle,
  NonCofibration,
  CocycleMismatch,
  NotAHomomorphism,
  NotAnIsomorphism,
  NotCoboundaryRelated,
  BoundaryMismatch,
  NonAbelianGroup,
  InvalidAlgebra,
  InvalidInput,
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::MixedFields: return "MixedFields";
    case ErrKind::DimensionMismatch: return "DimensionMismatch";
    case ErrKind::BudgetExceeded: return "BudgetExceeded";
    case ErrKind::WindowTooSmall: return "WindowTooSmall";
    case ErrKind::SignConventionViolation: return "SignConventionViolation";
    case ErrKind::InvalidAction: return "InvalidAction";
    case ErrKind::InvalidCocycle: return "InvalidCocycle";
    case ErrKind::NonCofibration: return "NonCofibration";
    case ErrKind::CocycleMismatch: return "CocycleMismatch";
    case ErrKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrKind::NotAnIsomorphism: return "NotAnIsomorphism";
    case ErrKind::NotCoboundaryRelated: return "NotCoboundaryRelated";
    case ErrKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrKind::NonAbelianGroup: return "NonAbelianGroup";
    case ErrKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class EqhhError : public std::runtime_error {
 public:
  EqhhError(ErrKind kind, const std::string& msg)
      : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) {
  throw EqhhError(k, msg);
}

inline void require(bool cond, ErrKind k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

}  // namespace eqhh
