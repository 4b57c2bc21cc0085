#ifndef KICKED_ERROR_HPP
#define KICKED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kicked {

enum class Errc {
  InvalidParameter,
  InvalidMatrix,
  NotSpecialCase,
  NumericalDomain,
  BranchAmbiguity,
  NoSolution,
  DivisionDegenerate,
  ProbeDegeneracy,
  ConsistencyViolation,
  FrozenDynamics,
  BudgetExceeded,
  DegenerateImpulse,
  InvalidDuration,
  InvalidConfig,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::InvalidMatrix: return "InvalidMatrix";
    case Errc::NotSpecialCase: return "NotSpecialCase";
    case Errc::NumericalDomain: return "NumericalDomain";
    case Errc::BranchAmbiguity: return "BranchAmbiguity";
    case Errc::NoSolution: return "NoSolution";
    case Errc::DivisionDegenerate: return "DivisionDegenerate";
    case Errc::ProbeDegeneracy: return "ProbeDegeneracy";
    case Errc::ConsistencyViolation: return "ConsistencyViolation";
    case Errc::FrozenDynamics: return "FrozenDynamics";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DegenerateImpulse: return "DegenerateImpulse";
    case Errc::InvalidDuration: return "InvalidDuration";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kicked

#endif  // KICKED_ERROR_HPP
