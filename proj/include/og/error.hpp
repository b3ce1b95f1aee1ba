#pragma once

#include <stdexcept>
#include <string>

namespace og {

enum class errc {
  syntax,
  invalid_argument,
  budget_exceeded,
  declared_rank_mismatch,
  no_value,
  has_value,
  out_of_range,
  not_finitely_branching,
  modeling_error,
  not_full,
  asymmetric_board,
  non_empty_start,
  occupied,
  precondition_failed,
  not_winning,
  not_strictly_not_open,
  malformed_position,
  unsupported_rule_set,
  embedding_overflow,
  rule_set_mismatch,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::syntax: return "SyntaxError";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::declared_rank_mismatch: return "DeclaredRankMismatch";
    case errc::no_value: return "NoValue";
    case errc::has_value: return "HasValue";
    case errc::out_of_range: return "OutOfRange";
    case errc::not_finitely_branching: return "NotFinitelyBranching";
    case errc::modeling_error: return "ModelingError";
    case errc::not_full: return "NotFull";
    case errc::asymmetric_board: return "AsymmetricBoard";
    case errc::non_empty_start: return "NonEmptyStart";
    case errc::occupied: return "Occupied";
    case errc::precondition_failed: return "PreconditionFailed";
    case errc::not_winning: return "NotWinning";
    case errc::not_strictly_not_open: return "NotStrictlyNotOpen";
    case errc::malformed_position: return "MalformedPosition";
    case errc::unsupported_rule_set: return "UnsupportedRuleSet";
    case errc::embedding_overflow: return "EmbeddingOverflow";
    case errc::rule_set_mismatch: return "RuleSetMismatch";
  }
  return "Error";
}

// All domain failures raised by the library.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace og
