#pragma once

#include <stdexcept>
#include <string>

namespace sigcalc {

// Machine-readable failure codes. They surface through error::code() and, in
// the CLI, through the "error" field of a run report.
enum class errc {
  modulus_mismatch,
  bad_modulus,
  not_invertible,
  non_residue,
  zero_input,
  singular_lift,
  not_unit,
  division_by_zero,
  bad_factorization,
  bad_divisor,
  not_inert,
  bad_root,
  not_local_unit,
  overflow,
  not_in_subgroup,
  degenerate_target,
  class_number_obstruction,
  search_exhausted,
  zero_signature,
  oracle_failure,
  precondition_violated,
  invalid_config,
};

inline const char* errc_token(errc c) noexcept {
  switch (c) {
    case errc::modulus_mismatch: return "ModulusMismatch";
    case errc::bad_modulus: return "BadModulus";
    case errc::not_invertible: return "NotInvertible";
    case errc::non_residue: return "NonResidue";
    case errc::zero_input: return "ZeroInput";
    case errc::singular_lift: return "SingularLift";
    case errc::not_unit: return "NotUnit";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::bad_factorization: return "BadFactorization";
    case errc::bad_divisor: return "BadDivisor";
    case errc::not_inert: return "NotInert";
    case errc::bad_root: return "BadRoot";
    case errc::not_local_unit: return "NotLocalUnit";
    case errc::overflow: return "Overflow";
    case errc::not_in_subgroup: return "NotInSubgroup";
    case errc::degenerate_target: return "DegenerateTarget";
    case errc::class_number_obstruction: return "ClassNumberObstruction";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::zero_signature: return "ZeroSignature";
    case errc::oracle_failure: return "OracleFailure";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::invalid_config: return "InvalidConfig";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_token(c)) + ": " + what), code_(c) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) {
  throw error(c, what);
}

}  // namespace sigcalc
