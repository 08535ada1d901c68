#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coefmod {

enum class Errc {
  field_mismatch,
  ring_mismatch,
  dimension_mismatch,
  parse_error,
  unknown_variable,
  exponent_overflow,
  arity_mismatch,
  non_prime_modulus,
  regime,
  undecided_colength,
  infinite_length,
  not_a_subpair,
  structural,
  unstable_union,
  unstable_fit,
  undecided_spread,
  rank_deficient,
  genericity_failure,
  precondition,
  io,
  usage,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::field_mismatch: return "field-mismatch";
    case Errc::ring_mismatch: return "ring-mismatch";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::parse_error: return "parse-error";
    case Errc::unknown_variable: return "unknown-variable";
    case Errc::exponent_overflow: return "exponent-overflow";
    case Errc::arity_mismatch: return "arity-mismatch";
    case Errc::non_prime_modulus: return "non-prime-modulus";
    case Errc::regime: return "regime";
    case Errc::undecided_colength: return "undecided-colength";
    case Errc::infinite_length: return "infinite-length";
    case Errc::not_a_subpair: return "not-a-subpair";
    case Errc::structural: return "structural";
    case Errc::unstable_union: return "unstable-union";
    case Errc::unstable_fit: return "unstable-fit";
    case Errc::undecided_spread: return "undecided-spread";
    case Errc::rank_deficient: return "rank-deficient";
    case Errc::genericity_failure: return "genericity-failure";
    case Errc::precondition: return "precondition";
    case Errc::io: return "io";
    case Errc::usage: return "usage";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the `Errc` kinds.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Syntax errors keep the 1-based line and column of the offending character.
class ParseError : public Error {
 public:
  ParseError(Errc code, const std::string& what, std::size_t line, std::size_t column)
      : Error(code, what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace coefmod
