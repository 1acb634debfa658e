#ifndef SRM_LOGIC_PARSE_HPP
#define SRM_LOGIC_PARSE_HPP

#include <string>

#include "srm/logic/formula.hpp"

namespace srm::logic {

// Raised on malformed formula text; `position` is a byte offset into the input.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// S-expression guard syntax: (and ...) (or ...) (not f) (iff f g),
// comparisons >= > <= < = over linear terms built from + - * (constant
// factor only), decimal literals and bare identifiers. A strict subset of
// SMT-LIB2 term syntax, so print_formula output feeds the solver directly.
//
// When `signature` is given, every real variable must belong to it;
// `extra_reals` whitelists non-state symbols (template bound slots).
Formula parse_formula(const std::string &text);
Formula parse_formula(const std::string &text, const StateSignature &signature,
                      const std::set<std::string> &extra_reals = {});

std::string print_formula(const Formula &f);

// Decimal rendering valid as an SMT-LIB2 Real literal: shortest fixed-point
// round-trip form, always with a fraction part, negation as (- x).
std::string smt_decimal(double v);

}  // namespace srm::logic

#endif
