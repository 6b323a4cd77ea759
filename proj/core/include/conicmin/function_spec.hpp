#pragma once

#include <string_view>

#include "conicmin/oracle.hpp"

namespace conicmin {

// Builds a value oracle from a JSON function tree. Node kinds:
//   {"kind":"polynomial","vars":n,"monomials":[{"coef":"p/q","exps":[...]}]}
//   {"kind":"max","args":[...],"weights":["1",...]}          weights optional
//   {"kind":"affine","inner":node,"A":[[...]],"b":[...]}      inner(A x + b)
//   {"kind":"monotone","outer":node(1 var),"inner":node}
//   {"kind":"lex","first":node,"second":node}
//   {"kind":"constrained","objective":node,"constraints":[...]}
//   {"kind":"norm","p":"1"|"inf","vars":n}
// Rationals are "p/q" strings or JSON integers. Throws Error(kParseError).
ValueOracle parse_function_spec(std::string_view json_text);

}  // namespace conicmin
