#pragma once

#include <string>

#include "sshg/expr.hpp"

namespace sshg::sym {

// Expression text grammar:
//   identifiers  phi varphi psi psibar chi chibar f g, each with [region]
//   derivatives  dt(...), dx(...)   (nestable, apply to any subexpression)
//   functions    exp cosh sinh sqrt (arguments restricted to what the
//                canonical form can represent)
//   constants    I, m, s1, s2, integer and p/q rationals
//   operators    + - * / ^    (whitespace insignificant)
Expr parse(const std::string& text);

// Deterministic canonical printer; parse(print(e)) == e.
std::string print(const Expr& e);

}  // namespace sshg::sym
