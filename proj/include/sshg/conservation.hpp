#pragma once

// Boundary-jet reduction and machine verification of the modified conserved
// charges of the fused defect: the gradient-relation lattice, the
// Poisson-bracket-like identities, and the exact closure of momentum,
// energy and all four supercharges.

#include <string>
#include <vector>

#include "sshg/defects.hpp"
#include "sshg/model.hpp"

namespace sshg::cons {

using defects::FusedDefect;
using sym::Expr;
using sym::Side;

struct Identity {
    std::string id;
    Expr residual;  // zero iff the identity holds
};

// d/d(combination) derivatives through the region-1/2 chain rule.
Expr d_plus_even(const Expr& e, sym::Field f);
Expr d_minus_even(const Expr& e, sym::Field f);
Expr d_plus_odd(const Expr& e, sym::Field f, Side conv);
Expr d_minus_odd(const Expr& e, sym::Field f, Side conv);

// The 16 gradient relations of the fused potentials.
std::vector<Identity> relation_residuals(const FusedDefect& d, Side conv);

// V1-V2, W1-W2 and the fermionic constraint as exact identities.
std::vector<Identity> bracket_residuals(const FusedDefect& d, const model::PotentialSigns& s,
                                        Side conv);

// Defect contribution of each modified charge at x=0.
Expr defect_term(model::Charge c, const FusedDefect& d);

// Exact conservation closure: flux difference across the defect plus the
// time derivative of the defect term, reduced by the defect conditions.
Expr modified_charge_residual(model::Charge c, const FusedDefect& d,
                              const model::PotentialSigns& s, Side conv);

// Same reduction without the defect term: the nonzero obstruction that the
// defect contribution cancels (negative control).
Expr unmodified_flow_obstruction(model::Charge c, const FusedDefect& d,
                                 const model::PotentialSigns& s, Side conv);

// True if no eliminated boundary jet survives in the expression.
bool fully_reduced(const Expr& e, const FusedDefect& d);

}  // namespace sshg::cons
