#pragma once

// Bulk N=2 super sinh-Gordon theory: Lagrangian, Euler-Lagrange operator,
// supersymmetry variations, PT transform and the bulk charge densities
// with their fluxes.

#include <array>
#include <functional>
#include <string>

#include "sshg/expr.hpp"
#include "sshg/rewrite.hpp"

namespace sshg::model {

using sym::Dir;
using sym::Expr;
using sym::Field;
using sym::FieldAtom;
using sym::JetAtom;
using sym::RewriteSystem;
using sym::Side;

inline constexpr std::array<Field, 6> kBulkFields = {Field::phi,    Field::varphi, Field::psi,
                                                     Field::psibar, Field::chi,    Field::chibar};

// Bulk Lagrangian density with all fields tagged by `region`.
Expr bulk_lagrangian(int region);

// Field-equation residual (lhs - rhs of the stated equations); zero on shell.
Expr bulk_eom_residual(Field f, int region);

// Variational residual dL/dF - D_t dL/d(dt F) - D_x dL/d(dx F); the odd
// derivatives follow the given convention.
Expr euler_lagrange(const Expr& L, FieldAtom f, Side conv);

// On-shell reduction rules for the listed regions, oriented to eliminate
// pure-time fermion derivatives and second time derivatives of the bosons.
RewriteSystem bulk_eom_rules(std::initializer_list<int> regions);

// --- supersymmetry ----------------------------------------------------------

// Parameter-stripped variation delta F = eps * rule(F), eps pulled to the
// left. which in {1,2}, barred selects the conjugate projection.
struct SusyProjection {
    std::string name;
    std::function<Expr(FieldAtom)> rule;
};
SusyProjection susy_projection(int which, bool barred);

// Odd graded derivation induced by the projection, prolonged to jets.
Expr susy_vary(const Expr& e, const SusyProjection& p);

// sum_F rule(F) * d L / d(jet F in direction d) - the coefficient of the
// derivative of the susy parameter in the not-rigid variation of L.
Expr notrigid_bracket(const Expr& L, const SusyProjection& p, Dir d, Side conv, int region);

// --- PT ---------------------------------------------------------------------

// (x,t) -> (-x,-t) with psi <-> -chi, psibar <-> -chibar, bosons fixed.
Expr pt_bulk(const Expr& e);

// Defect version: regions 1 <-> 2, psi_1 <-> -chi_2 (and barred), f_1 <-> f_2,
// g_1 <-> -g_2, region-0 bosons fixed, sigma_1 <-> sigma_2.
Expr pt_defect(const Expr& e);

// --- charges ----------------------------------------------------------------

enum class Charge { E, P, Q1, Q1bar, Q2, Q2bar };

// Signs resolved by the flux-closure derivation below.
struct PotentialSigns {
    int v = 0;   // bosonic potential
    int w1 = 0;  // cosh-cosh Yukawa block
    int w2 = 0;  // sinh-sinh Yukawa block
};

Expr potential_V(int region, int sign_v);
Expr potential_W(int region, int sign_w1, int sign_w2);

// Brute-force sign resolution: the unique choice making D_t(E density) a
// total x-derivative modulo the bulk field equations.
PotentialSigns derive_potential_signs();

// Density and flux of each charge with D_t(density) = D_x(flux) on shell.
// E uses the derived potentials; Q1bar's flux mass-term signs are resolved
// the same constructive way; Q2 family is the PT image of the Q1 family.
Expr charge_density(Charge c, int region, const PotentialSigns& s);
Expr charge_flux(Charge c, int region, const PotentialSigns& s);

// Signs of the kinetic block and the two mass terms in the Q1bar flux
// (resolved constructively).
std::array<int, 3> derive_q1bar_flux_signs();

}  // namespace sshg::model
