#pragma once

// Type-I and type-II defect construction: defect Lagrangians and potentials,
// variational defect conditions, the fusing of two type-I defects into a
// type-II one, and the Backlund transformation set with its consistency
// checks.

#include <string>
#include <vector>

#include "sshg/expr.hpp"
#include "sshg/rewrite.hpp"

namespace sshg::defects {

using sym::Expr;
using sym::Field;
using sym::FieldAtom;
using sym::RewriteSystem;
using sym::Side;

// --- type-I -----------------------------------------------------------------

// Single defect coupling regions 1|2 with parameter sigma_1 and auxiliary
// fermions f[1], g[1].
struct TypeIDefect {
    Expr B0;
    Expr B1;
    Expr lagrangian;  // full defect Lagrangian including kinetic terms
};
TypeIDefect build_type1_single(Side conv);

// Fusing constituent k in {1,2}: couples region k to the middle region 0
// with parameter sigma_k and auxiliaries f[k], g[k]. The (-1)^k signs of
// the stated Lagrangian are included.
struct TypeIPair {
    Expr B0;
    Expr B1;
    Expr lagrangian;
};
TypeIPair build_type1_pair(int k, Side conv);

// --- variational defect conditions -------------------------------------------

// One boundary field: variational residual (== 0 is the defect condition).
struct DefectCondition {
    FieldAtom field;
    Expr residual;
};

// Derives the conditions of L_D at x=0 between bulk regions left/right; the
// bulk flux enters with +/- according to the side. Fields without bulk flux
// (region-0 bosons, auxiliary fermions) get the pure time-variational part.
std::vector<DefectCondition> variational_conditions(const Expr& L_D, int left_region,
                                                    int right_region,
                                                    const std::vector<FieldAtom>& defect_only,
                                                    Side conv);

// Reference (stated) type-I conditions as residuals, written with derivatives
// taken under `conv`; used for the convention round trip.
std::vector<DefectCondition> stated_type1_conditions(const TypeIDefect& d, Side conv);

// --- fusing -------------------------------------------------------------------

struct FusedDefect {
    Expr B0plus, B0minus, B1plus, B1minus;  // stated fused potentials
    Expr B0, B1;                            // sums
    Expr lagrangian_stated;                 // stated type-II L_D
    Expr lagrangian_fused;                  // L_D1 - L_D2 with auxiliaries eliminated
    Expr psi0, chi0, psibar0, chibar0;      // eliminated middle fermions (derived)
    Expr u[3][2], v[3][2];                  // u[k][+,-], v[k][+,-], k in 1..2
    RewriteSystem conditions;               // stated type-II conditions as rewrites
};

// Solves the two type-I condition sets for the middle fermions, builds the
// fused Lagrangian and the stated one, and the type-II rewrite system.
FusedDefect fuse(Side conv);

// Stated type-II conditions as residuals under `conv`.
std::vector<DefectCondition> stated_type2_conditions(const FusedDefect& d, Side conv);

// The derived middle-fermion solutions as printed (to compare against).
Expr stated_psi0(const FusedDefect& d);
Expr stated_chi0(const FusedDefect& d);
Expr stated_psibar0(const FusedDefect& d);
Expr stated_chibar0(const FusedDefect& d);

// --- Backlund transformations ---------------------------------------------------
//
// The Backlund set lives in light-cone jets: derivative slot (dt,dx) is read
// as (d+, d-). Relations are stored as lhs and rhs with residual lhs - rhs.

struct BacklundRelation {
    std::string name;
    Expr lhs;
    Expr rhs;
    Expr residual() const { return lhs - rhs; }
};

struct BacklundSet {
    std::vector<BacklundRelation> relations;  // 20 of them
    const BacklundRelation& by_name(const std::string& n) const;
};

BacklundSet build_backlund();

// Rewrite system encoding the Backlund relations plus the light-cone bulk
// field equations of both regions, used by the consistency checks.
RewriteSystem backlund_rules(const BacklundSet& bt, Side conv);

// Cross-derivative consistency: each check returns the reduced residual
// (zero on success). `field` in {phi1, phi2, varphi1, varphi2, psi, psibar,
// chi, chibar, f1, f2, g1, g2}.
Expr backlund_consistency_residual(const BacklundSet& bt, const RewriteSystem& rules,
                                   const std::string& field);

std::vector<std::string> backlund_check_names();

}  // namespace sshg::defects
