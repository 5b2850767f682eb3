#include "sshg/conservation.hpp"

#include "sshg/build.hpp"

namespace sshg::cons {

using namespace sshg::build;
using sym::Dir;
using sym::Gaussian;
using sym::JetAtom;
using sym::Rational;

Expr d_plus_even(const Expr& e, Field f) {
    return num(1, 2) * (sym::boson_derive(e, fa(f, 1)) + sym::boson_derive(e, fa(f, 2)));
}
Expr d_minus_even(const Expr& e, Field f) {
    return num(1, 2) * (sym::boson_derive(e, fa(f, 1)) - sym::boson_derive(e, fa(f, 2)));
}
Expr d_plus_odd(const Expr& e, Field f, Side conv) {
    return num(1, 2) * (sym::grassmann_derive(e, JetAtom(f, 1), conv) +
                        sym::grassmann_derive(e, JetAtom(f, 2), conv));
}
Expr d_minus_odd(const Expr& e, Field f, Side conv) {
    return num(1, 2) * (sym::grassmann_derive(e, JetAtom(f, 1), conv) -
                        sym::grassmann_derive(e, JetAtom(f, 2), conv));
}

std::vector<Identity> relation_residuals(const FusedDefect& d, Side conv) {
    std::vector<Identity> out;
    auto add = [&](std::string id, Expr r) { out.push_back({std::move(id), std::move(r)}); };

    add("dB1/dpsi-", d_minus_odd(d.B1, Field::psi, conv));
    add("dB1/dpsibar-", d_minus_odd(d.B1, Field::psibar, conv));
    add("dB1/dchi-", d_minus_odd(d.B1, Field::chi, conv));
    add("dB1/dchibar-", d_minus_odd(d.B1, Field::chibar, conv));
    add("dB1minus/dpsi+", d_plus_odd(d.B1minus, Field::psi, conv));
    add("dB1plus/dpsibar+", d_plus_odd(d.B1plus, Field::psibar, conv));
    add("dB1minus/dchi+", d_plus_odd(d.B1minus, Field::chi, conv));
    add("dB1plus/dchibar+", d_plus_odd(d.B1plus, Field::chibar, conv));

    auto d0 = [](const Expr& e, Field f) { return sym::boson_derive(e, fa(f, 0)); };
    add("dphi0-B0+", d0(d.B0plus, Field::phi) - num(2) * d_plus_even(d.B0plus, Field::phi));
    add("dphi0-B1+", d0(d.B1plus, Field::phi) - num(2) * d_plus_even(d.B1plus, Field::phi));
    add("dphi0-B0-", d0(d.B0minus, Field::phi) + num(2) * d_plus_even(d.B0minus, Field::phi));
    add("dphi0-B1-", d0(d.B1minus, Field::phi) + num(2) * d_plus_even(d.B1minus, Field::phi));
    add("dvarphi0-B0+",
        d0(d.B0plus, Field::varphi) - num(2) * d_plus_even(d.B0plus, Field::varphi));
    add("dvarphi0-B1+",
        d0(d.B1plus, Field::varphi) - num(2) * d_plus_even(d.B1plus, Field::varphi));
    add("dvarphi0-B0-",
        d0(d.B0minus, Field::varphi) + num(2) * d_plus_even(d.B0minus, Field::varphi));
    add("dvarphi0-B1-",
        d0(d.B1minus, Field::varphi) + num(2) * d_plus_even(d.B1minus, Field::varphi));
    return out;
}

std::vector<Identity> bracket_residuals(const FusedDefect& d, const model::PotentialSigns& s,
                                        Side conv) {
    std::vector<Identity> out;
    auto d0 = [](const Expr& e, Field f) { return sym::boson_derive(e, fa(f, 0)); };
    auto dm = [](const Expr& e, Field f) { return d_minus_even(e, f); };

    Expr v_lhs = model::potential_V(1, s.v) - model::potential_V(2, s.v);
    Expr v_rhs = num(2) * (d0(d.B0plus, Field::phi) * dm(d.B0minus, Field::phi) -
                           d0(d.B0minus, Field::phi) * dm(d.B0plus, Field::phi) -
                           d0(d.B0plus, Field::varphi) * dm(d.B0minus, Field::varphi) +
                           d0(d.B0minus, Field::varphi) * dm(d.B0plus, Field::varphi));
    out.push_back({"V1-V2", v_lhs - v_rhs});

    Expr w_lhs = model::potential_W(1, s.w1, s.w2) - model::potential_W(2, s.w1, s.w2);
    Expr w_rhs = num(2) * (d0(d.B1plus, Field::phi) * dm(d.B0minus, Field::phi) -
                           d0(d.B1minus, Field::phi) * dm(d.B0plus, Field::phi) +
                           d0(d.B0plus, Field::phi) * dm(d.B1minus, Field::phi) -
                           d0(d.B0minus, Field::phi) * dm(d.B1plus, Field::phi)) -
                 num(2) * (d0(d.B1plus, Field::varphi) * dm(d.B0minus, Field::varphi) -
                           d0(d.B1minus, Field::varphi) * dm(d.B0plus, Field::varphi) +
                           d0(d.B0plus, Field::varphi) * dm(d.B1minus, Field::varphi) -
                           d0(d.B0minus, Field::varphi) * dm(d.B1plus, Field::varphi));
    auto gd = [&](const Expr& e, Field f, int r) {
        return sym::grassmann_derive(e, JetAtom(f, r), conv);
    };
    Expr w_ferm;
    for (int k : {1, 2})
        w_ferm += gd(d.B1minus, Field::f, k) * gd(d.B1plus, Field::g, k) -
                  gd(d.B1plus, Field::f, k) * gd(d.B1minus, Field::g, k);
    w_rhs += sym::scale(w_ferm, Gaussian(Rational(0), Rational(2)));
    // W involves each region's own fermions; the identity lives on the
    // constrained surface, so it is reduced by the defect conditions
    // (V and the constraint hold identically in jet space).
    out.push_back({"W1-W2", sym::substitute(w_lhs - w_rhs, d.conditions)});

    Expr constraint = d0(d.B1plus, Field::phi) * dm(d.B1minus, Field::phi) -
                      d0(d.B1minus, Field::phi) * dm(d.B1plus, Field::phi) -
                      d0(d.B1plus, Field::varphi) * dm(d.B1minus, Field::varphi) +
                      d0(d.B1minus, Field::varphi) * dm(d.B1plus, Field::varphi);
    out.push_back({"B1-constraint", constraint});
    return out;
}

Expr defect_term(model::Charge c, const FusedDefect& d) {
    using model::Charge;
    auto bilin = [&](int s_psi, int s_psibar, int s_chi, int s_chibar) {
        return sym::scale(j(Field::psi, 1) * j(Field::psi, 2), Gaussian(Rational(0), Rational(s_psi))) +
               sym::scale(j(Field::psibar, 1) * j(Field::psibar, 2),
                          Gaussian(Rational(0), Rational(s_psibar))) +
               sym::scale(j(Field::chi, 1) * j(Field::chi, 2), Gaussian(Rational(0), Rational(s_chi))) +
               sym::scale(j(Field::chibar, 1) * j(Field::chibar, 2),
                          Gaussian(Rational(0), Rational(s_chibar)));
    };
    switch (c) {
        case Charge::P:
            return d.B1plus + d.B0plus - d.B1minus - d.B0minus + bilin(-1, -1, 1, 1);
        case Charge::E:
            return d.B0 + d.B1 + bilin(-1, 1, 1, -1);
        case Charge::Q1:
            return -(I() * sqrt_2m_sigma(1) * (d.u[1][0] * j(Field::f, 1) + d.u[1][1] * j(Field::g, 1))) -
                   I() * sqrt_2m_sigma(2) * (d.u[2][0] * j(Field::f, 2) + d.u[2][1] * j(Field::g, 2));
        case Charge::Q2:
            return -(I() * sqrt_2m_sigma(1) * (d.u[1][0] * j(Field::f, 1) - d.u[1][1] * j(Field::g, 1))) -
                   I() * sqrt_2m_sigma(2) * (d.u[2][0] * j(Field::f, 2) - d.u[2][1] * j(Field::g, 2));
        case Charge::Q1bar:
            return -(I() * sqrt_2m_over_sigma(1) *
                     (d.v[1][1] * j(Field::f, 1) + d.v[1][0] * j(Field::g, 1))) +
                   I() * sqrt_2m_over_sigma(2) *
                       (d.v[2][1] * j(Field::f, 2) + d.v[2][0] * j(Field::g, 2));
        case Charge::Q2bar:
            return I() * sqrt_2m_over_sigma(1) *
                       (d.v[1][1] * j(Field::f, 1) - d.v[1][0] * j(Field::g, 1)) -
                   I() * sqrt_2m_over_sigma(2) *
                       (d.v[2][1] * j(Field::f, 2) - d.v[2][0] * j(Field::g, 2));
    }
    throw std::invalid_argument("charge kind");
}

Expr modified_charge_residual(model::Charge c, const FusedDefect& d,
                              const model::PotentialSigns& s, Side conv) {
    (void)conv;
    Expr flow = model::charge_flux(c, 1, s) - model::charge_flux(c, 2, s);
    Expr total = flow + sym::total_derivative(defect_term(c, d), Dir::t);
    return sym::substitute(total, d.conditions);
}

Expr unmodified_flow_obstruction(model::Charge c, const FusedDefect& d,
                                 const model::PotentialSigns& s, Side conv) {
    (void)conv;
    Expr flow = model::charge_flux(c, 1, s) - model::charge_flux(c, 2, s);
    return sym::substitute(flow, d.conditions);
}

bool fully_reduced(const Expr& e, const FusedDefect& d) { return !d.conditions.reducible(e); }

}  // namespace sshg::cons
