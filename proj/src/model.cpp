#include "sshg/model.hpp"

#include <stdexcept>
#include <vector>

#include "sshg/build.hpp"
#include "sshg/errors.hpp"

namespace sshg::model {

using namespace sshg::build;
using sym::Gaussian;
using sym::LinearForm;
using sym::MappedAtom;
using sym::Monomial;
using sym::Rational;

namespace {

LinearForm one_field(Field f, int r, Rational c = Rational(1)) {
    return form({{fa(f, r), c}});
}

Expr yukawa_cc(int p) {  // cosh(phi) cosh(varphi)
    return ch(one_field(Field::phi, p)) * ch(one_field(Field::varphi, p));
}
Expr yukawa_ss(int p) {  // sinh(phi) sinh(varphi)
    return sh(one_field(Field::phi, p)) * sh(one_field(Field::varphi, p));
}
Expr sh_ch(int p) {  // sinh(phi) cosh(varphi)
    return sh(one_field(Field::phi, p)) * ch(one_field(Field::varphi, p));
}
Expr ch_sh(int p) {  // cosh(phi) sinh(varphi)
    return ch(one_field(Field::phi, p)) * sh(one_field(Field::varphi, p));
}

Expr bilinear_cc(int p) {  // psibar psi + chibar chi
    return j(Field::psibar, p) * j(Field::psi, p) + j(Field::chibar, p) * j(Field::chi, p);
}
Expr bilinear_cross(int p) {  // psibar chi + chibar psi
    return j(Field::psibar, p) * j(Field::chi, p) + j(Field::chibar, p) * j(Field::psi, p);
}

Expr four_i_m() { return sym::scale(m1(), Gaussian(Rational(0), Rational(4))); }
Expr two_i() { return sym::scale(num(2), Gaussian::I()); }

}  // namespace

Expr bulk_lagrangian(int p) {
    Expr L;
    // boson kinetic
    L += num(1, 2) * j(Field::phi, p, 0, 1) * j(Field::phi, p, 0, 1);
    L -= num(1, 2) * j(Field::phi, p, 1, 0) * j(Field::phi, p, 1, 0);
    L -= num(1, 2) * j(Field::varphi, p, 0, 1) * j(Field::varphi, p, 0, 1);
    L += num(1, 2) * j(Field::varphi, p, 1, 0) * j(Field::varphi, p, 1, 0);
    // fermion kinetic: -i psi (dx - dt) psi + i psibar (dx + dt) psibar
    //                  +i chi (dx - dt) chi - i chibar (dx + dt) chibar
    L -= I() * j(Field::psi, p) * (j(Field::psi, p, 0, 1) - j(Field::psi, p, 1, 0));
    L += I() * j(Field::psibar, p) * (j(Field::psibar, p, 0, 1) + j(Field::psibar, p, 1, 0));
    L += I() * j(Field::chi, p) * (j(Field::chi, p, 0, 1) - j(Field::chi, p, 1, 0));
    L -= I() * j(Field::chibar, p) * (j(Field::chibar, p, 0, 1) + j(Field::chibar, p, 1, 0));
    // potential
    L += m2() * (ch(one_field(Field::phi, p, Rational(2))) -
                 ch(one_field(Field::varphi, p, Rational(2))));
    // Yukawa
    L += four_i_m() * bilinear_cc(p) * yukawa_cc(p);
    L -= four_i_m() * bilinear_cross(p) * yukawa_ss(p);
    return L;
}

Expr bulk_eom_residual(Field f, int p) {
    switch (f) {
        case Field::phi:
            return j(Field::phi, p, 0, 2) - j(Field::phi, p, 2, 0) -
                   num(2) * m2() * sh(one_field(Field::phi, p, Rational(2))) -
                   four_i_m() * bilinear_cc(p) * sh_ch(p) + four_i_m() * bilinear_cross(p) * ch_sh(p);
        case Field::varphi:
            return j(Field::varphi, p, 0, 2) - j(Field::varphi, p, 2, 0) -
                   num(2) * m2() * sh(one_field(Field::varphi, p, Rational(2))) +
                   four_i_m() * bilinear_cc(p) * ch_sh(p) - four_i_m() * bilinear_cross(p) * sh_ch(p);
        case Field::psi:
            return j(Field::psi, p, 0, 1) - j(Field::psi, p, 1, 0) +
                   num(2) * m1() * (j(Field::psibar, p) * yukawa_cc(p) -
                                    j(Field::chibar, p) * yukawa_ss(p));
        case Field::psibar:
            return j(Field::psibar, p, 0, 1) + j(Field::psibar, p, 1, 0) +
                   num(2) * m1() *
                       (j(Field::psi, p) * yukawa_cc(p) - j(Field::chi, p) * yukawa_ss(p));
        case Field::chi:
            return j(Field::chi, p, 0, 1) - j(Field::chi, p, 1, 0) -
                   num(2) * m1() * (j(Field::chibar, p) * yukawa_cc(p) -
                                    j(Field::psibar, p) * yukawa_ss(p));
        case Field::chibar:
            return j(Field::chibar, p, 0, 1) + j(Field::chibar, p, 1, 0) -
                   num(2) * m1() *
                       (j(Field::chi, p) * yukawa_cc(p) - j(Field::psi, p) * yukawa_ss(p));
        default:
            throw std::invalid_argument("no bulk field equation for auxiliary fermions");
    }
}

Expr euler_lagrange(const Expr& L, FieldAtom f, Side conv) {
    const JetAtom jt(f, 1, 0), jx(f, 0, 1);
    Expr value_part;
    if (f.even())
        value_part = sym::boson_derive(L, f);
    else
        value_part = sym::grassmann_derive(L, JetAtom(f, 0, 0), conv);
    return value_part - sym::total_derivative(sym::derive(L, jt, conv), Dir::t) -
           sym::total_derivative(sym::derive(L, jx, conv), Dir::x);
}

RewriteSystem bulk_eom_rules(std::initializer_list<int> regions) {
    std::vector<sym::Rule> rules;
    for (int p : regions) {
        auto add = [&](JetAtom lhs, Expr rhs, const char* tag) {
            sym::Rule r;
            r.lhs = lhs;
            r.rhs = std::move(rhs);
            r.prolong_t = true;
            r.prolong_x = true;
            r.tag = std::string(tag) + "@" + std::to_string(p);
            rules.push_back(std::move(r));
        };
        add(JetAtom(Field::psi, static_cast<std::uint8_t>(p), 1, 0),
            j(Field::psi, p, 0, 1) + num(2) * m1() * (j(Field::psibar, p) * yukawa_cc(p) -
                                                      j(Field::chibar, p) * yukawa_ss(p)),
            "eom-psi");
        add(JetAtom(Field::psibar, static_cast<std::uint8_t>(p), 1, 0),
            -j(Field::psibar, p, 0, 1) - num(2) * m1() * (j(Field::psi, p) * yukawa_cc(p) -
                                                          j(Field::chi, p) * yukawa_ss(p)),
            "eom-psibar");
        add(JetAtom(Field::chi, static_cast<std::uint8_t>(p), 1, 0),
            j(Field::chi, p, 0, 1) - num(2) * m1() * (j(Field::chibar, p) * yukawa_cc(p) -
                                                      j(Field::psibar, p) * yukawa_ss(p)),
            "eom-chi");
        add(JetAtom(Field::chibar, static_cast<std::uint8_t>(p), 1, 0),
            -j(Field::chibar, p, 0, 1) + num(2) * m1() * (j(Field::chi, p) * yukawa_cc(p) -
                                                          j(Field::psi, p) * yukawa_ss(p)),
            "eom-chibar");
        add(JetAtom(Field::phi, static_cast<std::uint8_t>(p), 2, 0),
            j(Field::phi, p, 0, 2) - num(2) * m2() * sh(one_field(Field::phi, p, Rational(2))) -
                four_i_m() * bilinear_cc(p) * sh_ch(p) + four_i_m() * bilinear_cross(p) * ch_sh(p),
            "eom-phi");
        add(JetAtom(Field::varphi, static_cast<std::uint8_t>(p), 2, 0),
            j(Field::varphi, p, 0, 2) -
                num(2) * m2() * sh(one_field(Field::varphi, p, Rational(2))) +
                four_i_m() * bilinear_cc(p) * ch_sh(p) - four_i_m() * bilinear_cross(p) * sh_ch(p),
            "eom-varphi");
    }
    return RewriteSystem(std::move(rules));
}

// --- susy --------------------------------------------------------------------

namespace {

Expr dplus(Field f, int r) {  // (dx + dt)/2
    return num(1, 2) * (j(f, r, 0, 1) + j(f, r, 1, 0));
}
Expr dminus(Field f, int r) {  // (dx - dt)/2
    return num(1, 2) * (j(f, r, 0, 1) - j(f, r, 1, 0));
}

}  // namespace

SusyProjection susy_projection(int which, bool barred) {
    if (which != 1 && which != 2) throw std::invalid_argument("susy projection index");
    SusyProjection p;
    p.name = std::string("eps") + std::to_string(which) + (barred ? "bar" : "");
    const bool one = (which == 1);
    if (!barred) {
        p.rule = [one](FieldAtom f) -> Expr {
            const int r = f.region;
            switch (f.name) {
                case Field::phi: return one ? I() * j(Field::psi, r) : -(I() * j(Field::chi, r));
                case Field::varphi: return one ? -(I() * j(Field::chi, r)) : I() * j(Field::psi, r);
                case Field::psi: return one ? dplus(Field::phi, r) : -dplus(Field::varphi, r);
                case Field::chi: return one ? -dplus(Field::varphi, r) : dplus(Field::phi, r);
                case Field::psibar: return one ? -(m1() * sh_ch(r)) : m1() * ch_sh(r);
                case Field::chibar: return one ? -(m1() * ch_sh(r)) : m1() * sh_ch(r);
                default: throw std::invalid_argument("susy variation of auxiliary fermion");
            }
        };
    } else {
        p.rule = [one](FieldAtom f) -> Expr {
            const int r = f.region;
            switch (f.name) {
                case Field::phi: return one ? I() * j(Field::psibar, r) : -(I() * j(Field::chibar, r));
                case Field::varphi:
                    return one ? -(I() * j(Field::chibar, r)) : I() * j(Field::psibar, r);
                case Field::psibar: return one ? -dminus(Field::phi, r) : dminus(Field::varphi, r);
                case Field::chibar: return one ? dminus(Field::varphi, r) : -dminus(Field::phi, r);
                case Field::psi: return one ? m1() * sh_ch(r) : -(m1() * ch_sh(r));
                case Field::chi: return one ? m1() * ch_sh(r) : -(m1() * sh_ch(r));
                default: throw std::invalid_argument("susy variation of auxiliary fermion");
            }
        };
    }
    return p;
}

Expr susy_vary(const Expr& e, const SusyProjection& p) {
    std::vector<Monomial> nothing;
    Expr out;
    for (const auto& m : e.terms()) {
        const Expr rest_base = Expr::from_terms({m});
        // exponential slots: delta exp(sum c F) = sum c * delta(F) * exp(...)
        for (const auto& [atom, c] : m.exp.items()) {
            Expr var = sym::scale(p.rule(atom), Gaussian(c));
            out += var * rest_base;
        }
        // commuting jet slots (even factors): variation passes even prefix only
        for (std::size_t i = 0; i < m.jets.size(); ++i) {
            Monomial rest = m;
            rest.jets.erase(rest.jets.begin() + static_cast<std::ptrdiff_t>(i));
            Expr var = sym::total_derivative(
                sym::total_derivative(p.rule(m.jets[i].base), Dir::t, m.jets[i].dt), Dir::x,
                m.jets[i].dx);
            out += var * Expr::from_terms({rest});
        }
        // word slots: prefix of i odd letters gives (-1)^i
        for (std::size_t i = 0; i < m.word.size(); ++i) {
            Monomial rest = m;
            rest.word.erase(rest.word.begin() + static_cast<std::ptrdiff_t>(i));
            Expr var = sym::total_derivative(
                sym::total_derivative(p.rule(m.word[i].base), Dir::t, m.word[i].dt), Dir::x,
                m.word[i].dx);
            Expr piece = Expr::from_terms({rest}) * var;
            out += (i % 2) ? -piece : piece;
        }
    }
    return out;
}

Expr notrigid_bracket(const Expr& L, const SusyProjection& p, Dir d, Side conv, int region) {
    Expr out;
    for (Field f : kBulkFields) {
        FieldAtom atom = fa(f, region);
        JetAtom jet = (d == Dir::t) ? JetAtom(atom, 1, 0) : JetAtom(atom, 0, 1);
        out += p.rule(atom) * sym::derive(L, jet, conv);
    }
    return out;
}

// --- PT ----------------------------------------------------------------------

namespace {

int jet_parity_sign(const JetAtom& a) { return (a.order() % 2) ? -1 : 1; }

}  // namespace

Expr pt_bulk(const Expr& e) {
    return sym::map_atoms(e, [](JetAtom a) {
        MappedAtom out;
        out.sign = jet_parity_sign(a);
        Field f = a.base.name;
        switch (f) {
            case Field::psi: f = Field::chi; out.sign = -out.sign; break;
            case Field::chi: f = Field::psi; out.sign = -out.sign; break;
            case Field::psibar: f = Field::chibar; out.sign = -out.sign; break;
            case Field::chibar: f = Field::psibar; out.sign = -out.sign; break;
            case Field::phi:
            case Field::varphi: break;
            default: throw std::invalid_argument("bulk PT applied to a defect field");
        }
        out.atom = JetAtom(f, a.base.region, a.dt, a.dx);
        return out;
    });
}

Expr pt_defect(const Expr& e) {
    return sym::map_atoms(
        e,
        [](JetAtom a) {
            MappedAtom out;
            out.sign = jet_parity_sign(a);
            Field f = a.base.name;
            int r = a.base.region;
            const int swapped = (r == 1) ? 2 : (r == 2 ? 1 : 0);
            switch (f) {
                case Field::phi:
                case Field::varphi:
                    r = swapped;  // region-0 bosons stay put
                    break;
                case Field::psi:
                    f = Field::chi; r = swapped; out.sign = -out.sign; break;
                case Field::chi:
                    f = Field::psi; r = swapped; out.sign = -out.sign; break;
                case Field::psibar:
                    f = Field::chibar; r = swapped; out.sign = -out.sign; break;
                case Field::chibar:
                    f = Field::psibar; r = swapped; out.sign = -out.sign; break;
                case Field::f:
                    r = swapped; break;
                case Field::g:
                    r = swapped; out.sign = -out.sign; break;
            }
            if ((f == Field::f || f == Field::g) && r == 0)
                throw std::invalid_argument("defect PT applied to a region-0 auxiliary fermion");
            out.atom = JetAtom(f, static_cast<std::uint8_t>(r), a.dt, a.dx);
            return out;
        },
        /*swap_sigmas=*/true);
}

// --- charges -------------------------------------------------------------------

Expr potential_V(int p, int sv) {
    Expr v = m2() * (ch(one_field(Field::phi, p, Rational(2))) -
                     ch(one_field(Field::varphi, p, Rational(2))));
    return sv < 0 ? -v : v;
}

Expr potential_W(int p, int sw1, int sw2) {
    Expr w1 = four_i_m() * bilinear_cc(p) * yukawa_cc(p);
    Expr w2 = four_i_m() * bilinear_cross(p) * yukawa_ss(p);
    return (sw1 < 0 ? -w1 : w1) - (sw2 < 0 ? -w2 : w2);
}

namespace {

Expr energy_kinetic(int p) {
    Expr e;
    e += num(1, 2) * j(Field::phi, p, 0, 1) * j(Field::phi, p, 0, 1);
    e += num(1, 2) * j(Field::phi, p, 1, 0) * j(Field::phi, p, 1, 0);
    e -= num(1, 2) * j(Field::varphi, p, 0, 1) * j(Field::varphi, p, 0, 1);
    e -= num(1, 2) * j(Field::varphi, p, 1, 0) * j(Field::varphi, p, 1, 0);
    e -= I() * (j(Field::psi, p) * j(Field::psi, p, 0, 1) -
                j(Field::psibar, p) * j(Field::psibar, p, 0, 1));
    e += I() * (j(Field::chi, p) * j(Field::chi, p, 0, 1) -
                j(Field::chibar, p) * j(Field::chibar, p, 0, 1));
    return e;
}

Expr energy_flux(int p) {
    Expr f;
    f += j(Field::phi, p, 1, 0) * j(Field::phi, p, 0, 1);
    f -= j(Field::varphi, p, 1, 0) * j(Field::varphi, p, 0, 1);
    f -= I() * (j(Field::psi, p) * j(Field::psi, p, 1, 0) -
                j(Field::psibar, p) * j(Field::psibar, p, 1, 0));
    f += I() * (j(Field::chi, p) * j(Field::chi, p, 1, 0) -
                j(Field::chibar, p) * j(Field::chibar, p, 1, 0));
    return f;
}

Expr momentum_density(int p) {
    Expr e;
    e += j(Field::phi, p, 1, 0) * j(Field::phi, p, 0, 1);
    e -= j(Field::varphi, p, 1, 0) * j(Field::varphi, p, 0, 1);
    e -= I() * (j(Field::psi, p) * j(Field::psi, p, 0, 1) +
                j(Field::psibar, p) * j(Field::psibar, p, 0, 1));
    e += I() * (j(Field::chi, p) * j(Field::chi, p, 0, 1) +
                j(Field::chibar, p) * j(Field::chibar, p, 0, 1));
    return e;
}

Expr momentum_flux_kinetic(int p) {
    Expr f;
    f += num(1, 2) * j(Field::phi, p, 0, 1) * j(Field::phi, p, 0, 1);
    f += num(1, 2) * j(Field::phi, p, 1, 0) * j(Field::phi, p, 1, 0);
    f -= num(1, 2) * j(Field::varphi, p, 0, 1) * j(Field::varphi, p, 0, 1);
    f -= num(1, 2) * j(Field::varphi, p, 1, 0) * j(Field::varphi, p, 1, 0);
    f -= I() * (j(Field::psi, p) * j(Field::psi, p, 1, 0) +
                j(Field::psibar, p) * j(Field::psibar, p, 1, 0));
    f += I() * (j(Field::chi, p) * j(Field::chi, p, 1, 0) +
                j(Field::chibar, p) * j(Field::chibar, p, 1, 0));
    return f;
}

Expr q1_density(int p) {
    return two_i() * j(Field::psi, p) * dplus(Field::phi, p) +
           two_i() * j(Field::chi, p) * dplus(Field::varphi, p) -
           two_i() * m1() * j(Field::psibar, p) * sh_ch(p) +
           two_i() * m1() * j(Field::chibar, p) * ch_sh(p);
}

Expr q1_flux(int p) {
    return two_i() * j(Field::psi, p) * dplus(Field::phi, p) +
           two_i() * j(Field::chi, p) * dplus(Field::varphi, p) +
           two_i() * m1() * j(Field::psibar, p) * sh_ch(p) -
           two_i() * m1() * j(Field::chibar, p) * ch_sh(p);
}

Expr q1bar_density(int p) {
    return two_i() * j(Field::psibar, p) * dminus(Field::phi, p) +
           two_i() * j(Field::chibar, p) * dminus(Field::varphi, p) -
           two_i() * m1() * j(Field::psi, p) * sh_ch(p) +
           two_i() * m1() * j(Field::chi, p) * ch_sh(p);
}

Expr q1bar_flux(int p, int sk, int s1, int s2) {
    return sym::scale(two_i() * j(Field::psibar, p) * dminus(Field::phi, p) +
                          two_i() * j(Field::chibar, p) * dminus(Field::varphi, p),
                      Gaussian(sk)) +
           sym::scale(two_i() * m1() * j(Field::psi, p) * sh_ch(p), Gaussian(s1)) +
           sym::scale(two_i() * m1() * j(Field::chi, p) * ch_sh(p), Gaussian(s2));
}

bool flux_closes(const Expr& density, const Expr& flux, const RewriteSystem& eom) {
    Expr r = sym::total_derivative(density, Dir::t) - sym::total_derivative(flux, Dir::x);
    return sym::substitute(r, eom).is_zero();
}

}  // namespace

PotentialSigns derive_potential_signs() {
    const RewriteSystem eom = bulk_eom_rules({1});
    PotentialSigns found;
    int hits = 0;
    for (int sv : {1, -1})
        for (int sw1 : {1, -1})
            for (int sw2 : {1, -1}) {
                Expr density = energy_kinetic(1) + potential_V(1, sv) + potential_W(1, sw1, sw2);
                if (flux_closes(density, energy_flux(1), eom)) {
                    found = {sv, sw1, sw2};
                    ++hits;
                }
            }
    if (hits != 1)
        throw ResidualNonZero("energy potential sign resolution found " + std::to_string(hits) +
                              " candidates instead of exactly one");
    return found;
}

std::array<int, 3> derive_q1bar_flux_signs() {
    const RewriteSystem eom = bulk_eom_rules({1});
    std::array<int, 3> found{0, 0, 0};
    int hits = 0;
    for (int sk : {1, -1})
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                if (flux_closes(q1bar_density(1), q1bar_flux(1, sk, s1, s2), eom)) {
                    found = {sk, s1, s2};
                    ++hits;
                }
            }
    if (hits != 1)
        throw ResidualNonZero("q1bar flux sign resolution found " + std::to_string(hits) +
                              " candidates instead of exactly one");
    return found;
}

Expr charge_density(Charge c, int p, const PotentialSigns& s) {
    switch (c) {
        case Charge::E: return energy_kinetic(p) + potential_V(p, s.v) + potential_W(p, s.w1, s.w2);
        case Charge::P: return momentum_density(p);
        case Charge::Q1: return q1_density(p);
        case Charge::Q1bar: return q1bar_density(p);
        case Charge::Q2: return pt_bulk(q1_density(p));
        case Charge::Q2bar: return pt_bulk(q1bar_density(p));
    }
    throw std::invalid_argument("charge kind");
}

Expr charge_flux(Charge c, int p, const PotentialSigns& s) {
    switch (c) {
        case Charge::E: return energy_flux(p);
        case Charge::P:
            return momentum_flux_kinetic(p) - potential_V(p, s.v) - potential_W(p, s.w1, s.w2);
        case Charge::Q1: return q1_flux(p);
        case Charge::Q1bar: {
            auto s3 = derive_q1bar_flux_signs();
            return q1bar_flux(p, s3[0], s3[1], s3[2]);
        }
        case Charge::Q2: return pt_bulk(q1_flux(p));
        case Charge::Q2bar: {
            auto s3 = derive_q1bar_flux_signs();
            return pt_bulk(q1bar_flux(p, s3[0], s3[1], s3[2]));
        }
    }
    throw std::invalid_argument("charge kind");
}

}  // namespace sshg::model
