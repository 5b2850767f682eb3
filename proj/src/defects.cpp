#include "sshg/defects.hpp"

#include <stdexcept>

#include "sshg/build.hpp"
#include "sshg/errors.hpp"
#include "sshg/model.hpp"

namespace sshg::defects {

using namespace sshg::build;
using sym::Dir;
using sym::Gaussian;
using sym::JetAtom;
using sym::LinearForm;
using sym::Rational;
using sym::Rule;

namespace {

// linear form from (field, region, coefficient) triples
LinearForm lfm(std::initializer_list<std::tuple<Field, int, Rational>> items) {
    LinearForm f;
    for (const auto& [name, r, c] : items) f.add(fa(name, r), c);
    return f;
}

const Rational kHalf(1, 2), kQuarter(1, 4), kOne(1), kMinusHalf(-1, 2), kMinusQuarter(-1, 4);

// (phi_k + phi_0 +- (varphi_k + varphi_0)) / 2
LinearForm u_arg(int k, int sign) {
    Rational s = sign > 0 ? kHalf : kMinusHalf;
    return lfm({{Field::phi, k, kHalf}, {Field::phi, 0, kHalf}, {Field::varphi, k, s},
                {Field::varphi, 0, s}});
}
// (phi_k - phi_0 +- (varphi_k - varphi_0)) / 2
LinearForm v_arg(int k, int sign) {
    Rational s = sign > 0 ? kHalf : kMinusHalf;
    return lfm({{Field::phi, k, kHalf}, {Field::phi, 0, kMinusHalf}, {Field::varphi, k, s},
                {Field::varphi, 0, -s}});
}

Expr u_fn(int k, int sign) { return sh(u_arg(k, sign)); }
Expr v_fn(int k, int sign) { return sh(v_arg(k, sign)); }
// d/dphi0 of u and v (half-cosh with the right sign)
Expr du0(int k, int sign) { return num(1, 2) * ch(u_arg(k, sign)); }
Expr dv0(int k, int sign) { return num(-1, 2) * ch(v_arg(k, sign)); }

Expr psi_plus() { return j(Field::psi, 1) + j(Field::psi, 2); }
Expr chi_plus() { return j(Field::chi, 1) + j(Field::chi, 2); }
Expr psibar_plus() { return j(Field::psibar, 1) + j(Field::psibar, 2); }
Expr chibar_plus() { return j(Field::chibar, 1) + j(Field::chibar, 2); }

// omega-form kinetic term c * (A dt(B) - B dt(A)) on bare even fields
Expr omega(Field a, int ra, Field b, int rb, Rational c) {
    return sym::scale(j(a, ra) * j(b, rb, 1, 0) - j(b, rb) * j(a, ra, 1, 0), Gaussian(c));
}

}  // namespace

// --- type-I, single (sigma = sigma_1, auxiliaries f[1], g[1]) -----------------

TypeIDefect build_type1_single(Side) {
    TypeIDefect d;
    d.B0 = m1() * sigma(1) *
               (ch(lfm({{Field::phi, 1, kOne}, {Field::phi, 2, kOne}})) -
                ch(lfm({{Field::varphi, 1, kOne}, {Field::varphi, 2, kOne}}))) +
           m1() * hp(0, 0, -2, 0) *
               (ch(lfm({{Field::phi, 1, kOne}, {Field::phi, 2, Rational(-1)}})) -
                ch(lfm({{Field::varphi, 1, kOne}, {Field::varphi, 2, Rational(-1)}})));

    const Expr fga = j(Field::f, 1), gga = j(Field::g, 1);
    d.B1 = I() * sqrt_m_sigma_over2(1) *
               (ch(lfm({{Field::phi, 1, kHalf},
                        {Field::phi, 2, kHalf},
                        {Field::varphi, 1, kHalf},
                        {Field::varphi, 2, kHalf}})) *
                    fga * (psi_plus() - chi_plus()) +
                ch(lfm({{Field::phi, 1, kHalf},
                        {Field::phi, 2, kHalf},
                        {Field::varphi, 1, kMinusHalf},
                        {Field::varphi, 2, kMinusHalf}})) *
                    gga * (psi_plus() + chi_plus())) -
           I() * sqrt_m_over_2sigma(1) *
               (ch(lfm({{Field::phi, 1, kHalf},
                        {Field::phi, 2, kMinusHalf},
                        {Field::varphi, 1, kMinusHalf},
                        {Field::varphi, 2, kHalf}})) *
                    fga *
                    (j(Field::psibar, 1) - j(Field::psibar, 2) + j(Field::chibar, 1) -
                     j(Field::chibar, 2)) +
                ch(lfm({{Field::phi, 1, kHalf},
                        {Field::phi, 2, kMinusHalf},
                        {Field::varphi, 1, kHalf},
                        {Field::varphi, 2, kMinusHalf}})) *
                    gga *
                    (j(Field::psibar, 1) - j(Field::psibar, 2) - j(Field::chibar, 1) +
                     j(Field::chibar, 2)));

    d.lagrangian = omega(Field::phi, 2, Field::phi, 1, kHalf) -
                   omega(Field::varphi, 2, Field::varphi, 1, kHalf) + d.B0 -
                   I() * (j(Field::psibar, 1) * j(Field::psibar, 2) +
                          j(Field::psi, 1) * j(Field::psi, 2)) +
                   I() * (j(Field::chibar, 1) * j(Field::chibar, 2) +
                          j(Field::chi, 1) * j(Field::chi, 2)) +
                   sym::scale(fga * j(Field::g, 1, 1, 0) + gga * j(Field::f, 1, 1, 0),
                              Gaussian(Rational(0), kHalf)) +
                   d.B1;
    return d;
}

std::vector<DefectCondition> stated_type1_conditions(const TypeIDefect& d, Side conv) {
    const Expr B = d.B0 + d.B1;
    auto db = [&](Field f, int r) { return sym::boson_derive(B, fa(f, r)); };
    auto df = [&](Field f, int r) { return sym::grassmann_derive(d.B1, JetAtom(f, r), conv); };
    std::vector<DefectCondition> out;
    auto add = [&](Field f, int r, Expr e) { out.push_back({fa(f, r), std::move(e)}); };
    add(Field::phi, 1, j(Field::phi, 1, 0, 1) - j(Field::phi, 2, 1, 0) + db(Field::phi, 1));
    add(Field::phi, 2, j(Field::phi, 2, 0, 1) - j(Field::phi, 1, 1, 0) - db(Field::phi, 2));
    add(Field::varphi, 1,
        j(Field::varphi, 1, 0, 1) - j(Field::varphi, 2, 1, 0) - db(Field::varphi, 1));
    add(Field::varphi, 2,
        j(Field::varphi, 2, 0, 1) - j(Field::varphi, 1, 1, 0) + db(Field::varphi, 2));
    Expr psi_m = I() * (j(Field::psi, 1) - j(Field::psi, 2));
    Expr psibar_p = I() * (j(Field::psibar, 1) + j(Field::psibar, 2));
    Expr chi_m = I() * (j(Field::chi, 1) - j(Field::chi, 2));
    Expr chibar_p = I() * (j(Field::chibar, 1) + j(Field::chibar, 2));
    add(Field::psi, 1, psi_m + df(Field::psi, 1));
    add(Field::psi, 2, psi_m + df(Field::psi, 2));
    add(Field::psibar, 1, psibar_p - df(Field::psibar, 1));
    add(Field::psibar, 2, psibar_p + df(Field::psibar, 2));
    add(Field::chi, 1, chi_m - df(Field::chi, 1));
    add(Field::chi, 2, chi_m - df(Field::chi, 2));
    add(Field::chibar, 1, chibar_p + df(Field::chibar, 1));
    add(Field::chibar, 2, chibar_p - df(Field::chibar, 2));
    add(Field::f, 1, I() * j(Field::g, 1, 1, 0) + df(Field::f, 1));
    add(Field::g, 1, I() * j(Field::f, 1, 1, 0) + df(Field::g, 1));
    return out;
}

// --- type-I constituents of the fused pair --------------------------------------

TypeIPair build_type1_pair(int k, Side) {
    if (k != 1 && k != 2) throw std::invalid_argument("constituent defect index");
    TypeIPair d;
    d.B0 = m1() * sigma(k) *
               (ch(lfm({{Field::phi, 0, kOne}, {Field::phi, k, kOne}})) -
                ch(lfm({{Field::varphi, 0, kOne}, {Field::varphi, k, kOne}}))) +
           m1() * (k == 1 ? hp(0, 0, -2, 0) : hp(0, 0, 0, -2)) *
               (ch(lfm({{Field::phi, 0, kOne}, {Field::phi, k, Rational(-1)}})) -
                ch(lfm({{Field::varphi, 0, kOne}, {Field::varphi, k, Rational(-1)}})));

    const int sk = (k == 1) ? -1 : 1;  // (-1)^k
    const Expr fk = j(Field::f, k), gk = j(Field::g, k);
    Expr b1 = I() * sqrt_m_sigma_over2(k) * ch(u_arg(k, +1)) * fk *
                  (j(Field::psi, 0) + j(Field::psi, k) - j(Field::chi, 0) - j(Field::chi, k)) +
              I() * sqrt_m_sigma_over2(k) * ch(u_arg(k, -1)) * gk *
                  (j(Field::psi, k) + j(Field::psi, 0) + j(Field::chi, 0) + j(Field::chi, k));
    // the barred blocks carry the extra (-1)^k; their cosh arguments are the
    // v arguments mirrored through phi0 - phi_k (cosh is even)
    Expr barred =
        I() * sqrt_m_over_2sigma(k) * ch(v_arg(k, -1)) * fk *
            (j(Field::psibar, 0) - j(Field::psibar, k) + j(Field::chibar, 0) -
             j(Field::chibar, k)) +
        I() * sqrt_m_over_2sigma(k) * ch(v_arg(k, +1)) * gk *
            (j(Field::psibar, 0) - j(Field::psibar, k) - j(Field::chibar, 0) +
             j(Field::chibar, k));
    d.B1 = b1 - sym::scale(barred, Gaussian(sk));

    Expr kinetic_fg = sym::scale(fk * j(Field::g, k, 1, 0) + gk * j(Field::f, k, 1, 0),
                                 Gaussian(Rational(0), kHalf));
    d.lagrangian = omega(Field::phi, 0, Field::phi, k, kHalf) -
                   omega(Field::varphi, 0, Field::varphi, k, kHalf) +
                   I() * (j(Field::chibar, k) * j(Field::chibar, 0) +
                          j(Field::chi, k) * j(Field::chi, 0)) -
                   I() * (j(Field::psibar, k) * j(Field::psibar, 0) +
                          j(Field::psi, k) * j(Field::psi, 0)) -
                   sym::scale(kinetic_fg + d.B1 + d.B0, Gaussian(sk));
    return d;
}

// --- variational machinery -------------------------------------------------------

std::vector<DefectCondition> variational_conditions(const Expr& L_D, int left_region,
                                                    int right_region,
                                                    const std::vector<FieldAtom>& defect_only,
                                                    Side conv) {
    std::vector<DefectCondition> out;
    auto time_part = [&](FieldAtom f) {
        Expr value = f.even() ? sym::boson_derive(L_D, f)
                              : sym::grassmann_derive(L_D, JetAtom(f, 0, 0), conv);
        return value - sym::total_derivative(sym::derive(L_D, JetAtom(f, 1, 0), conv), Dir::t);
    };
    for (int p : {left_region, right_region}) {
        const int sign = (p == left_region) ? 1 : -1;
        Expr Lp = model::bulk_lagrangian(p);
        for (Field f : model::kBulkFields) {
            FieldAtom atom = fa(f, p);
            Expr flux = sym::derive(Lp, JetAtom(atom, 0, 1), conv);
            Expr cond = sym::scale(flux, Gaussian(sign)) + time_part(atom);
            out.push_back({atom, std::move(cond)});
        }
    }
    for (FieldAtom f : defect_only) out.push_back({f, time_part(f)});
    return out;
}

// --- fusing ----------------------------------------------------------------------

namespace {

struct AuxSolutions {
    Expr psi0, chi0, psibar0, chibar0;
    Expr psi_route_diff, chi_route_diff, psibar_route_diff, chibar_route_diff;
};

AuxSolutions solve_auxiliaries(const TypeIPair& d1, const TypeIPair& d2, Side conv) {
    auto gd = [&](const Expr& b, Field f, int r) {
        return sym::grassmann_derive(b, JetAtom(f, r), conv);
    };
    const Expr i = I();
    // routes from the x=0 conditions and the x=x0 conditions
    Expr psi0_a = j(Field::psi, 1) - i * gd(d1.B1, Field::psi, 1);
    Expr psi0_b = j(Field::psi, 2) + i * gd(d2.B1, Field::psi, 2);
    Expr chi0_a = j(Field::chi, 1) + i * gd(d1.B1, Field::chi, 1);
    Expr chi0_b = j(Field::chi, 2) - i * gd(d2.B1, Field::chi, 2);
    Expr psibar0_a = -j(Field::psibar, 1) - i * gd(d1.B1, Field::psibar, 1);
    Expr psibar0_b = -j(Field::psibar, 2) - i * gd(d2.B1, Field::psibar, 0);
    Expr chibar0_a = -j(Field::chibar, 1) + i * gd(d1.B1, Field::chibar, 1);
    Expr chibar0_b = -j(Field::chibar, 2) + i * gd(d2.B1, Field::chibar, 0);

    AuxSolutions s;
    s.psi0 = num(1, 2) * (psi0_a + psi0_b);
    s.chi0 = num(1, 2) * (chi0_a + chi0_b);
    s.psibar0 = num(1, 2) * (psibar0_a + psibar0_b);
    s.chibar0 = num(1, 2) * (chibar0_a + chibar0_b);
    s.psi_route_diff = psi0_a - psi0_b;
    s.chi_route_diff = chi0_a - chi0_b;
    s.psibar_route_diff = psibar0_a - psibar0_b;
    s.chibar_route_diff = chibar0_a - chibar0_b;
    return s;
}

Expr stated_B0plus() {
    auto half_sum = [](Field f, Rational s0) {
        return lfm({{f, 1, kHalf}, {f, 2, kHalf}, {f, 0, s0}});
    };
    auto minus_half = [](Field f, Rational c) {
        return lfm({{f, 1, c}, {f, 2, -c}});
    };
    Expr out;
    for (Field f : {Field::phi, Field::varphi}) {
        Expr block = ex(half_sum(f, kOne)) * (sigma(1) * ex(minus_half(f, kHalf)) +
                                              sigma(2) * ex(minus_half(f, kMinusHalf))) +
                     ex(-half_sum(f, kOne)) * (sigma(1) * ex(minus_half(f, kMinusHalf)) +
                                               sigma(2) * ex(minus_half(f, kHalf)));
        block = num(1, 2) * m1() * block;
        out += (f == Field::phi) ? block : -block;
    }
    return out;
}

Expr stated_B0minus() {
    auto half_sum = [](Field f, Rational s0) {
        return lfm({{f, 1, kHalf}, {f, 2, kHalf}, {f, 0, s0}});
    };
    auto minus_half = [](Field f, Rational c) {
        return lfm({{f, 1, c}, {f, 2, -c}});
    };
    const Expr is1 = hp(0, 0, -2, 0), is2 = hp(0, 0, 0, -2);
    Expr out;
    for (Field f : {Field::phi, Field::varphi}) {
        Expr block =
            ex(half_sum(f, Rational(-1))) *
                (is1 * ex(minus_half(f, kHalf)) + is2 * ex(minus_half(f, kMinusHalf))) +
            ex(-half_sum(f, Rational(-1))) *
                (is1 * ex(minus_half(f, kMinusHalf)) + is2 * ex(minus_half(f, kHalf)));
        block = num(1, 2) * m1() * block;
        out += (f == Field::phi) ? block : -block;
    }
    return out;
}

// exponent ((phi+ + varphi+)/4 + (phi0 + varphi0)/2) and relatives
LinearForm quarter_sum(int sphi, int svar, Rational s0) {
    Rational qp = sphi > 0 ? kQuarter : kMinusQuarter;
    Rational qv = svar > 0 ? kQuarter : kMinusQuarter;
    return lfm({{Field::phi, 1, qp},
                {Field::phi, 2, qp},
                {Field::varphi, 1, qv},
                {Field::varphi, 2, qv},
                {Field::phi, 0, sphi > 0 ? s0 : -s0},
                {Field::varphi, 0, svar > 0 ? s0 : -s0}});
}
LinearForm quarter_minus(int sphi, int svar) {
    Rational qp = sphi > 0 ? kQuarter : kMinusQuarter;
    Rational qv = svar > 0 ? kQuarter : kMinusQuarter;
    return lfm({{Field::phi, 1, qp},
                {Field::phi, 2, -qp},
                {Field::varphi, 1, qv},
                {Field::varphi, 2, -qv}});
}

// the four cosh combinations of the f g cross terms
Expr cross_cosh(int s_plus_half, int s_minus_half) {
    // cosh(phi0 + sp*phi+/2 + sm*varphi-/2) + cosh(varphi0 + sp*varphi+/2 + sm*phi-/2)
    Rational sp = s_plus_half > 0 ? kHalf : kMinusHalf;
    Rational sm = s_minus_half > 0 ? kHalf : kMinusHalf;
    Expr a = ch(lfm({{Field::phi, 0, kOne},
                     {Field::phi, 1, sp},
                     {Field::phi, 2, sp},
                     {Field::varphi, 1, sm},
                     {Field::varphi, 2, -sm}}));
    Expr b = ch(lfm({{Field::varphi, 0, kOne},
                     {Field::varphi, 1, sp},
                     {Field::varphi, 2, sp},
                     {Field::phi, 1, sm},
                     {Field::phi, 2, -sm}}));
    return a + b;
}

Expr stated_B1plus() {
    const Expr i_half_sqrt_m_over2 = sym::scale(hp(-1, 1, 0, 0), Gaussian(Rational(0), kHalf));
    const Expr rs1 = hp(0, 0, 1, 0), rs2 = hp(0, 0, 0, 1);
    Expr f_block =
        ex(-quarter_sum(+1, +1, kHalf)) *
            (rs2 * ex(quarter_minus(+1, +1)) * j(Field::f, 2) +
             rs1 * ex(-quarter_minus(+1, +1)) * j(Field::f, 1)) +
        ex(quarter_sum(+1, +1, kHalf)) * (rs2 * ex(-quarter_minus(+1, +1)) * j(Field::f, 2) +
                                          rs1 * ex(quarter_minus(+1, +1)) * j(Field::f, 1));
    Expr g_block =
        ex(-quarter_sum(+1, -1, kHalf)) *
            (rs1 * ex(-quarter_minus(+1, -1)) * j(Field::g, 1) +
             rs2 * ex(quarter_minus(+1, -1)) * j(Field::g, 2)) +
        ex(quarter_sum(+1, -1, kHalf)) * (rs1 * ex(quarter_minus(+1, -1)) * j(Field::g, 1) +
                                          rs2 * ex(-quarter_minus(+1, -1)) * j(Field::g, 2));
    Expr out = i_half_sqrt_m_over2 * f_block * (psi_plus() - chi_plus()) +
               i_half_sqrt_m_over2 * g_block * (psi_plus() + chi_plus());
    const Expr im_half_rss = sym::scale(m1() * hp(0, 0, 1, 1), Gaussian(Rational(0), kHalf));
    out += im_half_rss * cross_cosh(+1, +1) * j(Field::f, 1) * j(Field::g, 2);
    out += im_half_rss * cross_cosh(+1, -1) * j(Field::g, 1) * j(Field::f, 2);
    return out;
}

Expr stated_B1minus() {
    const Expr i_half_sqrt_m_over2 = sym::scale(hp(-1, 1, 0, 0), Gaussian(Rational(0), kHalf));
    const Expr is1 = hp(0, 0, -1, 0), is2 = hp(0, 0, 0, -1);
    Expr g_block =
        ex(-quarter_sum(+1, +1, kMinusHalf)) *
            (is1 * ex(-quarter_minus(+1, +1)) * j(Field::g, 1) -
             is2 * ex(quarter_minus(+1, +1)) * j(Field::g, 2)) +
        ex(quarter_sum(+1, +1, kMinusHalf)) *
            (is1 * ex(quarter_minus(+1, +1)) * j(Field::g, 1) -
             is2 * ex(-quarter_minus(+1, +1)) * j(Field::g, 2));
    Expr f_block =
        ex(-quarter_sum(+1, -1, kMinusHalf)) *
            (is1 * ex(-quarter_minus(+1, -1)) * j(Field::f, 1) -
             is2 * ex(quarter_minus(+1, -1)) * j(Field::f, 2)) +
        ex(quarter_sum(+1, -1, kMinusHalf)) *
            (is1 * ex(quarter_minus(+1, -1)) * j(Field::f, 1) -
             is2 * ex(-quarter_minus(+1, -1)) * j(Field::f, 2));
    Expr out = -(i_half_sqrt_m_over2 * g_block * (psibar_plus() - chibar_plus())) -
               i_half_sqrt_m_over2 * f_block * (psibar_plus() + chibar_plus());
    const Expr im_half_iss = sym::scale(m1() * hp(0, 0, -1, -1), Gaussian(Rational(0), kHalf));
    out += im_half_iss * cross_cosh(-1, +1) * j(Field::f, 1) * j(Field::g, 2);
    out += im_half_iss * cross_cosh(-1, -1) * j(Field::g, 1) * j(Field::f, 2);
    return out;
}

Expr stated_type2_lagrangian(const Expr& B0, const Expr& B1) {
    Expr L = omega(Field::phi, 0, Field::phi, 1, kHalf) - omega(Field::phi, 0, Field::phi, 2, kHalf);
    L -= omega(Field::varphi, 0, Field::varphi, 1, kHalf) -
         omega(Field::varphi, 0, Field::varphi, 2, kHalf);
    L += I() * (j(Field::psibar, 1) * j(Field::psibar, 2) - j(Field::psi, 1) * j(Field::psi, 2));
    L -= I() * (j(Field::chibar, 1) * j(Field::chibar, 2) - j(Field::chi, 1) * j(Field::chi, 2));
    for (int k : {1, 2})
        L += sym::scale(j(Field::f, k) * j(Field::g, k, 1, 0) +
                            j(Field::g, k) * j(Field::f, k, 1, 0),
                        Gaussian(Rational(0), kHalf));
    return L + B0 + B1;
}

}  // namespace

FusedDefect fuse(Side conv) {
    FusedDefect d;
    TypeIPair d1 = build_type1_pair(1, conv);
    TypeIPair d2 = build_type1_pair(2, conv);

    AuxSolutions sol = solve_auxiliaries(d1, d2, conv);
    d.psi0 = sol.psi0;
    d.chi0 = sol.chi0;
    d.psibar0 = sol.psibar0;
    d.chibar0 = sol.chibar0;

    std::vector<Rule> aux;
    auto add_aux = [&](Field f, const Expr& rhs, const char* tag) {
        Rule r;
        r.lhs = JetAtom(f, 0, 0, 0);
        r.rhs = rhs;
        r.prolong_t = true;
        r.tag = tag;
        aux.push_back(std::move(r));
    };
    add_aux(Field::psi, d.psi0, "psi0");
    add_aux(Field::chi, d.chi0, "chi0");
    add_aux(Field::psibar, d.psibar0, "psibar0");
    add_aux(Field::chibar, d.chibar0, "chibar0");
    RewriteSystem aux_rules(std::move(aux));

    d.lagrangian_fused = sym::substitute(d1.lagrangian - d2.lagrangian, aux_rules);

    d.B0plus = stated_B0plus();
    d.B0minus = stated_B0minus();
    d.B1plus = stated_B1plus();
    d.B1minus = stated_B1minus();
    d.B0 = d.B0plus + d.B0minus;
    d.B1 = d.B1plus + d.B1minus;
    d.lagrangian_stated = stated_type2_lagrangian(d.B0, d.B1);

    for (int k : {1, 2})
        for (int s : {0, 1}) {
            d.u[k][s] = u_fn(k, s == 0 ? +1 : -1);
            d.v[k][s] = v_fn(k, s == 0 ? +1 : -1);
        }

    // stated type-II conditions as a rewrite system
    const Expr B = d.B0 + d.B1;
    auto db = [&](Field f, int r) { return sym::boson_derive(B, fa(f, r)); };
    auto dfm = [&](Field f, int r) { return sym::grassmann_derive(d.B1, JetAtom(f, r), conv); };
    std::vector<Rule> rules;
    auto add = [&](JetAtom lhs, Expr rhs, bool prolong_t, const char* tag) {
        Rule r;
        r.lhs = lhs;
        r.rhs = std::move(rhs);
        r.prolong_t = prolong_t;
        r.tag = tag;
        rules.push_back(std::move(r));
    };
    add(JetAtom(Field::phi, 1, 0, 1), j(Field::phi, 0, 1, 0) - db(Field::phi, 1), false, "dxphi1");
    add(JetAtom(Field::phi, 2, 0, 1), j(Field::phi, 0, 1, 0) + db(Field::phi, 2), false, "dxphi2");
    add(JetAtom(Field::varphi, 1, 0, 1), j(Field::varphi, 0, 1, 0) + db(Field::varphi, 1), false,
        "dxvarphi1");
    add(JetAtom(Field::varphi, 2, 0, 1), j(Field::varphi, 0, 1, 0) - db(Field::varphi, 2), false,
        "dxvarphi2");
    add(JetAtom(Field::phi, 1, 1, 0), j(Field::phi, 2, 1, 0) - db(Field::phi, 0), false, "dtphi1");
    add(JetAtom(Field::varphi, 1, 1, 0), j(Field::varphi, 2, 1, 0) + db(Field::varphi, 0), false,
        "dtvarphi1");
    add(JetAtom(Field::psi, 1, 0, 0), j(Field::psi, 2) + I() * dfm(Field::psi, 1), true, "psi1");
    add(JetAtom(Field::psibar, 1, 0, 0), j(Field::psibar, 2) - I() * dfm(Field::psibar, 1), true,
        "psibar1");
    add(JetAtom(Field::chi, 1, 0, 0), j(Field::chi, 2) - I() * dfm(Field::chi, 1), true, "chi1");
    add(JetAtom(Field::chibar, 1, 0, 0), j(Field::chibar, 2) + I() * dfm(Field::chibar, 1), true,
        "chibar1");
    for (int k : {1, 2}) {
        add(JetAtom(Field::f, k, 1, 0), I() * dfm(Field::g, k), false,
            k == 1 ? "dtf1" : "dtf2");
        add(JetAtom(Field::g, k, 1, 0), I() * dfm(Field::f, k), false,
            k == 1 ? "dtg1" : "dtg2");
    }
    d.conditions = RewriteSystem(std::move(rules), 128);
    return d;
}

std::vector<DefectCondition> stated_type2_conditions(const FusedDefect& d, Side conv) {
    const Expr B = d.B0 + d.B1;
    auto db = [&](Field f, int r) { return sym::boson_derive(B, fa(f, r)); };
    auto dfm = [&](Field f, int r) { return sym::grassmann_derive(d.B1, JetAtom(f, r), conv); };
    std::vector<DefectCondition> out;
    auto add = [&](Field f, int r, Expr e) { out.push_back({fa(f, r), std::move(e)}); };
    add(Field::phi, 1, j(Field::phi, 1, 0, 1) - j(Field::phi, 0, 1, 0) + db(Field::phi, 1));
    add(Field::phi, 2, j(Field::phi, 2, 0, 1) - j(Field::phi, 0, 1, 0) - db(Field::phi, 2));
    add(Field::varphi, 1,
        j(Field::varphi, 1, 0, 1) - j(Field::varphi, 0, 1, 0) - db(Field::varphi, 1));
    add(Field::varphi, 2,
        j(Field::varphi, 2, 0, 1) - j(Field::varphi, 0, 1, 0) + db(Field::varphi, 2));
    add(Field::phi, 0, j(Field::phi, 1, 1, 0) - j(Field::phi, 2, 1, 0) + db(Field::phi, 0));
    add(Field::varphi, 0,
        j(Field::varphi, 1, 1, 0) - j(Field::varphi, 2, 1, 0) - db(Field::varphi, 0));
    Expr psi_m = I() * (j(Field::psi, 1) - j(Field::psi, 2));
    Expr psibar_m = I() * (j(Field::psibar, 1) - j(Field::psibar, 2));
    Expr chi_m = I() * (j(Field::chi, 1) - j(Field::chi, 2));
    Expr chibar_m = I() * (j(Field::chibar, 1) - j(Field::chibar, 2));
    add(Field::psi, 1, psi_m + dfm(Field::psi, 1));
    add(Field::psi, 2, psi_m + dfm(Field::psi, 2));
    add(Field::psibar, 1, psibar_m - dfm(Field::psibar, 1));
    add(Field::psibar, 2, psibar_m - dfm(Field::psibar, 2));
    add(Field::chi, 1, chi_m - dfm(Field::chi, 1));
    add(Field::chi, 2, chi_m - dfm(Field::chi, 2));
    add(Field::chibar, 1, chibar_m + dfm(Field::chibar, 1));
    add(Field::chibar, 2, chibar_m + dfm(Field::chibar, 2));
    for (int k : {1, 2}) {
        add(Field::f, k, I() * j(Field::g, k, 1, 0) + dfm(Field::f, k));
        add(Field::g, k, I() * j(Field::f, k, 1, 0) + dfm(Field::g, k));
    }
    return out;
}

Expr stated_psi0(const FusedDefect&) {
    Expr out = num(1, 2) * (psi_plus());
    out -= sqrt_m_sigma_over2(1) *
           (num(1, 2) * ch(u_arg(1, +1)) * j(Field::f, 1) +
            num(1, 2) * ch(u_arg(1, -1)) * j(Field::g, 1));
    out += sqrt_m_sigma_over2(2) *
           (num(1, 2) * ch(u_arg(2, +1)) * j(Field::f, 2) +
            num(1, 2) * ch(u_arg(2, -1)) * j(Field::g, 2));
    return out;
}

Expr stated_chi0(const FusedDefect&) {
    Expr out = num(1, 2) * (chi_plus());
    out -= sqrt_m_sigma_over2(1) *
           (num(1, 2) * ch(u_arg(1, +1)) * j(Field::f, 1) -
            num(1, 2) * ch(u_arg(1, -1)) * j(Field::g, 1));
    out += sqrt_m_sigma_over2(2) *
           (num(1, 2) * ch(u_arg(2, +1)) * j(Field::f, 2) -
            num(1, 2) * ch(u_arg(2, -1)) * j(Field::g, 2));
    return out;
}

Expr stated_psibar0(const FusedDefect&) {
    Expr out = num(-1, 2) * (psibar_plus());
    out += sqrt_m_over_2sigma(1) *
           (num(1, 2) * ch(v_arg(1, -1)) * j(Field::f, 1) +
            num(1, 2) * ch(v_arg(1, +1)) * j(Field::g, 1));
    out += sqrt_m_over_2sigma(2) *
           (num(1, 2) * ch(v_arg(2, -1)) * j(Field::f, 2) +
            num(1, 2) * ch(v_arg(2, +1)) * j(Field::g, 2));
    return out;
}

Expr stated_chibar0(const FusedDefect&) {
    Expr out = num(-1, 2) * (chibar_plus());
    out -= sqrt_m_over_2sigma(1) *
           (num(1, 2) * ch(v_arg(1, -1)) * j(Field::f, 1) -
            num(1, 2) * ch(v_arg(1, +1)) * j(Field::g, 1));
    out -= sqrt_m_over_2sigma(2) *
           (num(1, 2) * ch(v_arg(2, -1)) * j(Field::f, 2) -
            num(1, 2) * ch(v_arg(2, +1)) * j(Field::g, 2));
    return out;
}

// --- Backlund ---------------------------------------------------------------
//
// Jet convention here: (dt, dx) slots are read as (d+, d-).

namespace {

Expr jp(Field f, int r) { return j(f, r, 1, 0); }  // d+
Expr jm(Field f, int r) { return j(f, r, 0, 1); }  // d-

// sinh arguments of the f g cross blocks
Expr cross_sinh(Field lead, int s_plus_half, int s_minus_half) {
    Field other = (lead == Field::phi) ? Field::varphi : Field::phi;
    Rational sp = s_plus_half > 0 ? kHalf : kMinusHalf;
    Rational sm = s_minus_half > 0 ? kHalf : kMinusHalf;
    return sh(lfm({{lead, 0, kOne},
                   {lead, 1, sp},
                   {lead, 2, sp},
                   {other, 1, sm},
                   {other, 2, -sm}}));
}

// single-sector cosh combination cosh(lead0 +- lead+/2 +- other-/2) pairs
Expr cross_cosh_pair(int s_plus, int s_minus) {
    Rational sp = s_plus > 0 ? kHalf : kMinusHalf;
    Rational sm = s_minus > 0 ? kHalf : kMinusHalf;
    Expr a = ch(lfm({{Field::phi, 0, kOne},
                     {Field::phi, 1, sp},
                     {Field::phi, 2, sp},
                     {Field::varphi, 1, sm},
                     {Field::varphi, 2, -sm}}));
    Expr b = ch(lfm({{Field::varphi, 0, kOne},
                     {Field::varphi, 1, sp},
                     {Field::varphi, 2, sp},
                     {Field::phi, 1, sm},
                     {Field::phi, 2, -sm}}));
    return a + b;
}

// exp blocks of the bosonic flows: sector field F with region signs
Expr flow_exp_block(Field f, int sign_zero, int sigma_sign, int relative) {
    // e^{F+/2 + sign_zero*F0}(s1^a e^{F-/2} + rel * s2^a e^{-F-/2})
    //   - e^{-(F+/2 + sign_zero*F0)}(s1^a e^{-F-/2} + rel * s2^a e^{F-/2})
    // with a = +1 (sigma_sign>0) or -1.
    auto plus_form = [&](int overall) {
        return lfm({{f, 1, overall > 0 ? kHalf : kMinusHalf},
                    {f, 2, overall > 0 ? kHalf : kMinusHalf},
                    {f, 0, Rational(overall * sign_zero)}});
    };
    auto minus_form = [&](int s) {
        return lfm({{f, 1, s > 0 ? kHalf : kMinusHalf}, {f, 2, s > 0 ? kMinusHalf : kHalf}});
    };
    const Expr s1p = sigma_sign > 0 ? sigma(1) : hp(0, 0, -2, 0);
    const Expr s2p = sigma_sign > 0 ? sigma(2) : hp(0, 0, 0, -2);
    Expr rel = num(relative);
    return ex(plus_form(+1)) * (s1p * ex(minus_form(+1)) + rel * s2p * ex(minus_form(-1))) -
           ex(plus_form(-1)) * (s1p * ex(minus_form(-1)) + rel * s2p * ex(minus_form(+1)));
}

const Expr kIHalfSqrtMOver2 = sym::scale(Expr::half_powers(-1, 1, 0, 0),
                                         Gaussian(Rational(0), Rational(1, 2)));

}  // namespace

BacklundSet build_backlund() {
    BacklundSet bt;
    auto rel = [&](std::string name, Expr lhs, Expr rhs) {
        bt.relations.push_back({std::move(name), std::move(lhs), std::move(rhs)});
    };
    const Expr m_half = num(1, 2) * m1();
    const Expr im_half_ss = sym::scale(m1() * hp(0, 0, 1, 1), Gaussian(Rational(0), kHalf));
    const Expr im_half_over_ss = sym::scale(m1() * hp(0, 0, -1, -1), Gaussian(Rational(0), kHalf));
    const Expr m_half_ss = m_half * hp(0, 0, 1, 1);
    const Expr m_half_over_ss = m_half * hp(0, 0, -1, -1);

    // algebraic fermionic relations
    rel("psi-",
        j(Field::psi, 1) - j(Field::psi, 2),
        hp(1, 1, 0, 0) * (hp(0, 0, 1, 0) * (du0(1, +1) * j(Field::f, 1) + du0(1, -1) * j(Field::g, 1)) +
                          hp(0, 0, 0, 1) * (du0(2, +1) * j(Field::f, 2) + du0(2, -1) * j(Field::g, 2))));
    rel("psibar-",
        j(Field::psibar, 1) - j(Field::psibar, 2),
        -hp(1, 1, 0, 0) *
            (hp(0, 0, -1, 0) * (dv0(1, +1) * j(Field::g, 1) + dv0(1, -1) * j(Field::f, 1)) -
             hp(0, 0, 0, -1) * (dv0(2, +1) * j(Field::g, 2) + dv0(2, -1) * j(Field::f, 2))));
    rel("chi-",
        j(Field::chi, 1) - j(Field::chi, 2),
        hp(1, 1, 0, 0) * (hp(0, 0, 1, 0) * (du0(1, +1) * j(Field::f, 1) - du0(1, -1) * j(Field::g, 1)) +
                          hp(0, 0, 0, 1) * (du0(2, +1) * j(Field::f, 2) - du0(2, -1) * j(Field::g, 2))));
    rel("chibar-",
        j(Field::chibar, 1) - j(Field::chibar, 2),
        -hp(1, 1, 0, 0) *
            (hp(0, 0, -1, 0) * (dv0(1, +1) * j(Field::g, 1) - dv0(1, -1) * j(Field::f, 1)) -
             hp(0, 0, 0, -1) * (dv0(2, +1) * j(Field::g, 2) - dv0(2, -1) * j(Field::f, 2))));

    // auxiliary-fermion flows
    rel("d-g1", jm(Field::g, 1),
        m_half_over_ss * cross_cosh_pair(-1, +1) * j(Field::g, 2) +
            sqrt_2m_over_sigma(1) * dv0(1, -1) * (psibar_plus() + chibar_plus()));
    rel("d+g1", jp(Field::g, 1),
        -(m_half_ss * cross_cosh_pair(+1, +1) * j(Field::g, 2)) -
            sqrt_2m_sigma(1) * du0(1, +1) * (psi_plus() - chi_plus()));
    rel("d-f1", jm(Field::f, 1),
        m_half_over_ss * cross_cosh_pair(-1, -1) * j(Field::f, 2) +
            sqrt_2m_over_sigma(1) * dv0(1, +1) * (psibar_plus() - chibar_plus()));
    rel("d+f1", jp(Field::f, 1),
        -(m_half_ss * cross_cosh_pair(+1, -1) * j(Field::f, 2)) -
            sqrt_2m_sigma(1) * du0(1, -1) * (psi_plus() + chi_plus()));
    rel("d-g2", jm(Field::g, 2),
        -(m_half_over_ss * cross_cosh_pair(-1, -1) * j(Field::g, 1)) -
            sqrt_2m_over_sigma(2) * dv0(2, -1) * (psibar_plus() + chibar_plus()));
    rel("d+g2", jp(Field::g, 2),
        m_half_ss * cross_cosh_pair(+1, -1) * j(Field::g, 1) -
            sqrt_2m_sigma(2) * du0(2, +1) * (psi_plus() - chi_plus()));
    rel("d-f2", jm(Field::f, 2),
        -(m_half_over_ss * cross_cosh_pair(-1, +1) * j(Field::f, 1)) -
            sqrt_2m_over_sigma(2) * dv0(2, +1) * (psibar_plus() - chibar_plus()));
    rel("d+f2", jp(Field::f, 2),
        m_half_ss * cross_cosh_pair(+1, +1) * j(Field::f, 1) -
            sqrt_2m_sigma(2) * du0(2, -1) * (psi_plus() + chi_plus()));

    // bosonic flows: phi sector
    auto u_block_f = [&](int relative) {
        return (hp(0, 0, 1, 0) * u_fn(1, +1) * j(Field::f, 1) +
                num(relative) * hp(0, 0, 0, 1) * u_fn(2, +1) * j(Field::f, 2)) *
               (psi_plus() - chi_plus());
    };
    auto u_block_g = [&](int relative) {
        return (hp(0, 0, 1, 0) * u_fn(1, -1) * j(Field::g, 1) +
                num(relative) * hp(0, 0, 0, 1) * u_fn(2, -1) * j(Field::g, 2)) *
               (psi_plus() + chi_plus());
    };
    auto v_block_g = [&](int relative) {
        return (hp(0, 0, -1, 0) * v_fn(1, +1) * j(Field::g, 1) -
                num(relative) * hp(0, 0, 0, -1) * v_fn(2, +1) * j(Field::g, 2)) *
               (psibar_plus() - chibar_plus());
    };
    auto v_block_f = [&](int relative) {
        return (hp(0, 0, -1, 0) * v_fn(1, -1) * j(Field::f, 1) -
                num(relative) * hp(0, 0, 0, -1) * v_fn(2, -1) * j(Field::f, 2)) *
               (psibar_plus() + chibar_plus());
    };
    const Expr f1g2 = j(Field::f, 1) * j(Field::g, 2);
    const Expr g1f2 = j(Field::g, 1) * j(Field::f, 2);

    rel("d+phi-", jp(Field::phi, 1) - jp(Field::phi, 2),
        -(m_half * flow_exp_block(Field::phi, +1, +1, +1)) -
            kIHalfSqrtMOver2 * (u_block_f(+1) + u_block_g(+1)) -
            im_half_ss * (cross_sinh(Field::phi, +1, +1) * f1g2 +
                          cross_sinh(Field::phi, +1, -1) * g1f2));
    rel("d-phi-", jm(Field::phi, 1) - jm(Field::phi, 2),
        -(m_half * flow_exp_block(Field::phi, -1, -1, +1)) +
            kIHalfSqrtMOver2 * (v_block_g(+1) + v_block_f(+1)) +
            im_half_over_ss * (cross_sinh(Field::phi, -1, +1) * f1g2 +
                               cross_sinh(Field::phi, -1, -1) * g1f2));
    rel("d-(phi++2phi0)",
        jm(Field::phi, 1) + jm(Field::phi, 2) + num(2) * jm(Field::phi, 0),
        -(m_half * flow_exp_block(Field::phi, -1, -1, -1)) +
            kIHalfSqrtMOver2 * (v_block_g(-1) + v_block_f(-1)) -
            im_half_over_ss * (cross_sinh(Field::varphi, -1, +1) * f1g2 -
                               cross_sinh(Field::varphi, -1, -1) * g1f2));
    rel("d+(phi+-2phi0)",
        jp(Field::phi, 1) + jp(Field::phi, 2) - num(2) * jp(Field::phi, 0),
        -(m_half * flow_exp_block(Field::phi, +1, +1, -1)) -
            kIHalfSqrtMOver2 * (u_block_f(-1) + u_block_g(-1)) -
            im_half_ss * (cross_sinh(Field::varphi, +1, +1) * f1g2 -
                          cross_sinh(Field::varphi, +1, -1) * g1f2));

    // bosonic flows: varphi sector
    rel("d+varphi-", jp(Field::varphi, 1) - jp(Field::varphi, 2),
        -(m_half * flow_exp_block(Field::varphi, +1, +1, +1)) +
            kIHalfSqrtMOver2 * (u_block_f(+1) - u_block_g(+1)) +
            im_half_ss * (cross_sinh(Field::varphi, +1, +1) * f1g2 +
                          cross_sinh(Field::varphi, +1, -1) * g1f2));
    rel("d-varphi-", jm(Field::varphi, 1) - jm(Field::varphi, 2),
        -(m_half * flow_exp_block(Field::varphi, -1, -1, +1)) -
            kIHalfSqrtMOver2 * (v_block_g(+1) - v_block_f(+1)) -
            im_half_over_ss * (cross_sinh(Field::varphi, -1, +1) * f1g2 +
                               cross_sinh(Field::varphi, -1, -1) * g1f2));
    rel("d-(varphi++2varphi0)",
        jm(Field::varphi, 1) + jm(Field::varphi, 2) + num(2) * jm(Field::varphi, 0),
        -(m_half * flow_exp_block(Field::varphi, -1, -1, -1)) -
            kIHalfSqrtMOver2 * (v_block_g(-1) - v_block_f(-1)) +
            im_half_over_ss * (cross_sinh(Field::phi, -1, +1) * f1g2 -
                               cross_sinh(Field::phi, -1, -1) * g1f2));
    rel("d+(varphi+-2varphi0)",
        jp(Field::varphi, 1) + jp(Field::varphi, 2) - num(2) * jp(Field::varphi, 0),
        -(m_half * flow_exp_block(Field::varphi, +1, +1, -1)) +
            kIHalfSqrtMOver2 * (u_block_f(-1) - u_block_g(-1)) +
            im_half_ss * (cross_sinh(Field::phi, +1, +1) * f1g2 -
                          cross_sinh(Field::phi, +1, -1) * g1f2));

    return bt;
}

const BacklundRelation& BacklundSet::by_name(const std::string& n) const {
    for (const auto& r : relations)
        if (r.name == n) return r;
    throw std::invalid_argument("unknown Backlund relation: " + n);
}

namespace {

// light-cone bulk fermion equations: d- psi = -m(...), d+ psibar = -m(...)
Expr lc_yukawa_cc(int p) {
    return ch(lfm({{Field::phi, p, kOne}})) * ch(lfm({{Field::varphi, p, kOne}}));
}
Expr lc_yukawa_ss(int p) {
    return sh(lfm({{Field::phi, p, kOne}})) * sh(lfm({{Field::varphi, p, kOne}}));
}

Expr lc_eom_rhs(Field f, int p) {
    switch (f) {
        case Field::psi:
            return -(m1() * (j(Field::psibar, p) * lc_yukawa_cc(p) -
                             j(Field::chibar, p) * lc_yukawa_ss(p)));
        case Field::psibar:
            return -(m1() *
                     (j(Field::psi, p) * lc_yukawa_cc(p) - j(Field::chi, p) * lc_yukawa_ss(p)));
        case Field::chi:
            return m1() * (j(Field::chibar, p) * lc_yukawa_cc(p) -
                           j(Field::psibar, p) * lc_yukawa_ss(p));
        case Field::chibar:
            return m1() *
                   (j(Field::chi, p) * lc_yukawa_cc(p) - j(Field::psi, p) * lc_yukawa_ss(p));
        default: throw std::invalid_argument("fermion expected");
    }
}

// 4 d+d- F = 2 m^2 sinh(2F) + Yukawa source, per the bulk equations
Expr lc_boson_rhs(Field f, int p) {
    Expr fourim = sym::scale(m1(), Gaussian(Rational(0), Rational(4)));
    Expr bil_cc = j(Field::psibar, p) * j(Field::psi, p) + j(Field::chibar, p) * j(Field::chi, p);
    Expr bil_cross =
        j(Field::psibar, p) * j(Field::chi, p) + j(Field::chibar, p) * j(Field::psi, p);
    Expr shch = sh(lfm({{Field::phi, p, kOne}})) * ch(lfm({{Field::varphi, p, kOne}}));
    Expr chsh = ch(lfm({{Field::phi, p, kOne}})) * sh(lfm({{Field::varphi, p, kOne}}));
    if (f == Field::phi)
        return num(2) * m2() * sh(lfm({{Field::phi, p, Rational(2)}})) + fourim * bil_cc * shch -
               fourim * bil_cross * chsh;
    return num(2) * m2() * sh(lfm({{Field::varphi, p, Rational(2)}})) - fourim * bil_cc * chsh +
           fourim * bil_cross * shch;
}

}  // namespace

RewriteSystem backlund_rules(const BacklundSet& bt, Side) {
    std::vector<Rule> rules;
    auto add = [&](JetAtom lhs, Expr rhs, bool pt, bool px, const char* tag) {
        Rule r;
        r.lhs = lhs;
        r.rhs = std::move(rhs);
        r.prolong_t = pt;
        r.prolong_x = px;
        r.tag = tag;
        rules.push_back(std::move(r));
    };
    // fermion light-cone field equations, both regions (d+ <-> dt slot)
    for (int p : {1, 2}) {
        add(JetAtom(Field::psi, p, 0, 1), lc_eom_rhs(Field::psi, p), true, true, "eom-psi");
        add(JetAtom(Field::psibar, p, 1, 0), lc_eom_rhs(Field::psibar, p), true, true,
            "eom-psibar");
        add(JetAtom(Field::chi, p, 0, 1), lc_eom_rhs(Field::chi, p), true, true, "eom-chi");
        add(JetAtom(Field::chibar, p, 1, 0), lc_eom_rhs(Field::chibar, p), true, true,
            "eom-chibar");
    }
    // auxiliary-fermion flows
    for (const char* n : {"d+g1", "d+f1", "d+g2", "d+f2"}) {
        const auto& r = bt.by_name(n);
        add(r.lhs.terms()[0].word[0], r.rhs, true, false, n);
    }
    for (const char* n : {"d-g1", "d-f1", "d-g2", "d-f2"}) {
        const auto& r = bt.by_name(n);
        add(r.lhs.terms()[0].word[0], r.rhs, false, true, n);
    }
    // boson combination rules: solve the flow pairs for the individual jets
    for (Field f : {Field::phi, Field::varphi}) {
        const std::string pm = (f == Field::phi) ? "phi" : "varphi";
        Expr plus_minus = bt.by_name("d+" + pm + "-").rhs;
        Expr plus_sum = bt.by_name("d+(" + pm + "+-2" + pm + "0)").rhs;
        Expr minus_minus = bt.by_name("d-" + pm + "-").rhs;
        Expr minus_sum = bt.by_name("d-(" + pm + "++2" + pm + "0)").rhs;
        add(JetAtom(f, 1, 1, 0), num(1, 2) * (plus_sum + plus_minus) + jp(f, 0), true, false,
            "d+F1");
        add(JetAtom(f, 2, 1, 0), num(1, 2) * (plus_sum - plus_minus) + jp(f, 0), true, false,
            "d+F2");
        add(JetAtom(f, 1, 0, 1), num(1, 2) * (minus_sum + minus_minus) - jm(f, 0), false, true,
            "d-F1");
        add(JetAtom(f, 2, 0, 1), num(1, 2) * (minus_sum - minus_minus) - jm(f, 0), false, true,
            "d-F2");
    }
    // algebraic fermion relations, eliminating the region-1 zero jets
    for (const char* n : {"psi-", "psibar-", "chi-", "chibar-"}) {
        const auto& r = bt.by_name(n);
        Field f = r.lhs.terms()[0].word[0].base.name;
        add(JetAtom(f, 1, 0, 0), j(f, 2) + r.rhs, true, true, n);
    }
    return RewriteSystem(std::move(rules), 256);
}

std::vector<std::string> backlund_check_names() {
    return {"phi1", "phi2", "varphi1", "varphi2", "psi", "psibar",
            "chi",  "chibar", "f1",     "f2",      "g1",  "g2"};
}

Expr backlund_consistency_residual(const BacklundSet& bt, const RewriteSystem& rules,
                                   const std::string& field) {
    auto D = [&](const Expr& e, Dir d) { return sym::total_derivative(e, d); };
    const Dir plus = Dir::t, minus = Dir::x;

    if (field == "phi1" || field == "phi2" || field == "varphi1" || field == "varphi2") {
        const bool is_phi = field.starts_with("phi");
        const Field f = is_phi ? Field::phi : Field::varphi;
        const int p = (field.back() == '1') ? 1 : 2;
        const int s = (p == 1) ? 1 : -1;
        const std::string pm = is_phi ? "phi" : "varphi";
        Expr S = D(bt.by_name("d-(" + pm + "++2" + pm + "0)").rhs +
                       sym::scale(bt.by_name("d-" + pm + "-").rhs, Gaussian(s)),
                   plus) +
                 D(bt.by_name("d+(" + pm + "+-2" + pm + "0)").rhs +
                       sym::scale(bt.by_name("d+" + pm + "-").rhs, Gaussian(s)),
                   minus);
        return sym::substitute(S - lc_boson_rhs(f, p), rules);
    }
    if (field == "psi" || field == "chi") {
        const auto& r = bt.by_name(field + "-");
        return sym::substitute(D(r.residual(), minus), rules);
    }
    if (field == "psibar" || field == "chibar") {
        const auto& r = bt.by_name(field + "-");
        return sym::substitute(D(r.residual(), plus), rules);
    }
    if (field == "f1" || field == "f2" || field == "g1" || field == "g2") {
        Expr cross = D(bt.by_name("d-" + field).rhs, plus) - D(bt.by_name("d+" + field).rhs, minus);
        return sym::substitute(cross, rules);
    }
    throw std::invalid_argument("unknown Backlund consistency check: " + field);
}

}  // namespace sshg::defects
