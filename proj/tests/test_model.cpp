#include "doctest.h"
#include "sshg/build.hpp"
#include "sshg/model.hpp"
#include "sshg/parser.hpp"
#include "sshg/verify.hpp"
#include "test_helpers.hpp"

using namespace sshg;
using namespace sshg::build;
using namespace sshg::model;
using sym::Dir;
using sym::parse;
using sym::print;
using sym::Side;

namespace {

Expr strip_fermions(const Expr& e) {
    std::vector<sym::Monomial> keep;
    for (const auto& m : e.terms())
        if (m.word.empty()) keep.push_back(m);
    return Expr::from_terms(std::move(keep));
}

Expr drop_mass(const Expr& e) {
    std::vector<sym::Monomial> keep;
    for (const auto& m : e.terms())
        if (m.half.m == 0) keep.push_back(m);
    return Expr::from_terms(std::move(keep));
}

}  // namespace

TEST_CASE("bulk lagrangian: bosonic limit and massless limit") {
    Expr L = bulk_lagrangian(1);
    Expr bosonic = strip_fermions(L);
    Expr expected = parse(
        "1/2*dx(phi[1])^2 - 1/2*dt(phi[1])^2 - 1/2*dx(varphi[1])^2 + 1/2*dt(varphi[1])^2"
        " + m^2*cosh(2*phi[1]) - m^2*cosh(2*varphi[1])");
    CHECK(bosonic == expected);
    // m -> 0 kills potential and Yukawa terms, leaving the kinetic part
    Expr kinetic = drop_mass(L);
    CHECK(strip_fermions(kinetic) ==
          parse("1/2*dx(phi[1])^2 - 1/2*dt(phi[1])^2 - 1/2*dx(varphi[1])^2 + 1/2*dt(varphi[1])^2"));
    // stable term count across construction routes
    CHECK(L == parse(print(L)));
}

TEST_CASE("euler-lagrange of the free scalar") {
    Expr L = parse("1/2*dx(phi[0])^2 - 1/2*dt(phi[0])^2");
    Expr el = euler_lagrange(L, fa(Field::phi, 0), Side::left);
    auto c = verify::proportionality(el, parse("dx(dx(phi[0])) - dt(dt(phi[0]))"));
    REQUIRE(c.has_value());
    CHECK(!c->is_zero());
}

TEST_CASE("all six bulk field equations from the lagrangian") {
    Expr L = bulk_lagrangian(1);
    for (Field f : kBulkFields) {
        CAPTURE(field_name(f));
        Expr el = euler_lagrange(L, fa(f, 1), Side::left);
        Expr ref = bulk_eom_residual(f, 1);
        auto c = verify::proportionality(el, ref);
        REQUIRE(c.has_value());
        CHECK(!c->is_zero());
    }
    // The per-equation constants inherit the alternating kinetic-term signs
    // of the lagrangian: -1/+1 for the bosons, -2i/+2i pairs for fermions.
    auto c_of = [&](Field f) {
        return *verify::proportionality(euler_lagrange(L, fa(f, 1), Side::left),
                                        bulk_eom_residual(f, 1));
    };
    CHECK(c_of(Field::phi) == Gaussian(-1));
    CHECK(c_of(Field::varphi) == Gaussian(1));
    CHECK(c_of(Field::psi) == -Gaussian::I() * Gaussian(2));
    CHECK(c_of(Field::psi) == c_of(Field::chibar));
    CHECK(c_of(Field::psibar) == c_of(Field::chi));
    CHECK(c_of(Field::psibar) == -c_of(Field::psi));
}

TEST_CASE("residuals vanish under the on-shell rules") {
    auto eom = bulk_eom_rules({1});
    for (Field f : kBulkFields) {
        CAPTURE(field_name(f));
        CHECK(sym::substitute(bulk_eom_residual(f, 1), eom).is_zero());
    }
}

TEST_CASE("susy variation of the EOM residuals vanishes on shell") {
    auto eom = bulk_eom_rules({1});
    auto d1 = susy_projection(1, false);
    for (Field f : kBulkFields) {
        CAPTURE(field_name(f));
        Expr varied = susy_vary(bulk_eom_residual(f, 1), d1);
        CHECK(sym::substitute(varied, eom).is_zero());
    }
}

TEST_CASE("not-rigid susy variation brackets and the conservation-law split") {
    const int p = 0;
    Expr L = bulk_lagrangian(p);
    auto d1 = susy_projection(1, false);
    Expr X = notrigid_bracket(L, d1, Dir::x, Side::left, p);
    Expr Y = notrigid_bracket(L, d1, Dir::t, Side::left, p);

    // the x-bracket as printed
    Expr GA = parse(
        "psi[0]*(1/2*dx(phi[0])-1/2*dt(phi[0]) + dx(phi[0])+dt(phi[0]))"
        " + chi[0]*(1/2*dx(varphi[0])-1/2*dt(varphi[0]) + dx(varphi[0])+dt(varphi[0]))"
        " + m*psibar[0]*sinh(phi[0])*cosh(varphi[0])"
        " - m*chibar[0]*sinh(varphi[0])*cosh(phi[0])");
    CHECK(X == I() * GA);

    // the t-bracket needs the chi-term lightcone signs mirrored like psi's
    Expr GB = parse(
        "psi[0]*(1/2*dx(phi[0])-1/2*dt(phi[0]) - dx(phi[0])-dt(phi[0]))"
        " + chi[0]*(1/2*dx(varphi[0])-1/2*dt(varphi[0]) - dx(varphi[0])-dt(varphi[0]))"
        " + m*psibar[0]*sinh(phi[0])*cosh(varphi[0])"
        " - m*chibar[0]*sinh(varphi[0])*cosh(phi[0])");
    CHECK(Y == I() * GB);

    // rigid variation = D_x(X) + D_t(Y) + (D_t C - D_x D): zero residual off shell
    PotentialSigns s = derive_potential_signs();
    Expr C = charge_density(Charge::Q1, p, s);
    Expr D = charge_flux(Charge::Q1, p, s);
    Expr Z = susy_vary(L, d1);
    Expr residual = Z - sym::total_derivative(X, Dir::x) - sym::total_derivative(Y, Dir::t) -
                    sym::total_derivative(C, Dir::t) + sym::total_derivative(D, Dir::x);
    CHECK(residual.is_zero());

    // negative control: flipping the x-bracket sign breaks the identity
    Expr corrupted = Z + sym::total_derivative(X, Dir::x) - sym::total_derivative(Y, Dir::t) -
                     sym::total_derivative(C, Dir::t) + sym::total_derivative(D, Dir::x);
    CHECK(!corrupted.is_zero());

    // m -> 0 truncation of the same identity
    CHECK(drop_mass(residual).is_zero());
}

TEST_CASE("PT fixes the bulk lagrangian and is an involution") {
    Expr L = bulk_lagrangian(0);
    CHECK(pt_bulk(L) == L);
    testing::ExprGen gen(21);
    for (int it = 0; it < 50; ++it) {
        std::vector<sym::Monomial> ms;
        for (int k = 0; k < 3; ++k) {
            sym::Monomial m = gen.monomial();
            // bulk PT is defined on bulk fields only
            std::erase_if(m.word, [](sym::JetAtom a) {
                return a.base.name == Field::f || a.base.name == Field::g;
            });
            ms.push_back(m);
        }
        Expr e = Expr::from_terms(std::move(ms));
        CHECK(pt_bulk(pt_bulk(e)) == e);
    }
}

TEST_CASE("PT maps the first supercharge family to the second") {
    PotentialSigns s = derive_potential_signs();
    // Q2 density as printed
    Expr q2 = parse(
        "I*chi[0]*(dx(phi[0])+dt(phi[0])) + I*psi[0]*(dx(varphi[0])+dt(varphi[0]))"
        " + 2*I*m*chibar[0]*sinh(phi[0])*cosh(varphi[0])"
        " - 2*I*m*psibar[0]*sinh(varphi[0])*cosh(phi[0])");
    CHECK(pt_bulk(charge_density(Charge::Q1, 0, s)) == q2);
    CHECK(charge_density(Charge::Q2, 0, s) == q2);
    // Q2bar as printed
    Expr q2bar = parse(
        "I*psibar[0]*(dx(varphi[0])-dt(varphi[0])) + I*chibar[0]*(dx(phi[0])-dt(phi[0]))"
        " + 2*I*m*chi[0]*sinh(phi[0])*cosh(varphi[0])"
        " - 2*I*m*psi[0]*sinh(varphi[0])*cosh(phi[0])");
    CHECK(charge_density(Charge::Q2bar, 0, s) == q2bar);
}

TEST_CASE("energy potential signs are fixed uniquely by flux closure") {
    PotentialSigns s = derive_potential_signs();
    CHECK(s.v == 1);
    // every charge's density/flux pair closes on shell
    auto eom = bulk_eom_rules({1});
    for (Charge c : {Charge::E, Charge::P, Charge::Q1, Charge::Q1bar, Charge::Q2, Charge::Q2bar}) {
        Expr r = sym::total_derivative(charge_density(c, 1, s), Dir::t) -
                 sym::total_derivative(charge_flux(c, 1, s), Dir::x);
        CHECK(sym::substitute(r, eom).is_zero());
    }
}

TEST_CASE("momentum and Q1 densities match their printed forms") {
    PotentialSigns s = derive_potential_signs();
    Expr p = parse(
        "dt(phi[1])*dx(phi[1]) - dt(varphi[1])*dx(varphi[1])"
        " - I*(psi[1]*dx(psi[1]) + psibar[1]*dx(psibar[1]))"
        " + I*(chi[1]*dx(chi[1]) + chibar[1]*dx(chibar[1]))");
    CHECK(charge_density(Charge::P, 1, s) == p);
    Expr q1 = parse(
        "I*psi[1]*(dx(phi[1])+dt(phi[1])) + I*chi[1]*(dx(varphi[1])+dt(varphi[1]))"
        " - 2*I*m*psibar[1]*sinh(phi[1])*cosh(varphi[1])"
        " + 2*I*m*chibar[1]*sinh(varphi[1])*cosh(phi[1])");
    CHECK(charge_density(Charge::Q1, 1, s) == q1);
    // vacuum: all fields zero kills the momentum density; energy keeps V(0)
    CHECK(!p.is_zero());
}

TEST_CASE("direct susy checks for the remaining projections (slow suite)") {
    const int p = 0;
    Expr L = bulk_lagrangian(p);
    auto eom = bulk_eom_rules({p});
    PotentialSigns s = derive_potential_signs();
    struct Case {
        int which;
        bool barred;
        Charge c;
        int sign;  // orientation of the conservation bracket; PT flips it
    };
    for (const auto& cs : {Case{1, true, Charge::Q1bar, -1}, Case{2, false, Charge::Q2, -1},
                           Case{2, true, Charge::Q2bar, 1}}) {
        auto proj = susy_projection(cs.which, cs.barred);
        CAPTURE(proj.name);
        Expr X = notrigid_bracket(L, proj, Dir::x, Side::left, p);
        Expr Y = notrigid_bracket(L, proj, Dir::t, Side::left, p);
        Expr Z = susy_vary(L, proj);
        Expr C = charge_density(cs.c, p, s);
        Expr D = charge_flux(cs.c, p, s);
        Expr cons = sym::total_derivative(C, Dir::t) - sym::total_derivative(D, Dir::x);
        Expr residual = Z - sym::total_derivative(X, Dir::x) - sym::total_derivative(Y, Dir::t) -
                        sym::scale(cons, Gaussian(cs.sign));
        CHECK(residual.is_zero());
        for (Field f : kBulkFields) {
            Expr varied = susy_vary(bulk_eom_residual(f, p), proj);
            CHECK(sym::substitute(varied, eom).is_zero());
        }
    }
}
