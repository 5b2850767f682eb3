#pragma once

#include <random>
#include <vector>

#include "sshg/expr.hpp"

namespace sshg::testing {

using namespace sshg::sym;

// Seeded random canonical expressions for property tests.
class ExprGen {
  public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    Rational rational() {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 4);
        return Rational(num(rng_), den(rng_));
    }

    FieldAtom even_atom() {
        std::uniform_int_distribution<int> name(0, 1), region(0, 2);
        return FieldAtom(name(rng_) == 0 ? Field::phi : Field::varphi,
                         static_cast<std::uint8_t>(region(rng_)));
    }

    JetAtom odd_atom() {
        static const Field odd[] = {Field::psi, Field::psibar, Field::chi,
                                    Field::chibar, Field::f, Field::g};
        std::uniform_int_distribution<int> name(0, 5), region(0, 2), ord(0, 1);
        Field n = odd[name(rng_)];
        int lo = (n == Field::f || n == Field::g) ? 1 : 0;
        std::uniform_int_distribution<int> reg(lo, 2);
        return JetAtom(n, static_cast<std::uint8_t>(reg(rng_)),
                       static_cast<std::uint8_t>(ord(rng_)), static_cast<std::uint8_t>(ord(rng_)));
    }

    JetAtom even_jet() {
        std::uniform_int_distribution<int> dt(0, 2), dx(0, 2);
        int t = dt(rng_), x = dx(rng_);
        if (t == 0 && x == 0) t = 1;
        return JetAtom(even_atom(), static_cast<std::uint8_t>(t), static_cast<std::uint8_t>(x));
    }

    Monomial monomial(int max_word = 3) {
        std::uniform_int_distribution<int> njets(0, 2), nword(0, max_word), nexp(0, 2),
            halves(-2, 2), coin(0, 1);
        Monomial m(Gaussian(rational(), coin(rng_) ? rational() : Rational(0)));
        if (m.coeff.is_zero()) m.coeff = Gaussian(1);
        m.half.two = static_cast<std::int16_t>(coin(rng_));
        m.half.m = static_cast<std::int16_t>(halves(rng_));
        m.half.s1 = static_cast<std::int16_t>(halves(rng_));
        m.half.s2 = static_cast<std::int16_t>(halves(rng_));
        int ne = nexp(rng_);
        for (int i = 0; i < ne; ++i) m.exp.add(even_atom(), rational());
        int nj = njets(rng_);
        for (int i = 0; i < nj; ++i) m.jets.push_back(even_jet());
        int nw = nword(rng_);
        for (int i = 0; i < nw; ++i) m.word.push_back(odd_atom());
        return m;
    }

    Expr expr(int nterms = 4, int max_word = 3) {
        std::vector<Monomial> terms;
        for (int i = 0; i < nterms; ++i) terms.push_back(monomial(max_word));
        return Expr::from_terms(std::move(terms));
    }

    // Homogeneous-parity expression (for supercommutativity etc.).
    Expr homogeneous(int parity, int nterms = 3) {
        std::vector<Monomial> terms;
        while (static_cast<int>(terms.size()) < nterms) {
            Monomial m = monomial();
            if (m.parity() != parity) {
                if (parity == 1) {
                    m.word.push_back(odd_atom());
                    if (m.parity() != 1) continue;
                } else {
                    if (m.word.empty()) continue;
                    m.word.pop_back();
                    if (m.parity() != 0) continue;
                }
            }
            terms.push_back(m);
        }
        return Expr::from_terms(std::move(terms));
    }

    std::mt19937_64& rng() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace sshg::testing
