#pragma once

// Short-hand constructors shared by the theory builders.

#include "sshg/expr.hpp"

namespace sshg::build {

using sym::Expr;
using sym::Field;
using sym::FieldAtom;
using sym::Gaussian;
using sym::JetAtom;
using sym::LinearForm;
using sym::Rational;

inline FieldAtom fa(Field f, int r) { return FieldAtom(f, static_cast<std::uint8_t>(r)); }

inline Expr j(Field f, int r, int dt = 0, int dx = 0) {
    return Expr::jet(JetAtom(f, static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(dt),
                             static_cast<std::uint8_t>(dx)));
}

inline LinearForm form(std::initializer_list<std::pair<FieldAtom, Rational>> items) {
    LinearForm f;
    for (const auto& [a, c] : items) f.add(a, c);
    return f;
}

inline Expr ex(const LinearForm& f) { return Expr::exponential(f); }
inline Expr ch(const LinearForm& f) { return Expr::cosh_of(f); }
inline Expr sh(const LinearForm& f) { return Expr::sinh_of(f); }

inline Expr num(std::int64_t n, std::int64_t d = 1) { return Expr::rational(n, d); }
inline Expr I() { return Expr::imaginary_unit(); }

// sqrt(2)^a * m^(b/2) * s1^(c/2) * s2^(d/2)
inline Expr hp(int a, int b, int c, int d) { return Expr::half_powers(a, b, c, d); }

// m, m^2, sqrt(m sigma_k / 2), sqrt(2 m sigma_k), sqrt(m / (2 sigma_k)), ...
inline Expr m1() { return hp(0, 2, 0, 0); }
inline Expr m2() { return hp(0, 4, 0, 0); }
inline Expr sigma(int k) { return k == 1 ? hp(0, 0, 2, 0) : hp(0, 0, 0, 2); }
inline Expr sqrt_m_sigma_over2(int k) {
    return k == 1 ? hp(-1, 1, 1, 0) : hp(-1, 1, 0, 1);
}
inline Expr sqrt_m_over_2sigma(int k) {
    return k == 1 ? hp(-1, 1, -1, 0) : hp(-1, 1, 0, -1);
}
inline Expr sqrt_2m_sigma(int k) { return k == 1 ? hp(1, 1, 1, 0) : hp(1, 1, 0, 1); }
inline Expr sqrt_2m_over_sigma(int k) { return k == 1 ? hp(1, 1, -1, 0) : hp(1, 1, 0, -1); }

}  // namespace sshg::build
