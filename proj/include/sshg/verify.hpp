#pragma once

// Small helpers shared by the verification checks.

#include <optional>

#include "sshg/expr.hpp"

namespace sshg::verify {

using sym::Expr;
using sym::Gaussian;

// Finds the unique scalar c with a == c * b (b nonzero), by matching the
// leading monomial and checking globally. nullopt if no such scalar exists.
inline std::optional<Gaussian> proportionality(const Expr& a, const Expr& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Gaussian(0);
    const auto& mb = b.terms().front();
    for (const auto& ma : a.terms()) {
        if (cmp_key(ma, mb) == 0) {
            Gaussian c = ma.coeff / mb.coeff;
            if (a == sym::scale(b, c)) return c;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace sshg::verify
