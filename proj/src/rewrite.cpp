#include "sshg/rewrite.hpp"

#include <algorithm>

#include "sshg/errors.hpp"

namespace sshg::sym {

namespace {

bool rule_matches(const Rule& r, JetAtom a) {
    if (a.base != r.lhs.base) return false;
    if (a.dt < r.lhs.dt || a.dx < r.lhs.dx) return false;
    if (a.dt > r.lhs.dt && !r.prolong_t) return false;
    if (a.dx > r.lhs.dx && !r.prolong_x) return false;
    return true;
}

Expr replacement_for(const Rule& r, JetAtom a) {
    Expr rhs = r.rhs;
    if (a.dt > r.lhs.dt) rhs = total_derivative(rhs, Dir::t, a.dt - r.lhs.dt);
    if (a.dx > r.lhs.dx) rhs = total_derivative(rhs, Dir::x, a.dx - r.lhs.dx);
    return rhs;
}

// Rewrites the first matchable jet of the monomial (rule order first, then
// position order); appends the expansion to `out`. Returns false if the
// monomial is irreducible.
bool reduce_monomial(const Monomial& m, const std::vector<Rule>& rules,
                     std::vector<Monomial>& out) {
    for (const auto& rule : rules) {
        for (std::size_t i = 0; i < m.jets.size(); ++i) {
            if (!rule_matches(rule, m.jets[i])) continue;
            Monomial rest = m;
            rest.jets.erase(rest.jets.begin() + static_cast<std::ptrdiff_t>(i));
            Expr expanded = Expr::from_terms({rest}) * replacement_for(rule, m.jets[i]);
            for (const auto& t : expanded.terms()) out.push_back(t);
            return true;
        }
        for (std::size_t p = 0; p < m.word.size(); ++p) {
            if (!rule_matches(rule, m.word[p])) continue;
            Monomial left = m;
            left.word.assign(m.word.begin(), m.word.begin() + static_cast<std::ptrdiff_t>(p));
            Monomial right(Gaussian(1));
            right.word.assign(m.word.begin() + static_cast<std::ptrdiff_t>(p) + 1, m.word.end());
            Expr expanded = Expr::from_terms({left}) * replacement_for(rule, m.word[p]) *
                            Expr::from_terms({right});
            for (const auto& t : expanded.terms()) out.push_back(t);
            return true;
        }
    }
    return false;
}

// One sweep over all terms; returns whether anything was rewritten.
bool one_pass(const Expr& e, const std::vector<Rule>& rules, Expr& result) {
    std::vector<Monomial> out;
    out.reserve(e.size());
    bool changed = false;
    for (const auto& m : e.terms()) {
        if (reduce_monomial(m, rules, out))
            changed = true;
        else
            out.push_back(m);
    }
    result = canonicalize(std::move(out));
    return changed;
}

Expr fixpoint(const Expr& e, const std::vector<Rule>& rules, int max_passes,
              const char* what) {
    Expr cur = e;
    for (int pass = 0; pass < max_passes; ++pass) {
        Expr next;
        if (!one_pass(cur, rules, next)) return next;
        cur = std::move(next);
    }
    throw NonTerminating(std::string(what) + ": exceeded " + std::to_string(max_passes) +
                         " substitution passes");
}

}  // namespace

RewriteSystem::RewriteSystem(std::vector<Rule> rules, int max_passes)
    : rules_(std::move(rules)), max_passes_(max_passes) {
    for (const auto& r : rules_) {
        if (r.lhs.even() && r.lhs.order() == 0)
            throw std::invalid_argument("rewrite of a bare even field is not supported");
        if (auto p = r.rhs.parity(); p && *p != (r.lhs.even() ? 0 : 1))
            throw std::invalid_argument("rule rhs parity differs from lhs: " + r.tag);
    }
    // Close the system: substitute rules into each other's right-hand sides
    // until no left-hand side survives anywhere. Cyclic systems blow the
    // pass budget and are rejected here, not during use.
    for (auto& r : rules_) r.rhs = fixpoint(r.rhs, rules_, max_passes_, "rewrite closure");
}

bool RewriteSystem::matches(JetAtom a) const {
    return std::any_of(rules_.begin(), rules_.end(),
                       [&](const Rule& r) { return rule_matches(r, a); });
}

bool RewriteSystem::reducible(const Expr& e) const {
    for (const auto& m : e.terms()) {
        for (const auto& j : m.jets)
            if (matches(j)) return true;
        for (const auto& w : m.word)
            if (matches(w)) return true;
    }
    return false;
}

Expr substitute(const Expr& e, const RewriteSystem& rs) {
    return fixpoint(e, rs.rules(), rs.max_passes(), "substitute");
}

}  // namespace sshg::sym
