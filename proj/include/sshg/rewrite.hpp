#pragma once

#include <string>
#include <vector>

#include "sshg/expr.hpp"

namespace sshg::sym {

// One oriented substitution rule lhs -> rhs. A prolongable rule also matches
// jets with higher derivative order in the flagged directions; the
// replacement is then the matching total derivative of rhs. This is how
// on-shell systems (field equations, differentiated defect conditions) are
// encoded from their base form alone.
struct Rule {
    JetAtom lhs;
    Expr rhs;
    bool prolong_t = false;
    bool prolong_x = false;
    std::string tag;  // diagnostics only
};

// Ordered substitution system with a closure invariant: after construction
// no rule's right-hand side contains (a match of) any rule's left-hand side.
// Cyclic systems fail construction with NonTerminating.
class RewriteSystem {
  public:
    RewriteSystem() = default;
    explicit RewriteSystem(std::vector<Rule> rules, int max_passes = 64);

    const std::vector<Rule>& rules() const { return rules_; }
    int max_passes() const { return max_passes_; }

    // True if any rule matches the jet (prolongation-aware).
    bool matches(JetAtom a) const;

    // True if the expression contains a matchable jet anywhere.
    bool reducible(const Expr& e) const;

  private:
    std::vector<Rule> rules_;
    int max_passes_ = 64;
};

// Reduces to the fixpoint: the result contains no left-hand side of any
// rule. Throws NonTerminating past rs.max_passes() sweeps.
Expr substitute(const Expr& e, const RewriteSystem& rs);

}  // namespace sshg::sym
