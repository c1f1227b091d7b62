#ifndef CHRN_UNIFY_HPP
#define CHRN_UNIFY_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chrn/term.hpp"

namespace chrn {

// Higher-order pattern (L-lambda) unification. The case table is documented
// in docs/unification.md.

enum class UnifyStatus { Success, Clash, Occurs, NonPattern };

struct UnifyOutcome {
  UnifyStatus status = UnifyStatus::Success;
  Substitution mgu;

  bool ok() const { return status == UnifyStatus::Success; }
};

struct UnifyOptions {
  // Metavariables treated as rigid constants: they are never bound, and a
  // spine headed by one decomposes pointwise (normal-form equality).
  std::set<std::string> frozen;
  // When true, a flex-flex pair with the same head whose arguments are not
  // atoms is decomposed pointwise. This finds a unifier, not a most general
  // one; only the state-variance search uses it.
  bool pointwise_flex = false;
};

UnifyOutcome pattern_unify(std::vector<std::pair<TermPtr, TermPtr>> equations,
                           const UnifyOptions& options = {});

inline UnifyOutcome pattern_unify(const TermPtr& lhs, const TermPtr& rhs,
                                  const UnifyOptions& options = {}) {
  return pattern_unify(std::vector<std::pair<TermPtr, TermPtr>>{{lhs, rhs}}, options);
}

// One-sided matching: finds theta over the patterns' metavariables with
// theta(patterns) alpha-equal to candidates pointwise. Candidate
// metavariables and nominals are rigid. Nonlinear patterns need the matched
// arguments alpha-equal, which falls out of freezing the candidate side.
std::optional<Substitution> match_constraints(const std::vector<Constraint>& patterns,
                                              const std::vector<Constraint>& candidates);

}  // namespace chrn

#endif
