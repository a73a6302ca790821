#pragma once

// Ordinary and linear substitution, the reduction rules, the outer-head
// strategy, fuel-bounded convergence checking, full normalization under two
// redex-selection strategies, and bounded joinability of reducts.

#include <optional>
#include <string>
#include <vector>

#include "rlc/ast.hpp"

namespace rlc::rewrite {

using ast::Bag;
using ast::BagSum;
using ast::TermPtr;
using ast::TermSum;
using ast::TestPtr;
using ast::TestSum;

// ---------------------------------------------------------------------------
// Substitution

/// Ordinary substitution M{N/x}; acts pointwise on the banged sums it meets.
TermSum subst(const TermPtr& m, const std::string& x, const TermSum& by);
BagSum subst(const Bag& m, const std::string& x, const TermSum& by);
TestSum subst(const TestPtr& m, const std::string& x, const TermSum& by);

/// Linear substitution M<N/x>: replaces exactly one occurrence of x, summed
/// over all choices; zero when x is not free in M.
TermSum linear_subst(const TermPtr& m, const std::string& x, const TermPtr& by);
BagSum linear_subst(const Bag& m, const std::string& x, const TermPtr& by);
TestSum linear_subst(const TestPtr& m, const std::string& x, const TermPtr& by);

/// (\x.M) [N1,...,Nn;N!] -> M<N1/x>...<Nn/x>{N!/x}. Linear components are
/// consumed in the bag's canonical order.
TermSum beta_contract(const ast::Abs& abs, const Bag& bag);

/// Same, but consuming the linear components in the order given. The result
/// does not depend on that order; tests exercise the permutation invariance.
TermSum beta_contract_ordered(const std::string& binder, const TermPtr& body,
                              const std::vector<TermPtr>& linear, const TermSum& banged);

// ---------------------------------------------------------------------------
// Rules

enum class Rule { Beta, Gamma, TauRule, TauBar1, TauBar2, EpsRule, Dist };
const char* rule_name(Rule r);

/// Contracts a rule redex at the root. Term shapes: (tbar(Q)) B. Test
/// shapes: tau(tbar(Q)), tau(\x.M), eps|eps. Throws std::invalid_argument
/// when the root is not a redex of these shapes.
TermSum test_contract(const TermPtr& redex);
TestSum test_contract(const TestPtr& redex);

// ---------------------------------------------------------------------------
// Outer-head normal forms and the outer-head step

bool is_onf(const TermPtr& e);
bool is_onf(const TestPtr& e);

struct Path {
  std::vector<std::string> segs;
  std::string str() const;
};

template <class P>
struct Step {
  bool normal = false;
  ast::Sum<P> out;
  Rule rule = Rule::Beta;
  Path path;
};

/// One deterministic outer-head step. Head positions reduce before linear
/// bag positions; banged components are never reduced.
Step<TermPtr> outer_head_step(const TermPtr& e);
Step<TestPtr> outer_head_step(const TestPtr& e);

// ---------------------------------------------------------------------------
// Fuel-bounded reduction

enum class Status { Converged, Zero, FuelExhausted };

template <class P>
struct Outcome {
  Status status = Status::Zero;
  std::optional<P> witness;  // on Converged: satisfies is_onf
  int steps = 0;             // rule applications spent
  ast::Sum<P> frontier;      // reduction state at return
};

template <class P>
struct TraceStep {
  int index = 0;  // 1-based step number
  Rule rule = Rule::Beta;
  Path path;
  P before;
  ast::Sum<P> after;
};

template <class P>
using Trace = std::vector<TraceStep<P>>;

/// Breadth-first over summands; converged at the first summand in outer-head
/// normal form (may-convergence), Zero when the sum empties.
template <class P>
Outcome<P> reduce(const ast::Sum<P>& s, int fuel, Trace<P>* trace = nullptr);

/// Replays a recorded trace with the same queue discipline; returns the
/// final frontier, which must match Outcome::frontier.
template <class P>
ast::Sum<P> replay(const ast::Sum<P>& start, const Trace<P>& trace);

enum class Conv { Yes, No, Unknown };

struct Convergence {
  Conv verdict = Conv::Unknown;
  int steps = 0;  // meaningful on Yes
};

template <class P>
Convergence converges(const ast::Sum<P>& s, int fuel);

// ---------------------------------------------------------------------------
// Full normalization (all redexes, banged positions included)

enum class Strategy { OuterFirst, RightmostInnermost };

/// True when no rule redex occurs anywhere, banged sums included.
bool fully_normal(const TermPtr& e);
bool fully_normal(const TestPtr& e);

/// Contracts one redex chosen by the strategy; nullopt when fully normal.
std::optional<TermSum> contract_one(const TermPtr& e, Strategy s);
std::optional<TestSum> contract_one(const TestPtr& e, Strategy s);

template <class P>
struct NormalizeResult {
  bool complete = false;
  ast::Sum<P> result;
  int steps = 0;
};

/// Rewrites until every summand is fully normal or the fuel runs out.
/// A sum growing beyond `max_sum` summands also counts as incomplete.
template <class P>
NormalizeResult<P> normalize_full(const ast::Sum<P>& s, int fuel, Strategy strat,
                                  std::size_t max_sum = 20000);

/// One synchronous step: every non-normal summand contracts its OuterFirst
/// redex. Fully normal summands persist.
template <class P>
ast::Sum<P> trajectory_step(const ast::Sum<P>& s);

struct JoinResult {
  bool joined = false;
  int steps_left = 0;
  int steps_right = 0;
};

/// Bounded search for a common reduct: iterates trajectory_step on both
/// sides and reports the first pair of alpha-equal frontiers.
template <class P>
JoinResult joinable(const ast::Sum<P>& a, const ast::Sum<P>& b, int max_steps);

// Par-tree helpers. Reassociation is never applied implicitly by the
// strategy; it is a separate explicit normalization of Par nesting.
std::vector<TestPtr> par_leaves(const TestPtr& t);
TestPtr par_right_nested(const std::vector<TestPtr>& leaves);

}  // namespace rlc::rewrite
