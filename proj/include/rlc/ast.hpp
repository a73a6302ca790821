#pragma once

// Syntax trees of the resource lambda calculus with tests.
//
// Terms, bags and tests are mutually recursive immutable values shared via
// shared_ptr. Sum-free by construction: formal sums live only in Sum<X>,
// except for the banged slot of a bag, which carries a whole Sum<TermPtr>
// (a sum under a bang is not distributed).

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace rlc::ast {

struct Term;
struct Test;
using TermPtr = std::shared_ptr<const Term>;
using TestPtr = std::shared_ptr<const Test>;

// ---------------------------------------------------------------------------
// Formal sums

/// Finite multiset of sum-free expressions. The empty sum is the zero of its
/// kind. Summands are kept in a canonical order (alpha-invariant key, then a
/// name-aware structural tiebreak) so equal sums compare and print equal.
template <class P>
class Sum {
public:
  Sum() = default;
  explicit Sum(P single) { xs_.push_back(std::move(single)); }

  static Sum zero() { return Sum(); }
  static Sum of(std::vector<P> xs);

  bool is_zero() const { return xs_.empty(); }
  std::size_t size() const { return xs_.size(); }
  const std::vector<P>& summands() const { return xs_; }

  bool operator==(const Sum& o) const;

private:
  std::vector<P> xs_;  // sorted canonically by Sum::of
};

struct Bag;
using TermSum = Sum<TermPtr>;
using TestSum = Sum<TestPtr>;
using BagSum = Sum<Bag>;

// ---------------------------------------------------------------------------
// Bags

/// Application argument: a multiset of linear terms plus exactly one banged
/// component. The banged slot holds a formal sum (possibly zero).
struct Bag {
  std::vector<TermPtr> linear;  // sorted canonically on construction
  TermSum banged;

  Bag() = default;
  Bag(std::vector<TermPtr> lin, TermSum bang);
};

// ---------------------------------------------------------------------------
// Terms and tests

struct Var {
  std::string name;
};
struct Abs {
  std::string binder;
  TermPtr body;
};
struct App {
  TermPtr fun;
  Bag arg;
};
struct TauBar {
  TestPtr test;
};

struct Term {
  std::variant<Var, Abs, App, TauBar> node;
  std::vector<std::string> free;  // sorted free variable names

  explicit Term(std::variant<Var, Abs, App, TauBar> n);
};

struct Eps {};
struct Par {
  TestPtr left;
  TestPtr right;
};
struct Tau {
  TermPtr subject;
};

struct Test {
  std::variant<Eps, Par, Tau> node;
  std::vector<std::string> free;

  explicit Test(std::variant<Eps, Par, Tau> n);
};

// Constructors.
TermPtr mk_var(std::string name);
TermPtr mk_abs(std::string binder, TermPtr body);
TermPtr mk_app(TermPtr fun, Bag arg);
TermPtr mk_taubar(TestPtr test);
TestPtr mk_eps();
TestPtr mk_par(TestPtr l, TestPtr r);
TestPtr mk_tau(TermPtr subject);

/// Bag with no linear part and a banged singleton: [m!].
Bag bang(TermPtr m);
/// Bag with the given linear part and banged singleton.
Bag bag_of(std::vector<TermPtr> linear, TermPtr banged);

// ---------------------------------------------------------------------------
// Free variables

const std::vector<std::string>& free_vars(const TermPtr& t);
const std::vector<std::string>& free_vars(const TestPtr& t);
std::vector<std::string> free_vars(const Bag& b);
template <class P>
std::vector<std::string> free_vars(const Sum<P>& s);

bool is_free_in(const std::string& x, const TermPtr& t);
bool is_free_in(const std::string& x, const TestPtr& t);
bool is_free_in(const std::string& x, const Bag& b);
template <class P>
bool is_free_in(const std::string& x, const Sum<P>& s);

bool is_closed(const TermPtr& t);

/// A name not occurring in `avoid`, derived from `hint`.
std::string fresh_name(const std::string& hint, const std::set<std::string>& avoid);

// ---------------------------------------------------------------------------
// Alpha-invariant canonical keys
//
// key() renders an expression with de-Bruijn-style indices for bound
// variables and literal names for free ones; bag linear parts and sum
// summands are sorted inside the rendering. Two expressions are
// alpha-equivalent iff their keys are equal, and the key order is invariant
// under renaming of bound variables and multiset permutation.

std::string key(const TermPtr& t);
std::string key(const TestPtr& t);
std::string key(const Bag& b);
template <class P>
std::string key(const Sum<P>& s);

bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const TestPtr& a, const TestPtr& b);
bool alpha_eq(const Bag& a, const Bag& b);
template <class P>
bool alpha_eq(const Sum<P>& a, const Sum<P>& b);

/// Total order used for canonical storage: key first, then a structural
/// comparison that sees binder names (so distinct values order reproducibly).
int compare(const TermPtr& a, const TermPtr& b);
int compare(const TestPtr& a, const TestPtr& b);
int compare(const Bag& a, const Bag& b);
template <class P>
int compare(const Sum<P>& a, const Sum<P>& b);

// ---------------------------------------------------------------------------
// Sum algebra helpers

template <class P>
Sum<P> sum_union(const Sum<P>& a, const Sum<P>& b);
template <class P>
Sum<P> sum_union(std::vector<Sum<P>> parts);

/// Maps f over the summands and unions the resulting sums.
template <class P, class F>
auto sum_bind(const Sum<P>& s, F&& f) -> decltype(f(s.summands()[0]));

// Spine view of iterated application: head applied to a list of bags.
struct Spine {
  TermPtr head;  // not an App
  std::vector<Bag> bags;
};
Spine spine_of(const TermPtr& t);
TermPtr spine_build(TermPtr head, const std::vector<Bag>& bags);

/// Number of syntax nodes (terms, bags, tests; sum summands counted apiece).
std::size_t size_of(const TermPtr& t);
std::size_t size_of(const TestPtr& t);
std::size_t size_of(const Bag& b);

// ---------------------------------------------------------------------------
// Template bodies

template <class P>
Sum<P> Sum<P>::of(std::vector<P> xs) {
  std::sort(xs.begin(), xs.end(),
            [](const P& a, const P& b) { return compare(a, b) < 0; });
  Sum s;
  s.xs_ = std::move(xs);
  return s;
}

template <class P>
bool Sum<P>::operator==(const Sum& o) const {
  if (xs_.size() != o.xs_.size()) return false;
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (compare(xs_[i], o.xs_[i]) != 0) return false;
  return true;
}

template <class P>
std::vector<std::string> free_vars(const Sum<P>& s) {
  std::set<std::string> acc;
  for (const auto& x : s.summands()) {
    auto fv = free_vars(x);
    acc.insert(fv.begin(), fv.end());
  }
  return {acc.begin(), acc.end()};
}

template <class P>
bool is_free_in(const std::string& x, const Sum<P>& s) {
  for (const auto& e : s.summands())
    if (is_free_in(x, e)) return true;
  return false;
}

template <class P>
std::string key(const Sum<P>& s) {
  std::vector<std::string> ks;
  ks.reserve(s.size());
  for (const auto& e : s.summands()) ks.push_back(key(e));
  std::sort(ks.begin(), ks.end());
  std::string out = "S(";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ',';
    out += ks[i];
  }
  out += ')';
  return out;
}

template <class P>
bool alpha_eq(const Sum<P>& a, const Sum<P>& b) {
  return key(a) == key(b);
}

template <class P>
int compare(const Sum<P>& a, const Sum<P>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = compare(a.summands()[i], b.summands()[i]); c != 0) return c;
  return 0;
}

template <class P>
Sum<P> sum_union(const Sum<P>& a, const Sum<P>& b) {
  std::vector<P> xs = a.summands();
  xs.insert(xs.end(), b.summands().begin(), b.summands().end());
  return Sum<P>::of(std::move(xs));
}

template <class P>
Sum<P> sum_union(std::vector<Sum<P>> parts) {
  std::vector<P> xs;
  for (auto& p : parts) xs.insert(xs.end(), p.summands().begin(), p.summands().end());
  return Sum<P>::of(std::move(xs));
}

template <class P, class F>
auto sum_bind(const Sum<P>& s, F&& f) -> decltype(f(s.summands()[0])) {
  using R = decltype(f(s.summands()[0]));
  std::vector<R> parts;
  parts.reserve(s.size());
  for (const auto& e : s.summands()) parts.push_back(f(e));
  return sum_union(std::move(parts));
}

}  // namespace rlc::ast
