#include "rlc/rewrite.hpp"

#include <cassert>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace rlc::rewrite {

using namespace rlc::ast;

// ---------------------------------------------------------------------------
// Ordinary substitution

namespace {

std::set<std::string> avoid_set(const TermSum& by, const TermPtr& body,
                                const std::string& x, const std::string& binder) {
  std::set<std::string> avoid;
  for (const auto& n : free_vars(by)) avoid.insert(n);
  for (const auto& n : free_vars(body)) avoid.insert(n);
  avoid.insert(x);
  avoid.insert(binder);
  return avoid;
}

}  // namespace

TermSum subst(const TermPtr& m, const std::string& x, const TermSum& by) {
  if (!is_free_in(x, m)) return TermSum(m);
  if (auto* v = std::get_if<Var>(&m->node)) {
    (void)v;  // v->name == x here
    return by;
  }
  if (auto* a = std::get_if<Abs>(&m->node)) {
    std::string binder = a->binder;
    TermPtr body = a->body;
    if (is_free_in(binder, by)) {
      std::string fresh = fresh_name(binder, avoid_set(by, body, x, binder));
      body = subst(body, binder, TermSum(mk_var(fresh))).summands()[0];
      binder = fresh;
    }
    return sum_bind(subst(body, x, by), [&](const TermPtr& b) {
      return TermSum(mk_abs(binder, b));
    });
  }
  if (auto* ap = std::get_if<App>(&m->node)) {
    TermSum funs = subst(ap->fun, x, by);
    BagSum args = subst(ap->arg, x, by);
    std::vector<TermPtr> out;
    out.reserve(funs.size() * args.size());
    for (const auto& f : funs.summands())
      for (const auto& b : args.summands()) out.push_back(mk_app(f, b));
    return TermSum::of(std::move(out));
  }
  return sum_bind(subst(std::get<TauBar>(m->node).test, x, by),
                  [](const TestPtr& q) { return TermSum(mk_taubar(q)); });
}

BagSum subst(const Bag& m, const std::string& x, const TermSum& by) {
  std::vector<TermSum> lin;
  lin.reserve(m.linear.size());
  for (const auto& c : m.linear) lin.push_back(subst(c, x, by));
  TermSum bang = sum_bind(m.banged, [&](const TermPtr& s) { return subst(s, x, by); });

  std::vector<Bag> out;
  std::vector<TermPtr> cur;
  // cartesian product over linear choices; the banged sum is kept whole
  std::function<void()> rec = [&]() {
    if (cur.size() == lin.size()) {
      out.push_back(Bag(cur, bang));
      return;
    }
    for (const auto& c : lin[cur.size()].summands()) {
      cur.push_back(c);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return BagSum::of(std::move(out));
}

TestSum subst(const TestPtr& m, const std::string& x, const TermSum& by) {
  if (!is_free_in(x, m)) return TestSum(m);
  if (std::holds_alternative<Eps>(m->node)) return TestSum(m);
  if (auto* p = std::get_if<Par>(&m->node)) {
    TestSum ls = subst(p->left, x, by);
    TestSum rs = subst(p->right, x, by);
    std::vector<TestPtr> out;
    out.reserve(ls.size() * rs.size());
    for (const auto& l : ls.summands())
      for (const auto& r : rs.summands()) out.push_back(mk_par(l, r));
    return TestSum::of(std::move(out));
  }
  return sum_bind(subst(std::get<Tau>(m->node).subject, x, by),
                  [](const TermPtr& s) { return TestSum(mk_tau(s)); });
}

// ---------------------------------------------------------------------------
// Linear substitution

TermSum linear_subst(const TermPtr& m, const std::string& x, const TermPtr& by) {
  if (!is_free_in(x, m)) return TermSum::zero();
  if (std::holds_alternative<Var>(m->node)) return TermSum(by);  // name == x
  if (auto* a = std::get_if<Abs>(&m->node)) {
    std::string binder = a->binder;
    TermPtr body = a->body;
    if (is_free_in(binder, by)) {
      std::string fresh = fresh_name(binder, avoid_set(TermSum(by), body, x, binder));
      body = subst(body, binder, TermSum(mk_var(fresh))).summands()[0];
      binder = fresh;
    }
    return sum_bind(linear_subst(body, x, by), [&](const TermPtr& b) {
      return TermSum(mk_abs(binder, b));
    });
  }
  if (auto* ap = std::get_if<App>(&m->node)) {
    // (M P)<N/x> = (M<N/x> P) + (M P<N/x>)
    std::vector<TermPtr> out;
    for (const auto& f : linear_subst(ap->fun, x, by).summands())
      out.push_back(mk_app(f, ap->arg));
    for (const auto& b : linear_subst(ap->arg, x, by).summands())
      out.push_back(mk_app(ap->fun, b));
    return TermSum::of(std::move(out));
  }
  return sum_bind(linear_subst(std::get<TauBar>(m->node).test, x, by),
                  [](const TestPtr& q) { return TermSum(mk_taubar(q)); });
}

BagSum linear_subst(const Bag& m, const std::string& x, const TermPtr& by) {
  std::vector<Bag> out;
  // one summand family per linear slot
  for (std::size_t i = 0; i < m.linear.size(); ++i) {
    for (const auto& c : linear_subst(m.linear[i], x, by).summands()) {
      std::vector<TermPtr> lin = m.linear;
      lin[i] = c;
      out.push_back(Bag(std::move(lin), m.banged));
    }
  }
  // plus the derivative of the banged component joining the linear part
  TermSum dbang = sum_bind(m.banged, [&](const TermPtr& s) { return linear_subst(s, x, by); });
  for (const auto& c : dbang.summands()) {
    std::vector<TermPtr> lin = m.linear;
    lin.push_back(c);
    out.push_back(Bag(std::move(lin), m.banged));
  }
  return BagSum::of(std::move(out));
}

TestSum linear_subst(const TestPtr& m, const std::string& x, const TermPtr& by) {
  if (!is_free_in(x, m)) return TestSum::zero();
  if (std::holds_alternative<Eps>(m->node)) return TestSum::zero();
  if (auto* p = std::get_if<Par>(&m->node)) {
    // Leibniz over the two branches: exactly one occurrence is replaced
    std::vector<TestPtr> out;
    for (const auto& l : linear_subst(p->left, x, by).summands())
      out.push_back(mk_par(l, p->right));
    for (const auto& r : linear_subst(p->right, x, by).summands())
      out.push_back(mk_par(p->left, r));
    return TestSum::of(std::move(out));
  }
  return sum_bind(linear_subst(std::get<Tau>(m->node).subject, x, by),
                  [](const TermPtr& s) { return TestSum(mk_tau(s)); });
}

// ---------------------------------------------------------------------------
// Beta and the test rules

TermSum beta_contract_ordered(const std::string& binder, const TermPtr& body,
                              const std::vector<TermPtr>& linear, const TermSum& banged) {
  TermSum cur(body);
  for (const auto& n : linear)
    cur = sum_bind(cur, [&](const TermPtr& t) { return linear_subst(t, binder, n); });
  return sum_bind(cur, [&](const TermPtr& t) { return subst(t, binder, banged); });
}

TermSum beta_contract(const ast::Abs& abs, const Bag& bag) {
  return beta_contract_ordered(abs.binder, abs.body, bag.linear, bag.banged);
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Beta: return "beta";
    case Rule::Gamma: return "gamma";
    case Rule::TauRule: return "tau";
    case Rule::TauBar1: return "tbar1";
    case Rule::TauBar2: return "tbar2";
    case Rule::EpsRule: return "eps";
    case Rule::Dist: return "dist";
  }
  return "?";
}

namespace {

// Node-local redex contraction; nullopt when the node is not a redex.
std::optional<std::pair<Rule, TermSum>> root_contract(const TermPtr& e) {
  auto* ap = std::get_if<App>(&e->node);
  if (!ap) return std::nullopt;
  if (auto* a = std::get_if<Abs>(&ap->fun->node))
    return std::make_pair(Rule::Beta, beta_contract(*a, ap->arg));
  if (std::holds_alternative<TauBar>(ap->fun->node)) {
    if (ap->arg.linear.empty())
      return std::make_pair(Rule::TauBar1, TermSum(ap->fun));  // argument erased
    return std::make_pair(Rule::TauBar2, TermSum::zero());
  }
  return std::nullopt;
}

std::optional<std::pair<Rule, TestSum>> root_contract(const TestPtr& e) {
  if (auto* t = std::get_if<Tau>(&e->node)) {
    if (auto* tb = std::get_if<TauBar>(&t->subject->node))
      return std::make_pair(Rule::Gamma, TestSum(tb->test));
    if (auto* a = std::get_if<Abs>(&t->subject->node)) {
      TermSum stripped = subst(a->body, a->binder, TermSum::zero());
      return std::make_pair(
          Rule::TauRule,
          sum_bind(stripped, [](const TermPtr& m) { return TestSum(mk_tau(m)); }));
    }
    return std::nullopt;
  }
  if (auto* p = std::get_if<Par>(&e->node)) {
    if (std::holds_alternative<Eps>(p->left->node) &&
        std::holds_alternative<Eps>(p->right->node))
      return std::make_pair(Rule::EpsRule, TestSum(mk_eps()));
  }
  return std::nullopt;
}

}  // namespace

TermSum test_contract(const TermPtr& redex) {
  if (auto r = root_contract(redex); r && r->first != Rule::Beta) return r->second;
  throw std::invalid_argument("not a test-rule redex: " + key(redex));
}

TestSum test_contract(const TestPtr& redex) {
  if (auto r = root_contract(redex)) return r->second;
  throw std::invalid_argument("not a test-rule redex: " + key(redex));
}

// ---------------------------------------------------------------------------
// Outer-head normal forms

namespace {

bool var_headed_onf(const TermPtr& e);

}  // namespace

bool is_onf(const TermPtr& e) {
  TermPtr cur = e;
  while (auto* a = std::get_if<Abs>(&cur->node)) cur = a->body;
  Spine sp = spine_of(cur);
  if (std::holds_alternative<Var>(sp.head->node)) {
    for (const auto& b : sp.bags)
      for (const auto& c : b.linear)
        if (!is_onf(c)) return false;
    return true;
  }
  if (auto* tb = std::get_if<TauBar>(&sp.head->node))
    return sp.bags.empty() && is_onf(tb->test);
  return false;  // abstraction head with at least one bag: a beta redex
}

namespace {

// Variable-headed outer-head normal term with no lambda prefix: the shape a
// normal tau subject must have (tau fires on abstractions, gamma on tbar).
bool var_headed_onf(const TermPtr& e) {
  if (std::holds_alternative<Abs>(e->node)) return false;
  if (std::holds_alternative<TauBar>(e->node)) return false;
  return is_onf(e);
}

}  // namespace

bool is_onf(const TestPtr& e) {
  if (std::holds_alternative<Eps>(e->node)) return true;
  if (auto* p = std::get_if<Par>(&e->node)) {
    if (std::holds_alternative<Eps>(p->left->node) &&
        std::holds_alternative<Eps>(p->right->node))
      return false;  // the literal eps|eps redex
    return is_onf(p->left) && is_onf(p->right);
  }
  return var_headed_onf(std::get<Tau>(e->node).subject);
}

// ---------------------------------------------------------------------------
// Outer-head step

std::string Path::str() const {
  std::string out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i) out += '.';
    out += segs[i];
  }
  return out.empty() ? std::string("root") : out;
}

namespace {

Step<TermPtr> step_term(const TermPtr& e, Path path);
Step<TestPtr> step_test(const TestPtr& e, Path path);

Step<TermPtr> normal_term() {
  Step<TermPtr> st;
  st.normal = true;
  return st;
}
Step<TestPtr> normal_test() {
  Step<TestPtr> st;
  st.normal = true;
  return st;
}

Step<TermPtr> step_term(const TermPtr& e, Path path) {
  if (auto* a = std::get_if<Abs>(&e->node)) {
    Path inner = path;
    inner.segs.push_back("body");
    Step<TermPtr> st = step_term(a->body, std::move(inner));
    if (st.normal) return st;
    Step<TermPtr> out;
    out.rule = st.rule;
    out.path = std::move(st.path);
    out.out = sum_bind(st.out, [&](const TermPtr& b) { return TermSum(mk_abs(a->binder, b)); });
    return out;
  }

  Spine sp = spine_of(e);

  if (std::holds_alternative<Var>(sp.head->node)) {
    if (sp.bags.empty()) return normal_term();
    // head is stable: reduce the leftmost non-normal linear component
    for (std::size_t i = 0; i < sp.bags.size(); ++i) {
      const Bag& b = sp.bags[i];
      for (std::size_t j = 0; j < b.linear.size(); ++j) {
        if (is_onf(b.linear[j])) continue;
        Path inner = path;
        inner.segs.push_back("bag" + std::to_string(i) + ".lin" + std::to_string(j));
        Step<TermPtr> st = step_term(b.linear[j], std::move(inner));
        assert(!st.normal);
        Step<TermPtr> out;
        out.rule = st.rule;
        out.path = std::move(st.path);
        std::vector<TermPtr> pieces;
        for (const auto& c : st.out.summands()) {
          std::vector<TermPtr> lin = b.linear;
          lin[j] = c;
          std::vector<Bag> bags = sp.bags;
          bags[i] = Bag(std::move(lin), b.banged);
          pieces.push_back(spine_build(sp.head, bags));
        }
        out.out = TermSum::of(std::move(pieces));
        return out;
      }
    }
    return normal_term();
  }

  if (auto* tb = std::get_if<TauBar>(&sp.head->node)) {
    if (sp.bags.empty()) {
      if (is_onf(tb->test)) return normal_term();
      Path inner = path;
      inner.segs.push_back("test");
      Step<TestPtr> st = step_test(tb->test, std::move(inner));
      assert(!st.normal);
      Step<TermPtr> out;
      out.rule = st.rule;
      out.path = std::move(st.path);
      out.out = sum_bind(st.out, [](const TestPtr& q) { return TermSum(mk_taubar(q)); });
      return out;
    }
    // tbar1 / tbar2 on the first bag, before anything inside is touched
    Step<TermPtr> out;
    Path at = path;
    for (std::size_t i = 1; i < sp.bags.size(); ++i) at.segs.push_back("fun");
    out.path = std::move(at);
    std::vector<Bag> rest(sp.bags.begin() + 1, sp.bags.end());
    if (sp.bags[0].linear.empty()) {
      out.rule = Rule::TauBar1;
      out.out = TermSum(spine_build(sp.head, rest));
    } else {
      out.rule = Rule::TauBar2;
      out.out = TermSum::zero();  // the application annihilates
    }
    return out;
  }

  // abstraction head: beta on the innermost application
  assert(std::holds_alternative<Abs>(sp.head->node));
  assert(!sp.bags.empty());
  Step<TermPtr> out;
  out.rule = Rule::Beta;
  Path at = path;
  for (std::size_t i = 1; i < sp.bags.size(); ++i) at.segs.push_back("fun");
  out.path = std::move(at);
  TermSum contracted = beta_contract(std::get<Abs>(sp.head->node), sp.bags[0]);
  std::vector<Bag> rest(sp.bags.begin() + 1, sp.bags.end());
  out.out = sum_bind(contracted, [&](const TermPtr& m) {
    return TermSum(spine_build(m, rest));
  });
  return out;
}

Step<TestPtr> step_test(const TestPtr& e, Path path) {
  if (std::holds_alternative<Eps>(e->node)) return normal_test();

  if (auto* t = std::get_if<Tau>(&e->node)) {
    if (auto r = root_contract(e)) {  // gamma or tau at the tau head
      Step<TestPtr> out;
      out.rule = r->first;
      out.path = std::move(path);
      out.out = std::move(r->second);
      return out;
    }
    if (var_headed_onf(t->subject)) return normal_test();
    Path inner = path;
    inner.segs.push_back("subject");
    Step<TermPtr> st = step_term(t->subject, std::move(inner));
    assert(!st.normal);
    Step<TestPtr> out;
    out.rule = st.rule;
    out.path = std::move(st.path);
    out.out = sum_bind(st.out, [](const TermPtr& m) { return TestSum(mk_tau(m)); });
    return out;
  }

  const auto& p = std::get<Par>(e->node);
  if (std::holds_alternative<Eps>(p.left->node) &&
      std::holds_alternative<Eps>(p.right->node)) {
    Step<TestPtr> out;
    out.rule = Rule::EpsRule;
    out.path = std::move(path);
    out.out = TestSum(mk_eps());
    return out;
  }
  if (!is_onf(p.left)) {
    Path inner = path;
    inner.segs.push_back("left");
    Step<TestPtr> st = step_test(p.left, std::move(inner));
    Step<TestPtr> out;
    out.rule = st.rule;
    out.path = std::move(st.path);
    out.out = sum_bind(st.out, [&](const TestPtr& l) { return TestSum(mk_par(l, p.right)); });
    return out;
  }
  if (!is_onf(p.right)) {
    Path inner = path;
    inner.segs.push_back("right");
    Step<TestPtr> st = step_test(p.right, std::move(inner));
    Step<TestPtr> out;
    out.rule = st.rule;
    out.path = std::move(st.path);
    out.out = sum_bind(st.out, [&](const TestPtr& r) { return TestSum(mk_par(p.left, r)); });
    return out;
  }
  return normal_test();
}

}  // namespace

Step<TermPtr> outer_head_step(const TermPtr& e) { return step_term(e, Path{}); }
Step<TestPtr> outer_head_step(const TestPtr& e) { return step_test(e, Path{}); }

// ---------------------------------------------------------------------------
// Reduction driver

template <class P>
Outcome<P> reduce(const ast::Sum<P>& s, int fuel, Trace<P>* trace) {
  std::deque<P> queue;
  for (const auto& e : s.summands()) {
    if (is_onf(e)) {
      Outcome<P> out;
      out.status = Status::Converged;
      out.witness = e;
      out.steps = 0;
      out.frontier = s;
      return out;
    }
    queue.push_back(e);
  }

  int steps = 0;
  while (!queue.empty()) {
    if (steps >= fuel) {
      Outcome<P> out;
      out.status = Status::FuelExhausted;
      out.steps = steps;
      out.frontier = ast::Sum<P>::of({queue.begin(), queue.end()});
      return out;
    }
    P e = queue.front();
    queue.pop_front();
    Step<P> st = outer_head_step(e);
    assert(!st.normal);
    ++steps;
    if (trace) {
      TraceStep<P> ts;
      ts.index = steps;
      ts.rule = st.rule;
      ts.path = st.path;
      ts.before = e;
      ts.after = st.out;
      trace->push_back(std::move(ts));
    }
    std::optional<P> witness;
    for (const auto& n : st.out.summands()) {
      queue.push_back(n);
      if (!witness && is_onf(n)) witness = n;
    }
    if (witness) {
      Outcome<P> out;
      out.status = Status::Converged;
      out.witness = witness;
      out.steps = steps;
      out.frontier = ast::Sum<P>::of({queue.begin(), queue.end()});
      return out;
    }
  }

  Outcome<P> out;
  out.status = Status::Zero;
  out.steps = steps;
  return out;
}

template Outcome<TermPtr> reduce<TermPtr>(const TermSum&, int, Trace<TermPtr>*);
template Outcome<TestPtr> reduce<TestPtr>(const TestSum&, int, Trace<TestPtr>*);

template <class P>
ast::Sum<P> replay(const ast::Sum<P>& start, const Trace<P>& trace) {
  std::deque<P> queue;
  for (const auto& e : start.summands())
    if (!is_onf(e)) queue.push_back(e);
  if (queue.size() != start.size()) return start;  // converged without steps
  for (const auto& ts : trace) {
    if (queue.empty()) throw std::invalid_argument("trace longer than reduction");
    P e = queue.front();
    queue.pop_front();
    if (!alpha_eq(e, ts.before))
      throw std::invalid_argument("trace mismatch at step " + std::to_string(ts.index));
    for (const auto& n : ts.after.summands()) queue.push_back(n);
  }
  return ast::Sum<P>::of({queue.begin(), queue.end()});
}

template TermSum replay<TermPtr>(const TermSum&, const Trace<TermPtr>&);
template TestSum replay<TestPtr>(const TestSum&, const Trace<TestPtr>&);

template <class P>
Convergence converges(const ast::Sum<P>& s, int fuel) {
  Outcome<P> out = reduce(s, fuel);
  Convergence c;
  switch (out.status) {
    case Status::Converged:
      c.verdict = Conv::Yes;
      c.steps = out.steps;
      break;
    case Status::Zero:
      c.verdict = Conv::No;
      c.steps = out.steps;
      break;
    case Status::FuelExhausted:
      c.verdict = Conv::Unknown;
      break;
  }
  return c;
}

template Convergence converges<TermPtr>(const TermSum&, int);
template Convergence converges<TestPtr>(const TestSum&, int);

// ---------------------------------------------------------------------------
// Full normalization

namespace {

bool fully_normal_bag(const Bag& b);

}  // namespace

bool fully_normal(const TermPtr& e) {
  if (root_contract(e)) return false;
  if (auto* a = std::get_if<Abs>(&e->node)) return fully_normal(a->body);
  if (auto* ap = std::get_if<App>(&e->node))
    return fully_normal(ap->fun) && fully_normal_bag(ap->arg);
  if (auto* tb = std::get_if<TauBar>(&e->node)) return fully_normal(tb->test);
  return true;
}

bool fully_normal(const TestPtr& e) {
  if (root_contract(e)) return false;
  if (auto* p = std::get_if<Par>(&e->node))
    return fully_normal(p->left) && fully_normal(p->right);
  if (auto* t = std::get_if<Tau>(&e->node)) return fully_normal(t->subject);
  return true;
}

namespace {

bool fully_normal_bag(const Bag& b) {
  for (const auto& c : b.linear)
    if (!fully_normal(c)) return false;
  for (const auto& c : b.banged.summands())
    if (!fully_normal(c)) return false;
  return true;
}

// Contracts one redex inside the bag (order per strategy); nullopt if none.
std::optional<BagSum> contract_one_bag(const Bag& b, Strategy s);

std::optional<TermSum> contract_children(const TermPtr& e, Strategy s);
std::optional<TestSum> contract_children(const TestPtr& e, Strategy s);

// Generic one-redex contraction. OuterFirst prefers the node redex, then
// children left to right; RightmostInnermost walks children right to left
// before the node.
std::optional<TermSum> contract_generic(const TermPtr& e, Strategy s) {
  if (s == Strategy::OuterFirst) {
    if (auto r = root_contract(e)) return r->second;
    return contract_children(e, s);
  }
  if (auto r = contract_children(e, s)) return r;
  if (auto r = root_contract(e)) return r->second;
  return std::nullopt;
}

std::optional<TestSum> contract_generic(const TestPtr& e, Strategy s) {
  if (s == Strategy::OuterFirst) {
    if (auto r = root_contract(e)) return r->second;
    return contract_children(e, s);
  }
  if (auto r = contract_children(e, s)) return r;
  if (auto r = root_contract(e)) return r->second;
  return std::nullopt;
}

std::optional<TermSum> contract_children(const TermPtr& e, Strategy s) {
  if (auto* a = std::get_if<Abs>(&e->node)) {
    if (auto r = contract_generic(a->body, s))
      return sum_bind(*r, [&](const TermPtr& b) { return TermSum(mk_abs(a->binder, b)); });
    return std::nullopt;
  }
  if (auto* ap = std::get_if<App>(&e->node)) {
    auto try_fun = [&]() -> std::optional<TermSum> {
      if (auto r = contract_generic(ap->fun, s))
        return sum_bind(*r, [&](const TermPtr& f) { return TermSum(mk_app(f, ap->arg)); });
      return std::nullopt;
    };
    auto try_arg = [&]() -> std::optional<TermSum> {
      if (auto r = contract_one_bag(ap->arg, s))
        return sum_bind(*r, [&](const Bag& b) { return TermSum(mk_app(ap->fun, b)); });
      return std::nullopt;
    };
    if (s == Strategy::OuterFirst) {
      if (auto r = try_fun()) return r;
      return try_arg();
    }
    if (auto r = try_arg()) return r;
    return try_fun();
  }
  if (auto* tb = std::get_if<TauBar>(&e->node)) {
    if (auto r = contract_generic(tb->test, s))
      return sum_bind(*r, [](const TestPtr& q) { return TermSum(mk_taubar(q)); });
    return std::nullopt;
  }
  return std::nullopt;  // variable
}

std::optional<TestSum> contract_children(const TestPtr& e, Strategy s) {
  if (auto* p = std::get_if<Par>(&e->node)) {
    auto try_left = [&]() -> std::optional<TestSum> {
      if (auto r = contract_generic(p->left, s))
        return sum_bind(*r, [&](const TestPtr& l) { return TestSum(mk_par(l, p->right)); });
      return std::nullopt;
    };
    auto try_right = [&]() -> std::optional<TestSum> {
      if (auto r = contract_generic(p->right, s))
        return sum_bind(*r, [&](const TestPtr& q) { return TestSum(mk_par(p->left, q)); });
      return std::nullopt;
    };
    if (s == Strategy::OuterFirst) {
      if (auto r = try_left()) return r;
      return try_right();
    }
    if (auto r = try_right()) return r;
    return try_left();
  }
  if (auto* t = std::get_if<Tau>(&e->node)) {
    if (auto r = contract_generic(t->subject, s))
      return sum_bind(*r, [](const TermPtr& m) { return TestSum(mk_tau(m)); });
    return std::nullopt;
  }
  return std::nullopt;  // eps
}

std::optional<BagSum> contract_one_bag(const Bag& b, Strategy s) {
  auto on_linear = [&](std::size_t j) -> std::optional<BagSum> {
    if (auto r = contract_generic(b.linear[j], s)) {
      std::vector<Bag> out;
      for (const auto& c : r->summands()) {
        std::vector<TermPtr> lin = b.linear;
        lin[j] = c;
        out.push_back(Bag(std::move(lin), b.banged));
      }
      return BagSum::of(std::move(out));
    }
    return std::nullopt;
  };
  auto on_banged = [&](std::size_t j) -> std::optional<BagSum> {
    const auto& xs = b.banged.summands();
    if (auto r = contract_generic(xs[j], s)) {
      std::vector<TermPtr> rest;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (i != j) rest.push_back(xs[i]);
      TermSum nb = sum_union(TermSum::of(std::move(rest)), *r);
      return BagSum(Bag(b.linear, std::move(nb)));
    }
    return std::nullopt;
  };
  if (s == Strategy::OuterFirst) {
    for (std::size_t j = 0; j < b.linear.size(); ++j)
      if (auto r = on_linear(j)) return r;
    for (std::size_t j = 0; j < b.banged.size(); ++j)
      if (auto r = on_banged(j)) return r;
  } else {
    for (std::size_t j = b.banged.size(); j-- > 0;)
      if (auto r = on_banged(j)) return r;
    for (std::size_t j = b.linear.size(); j-- > 0;)
      if (auto r = on_linear(j)) return r;
  }
  return std::nullopt;
}

}  // namespace

std::optional<TermSum> contract_one(const TermPtr& e, Strategy s) {
  return contract_generic(e, s);
}
std::optional<TestSum> contract_one(const TestPtr& e, Strategy s) {
  return contract_generic(e, s);
}

template <class P>
NormalizeResult<P> normalize_full(const ast::Sum<P>& s, int fuel, Strategy strat,
                                  std::size_t max_sum) {
  std::deque<P> pending(s.summands().begin(), s.summands().end());
  std::vector<P> done;
  int steps = 0;
  while (!pending.empty()) {
    if (steps >= fuel || pending.size() + done.size() > max_sum) {
      NormalizeResult<P> out;
      out.complete = false;
      out.steps = steps;
      std::vector<P> all = done;
      all.insert(all.end(), pending.begin(), pending.end());
      out.result = ast::Sum<P>::of(std::move(all));
      return out;
    }
    P e = pending.front();
    pending.pop_front();
    if (auto r = contract_one(e, strat)) {
      ++steps;
      for (const auto& n : r->summands()) pending.push_back(n);
    } else {
      done.push_back(e);
    }
  }
  NormalizeResult<P> out;
  out.complete = true;
  out.steps = steps;
  out.result = ast::Sum<P>::of(std::move(done));
  return out;
}

template NormalizeResult<TermPtr> normalize_full<TermPtr>(const TermSum&, int, Strategy, std::size_t);
template NormalizeResult<TestPtr> normalize_full<TestPtr>(const TestSum&, int, Strategy, std::size_t);

template <class P>
ast::Sum<P> trajectory_step(const ast::Sum<P>& s) {
  std::vector<ast::Sum<P>> parts;
  parts.reserve(s.size());
  for (const auto& e : s.summands()) {
    if (auto r = contract_one(e, Strategy::OuterFirst))
      parts.push_back(*r);
    else
      parts.push_back(ast::Sum<P>(e));
  }
  return sum_union(std::move(parts));
}

template TermSum trajectory_step<TermPtr>(const TermSum&);
template TestSum trajectory_step<TestPtr>(const TestSum&);

template <class P>
JoinResult joinable(const ast::Sum<P>& a, const ast::Sum<P>& b, int max_steps) {
  std::vector<std::string> akeys{key(a)}, bkeys{key(b)};
  ast::Sum<P> ca = a, cb = b;
  for (int i = 0;; ++i) {
    for (std::size_t sa = 0; sa < akeys.size(); ++sa)
      for (std::size_t sb = 0; sb < bkeys.size(); ++sb)
        if (akeys[sa] == bkeys[sb]) return {true, static_cast<int>(sa), static_cast<int>(sb)};
    if (i >= max_steps) return {false, 0, 0};
    ast::Sum<P> na = trajectory_step(ca);
    ast::Sum<P> nb = trajectory_step(cb);
    std::string ka = key(na), kb = key(nb);
    bool stuck_a = ka == akeys.back();
    bool stuck_b = kb == bkeys.back();
    if (stuck_a && stuck_b) return {ka == kb, i, i};
    akeys.push_back(std::move(ka));
    bkeys.push_back(std::move(kb));
    ca = std::move(na);
    cb = std::move(nb);
  }
}

template JoinResult joinable<TermPtr>(const TermSum&, const TermSum&, int);
template JoinResult joinable<TestPtr>(const TestSum&, const TestSum&, int);

// ---------------------------------------------------------------------------
// Par helpers

std::vector<TestPtr> par_leaves(const TestPtr& t) {
  if (auto* p = std::get_if<Par>(&t->node)) {
    std::vector<TestPtr> out = par_leaves(p->left);
    std::vector<TestPtr> r = par_leaves(p->right);
    out.insert(out.end(), r.begin(), r.end());
    return out;
  }
  return {t};
}

TestPtr par_right_nested(const std::vector<TestPtr>& leaves) {
  if (leaves.empty()) return mk_eps();
  TestPtr acc = leaves.back();
  for (std::size_t i = leaves.size() - 1; i-- > 0;) acc = mk_par(leaves[i], acc);
  return acc;
}

}  // namespace rlc::rewrite
