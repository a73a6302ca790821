#include "rlc/ast.hpp"

#include <cassert>

namespace rlc::ast {

namespace {

std::vector<std::string> merge_names(std::vector<std::string> a,
                                     const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<std::string> erase_name(std::vector<std::string> xs, const std::string& x) {
  xs.erase(std::remove(xs.begin(), xs.end(), x), xs.end());
  return xs;
}

std::vector<std::string> bag_free(const Bag& b) {
  std::vector<std::string> acc;
  for (const auto& t : b.linear) acc = merge_names(std::move(acc), t->free);
  for (const auto& t : b.banged.summands()) acc = merge_names(std::move(acc), t->free);
  return acc;
}

}  // namespace

Bag::Bag(std::vector<TermPtr> lin, TermSum bang) : banged(std::move(bang)) {
  std::sort(lin.begin(), lin.end(),
            [](const TermPtr& a, const TermPtr& b) { return compare(a, b) < 0; });
  linear = std::move(lin);
}

Term::Term(std::variant<Var, Abs, App, TauBar> n) : node(std::move(n)) {
  if (auto* v = std::get_if<Var>(&node)) {
    free = {v->name};
  } else if (auto* a = std::get_if<Abs>(&node)) {
    free = erase_name(a->body->free, a->binder);
  } else if (auto* ap = std::get_if<App>(&node)) {
    free = merge_names(ap->fun->free, bag_free(ap->arg));
  } else {
    free = std::get<TauBar>(node).test->free;
  }
}

Test::Test(std::variant<Eps, Par, Tau> n) : node(std::move(n)) {
  if (std::holds_alternative<Eps>(node)) {
    free = {};
  } else if (auto* p = std::get_if<Par>(&node)) {
    free = merge_names(p->left->free, p->right->free);
  } else {
    free = std::get<Tau>(node).subject->free;
  }
}

TermPtr mk_var(std::string name) { return std::make_shared<const Term>(Var{std::move(name)}); }
TermPtr mk_abs(std::string binder, TermPtr body) {
  return std::make_shared<const Term>(Abs{std::move(binder), std::move(body)});
}
TermPtr mk_app(TermPtr fun, Bag arg) {
  return std::make_shared<const Term>(App{std::move(fun), std::move(arg)});
}
TermPtr mk_taubar(TestPtr test) { return std::make_shared<const Term>(TauBar{std::move(test)}); }
TestPtr mk_eps() { return std::make_shared<const Test>(Eps{}); }
TestPtr mk_par(TestPtr l, TestPtr r) {
  return std::make_shared<const Test>(Par{std::move(l), std::move(r)});
}
TestPtr mk_tau(TermPtr subject) { return std::make_shared<const Test>(Tau{std::move(subject)}); }

Bag bang(TermPtr m) { return Bag({}, TermSum(std::move(m))); }
Bag bag_of(std::vector<TermPtr> linear, TermPtr banged) {
  return Bag(std::move(linear), TermSum(std::move(banged)));
}

const std::vector<std::string>& free_vars(const TermPtr& t) { return t->free; }
const std::vector<std::string>& free_vars(const TestPtr& t) { return t->free; }
std::vector<std::string> free_vars(const Bag& b) { return bag_free(b); }

bool is_free_in(const std::string& x, const TermPtr& t) {
  return std::binary_search(t->free.begin(), t->free.end(), x);
}
bool is_free_in(const std::string& x, const TestPtr& t) {
  return std::binary_search(t->free.begin(), t->free.end(), x);
}
bool is_free_in(const std::string& x, const Bag& b) {
  for (const auto& m : b.linear)
    if (is_free_in(x, m)) return true;
  return is_free_in(x, b.banged);
}

bool is_closed(const TermPtr& t) { return t->free.empty(); }

std::string fresh_name(const std::string& hint, const std::set<std::string>& avoid) {
  if (!avoid.count(hint)) return hint;
  for (unsigned long i = 1;; ++i) {
    std::string cand = hint + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

// Bound variables render as their distance from the binder; free ones keep
// their name. Env is the stack of binders in scope.
struct KeyEnv {
  std::vector<std::string> binders;

  std::optional<std::size_t> lookup(const std::string& x) const {
    for (std::size_t i = binders.size(); i-- > 0;)
      if (binders[i] == x) return binders.size() - 1 - i;
    return std::nullopt;
  }
};

void key_term(const TermPtr& t, KeyEnv& env, std::string& out);
void key_test(const TestPtr& t, KeyEnv& env, std::string& out);

void key_term_sum(const TermSum& s, KeyEnv& env, std::string& out) {
  std::vector<std::string> ks;
  ks.reserve(s.size());
  for (const auto& e : s.summands()) {
    std::string k;
    key_term(e, env, k);
    ks.push_back(std::move(k));
  }
  std::sort(ks.begin(), ks.end());
  out += "S(";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ',';
    out += ks[i];
  }
  out += ')';
}

void key_bag(const Bag& b, KeyEnv& env, std::string& out) {
  std::vector<std::string> ks;
  ks.reserve(b.linear.size());
  for (const auto& m : b.linear) {
    std::string k;
    key_term(m, env, k);
    ks.push_back(std::move(k));
  }
  std::sort(ks.begin(), ks.end());
  out += "G(";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ',';
    out += ks[i];
  }
  out += ';';
  key_term_sum(b.banged, env, out);
  out += ')';
}

void key_term(const TermPtr& t, KeyEnv& env, std::string& out) {
  if (auto* v = std::get_if<Var>(&t->node)) {
    if (auto ix = env.lookup(v->name)) {
      out += 'B';
      out += std::to_string(*ix);
    } else {
      out += 'F';
      out += v->name;
      out += '.';
    }
  } else if (auto* a = std::get_if<Abs>(&t->node)) {
    out += "L(";
    env.binders.push_back(a->binder);
    key_term(a->body, env, out);
    env.binders.pop_back();
    out += ')';
  } else if (auto* ap = std::get_if<App>(&t->node)) {
    out += "A(";
    key_term(ap->fun, env, out);
    out += ',';
    key_bag(ap->arg, env, out);
    out += ')';
  } else {
    out += "T(";
    key_test(std::get<TauBar>(t->node).test, env, out);
    out += ')';
  }
}

void key_test(const TestPtr& t, KeyEnv& env, std::string& out) {
  if (std::holds_alternative<Eps>(t->node)) {
    out += 'E';
  } else if (auto* p = std::get_if<Par>(&t->node)) {
    out += "P(";
    key_test(p->left, env, out);
    out += ',';
    key_test(p->right, env, out);
    out += ')';
  } else {
    out += "U(";
    key_term(std::get<Tau>(t->node).subject, env, out);
    out += ')';
  }
}

}  // namespace

std::string key(const TermPtr& t) {
  KeyEnv env;
  std::string out;
  key_term(t, env, out);
  return out;
}
std::string key(const TestPtr& t) {
  KeyEnv env;
  std::string out;
  key_test(t, env, out);
  return out;
}
std::string key(const Bag& b) {
  KeyEnv env;
  std::string out;
  key_bag(b, env, out);
  return out;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  return a == b || key(a) == key(b);
}
bool alpha_eq(const TestPtr& a, const TestPtr& b) {
  return a == b || key(a) == key(b);
}
bool alpha_eq(const Bag& a, const Bag& b) { return key(a) == key(b); }

// ---------------------------------------------------------------------------
// Structural order (sees binder names; used as canonical-order tiebreak)

namespace {

int cmp_str(const std::string& a, const std::string& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int cmp_term(const TermPtr& a, const TermPtr& b);
int cmp_test(const TestPtr& a, const TestPtr& b);

int cmp_term_sum(const TermSum& a, const TermSum& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = cmp_term(a.summands()[i], b.summands()[i]); c != 0) return c;
  return 0;
}

int cmp_bag(const Bag& a, const Bag& b) {
  if (a.linear.size() != b.linear.size()) return a.linear.size() < b.linear.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.linear.size(); ++i)
    if (int c = cmp_term(a.linear[i], b.linear[i]); c != 0) return c;
  return cmp_term_sum(a.banged, b.banged);
}

int cmp_term(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  if (a->node.index() != b->node.index())
    return a->node.index() < b->node.index() ? -1 : 1;
  if (auto* v = std::get_if<Var>(&a->node)) return cmp_str(v->name, std::get<Var>(b->node).name);
  if (auto* ab = std::get_if<Abs>(&a->node)) {
    const auto& bb = std::get<Abs>(b->node);
    if (int c = cmp_str(ab->binder, bb.binder); c != 0) return c;
    return cmp_term(ab->body, bb.body);
  }
  if (auto* ap = std::get_if<App>(&a->node)) {
    const auto& bp = std::get<App>(b->node);
    if (int c = cmp_term(ap->fun, bp.fun); c != 0) return c;
    return cmp_bag(ap->arg, bp.arg);
  }
  return cmp_test(std::get<TauBar>(a->node).test, std::get<TauBar>(b->node).test);
}

int cmp_test(const TestPtr& a, const TestPtr& b) {
  if (a == b) return 0;
  if (a->node.index() != b->node.index())
    return a->node.index() < b->node.index() ? -1 : 1;
  if (std::holds_alternative<Eps>(a->node)) return 0;
  if (auto* p = std::get_if<Par>(&a->node)) {
    const auto& q = std::get<Par>(b->node);
    if (int c = cmp_test(p->left, q.left); c != 0) return c;
    return cmp_test(p->right, q.right);
  }
  return cmp_term(std::get<Tau>(a->node).subject, std::get<Tau>(b->node).subject);
}

}  // namespace

int compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  if (int c = cmp_str(key(a), key(b)); c != 0) return c;
  return cmp_term(a, b);
}
int compare(const TestPtr& a, const TestPtr& b) {
  if (a == b) return 0;
  if (int c = cmp_str(key(a), key(b)); c != 0) return c;
  return cmp_test(a, b);
}
int compare(const Bag& a, const Bag& b) {
  if (int c = cmp_str(key(a), key(b)); c != 0) return c;
  return cmp_bag(a, b);
}

// ---------------------------------------------------------------------------
// Spines and sizes

Spine spine_of(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  std::vector<Bag> rev;
  while (auto* ap = std::get_if<App>(&cur->node)) {
    rev.push_back(ap->arg);
    cur = ap->fun;
  }
  s.head = cur;
  s.bags.assign(rev.rbegin(), rev.rend());
  return s;
}

TermPtr spine_build(TermPtr head, const std::vector<Bag>& bags) {
  TermPtr cur = std::move(head);
  for (const auto& b : bags) cur = mk_app(cur, b);
  return cur;
}

std::size_t size_of(const Bag& b) {
  std::size_t n = 1;
  for (const auto& m : b.linear) n += size_of(m);
  for (const auto& m : b.banged.summands()) n += size_of(m);
  return n;
}

std::size_t size_of(const TermPtr& t) {
  if (std::holds_alternative<Var>(t->node)) return 1;
  if (auto* a = std::get_if<Abs>(&t->node)) return 1 + size_of(a->body);
  if (auto* ap = std::get_if<App>(&t->node)) return 1 + size_of(ap->fun) + size_of(ap->arg);
  return 1 + size_of(std::get<TauBar>(t->node).test);
}

std::size_t size_of(const TestPtr& t) {
  if (std::holds_alternative<Eps>(t->node)) return 1;
  if (auto* p = std::get_if<Par>(&t->node))
    return 1 + size_of(p->left) + size_of(p->right);
  return 1 + size_of(std::get<Tau>(t->node).subject);
}

}  // namespace rlc::ast
