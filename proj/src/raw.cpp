#include "rlc/raw.hpp"

namespace rlc::raw {

using namespace rlc::ast;

RawPtr rvar(std::string name) { return std::make_shared<const Raw>(K::Var, std::move(name), std::vector<RawPtr>{}); }
RawPtr rabs(std::string binder, RawPtr body) {
  return std::make_shared<const Raw>(K::Abs, std::move(binder), std::vector<RawPtr>{std::move(body)});
}
RawPtr rapp(RawPtr fun, RawPtr arg) {
  return std::make_shared<const Raw>(K::App, "", std::vector<RawPtr>{std::move(fun), std::move(arg)});
}
RawPtr rtaubar(RawPtr test) {
  return std::make_shared<const Raw>(K::TauBar, "", std::vector<RawPtr>{std::move(test)});
}
RawPtr reps() { return std::make_shared<const Raw>(K::Eps, "", std::vector<RawPtr>{}); }
RawPtr rpar(RawPtr l, RawPtr r) {
  return std::make_shared<const Raw>(K::Par, "", std::vector<RawPtr>{std::move(l), std::move(r)});
}
RawPtr rtau(RawPtr subject) {
  return std::make_shared<const Raw>(K::Tau, "", std::vector<RawPtr>{std::move(subject)});
}
RawPtr rzero() { return std::make_shared<const Raw>(K::Zero, "", std::vector<RawPtr>{}); }
RawPtr rsum(std::vector<RawPtr> kids) {
  return std::make_shared<const Raw>(K::Sum, "", std::move(kids));
}
RawPtr rbag(std::vector<RawPtr> linear, RawPtr banged) {
  return std::make_shared<const Raw>(K::Bag, "", std::move(linear), std::move(banged));
}
RawPtr rhole() { return std::make_shared<const Raw>(K::Hole, "", std::vector<RawPtr>{}); }

RawPtr raw_of(const ast::TermPtr& t) {
  if (auto* v = std::get_if<ast::Var>(&t->node)) return rvar(v->name);
  if (auto* a = std::get_if<ast::Abs>(&t->node)) return rabs(a->binder, raw_of(a->body));
  if (auto* ap = std::get_if<ast::App>(&t->node)) return rapp(raw_of(ap->fun), raw_of(ap->arg));
  return rtaubar(raw_of(std::get<ast::TauBar>(t->node).test));
}

RawPtr raw_of(const ast::TestPtr& t) {
  if (std::holds_alternative<ast::Eps>(t->node)) return reps();
  if (auto* p = std::get_if<ast::Par>(&t->node)) return rpar(raw_of(p->left), raw_of(p->right));
  return rtau(raw_of(std::get<ast::Tau>(t->node).subject));
}

RawPtr raw_of(const ast::Bag& b) {
  std::vector<RawPtr> lin;
  lin.reserve(b.linear.size());
  for (const auto& m : b.linear) lin.push_back(raw_of(m));
  return rbag(std::move(lin), raw_of(b.banged));
}

RawPtr raw_of(const ast::TermSum& s) {
  if (s.is_zero()) return rzero();
  if (s.size() == 1) return raw_of(s.summands()[0]);
  std::vector<RawPtr> kids;
  for (const auto& e : s.summands()) kids.push_back(raw_of(e));
  return rsum(std::move(kids));
}

RawPtr raw_of(const ast::TestSum& s) {
  if (s.is_zero()) return rzero();
  if (s.size() == 1) return raw_of(s.summands()[0]);
  std::vector<RawPtr> kids;
  for (const auto& e : s.summands()) kids.push_back(raw_of(e));
  return rsum(std::move(kids));
}

Kind infer_kind(const RawPtr& r) {
  switch (r->k) {
    case K::Var:
    case K::Abs:
    case K::App:
    case K::TauBar:
      return Kind::Term;
    case K::Eps:
    case K::Par:
    case K::Tau:
      return Kind::Test;
    case K::Bag:
      return Kind::Bag;
    case K::Zero:
      return Kind::Term;  // ambiguous; the zero of every kind prints alike
    case K::Sum: {
      for (const auto& kid : r->kids)
        if (kid->k != K::Zero) return infer_kind(kid);
      return Kind::Term;
    }
    case K::Hole:
      throw StructuralError("context hole encountered outside plugging");
  }
  throw StructuralError("corrupt raw node");
}

namespace {

[[noreturn]] void bad(const char* what, K k) {
  static const char* names[] = {"variable", "abstraction", "application", "tbar",
                                "eps",      "par",         "tau",         "0",
                                "sum",      "bag",         "hole"};
  throw StructuralError(std::string("expected ") + what + ", got " +
                        names[static_cast<int>(k)]);
}

// Cartesian product over the per-slot summand choices.
template <class P, class F>
void cartesian(const std::vector<Sum<P>>& parts, std::vector<P>& cur, F&& emit) {
  if (cur.size() == parts.size()) {
    emit(cur);
    return;
  }
  for (const auto& choice : parts[cur.size()].summands()) {
    cur.push_back(choice);
    cartesian(parts, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

ast::TermSum norm_term(const RawPtr& r) {
  switch (r->k) {
    case K::Var:
      return TermSum(mk_var(r->name));
    case K::Abs: {
      return sum_bind(norm_term(r->kids[0]), [&](const TermPtr& b) {
        return TermSum(mk_abs(r->name, b));
      });
    }
    case K::App: {
      TermSum funs = norm_term(r->kids[0]);
      BagSum args = norm_bag(r->kids[1]);
      std::vector<TermPtr> out;
      for (const auto& f : funs.summands())
        for (const auto& b : args.summands()) out.push_back(mk_app(f, b));
      return TermSum::of(std::move(out));
    }
    case K::TauBar:
      return sum_bind(norm_test(r->kids[0]),
                      [](const TestPtr& q) { return TermSum(mk_taubar(q)); });
    case K::Zero:
      return TermSum::zero();
    case K::Sum: {
      std::vector<TermSum> parts;
      for (const auto& kid : r->kids) parts.push_back(norm_term(kid));
      return sum_union(std::move(parts));
    }
    default:
      bad("a term", r->k);
  }
}

ast::BagSum norm_bag(const RawPtr& r) {
  switch (r->k) {
    case K::Bag: {
      if (!r->banged) throw StructuralError("bag without a banged component");
      std::vector<TermSum> lin;
      lin.reserve(r->kids.size());
      for (const auto& kid : r->kids) lin.push_back(norm_term(kid));
      TermSum bangsum = norm_term(r->banged);  // kept whole: no distribution
      std::vector<Bag> out;
      std::vector<TermPtr> cur;
      cartesian(lin, cur, [&](const std::vector<TermPtr>& choice) {
        out.push_back(Bag(choice, bangsum));
      });
      return BagSum::of(std::move(out));
    }
    case K::Zero:
      return BagSum::zero();
    case K::Sum: {
      std::vector<BagSum> parts;
      for (const auto& kid : r->kids) parts.push_back(norm_bag(kid));
      return sum_union(std::move(parts));
    }
    default:
      bad("a bag", r->k);
  }
}

ast::TestSum norm_test(const RawPtr& r) {
  switch (r->k) {
    case K::Eps:
      return TestSum(mk_eps());
    case K::Par: {
      TestSum ls = norm_test(r->kids[0]);
      TestSum rs = norm_test(r->kids[1]);
      std::vector<TestPtr> out;
      for (const auto& l : ls.summands())
        for (const auto& q : rs.summands()) out.push_back(mk_par(l, q));
      return TestSum::of(std::move(out));
    }
    case K::Tau:
      return sum_bind(norm_term(r->kids[0]),
                      [](const TermPtr& m) { return TestSum(mk_tau(m)); });
    case K::Zero:
      return TestSum::zero();
    case K::Sum: {
      std::vector<TestSum> parts;
      for (const auto& kid : r->kids) parts.push_back(norm_test(kid));
      return sum_union(std::move(parts));
    }
    default:
      bad("a test", r->k);
  }
}

Normalized sum_normalize(const RawPtr& r) {
  switch (infer_kind(r)) {
    case Kind::Term:
      return norm_term(r);
    case Kind::Bag:
      return norm_bag(r);
    case Kind::Test:
      return norm_test(r);
  }
  throw StructuralError("corrupt raw node");
}

std::size_t hole_count(const RawPtr& r) {
  if (r->k == K::Hole) return 1;
  std::size_t n = 0;
  for (const auto& kid : r->kids) n += hole_count(kid);
  if (r->banged) n += hole_count(r->banged);
  return n;
}

RawPtr plug_raw(const RawPtr& ctx, const RawPtr& filler) {
  if (ctx->k == K::Hole) return filler;
  std::vector<RawPtr> kids;
  kids.reserve(ctx->kids.size());
  for (const auto& kid : ctx->kids) kids.push_back(plug_raw(kid, filler));
  RawPtr bg = ctx->banged ? plug_raw(ctx->banged, filler) : nullptr;
  return std::make_shared<const Raw>(ctx->k, ctx->name, std::move(kids), std::move(bg));
}

}  // namespace rlc::raw
