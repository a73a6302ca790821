#pragma once

// Slow clause-by-clause interpreter for linear substitution, kept independent
// of the engine: it rewrites the displayed equations literally, building raw
// trees with explicit sum nodes and distributing only at the very end. The
// engine distributes eagerly, so agreement of the two routes is meaningful.

#include "rlc/ast.hpp"
#include "rlc/raw.hpp"

namespace oracle {

using namespace rlc;

// Capture is not handled: callers must pick `by` with names disjoint from the
// binders of `m`.
inline raw::RawPtr slow_lsub(const ast::TermPtr& m, const std::string& x,
                             const ast::TermPtr& by);
inline raw::RawPtr slow_lsub_test(const ast::TestPtr& m, const std::string& x,
                                  const ast::TermPtr& by);

inline raw::RawPtr slow_lsub_bag(const ast::Bag& b, const std::string& x,
                                 const ast::TermPtr& by) {
  using namespace raw;
  std::vector<RawPtr> parts;
  for (std::size_t i = 0; i < b.linear.size(); ++i) {
    std::vector<RawPtr> lin;
    for (std::size_t j = 0; j < b.linear.size(); ++j)
      lin.push_back(j == i ? slow_lsub(b.linear[j], x, by) : raw_of(b.linear[j]));
    parts.push_back(rbag(std::move(lin), raw_of(b.banged)));
  }
  // derivative of the banged component joins the linear part
  std::vector<RawPtr> dsum;
  for (const auto& s : b.banged.summands()) dsum.push_back(slow_lsub(s, x, by));
  std::vector<RawPtr> lin;
  for (const auto& c : b.linear) lin.push_back(raw_of(c));
  lin.push_back(rsum(std::move(dsum)));
  parts.push_back(rbag(std::move(lin), raw_of(b.banged)));
  return rsum(std::move(parts));
}

inline raw::RawPtr slow_lsub(const ast::TermPtr& m, const std::string& x,
                             const ast::TermPtr& by) {
  using namespace ast;
  using namespace raw;
  if (auto* v = std::get_if<Var>(&m->node))
    return v->name == x ? raw_of(by) : rzero();
  if (auto* a = std::get_if<Abs>(&m->node))
    return rabs(a->binder, slow_lsub(a->body, x, by));
  if (auto* ap = std::get_if<App>(&m->node))
    return rsum({rapp(slow_lsub(ap->fun, x, by), raw_of(ap->arg)),
                 rapp(raw_of(ap->fun), slow_lsub_bag(ap->arg, x, by))});
  return rtaubar(slow_lsub_test(std::get<TauBar>(m->node).test, x, by));
}

inline raw::RawPtr slow_lsub_test(const ast::TestPtr& m, const std::string& x,
                                  const ast::TermPtr& by) {
  using namespace ast;
  using namespace raw;
  if (std::holds_alternative<Eps>(m->node)) return rzero();
  if (auto* p = std::get_if<Par>(&m->node))
    return rsum({rpar(slow_lsub_test(p->left, x, by), raw_of(p->right)),
                 rpar(raw_of(p->left), slow_lsub_test(p->right, x, by))});
  return rtau(slow_lsub(std::get<Tau>(m->node).subject, x, by));
}

inline ast::TermSum slow_linear_subst(const ast::TermPtr& m, const std::string& x,
                                      const ast::TermPtr& by) {
  return raw::norm_term(slow_lsub(m, x, by));
}

}  // namespace oracle
