#include "rlc/sexp.hpp"

namespace rlc::sexp {

using namespace rlc::ast;

NodePtr atom(std::string a) {
  auto n = std::make_shared<Node>();
  n->atom = std::move(a);
  return n;
}

NodePtr list(std::vector<NodePtr> kids) {
  auto n = std::make_shared<Node>();
  n->is_list = true;
  n->kids = std::move(kids);
  return n;
}

NodePtr list(std::string head, std::vector<NodePtr> kids) {
  std::vector<NodePtr> all;
  all.reserve(kids.size() + 1);
  all.push_back(atom(std::move(head)));
  for (auto& k : kids) all.push_back(std::move(k));
  return list(std::move(all));
}

static void render(const NodePtr& n, std::string& out) {
  if (!n->is_list) {
    out += n->atom;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < n->kids.size(); ++i) {
    if (i) out += ' ';
    render(n->kids[i], out);
  }
  out += ')';
}

std::string to_string(const NodePtr& n) {
  std::string out;
  render(n, out);
  return out;
}

NodePtr of(const ast::TermPtr& t) {
  if (auto* v = std::get_if<Var>(&t->node)) return list("var", {atom(v->name)});
  if (auto* a = std::get_if<Abs>(&t->node))
    return list("abs", {atom(a->binder), of(a->body)});
  if (auto* ap = std::get_if<App>(&t->node))
    return list("app", {of(ap->fun), of(ap->arg)});
  return list("tbar", {of(std::get<TauBar>(t->node).test)});
}

NodePtr of(const ast::TestPtr& t) {
  if (std::holds_alternative<Eps>(t->node)) return list("eps", {});
  if (auto* p = std::get_if<Par>(&t->node))
    return list("par", {of(p->left), of(p->right)});
  return list("tau", {of(std::get<Tau>(t->node).subject)});
}

NodePtr of(const ast::Bag& b) {
  std::vector<NodePtr> lin;
  for (const auto& m : b.linear) lin.push_back(of(m));
  return list("bag", {list("lin", std::move(lin)), list("bang", {of(b.banged)})});
}

NodePtr of(const ast::TermSum& s) {
  std::vector<NodePtr> kids;
  for (const auto& e : s.summands()) kids.push_back(of(e));
  return list("sum", std::move(kids));
}

NodePtr of(const ast::TestSum& s) {
  std::vector<NodePtr> kids;
  for (const auto& e : s.summands()) kids.push_back(of(e));
  return list("sum", std::move(kids));
}

}  // namespace rlc::sexp
