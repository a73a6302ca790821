#pragma once

// Machine-readable tree serialization: a canonical nested-list text format.
// Every node renders as (head child ...); atoms are bare words. Identifiers
// from the source language are alphanumeric, so no quoting is needed.

#include <memory>
#include <string>
#include <vector>

#include "rlc/ast.hpp"

namespace rlc::sexp {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  std::string atom;           // set when leaf
  std::vector<NodePtr> kids;  // set when list
  bool is_list = false;
};

NodePtr atom(std::string a);
NodePtr list(std::vector<NodePtr> kids);
NodePtr list(std::string head, std::vector<NodePtr> kids);

std::string to_string(const NodePtr& n);

NodePtr of(const ast::TermPtr& t);
NodePtr of(const ast::TestPtr& t);
NodePtr of(const ast::Bag& b);
NodePtr of(const ast::TermSum& s);
NodePtr of(const ast::TestSum& s);

}  // namespace rlc::sexp
