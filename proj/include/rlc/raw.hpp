#pragma once

// Raw expression trees as produced by the parser: sum nodes may appear
// anywhere, categories (term / bag / test) are not yet separated, and a
// context hole is a first-class node. sum_normalize distributes the sums
// through every linear position and produces canonical formal sums.

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rlc/ast.hpp"

namespace rlc::raw {

struct Raw;
using RawPtr = std::shared_ptr<const Raw>;

enum class K { Var, Abs, App, TauBar, Eps, Par, Tau, Zero, Sum, Bag, Hole };

struct Raw {
  K k;
  std::string name;          // Var name, Abs binder
  std::vector<RawPtr> kids;  // Abs: body; App: fun,arg; TauBar/Tau: one kid;
                             // Par: left,right; Sum: summands; Bag: linear parts
  RawPtr banged;             // Bag only

  Raw(K kk, std::string n, std::vector<RawPtr> ks, RawPtr bg = nullptr)
      : k(kk), name(std::move(n)), kids(std::move(ks)), banged(std::move(bg)) {}
};

RawPtr rvar(std::string name);
RawPtr rabs(std::string binder, RawPtr body);
RawPtr rapp(RawPtr fun, RawPtr arg);
RawPtr rtaubar(RawPtr test);
RawPtr reps();
RawPtr rpar(RawPtr l, RawPtr r);
RawPtr rtau(RawPtr subject);
RawPtr rzero();
RawPtr rsum(std::vector<RawPtr> kids);
RawPtr rbag(std::vector<RawPtr> linear, RawPtr banged);
RawPtr rhole();

/// Structural embedding of canonical values back into raw trees.
RawPtr raw_of(const ast::TermPtr& t);
RawPtr raw_of(const ast::TestPtr& t);
RawPtr raw_of(const ast::Bag& b);
RawPtr raw_of(const ast::TermSum& s);
RawPtr raw_of(const ast::TestSum& s);

/// Malformed input (bad category, bag without banged slot, hole left over).
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Term, Bag, Test };

/// Syntactic category of a raw tree; Zero alone is ambiguous and defaults to
/// Term. Throws StructuralError on contradictory sums.
Kind infer_kind(const RawPtr& r);

ast::TermSum norm_term(const RawPtr& r);
ast::BagSum norm_bag(const RawPtr& r);
ast::TestSum norm_test(const RawPtr& r);

using Normalized = std::variant<ast::TermSum, ast::BagSum, ast::TestSum>;
Normalized sum_normalize(const RawPtr& r);

/// Number of holes in a raw tree.
std::size_t hole_count(const RawPtr& r);

/// Literal (capture-permitting) replacement of every hole.
RawPtr plug_raw(const RawPtr& ctx, const RawPtr& filler);

}  // namespace rlc::raw
