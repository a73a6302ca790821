#pragma once

// Concrete syntax:
//   \x. M           abstraction (body extends maximally to the right)
//   M B             application by juxtaposition; the argument is a bag
//   [M1, M2; P!]    bag: linear components, then the banged component
//   [P!]            bag with empty linear part
//   M + N, 0        formal sums and their zero
//   eps, Q | R, tau(M), tbar(Q)
// Parentheses are free. Printing is deterministic: summands appear in
// canonical order, so equal sums render to identical text.

#include <stdexcept>
#include <string>

#include "rlc/raw.hpp"

namespace rlc::text {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(std::string msg, int l, int c)
      : std::runtime_error(std::move(msg)), line(l), col(c) {}
};

/// Parses one expression (term, test or bag, possibly a sum); rejects
/// trailing input.
raw::RawPtr parse(const std::string& text);

std::string print(const ast::TermPtr& t);
std::string print(const ast::TestPtr& t);
std::string print(const ast::Bag& b);
std::string print(const ast::TermSum& s);
std::string print(const ast::TestSum& s);
std::string print(const ast::BagSum& s);

}  // namespace rlc::text
