#include "rlc/text.hpp"

#include <cctype>

namespace rlc::text {

using raw::RawPtr;

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, LBrack, RBrack, Comma, Semi, Bang,
                 Plus, Pipe, Zero, Eps, Tau, TauBar, Ident, End };

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  Tok tok = Tok::End;
  std::string ident;
  int tline = 1, tcol = 1;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tline, tcol); }

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      bump(src[pos]);
    tline = line;
    tcol = col;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    switch (c) {
      case '\\': bump(c); tok = Tok::Lambda; return;
      case '.': bump(c); tok = Tok::Dot; return;
      case '(': bump(c); tok = Tok::LParen; return;
      case ')': bump(c); tok = Tok::RParen; return;
      case '[': bump(c); tok = Tok::LBrack; return;
      case ']': bump(c); tok = Tok::RBrack; return;
      case ',': bump(c); tok = Tok::Comma; return;
      case ';': bump(c); tok = Tok::Semi; return;
      case '!': bump(c); tok = Tok::Bang; return;
      case '+': bump(c); tok = Tok::Plus; return;
      case '|': bump(c); tok = Tok::Pipe; return;
      default: break;
    }
    if (c == '0') {
      bump(c);
      if (pos < src.size() &&
          (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        throw ParseError("identifiers may not start with a digit", tline, tcol);
      tok = Tok::Zero;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
              src[pos] == '\'')) {
        name += src[pos];
        bump(src[pos]);
      }
      if (name == "eps") tok = Tok::Eps;
      else if (name == "tau") tok = Tok::Tau;
      else if (name == "tbar") tok = Tok::TauBar;
      else {
        tok = Tok::Ident;
        ident = std::move(name);
      }
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tline, tcol);
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& s) : lex(s) {}

  void expect(Tok t, const char* what) {
    if (lex.tok != t) lex.fail(std::string("expected ") + what);
    lex.advance();
  }

  RawPtr parse_expr() { return parse_sum(); }

  RawPtr parse_sum() {
    std::vector<RawPtr> parts{parse_par()};
    while (lex.tok == Tok::Plus) {
      lex.advance();
      parts.push_back(parse_par());
    }
    if (parts.size() == 1) return parts[0];
    return raw::rsum(std::move(parts));
  }

  RawPtr parse_par() {
    RawPtr acc = parse_app();
    while (lex.tok == Tok::Pipe) {
      lex.advance();
      acc = raw::rpar(acc, parse_app());  // left-associated binary tree
    }
    return acc;
  }

  bool at_atom_start() const {
    switch (lex.tok) {
      case Tok::Lambda:
      case Tok::LParen:
      case Tok::LBrack:
      case Tok::Zero:
      case Tok::Eps:
      case Tok::Tau:
      case Tok::TauBar:
      case Tok::Ident:
        return true;
      default:
        return false;
    }
  }

  RawPtr parse_app() {
    RawPtr fun = parse_atom();
    while (at_atom_start()) {
      // Lambda here would swallow the rest of the input as one argument;
      // arguments must be bags or parenthesized bag sums.
      if (lex.tok == Tok::Lambda) lex.fail("abstraction cannot be an application argument; parenthesize it");
      fun = raw::rapp(fun, parse_atom());
    }
    return fun;
  }

  RawPtr parse_atom() {
    switch (lex.tok) {
      case Tok::Ident: {
        std::string name = lex.ident;
        lex.advance();
        return raw::rvar(std::move(name));
      }
      case Tok::Zero:
        lex.advance();
        return raw::rzero();
      case Tok::Eps:
        lex.advance();
        return raw::reps();
      case Tok::Tau: {
        lex.advance();
        expect(Tok::LParen, "'(' after tau");
        RawPtr s = parse_sum();
        expect(Tok::RParen, "')'");
        return raw::rtau(std::move(s));
      }
      case Tok::TauBar: {
        lex.advance();
        expect(Tok::LParen, "'(' after tbar");
        RawPtr s = parse_sum();
        expect(Tok::RParen, "')'");
        return raw::rtaubar(std::move(s));
      }
      case Tok::Lambda: {
        lex.advance();
        if (lex.tok != Tok::Ident) lex.fail("expected a binder name after '\\'");
        std::string binder = lex.ident;
        lex.advance();
        expect(Tok::Dot, "'.' after binder");
        RawPtr body = parse_sum();
        return raw::rabs(std::move(binder), std::move(body));
      }
      case Tok::LParen: {
        lex.advance();
        RawPtr s = parse_sum();
        expect(Tok::RParen, "')'");
        return s;
      }
      case Tok::LBrack:
        return parse_bag();
      default:
        lex.fail("expected an expression");
    }
  }

  RawPtr parse_bag() {
    expect(Tok::LBrack, "'['");
    std::vector<RawPtr> linear;
    bool seen_semi = false;
    RawPtr banged;
    while (true) {
      RawPtr comp = parse_sum();
      bool bangmark = false;
      if (lex.tok == Tok::Bang) {
        lex.advance();
        bangmark = true;
      }
      if (bangmark) {
        if (banged) lex.fail("a bag has exactly one banged component");
        banged = std::move(comp);
        if (lex.tok != Tok::RBrack) lex.fail("the banged component must close the bag");
        break;
      }
      if (banged) lex.fail("linear components must precede the banged one");
      linear.push_back(std::move(comp));
      if (lex.tok == Tok::Comma) {
        if (seen_semi) lex.fail("',' after ';' in a bag");
        lex.advance();
        continue;
      }
      if (lex.tok == Tok::Semi) {
        if (seen_semi) lex.fail("duplicate ';' in a bag");
        seen_semi = true;
        lex.advance();
        continue;
      }
      lex.fail("a bag needs a banged component marked with '!'");
    }
    expect(Tok::RBrack, "']'");
    if (!linear.empty() && !seen_semi)
      lex.fail("linear components must be separated from the banged one by ';'");
    return raw::rbag(std::move(linear), std::move(banged));
  }
};

}  // namespace

raw::RawPtr parse(const std::string& str) {
  Parser p(str);
  RawPtr e = p.parse_expr();
  if (p.lex.tok != Tok::End) p.lex.fail("trailing input after expression");
  return e;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

using namespace rlc::ast;

// Where a subexpression sits; decides parenthesization.
enum class Pos {
  Delim,    // top level, lambda body, inside (), tau(...), bag component
  Summand,  // joined by +
  ParLeft,
  ParRight,
  Fun,      // function position of an application
  Banged,   // banged single component, followed by '!'
};

void pr_term(const TermPtr& t, Pos pos, std::string& out);
void pr_test(const TestPtr& t, Pos pos, std::string& out);
void pr_bag(const Bag& b, std::string& out);

template <class P>
void pr_sum(const Sum<P>& s, Pos pos, std::string& out,
            void (*pr)(const P&, Pos, std::string&)) {
  if (s.is_zero()) {
    out += '0';
    return;
  }
  if (s.size() == 1) {
    pr(s.summands()[0], pos, out);
    return;
  }
  bool parens = pos != Pos::Delim;
  if (parens) out += '(';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " + ";
    pr(s.summands()[i], Pos::Summand, out);
  }
  if (parens) out += ')';
}

void pr_bag_item(const Bag& b, Pos, std::string& out) { pr_bag(b, out); }

void pr_term(const TermPtr& t, Pos pos, std::string& out) {
  if (auto* v = std::get_if<Var>(&t->node)) {
    out += v->name;
    return;
  }
  if (auto* a = std::get_if<Abs>(&t->node)) {
    bool parens = pos != Pos::Delim;
    if (parens) out += '(';
    out += '\\';
    out += a->binder;
    out += ". ";
    pr_term(a->body, Pos::Delim, out);
    if (parens) out += ')';
    return;
  }
  if (auto* ap = std::get_if<App>(&t->node)) {
    pr_term(ap->fun, Pos::Fun, out);
    out += ' ';
    pr_bag(ap->arg, out);
    return;
  }
  out += "tbar(";
  pr_test(std::get<TauBar>(t->node).test, Pos::Delim, out);
  out += ')';
}

void pr_test(const TestPtr& t, Pos pos, std::string& out) {
  if (std::holds_alternative<Eps>(t->node)) {
    out += "eps";
    return;
  }
  if (auto* p = std::get_if<Par>(&t->node)) {
    bool parens = pos == Pos::ParRight;
    if (parens) out += '(';
    pr_test(p->left, Pos::ParLeft, out);
    out += " | ";
    pr_test(p->right, Pos::ParRight, out);
    if (parens) out += ')';
    return;
  }
  out += "tau(";
  pr_term(std::get<Tau>(t->node).subject, Pos::Delim, out);
  out += ')';
}

void pr_bag(const Bag& b, std::string& out) {
  out += '[';
  for (std::size_t i = 0; i < b.linear.size(); ++i) {
    if (i) out += ", ";
    pr_term(b.linear[i], Pos::Delim, out);
  }
  if (!b.linear.empty()) out += "; ";
  pr_sum(b.banged, Pos::Banged, out, pr_term);
  out += "!]";
}

}  // namespace

std::string print(const ast::TermPtr& t) {
  std::string out;
  pr_term(t, Pos::Delim, out);
  return out;
}
std::string print(const ast::TestPtr& t) {
  std::string out;
  pr_test(t, Pos::Delim, out);
  return out;
}
std::string print(const ast::Bag& b) {
  std::string out;
  pr_bag(b, out);
  return out;
}
std::string print(const ast::TermSum& s) {
  std::string out;
  pr_sum(s, Pos::Delim, out, pr_term);
  return out;
}
std::string print(const ast::TestSum& s) {
  std::string out;
  pr_sum(s, Pos::Delim, out, pr_test);
  return out;
}
std::string print(const ast::BagSum& s) {
  std::string out;
  pr_sum(s, Pos::Delim, out, pr_bag_item);
  return out;
}

}  // namespace rlc::text
