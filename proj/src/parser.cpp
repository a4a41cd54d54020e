// SPDX-License-Identifier: Apache-2.0
#include "stlmon/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <utility>

#include "stlmon/errors.hpp"

namespace stlmon {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Less,
  Greater,
  Arrow,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::string lexeme, double num = 0.0) {
    out.push_back({kind, std::move(lexeme), num, line, col});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      const char* begin = text.data() + i;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      const std::size_t len = static_cast<std::size_t>(end - begin);
      if (len == 0 || !std::isfinite(value)) {
        throw ParseError("malformed number literal", line, col);
      }
      push(Tok::Number, std::string(begin, len), value);
      col += static_cast<int>(len);
      i += len;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      push(Tok::Ident, std::string(text.substr(i, j - i)));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '(':
        push(Tok::LParen, "(");
        break;
      case ')':
        push(Tok::RParen, ")");
        break;
      case '[':
        push(Tok::LBracket, "[");
        break;
      case ']':
        push(Tok::RBracket, "]");
        break;
      case ',':
        push(Tok::Comma, ",");
        break;
      case '+':
        push(Tok::Plus, "+");
        break;
      case '*':
        push(Tok::Star, "*");
        break;
      case '<':
        push(Tok::Less, "<");
        break;
      case '>':
        push(Tok::Greater, ">");
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, "->");
          ++col;
          ++i;
        } else {
          push(Tok::Minus, "-");
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    ++col;
    ++i;
  }
  out.push_back({Tok::End, "", 0.0, line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "not" || s == "and" || s == "or" || s == "abs" || s == "false" ||
         s == "true" || s == "alw_" || s == "ev_" || s == "until_";
}

// Thrown while probing whether a parenthesized group is an atom; callers
// backtrack instead of reporting it.
struct AtomProbeFail {};

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables)
      : tokens_(tokenize(text)) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      var_index_[variables[i]] = static_cast<int>(i);
    }
  }

  FormulaPtr parse() {
    if (peek().kind == Tok::End) {
      throw ParseError("empty specification", 1, 1);
    }
    FormulaPtr f = parse_implies();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t p = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[p];
  }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_ident(const char* word) {
    if (peek().kind == Tok::Ident && peek().text == word) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what);
    }
    return advance();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    if (probing_) throw AtomProbeFail{};
    const Token& t = peek();
    const std::string seen = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + seen, t.line, t.column);
  }

  // implication is right-associative sugar: a -> b  ==  (not a) or b
  FormulaPtr parse_implies() {
    FormulaPtr a = parse_or();
    if (accept(Tok::Arrow)) {
      FormulaPtr b = parse_implies();
      return Formula::disjunction(Formula::negation(std::move(a)), std::move(b));
    }
    return a;
  }

  FormulaPtr parse_or() {
    FormulaPtr a = parse_and();
    while (accept_ident("or")) {
      a = Formula::disjunction(std::move(a), parse_and());
    }
    return a;
  }

  FormulaPtr parse_and() {
    FormulaPtr a = parse_until();
    while (accept_ident("and")) {
      a = Formula::conjunction(std::move(a), parse_until());
    }
    return a;
  }

  FormulaPtr parse_until() {
    FormulaPtr a = parse_unary();
    while (peek().kind == Tok::Ident && peek().text == "until_") {
      advance();
      TimeInterval iv = parse_interval();
      a = Formula::until(iv, std::move(a), parse_unary());
    }
    return a;
  }

  FormulaPtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "not") {
        advance();
        return Formula::negation(parse_unary());
      }
      if (t.text == "alw_") {
        advance();
        TimeInterval iv = parse_interval();
        return Formula::always(iv, parse_unary());
      }
      if (t.text == "ev_") {
        advance();
        TimeInterval iv = parse_interval();
        return Formula::eventually(iv, parse_unary());
      }
      if (t.text == "false") {
        advance();
        return Formula::false_const();
      }
      if (t.text == "true") {
        advance();
        return Formula::true_const();
      }
    }
    if (t.kind == Tok::LParen) {
      // Ambiguous: "(v) < 10" is an atom, "(v < 10)" a grouped formula.
      // Probe the atom reading first and backtrack if it does not pan out.
      const std::size_t saved = pos_;
      probing_ = true;
      try {
        FormulaPtr atom = parse_atom();
        probing_ = false;
        return atom;
      } catch (const AtomProbeFail&) {
        probing_ = false;
        pos_ = saved;
      }
      advance();  // '('
      FormulaPtr f = parse_implies();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  TimeInterval parse_interval() {
    expect(Tok::LBracket, "'['");
    const Token& lo = expect(Tok::Number, "interval lower bound");
    expect(Tok::Comma, "','");
    const Token& hi = expect(Tok::Number, "interval upper bound");
    expect(Tok::RBracket, "']'");
    if (!(lo.number <= hi.number)) {
      throw ParseError("reversed interval [" + lo.text + "," + hi.text + "]",
                       lo.line, lo.column);
    }
    return {lo.number, hi.number};
  }

  FormulaPtr parse_atom() {
    ExprPtr lhs = parse_arith();
    bool less;
    if (accept(Tok::Less)) {
      less = true;
    } else if (accept(Tok::Greater)) {
      less = false;
    } else {
      fail("expected '<' or '>'");
    }
    ExprPtr rhs = parse_arith();
    return canonicalize(std::move(lhs), less, std::move(rhs));
  }

  // e < c  -> (c - e > 0);  e > c -> (e - c > 0); a comparison bounding a
  // top-level abs(e) above turns into the two-leg conjunction, below into its
  // negation (the robustness values are unchanged in all cases).
  FormulaPtr canonicalize(ExprPtr lhs, bool less, ExprPtr rhs) {
    ExprPtr small = less ? std::move(lhs) : std::move(rhs);   // bounded side
    ExprPtr large = less ? std::move(rhs) : std::move(lhs);   // bounding side
    if (small->kind == ExprKind::Abs) {
      ExprPtr e = small->lhs;
      // sequenced: ids must follow text order
      FormulaPtr low_leg = make_atom_node(Expr::sub(large, e));
      FormulaPtr high_leg = make_atom_node(Expr::add(large, e));
      return Formula::conjunction(std::move(low_leg), std::move(high_leg));
    }
    if (large->kind == ExprKind::Abs) {
      ExprPtr e = large->lhs;
      FormulaPtr low_leg = make_atom_node(Expr::sub(small, e));
      FormulaPtr high_leg = make_atom_node(Expr::add(small, e));
      return Formula::negation(
          Formula::conjunction(std::move(low_leg), std::move(high_leg)));
    }
    return make_atom_node(difference(std::move(large), std::move(small)));
  }

  static ExprPtr difference(ExprPtr large, ExprPtr small) {
    if (small->kind == ExprKind::Constant && small->value == 0.0) return large;
    return Expr::sub(std::move(large), std::move(small));
  }

  FormulaPtr make_atom_node(ExprPtr expr) {
    Atom a;
    a.id = next_atom_id_++;
    a.expr = std::move(expr);
    return Formula::make_atom(std::move(a));
  }

  ExprPtr parse_arith() {
    ExprPtr a = parse_term();
    for (;;) {
      if (accept(Tok::Plus)) {
        a = Expr::add(std::move(a), parse_term());
      } else if (accept(Tok::Minus)) {
        a = Expr::sub(std::move(a), parse_term());
      } else {
        return a;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr a = parse_factor();
    while (accept(Tok::Star)) {
      a = Expr::mul(std::move(a), parse_factor());
    }
    return a;
  }

  ExprPtr parse_factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        advance();
        return Expr::constant(t.number);
      case Tok::Minus:
        advance();
        return Expr::negate(parse_factor());
      case Tok::LParen: {
        advance();
        ExprPtr e = parse_arith();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (t.text == "abs") {
          advance();
          expect(Tok::LParen, "'('");
          ExprPtr e = parse_arith();
          expect(Tok::RParen, "')'");
          return Expr::abs(std::move(e));
        }
        if (is_keyword(t.text)) {
          fail("expected expression");
        }
        auto it = var_index_.find(t.text);
        if (it == var_index_.end()) {
          if (probing_) throw AtomProbeFail{};
          throw ParseError("unknown variable '" + t.text + "'", t.line, t.column);
        }
        advance();
        return Expr::variable(t.text, it->second);
      }
      default:
        fail("expected expression");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, int> var_index_;
  int next_atom_id_ = 0;
  bool probing_ = false;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text,
                         const std::vector<std::string>& variables) {
  Parser parser(text, variables);
  return parser.parse();
}

}  // namespace stlmon
