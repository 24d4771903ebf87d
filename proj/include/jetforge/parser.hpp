// Text input: tokenizer with line/column tracking and the polynomial
// expression grammar (infix +, -, *, ^, parentheses, rational literals).
#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jetforge/coefficient.hpp"
#include "jetforge/errors.hpp"
#include "jetforge/polynomial.hpp"
#include "jetforge/ring.hpp"

namespace jetforge {

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : InputError(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
        message_(msg),
        line_(line),
        col_(col) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t col_;
};

struct Token {
  enum class Kind { Ident, Integer, Punct, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text, std::size_t line = 1, std::size_t col = 1)
      : text_(text), line_(line), col_(col) {
    advance_token();
  }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance_token();
    return t;
  }

  bool at_punct(char c) const {
    return current_.kind == Token::Kind::Punct && current_.text.size() == 1 && current_.text[0] == c;
  }

  Token expect_punct(char c) {
    if (!at_punct(c))
      throw ParseError(std::string("expected '") + c + "', found " + describe(current_),
                       current_.line, current_.col);
    return next();
  }

  Token expect_ident(const std::string& what) {
    if (current_.kind != Token::Kind::Ident)
      throw ParseError("expected " + what + ", found " + describe(current_), current_.line,
                       current_.col);
    return next();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End: return "end of input";
      case Token::Kind::Ident: return "identifier '" + t.text + "'";
      case Token::Kind::Integer: return "number '" + t.text + "'";
      case Token::Kind::Punct: return "'" + t.text + "'";
    }
    return "?";
  }

 private:
  void advance_char() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void advance_token() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance_char();
    std::size_t l = line_, c = col_;
    if (pos_ >= text_.size()) {
      current_ = {Token::Kind::End, "", l, c};
      return;
    }
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string s;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        advance_char();
      }
      current_ = {Token::Kind::Integer, s, l, c};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        s += text_[pos_];
        advance_char();
      }
      current_ = {Token::Kind::Ident, s, l, c};
      return;
    }
    static const std::string puncts = "+-*^()[],;/=";
    if (puncts.find(ch) != std::string::npos) {
      advance_char();
      current_ = {Token::Kind::Punct, std::string(1, ch), l, c};
      return;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_;
  Token current_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(Lexer& lex, RingPtr ring) : lex_(lex), ring_(std::move(ring)) {}

  Polynomial parse_expression() {
    bool negate = false;
    if (lex_.at_punct('-')) {
      lex_.next();
      negate = true;
    } else if (lex_.at_punct('+')) {
      lex_.next();
    }
    Polynomial acc = parse_term();
    if (negate) acc = -acc;
    while (lex_.at_punct('+') || lex_.at_punct('-')) {
      bool minus = lex_.at_punct('-');
      lex_.next();
      Polynomial t = parse_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

 private:
  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (lex_.at_punct('*')) {
      lex_.next();
      acc = acc * parse_factor();
    }
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_primary();
    if (lex_.at_punct('^')) {
      lex_.next();
      Token e = lex_.next();
      if (e.kind != Token::Kind::Integer)
        throw ParseError("expected integer exponent", e.line, e.col);
      unsigned long exp = std::stoul(e.text);
      if (exp > 100000) throw ParseError("exponent too large", e.line, e.col);
      return base.pow(exp);
    }
    return base;
  }

  Polynomial parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Integer) {
      Token num = lex_.next();
      if (lex_.at_punct('/')) {
        lex_.next();
        Token den = lex_.next();
        if (den.kind != Token::Kind::Integer)
          throw ParseError("expected integer denominator", den.line, den.col);
        return Polynomial::constant(ring_, literal(num.text, den.text));
      }
      return Polynomial::constant(ring_, literal(num.text, "1"));
    }
    if (t.kind == Token::Kind::Ident) {
      Token id = lex_.next();
      auto idx = ring_->index_of(id.text);
      if (!idx) throw ParseError("unknown variable '" + id.text + "'", id.line, id.col);
      return Polynomial::variable(ring_, *idx);
    }
    if (lex_.at_punct('(')) {
      lex_.next();
      Polynomial inner = parse_expression();
      lex_.expect_punct(')');
      return inner;
    }
    if (lex_.at_punct('-')) {
      lex_.next();
      return -parse_factor();
    }
    throw ParseError("expected a polynomial term, found " + Lexer::describe(t), t.line, t.col);
  }

  Coefficient literal(const std::string& num, const std::string& den) const {
    mpz_class n(num), d(den);
    mpq_class v(n, d);
    if (v.get_den() == 0) throw InputError("rational with zero denominator");
    v.canonicalize();
    if (ring_->characteristic() == 0) return Coefficient::rational(v);
    return Coefficient::residue_of_rational(v, ring_->characteristic());
  }

  Lexer& lex_;
  RingPtr ring_;
};

}  // namespace detail

// Parses a complete polynomial expression; trailing input is an error.
inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring,
                                   std::size_t base_line = 1, std::size_t base_col = 1) {
  Lexer lex(text, base_line, base_col);
  detail::PolyParser pp(lex, ring);
  Polynomial p = pp.parse_expression();
  const Token& t = lex.peek();
  if (t.kind != Token::Kind::End)
    throw ParseError("unexpected trailing input: " + Lexer::describe(t), t.line, t.col);
  return p;
}

// Parses a polynomial from a lexer positioned at its first token, stopping
// at the first token that cannot extend the expression.
inline Polynomial parse_polynomial_prefix(Lexer& lex, const RingPtr& ring) {
  detail::PolyParser pp(lex, ring);
  return pp.parse_expression();
}

}  // namespace jetforge
