#pragma once

// Recursive-descent parser for arithmetic expressions over named variables:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/')? unary)*      juxtaposition multiplies
//   unary := ('+' | '-') unary | power
//   power := atom ('^' '-'? integer)?
//   atom  := integer | identifier | '(' expr ')'
// The value type and the meaning of identifiers come from an Algebra object.

#include <cctype>
#include <concepts>
#include <limits>
#include <string>
#include <string_view>

#include "fsetkit/exactfield.hpp"

namespace fsetkit {

template <class A>
concept ExpressionAlgebra = requires(A& alg, const typename A::Value& x, std::string_view name, std::int64_t k,
                                     const BigInt& n) {
  { alg.constant(n) } -> std::same_as<typename A::Value>;
  { alg.variable(name) } -> std::same_as<typename A::Value>;
  { alg.add(x, x) } -> std::same_as<typename A::Value>;
  { alg.sub(x, x) } -> std::same_as<typename A::Value>;
  { alg.mul(x, x) } -> std::same_as<typename A::Value>;
  { alg.div(x, x) } -> std::same_as<typename A::Value>;
  { alg.neg(x) } -> std::same_as<typename A::Value>;
  { alg.power(x, k) } -> std::same_as<typename A::Value>;
};

template <ExpressionAlgebra A>
class ExpressionParser {
 public:
  using Value = typename A::Value;

  ExpressionParser(std::string_view text, A& algebra) : text_(text), alg_(algebra) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (eat('+')) {
        v = alg_.add(v, term());
      } else if (eat('-')) {
        v = alg_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (eat('*')) {
        v = alg_.mul(v, unary());
      } else if (eat('/')) {
        v = alg_.div(v, unary());
      } else if (at_atom_start()) {
        v = alg_.mul(v, power());
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) return alg_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (eat('^')) {
      bool negative = false;
      if (eat('-')) negative = true;
      skip_space();
      const BigInt e = integer();
      if (e > BigInt(std::numeric_limits<std::int64_t>::max())) fail("exponent too large");
      const auto k = static_cast<std::int64_t>(e);
      return alg_.power(base, negative ? -k : k);
    }
    return base;
  }

  BigInt integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  Value atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return alg_.constant(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return alg_.variable(text_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  A& alg_;
  std::size_t pos_ = 0;
};

template <ExpressionAlgebra A>
typename A::Value parse_expression(std::string_view text, A& algebra) {
  return ExpressionParser<A>(text, algebra).parse();
}

}  // namespace fsetkit
