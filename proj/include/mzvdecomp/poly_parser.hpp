#ifndef MZVDECOMP_POLY_PARSER_HPP
#define MZVDECOMP_POLY_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <type_traits>

#include "errors.hpp"
#include "multipoly.hpp"
#include "scalar.hpp"

namespace mzvdecomp {

// Recursive-descent parser for numerator expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER ('/' INTEGER)? | VAR | 'zeta' | '(' expr ')'
//
// VAR is the frame letter followed by a single digit 1..p.
template <class S>
class PolyParser {
public:
  PolyParser(std::string_view text, int nvars, char frame, Field field)
      : text_(text), nvars_(nvars), frame_(frame), field_(field) {}

  MultiPoly<S> parse() {
    skip_ws();
    if (at_end())
      throw SyntaxError(pos_, "empty expression");
    MultiPoly<S> out = expr();
    skip_ws();
    if (!at_end())
      throw SyntaxError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    return out;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string integer_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      throw SyntaxError(pos_, "expected integer literal");
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly<S> expr() {
    MultiPoly<S> acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MultiPoly<S> term() {
    MultiPoly<S> acc = unary();
    while (accept('*'))
      acc = acc * unary();
    return acc;
  }

  MultiPoly<S> unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  MultiPoly<S> power() {
    MultiPoly<S> base = primary();
    if (accept('^')) {
      skip_ws();
      if (peek() == '-')
        fail("NegativeExponent", "at position " + std::to_string(pos_) + ": exponents must be nonnegative");
      std::string digits = integer_literal();
      if (digits.size() > 6)
        throw SyntaxError(pos_, "exponent too large");
      return base.pow(std::stoi(digits));
    }
    return base;
  }

  MultiPoly<S> primary() {
    skip_ws();
    const std::size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly<S> inner = expr();
      if (!accept(')'))
        throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer_literal();
      Rational value(mpz_class(num, 10));
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        std::string den = integer_literal();
        mpz_class d(den, 10);
        if (d == 0)
          fail("DivisionByZero", "at position " + std::to_string(start) + ": zero denominator");
        value = Rational(mpz_class(num, 10), d);
      }
      return MultiPoly<S>::constant(nvars_, S(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])))
        ++end;
      std::string word(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "zeta")
        return MultiPoly<S>::constant(nvars_, generator(start));
      if (word.size() == 2 && (word[0] == 'k' || word[0] == 'K') && word[1] >= '1' && word[1] <= '9') {
        int idx = word[1] - '1';
        if (word[0] != frame_ || idx >= nvars_)
          fail("UnknownVariable", "at position " + std::to_string(start) + ": variable '" + word +
                                      "' is not one of " + frame_ + "1.." + frame_ + std::to_string(nvars_));
        return MultiPoly<S>::variable(nvars_, idx);
      }
      fail("UnknownVariable", "at position " + std::to_string(start) + ": unknown identifier '" + word + "'");
    }
    if (at_end())
      throw SyntaxError(pos_, "unexpected end of input");
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  S generator(std::size_t at) const {
    if (field_.order == 2)
      return S(Rational(-1));
    if constexpr (std::is_same_v<S, Cyclotomic>) {
      if (!field_.is_rational())
        return Cyclotomic::zeta(field_.order);
    }
    fail("UnsupportedField", "at position " + std::to_string(at) + ": 'zeta' requires a cyclotomic field");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int nvars_;
  char frame_;
  Field field_;
};

template <class S>
MultiPoly<S> parse_poly(std::string_view text, int nvars, char frame = 'k', Field field = Field{}) {
  if (frame != 'k' && frame != 'K')
    fail("InvalidArgument", "frame tag must be 'k' or 'K'");
  if (nvars < 1 || nvars > 9)
    fail("InvalidArgument", "variable count must lie in 1..9");
  return PolyParser<S>(text, nvars, frame, field).parse();
}

} // namespace mzvdecomp

#endif // MZVDECOMP_POLY_PARSER_HPP
