#include "odesym/parse.hpp"

#include <algorithm>
#include <cctype>

namespace odesym {

namespace {

class Parser {
 public:
  Parser(std::string_view text, bool allow_d) : text_(text), allow_d_(allow_d) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  bool allow_d_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
  }

  Expr parse_expr() {
    skip_ws();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Expr e = parse_term();
    if (neg) e = -e;
    while (true) {
      if (accept('+'))
        e = e + parse_term();
      else if (accept('-'))
        e = e - parse_term();
      else
        break;
    }
    return e;
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      if (accept('*')) {
        e = e * parse_factor();
      } else if (accept('/')) {
        size_t at = pos_;
        Expr d = parse_factor();
        Rational value;
        if (!is_rational_const(d, &value)) {
          pos_ = at;
          fail("division is only allowed by a numeric literal");
        }
        if (value.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        e = e * Expr::rational(value.inverse());
      } else {
        break;
      }
    }
    return e;
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      bool neg = accept('-');
      long long exp = parse_integer("exponent");
      return Expr::pow(std::move(base), neg ? -exp : exp);
    }
    return base;
  }

  long long parse_integer(const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(std::string("expected ") + what);
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000000LL) fail("integer too large");
      ++pos_;
    }
    return v;
  }

  Expr parse_number() {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view whole = text_.substr(start, pos_ - start);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      size_t fstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view frac = text_.substr(fstart, pos_ - fstart);
      if (frac.empty()) fail("expected digits after decimal point");
      BigInt num = BigInt::from_decimal(std::string(whole) + std::string(frac));
      BigInt den(1);
      for (size_t i = 0; i < frac.size(); ++i) den = den * BigInt(10);
      return Expr::rational(Rational(num, den));
    }
    return Expr::rational(Rational::integer(BigInt::from_decimal(whole)));
  }

  int parse_primes() {
    int n = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++n;
      ++pos_;
    }
    return n;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')', "to close parenthesis");
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unknown token");
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "sin" || name == "cos" || name == "exp") {
      Func fn = name == "sin" ? Func::Sin : (name == "cos" ? Func::Cos : Func::Exp);
      expect('(', "after function name");
      Expr arg = parse_expr();
      expect(')', "to close function argument");
      return Expr::apply(fn, std::move(arg));
    }
    if (name == "x") {
      if (parse_primes()) fail("the variable x cannot carry primes");
      return Expr::x();
    }
    if (name == "D") {
      if (!allow_d_) fail("the symbol D is reserved for operators");
      if (parse_primes()) fail("the symbol D cannot carry primes");
      return Expr::d_symbol();
    }
    if (name.size() >= 2 && name[0] == 'p' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      if (name.size() > 7) fail("jet variable index too large");
      int idx = std::stoi(name.substr(1));
      if (parse_primes()) fail("jet variables cannot carry primes");
      return Expr::jet(idx);
    }
    return Expr::func_sym(std::move(name), parse_primes());
  }
};

}  // namespace

Expr parse_expression(std::string_view text, bool allow_d) {
  return Parser(text, allow_d).run();
}

}  // namespace odesym
