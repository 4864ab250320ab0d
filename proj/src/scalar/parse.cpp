#include "gcx/scalar/parse.hpp"

#include <cctype>

#include "gcx/error.hpp"

namespace gcx {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc run() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        RatFunc d = unary();
        if (d.is_zero()) error("division by zero");
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::string digits = read_digits();
    if (digits.empty()) error("expected integer exponent");
    if (digits.size() > 6) error("exponent too large");
    long e = std::stol(digits);
    if (neg) {
      if (base.is_zero()) error("division by zero");
      e = -e;
    }
    return base.pow(e);
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return RatFunc(GQ(mpq_class(mpz_class(read_digits()))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "i") return RatFunc(GQ::i());
      auto v = parse_var(name);
      if (!v) {
        pos_ = start;
        error("unknown identifier '" + name + "'");
      }
      return RatFunc::variable(*v);
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).run(); }

RatFunc parse_ratfunc(std::string_view text, const ChartVars& chart) {
  RatFunc f = parse_ratfunc(text);
  for (auto id : f.variable_ids())
    if (!chart.contains(Var::from_id(id)))
      fail(ErrorCode::UnknownVariable, Var::from_id(id).name() + " is not a chart variable in \"" + std::string(text) + "\"");
  return f;
}

}  // namespace gcx
