#include "gcx/scalar/ratfunc.hpp"

#include <algorithm>

#include "gcx/error.hpp"

namespace gcx {

namespace {

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = a.divide_exact(b);
  require(q.has_value(), ErrorCode::SolverFailure, "inexact polynomial division");
  return *std::move(q);
}

}  // namespace

RatFunc RatFunc::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
  if (num.is_zero()) return {};
  GQ lead = den.leading().coeff;
  if (den.is_constant()) return RatFunc(num.scaled(lead.inverse()));
  Polynomial g = gcd(num, den);
  Polynomial n = g.is_constant() ? num : exact(num, g);
  Polynomial d = g.is_constant() ? den : exact(den, g);
  GQ inv = d.leading().coeff.inverse();
  return RatFunc(n.scaled(inv), d.scaled(inv), true);
}

std::vector<std::uint32_t> RatFunc::variable_ids() const {
  auto a = num_.variable_ids();
  auto b = den_.variable_ids();
  std::vector<std::uint32_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) return *this = fraction(num_ + o.num_, den_);
  if (o.den_.is_constant()) {
    num_ += o.num_ * den_;
    return *this;
  }
  if (den_.is_constant()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  Polynomial g = gcd(den_, o.den_);
  Polynomial b1 = exact(den_, g);
  Polynomial d1 = exact(o.den_, g);
  Polynomial n = num_ * d1 + o.num_ * b1;
  Polynomial d = den_ * d1;
  if (n.is_zero()) return *this = RatFunc();
  if (!g.is_constant()) {
    Polynomial h = gcd(n, g);
    if (!h.is_constant()) {
      n = exact(n, h);
      d = exact(d, h);
    }
  }
  num_ = std::move(n);
  den_ = std::move(d);
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant_value());
    return *this;
  }
  if (is_constant()) {
    GQ c = constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    Polynomial g = gcd(a, d);
    if (!g.is_constant()) {
      a = exact(a, g);
      d = exact(d, g);
    }
  }
  if (!b.is_constant()) {
    Polynomial g = gcd(c, b);
    if (!g.is_constant()) {
      c = exact(c, g);
      b = exact(b, g);
    }
  }
  num_ = a * c;
  den_ = b * d;
  return *this;
}

RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_, true); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero rational function");
  GQ inv = num_.leading().coeff.inverse();
  return RatFunc(den_.scaled(inv), num_.scaled(inv), true);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), true);
}

RatFunc RatFunc::derivative(Var v) const {
  if (den_.is_constant()) return RatFunc(num_.derivative(v));
  Polynomial dn = num_.derivative(v);
  Polynomial dd = den_.derivative(v);
  if (dd.is_zero()) return fraction(dn, den_);
  return fraction(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::conj() const {
  Polynomial d = den_.conj();
  GQ inv = d.leading().coeff.inverse();
  return RatFunc(num_.conj().scaled(inv), d.scaled(inv), true);
}

namespace {

RatFunc substitute_poly(const Polynomial& p, const std::map<std::uint32_t, RatFunc>& values,
                        std::map<std::pair<std::uint32_t, std::uint32_t>, RatFunc>& powers) {
  RatFunc acc;
  for (const auto& t : p.terms()) {
    RatFunc x(t.coeff);
    Monomial rest;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest = rest * Monomial::of(Var::from_id(v), e);
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pw = powers.find(key);
      if (pw == powers.end()) pw = powers.emplace(key, it->second.pow(e)).first;
      x *= pw->second;
    }
    if (!rest.is_one()) x *= RatFunc(Polynomial::term(rest, GQ(1)));
    acc += x;
  }
  return acc;
}

}  // namespace

RatFunc RatFunc::substitute(const std::map<std::uint32_t, RatFunc>& values) const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, RatFunc> powers;
  RatFunc n = substitute_poly(num_, values, powers);
  if (den_.is_constant()) return n;
  return n / substitute_poly(den_, values, powers);
}

GQ RatFunc::eval(const std::function<GQ(Var)>& value) const {
  GQ d = den_.eval(value);
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "denominator vanishes at evaluation point");
  return num_.eval(value) / d;
}

std::string RatFunc::str() const {
  if (den_.is_constant()) return num_.str();
  std::string n = num_.size() > 1 ? "(" + num_.str() + ")" : num_.str();
  const auto& dt = den_.terms();
  bool bare = dt.size() == 1 && dt[0].coeff.is_one() && dt[0].mono.factors().size() == 1;
  return n + "/" + (bare ? den_.str() : "(" + den_.str() + ")");
}

RatFunc wirtinger_diff(const RatFunc& f, Var v, const ChartVars& chart) {
  chart.require_index(v);
  return f.derivative(v);
}

}  // namespace gcx
