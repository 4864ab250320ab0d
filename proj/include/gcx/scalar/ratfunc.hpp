#pragma once

#include <functional>
#include <map>
#include <string>

#include "gcx/scalar/polynomial.hpp"

namespace gcx {

/// Reduced fraction num/den over Q(i)[vars]. The denominator is monic in
/// grlex order and coprime to the numerator, so equality is structural.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const GQ& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  static RatFunc variable(Var v) { return Polynomial::variable(v); }
  /// Reduces num/den; throws DivisionByZero when den is zero.
  static RatFunc fraction(const Polynomial& num, const Polynomial& den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const { return is_constant() && constant_value().is_one(); }
  GQ constant_value() const { return num_.constant_value(); }
  std::vector<std::uint32_t> variable_ids() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o) { return *this *= o.inverse(); }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(const RatFunc& a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc inverse() const;
  RatFunc pow(long e) const;

  /// Partial derivative in v, all other variables held fixed.
  RatFunc derivative(Var v) const;
  /// z <-> zbar, coefficients conjugated, p and q fixed.
  RatFunc conj() const;
  /// Simultaneous substitution; variables without an entry stay as they are.
  RatFunc substitute(const std::map<std::uint32_t, RatFunc>& values) const;
  /// Value at a point; throws DivisionByZero if the denominator vanishes.
  GQ eval(const std::function<GQ(Var)>& value) const;

  /// Canonical text, re-parsable by parse_ratfunc.
  std::string str() const;
  std::size_t complexity() const { return num_.complexity() + den_.complexity(); }

 private:
  RatFunc(Polynomial n, Polynomial d, bool) : num_(std::move(n)), den_(std::move(d)) {}
  Polynomial num_;
  Polynomial den_;
};

/// Wirtinger derivative with respect to a chart variable (z and zbar independent).
RatFunc wirtinger_diff(const RatFunc& f, Var v, const ChartVars& chart);
inline RatFunc formal_conjugate(const RatFunc& f) { return f.conj(); }

}  // namespace gcx
