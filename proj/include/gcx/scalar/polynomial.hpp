#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcx/scalar/gaussian_rational.hpp"
#include "gcx/scalar/variable.hpp"

namespace gcx {

/// Sparse power product; factors sorted by variable id, exponents > 0.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  static Monomial of(Var v, std::uint32_t e = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(std::uint32_t var_id) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& o) const;
  /// Quotient if o divides *this.
  std::optional<Monomial> divide(const Monomial& o) const;
  Monomial without(std::uint32_t var_id) const;
  Monomial gcd(const Monomial& o) const;
  Monomial conj() const;

  /// Graded lexicographic order over the repo-wide variable order.
  friend std::strong_ordering grlex(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::string str() const;

 private:
  explicit Monomial(std::vector<Factor> f);
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

struct Term {
  Monomial mono;
  GQ coeff;
};

/// Multivariate polynomial over Q(i), terms kept in decreasing grlex order.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const GQ& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(GQ(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial variable(Var v);
  static Polynomial term(const Monomial& m, const GQ& c);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  GQ constant_value() const;
  const Term& leading() const { return terms_.front(); }
  std::uint32_t total_degree() const;
  std::size_t size() const { return terms_.size(); }

  std::vector<std::uint32_t> variable_ids() const;
  std::uint32_t degree_in(std::uint32_t var_id) const;
  /// Coefficients c_e with p = sum_e c_e * v^e.
  std::vector<Polynomial> coefficients_in(std::uint32_t var_id) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  Polynomial scaled(const GQ& c) const;
  Polynomial times(const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Exact quotient when b divides *this, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& b) const;
  Polynomial divide_monomial(const Monomial& m) const;
  Monomial monomial_content() const;
  /// Makes the leading coefficient 1.
  Polynomial monic() const;

  Polynomial derivative(Var v) const;
  Polynomial conj() const;
  GQ eval(const std::function<GQ(Var)>& value) const;

  std::string str() const;
  std::size_t complexity() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Monic greatest common divisor over Q(i)[vars]; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b with respect to var_id.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::uint32_t var_id);

}  // namespace gcx
