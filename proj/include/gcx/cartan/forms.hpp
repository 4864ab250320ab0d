#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcx/scalar/ratfunc.hpp"

namespace gcx {

constexpr int kMaxFormDegree = 3;

/// Vector field on a chart, one coefficient per coordinate basis vector
/// (ordered as ChartVars basis indices).
class VField {
 public:
  VField() = default;
  explicit VField(ChartVars chart) : chart_(chart), c_(chart.dim()) {}
  VField(ChartVars chart, std::vector<RatFunc> coeffs);
  /// Coordinate field d/dv.
  static VField coord(const ChartVars& chart, Var v);

  const ChartVars& chart() const { return chart_; }
  const RatFunc& operator[](int i) const { return c_[i]; }
  RatFunc& operator[](int i) { return c_[i]; }
  const std::vector<RatFunc>& coeffs() const { return c_; }
  bool is_zero() const;

  /// Directional derivative X(f).
  RatFunc apply(const RatFunc& f) const;

  VField& operator+=(const VField& o);
  VField& operator-=(const VField& o);
  friend VField operator+(VField a, const VField& b) { return a += b; }
  friend VField operator-(VField a, const VField& b) { return a -= b; }
  friend VField operator-(const VField& a);
  friend VField operator*(const RatFunc& f, const VField& a);
  friend bool operator==(const VField& a, const VField& b) { return a.chart_ == b.chart_ && a.c_ == b.c_; }

  VField conj() const;
  std::string str() const;

 private:
  ChartVars chart_;
  std::vector<RatFunc> c_;
};

VField lie_bracket(const VField& x, const VField& y);

/// Differential form of degree 0..3 with coefficients on sorted basis-index
/// tuples, so antisymmetry is structural.
class KForm {
 public:
  using Index = std::vector<int>;

  KForm() = default;
  KForm(ChartVars chart, int degree);
  static KForm scalar(const ChartVars& chart, const RatFunc& f);
  /// f * dv_1 ^ ... ^ dv_k in the given (possibly unsorted) order.
  static KForm monomial(const ChartVars& chart, const std::vector<Var>& vars, const RatFunc& f = RatFunc(1));

  const ChartVars& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<Index, RatFunc>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient on any index tuple; repeated indices give 0, order gives the sign.
  RatFunc coeff(Index idx) const;
  /// Adds f * dx_idx, reordering idx and adjusting the sign.
  void add(Index idx, const RatFunc& f);

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(const KForm& a);
  friend KForm operator*(const RatFunc& f, const KForm& a);
  friend bool operator==(const KForm& a, const KForm& b);

  KForm conj() const;
  std::string str() const;

 private:
  ChartVars chart_;
  int degree_ = 0;
  std::map<Index, RatFunc> c_;
};

/// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(KForm::Index& idx);

KForm ext_d(const KForm& w);
KForm wedge(const KForm& a, const KForm& b);
KForm interior(const VField& x, const KForm& w);
/// Coordinate formula for the Lie derivative.
KForm lie_derivative(const VField& x, const KForm& w);
/// Value of a 1-form on a vector field.
RatFunc evaluate(const KForm& one_form, const VField& x);

/// Throws ChartMismatch unless both charts agree.
void require_same_chart(const ChartVars& a, const ChartVars& b);

}  // namespace gcx
