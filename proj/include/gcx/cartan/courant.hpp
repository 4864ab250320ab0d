#pragma once

#include <string>

#include "gcx/cartan/forms.hpp"

namespace gcx {

/// Section X + xi of the complexified generalized tangent bundle on a chart.
class GSection {
 public:
  GSection() = default;
  explicit GSection(const ChartVars& chart) : vec_(chart), cov_(chart, 1) {}
  GSection(VField vec, KForm cov);
  static GSection vector(const VField& x) { return GSection(x, KForm(x.chart(), 1)); }
  static GSection covector(const KForm& xi) { return GSection(VField(xi.chart()), xi); }

  const ChartVars& chart() const { return vec_.chart(); }
  const VField& vec() const { return vec_; }
  const KForm& cov() const { return cov_; }
  bool is_zero() const { return vec_.is_zero() && cov_.is_zero(); }

  /// Component in the combined basis: vector coordinates first, then covectors.
  RatFunc component(int i) const;
  static GSection from_components(const ChartVars& chart, const std::vector<RatFunc>& c);

  GSection& operator+=(const GSection& o);
  GSection& operator-=(const GSection& o);
  friend GSection operator+(GSection a, const GSection& b) { return a += b; }
  friend GSection operator-(GSection a, const GSection& b) { return a -= b; }
  friend GSection operator-(const GSection& a) { return GSection(-a.vec_, -a.cov_); }
  friend GSection operator*(const RatFunc& f, const GSection& a) { return GSection(f * a.vec_, f * a.cov_); }
  friend bool operator==(const GSection& a, const GSection& b) { return a.vec_ == b.vec_ && a.cov_ == b.cov_; }

  GSection conj() const { return GSection(vec_.conj(), cov_.conj()); }
  std::string str() const;

 private:
  VField vec_;
  KForm cov_;
};

/// (X + xi, Y + eta) = xi(Y) + eta(X).
RatFunc pairing(const GSection& a, const GSection& b);

/// [X,Y] + L_X eta - L_Y xi - 1/2 d(eta(X) - xi(Y)).
GSection courant_bracket(const GSection& a, const GSection& b);

/// Cyclic sum of double brackets minus 1/6 d of the cyclic sum of pairings;
/// vanishes identically.
GSection jacobiator_defect(const GSection& a, const GSection& b, const GSection& c);

/// X + xi -> X + xi + i_X B.
GSection b_transform(const KForm& b, const GSection& e);

}  // namespace gcx
