#include "gcx/cartan/courant.hpp"

#include "gcx/error.hpp"

namespace gcx {

GSection::GSection(VField vec, KForm cov) : vec_(std::move(vec)), cov_(std::move(cov)) {
  require_same_chart(vec_.chart(), cov_.chart());
  require(cov_.degree() == 1, ErrorCode::DegreeError, "covector part must be a 1-form");
}

RatFunc GSection::component(int i) const {
  const int d = chart().dim();
  require(i >= 0 && i < 2 * d, ErrorCode::DimensionMismatch, "section component out of range");
  return i < d ? vec_[i] : cov_.coeff({i - d});
}

GSection GSection::from_components(const ChartVars& chart, const std::vector<RatFunc>& c) {
  const int d = chart.dim();
  require(static_cast<int>(c.size()) == 2 * d, ErrorCode::DimensionMismatch, "section component count");
  GSection s(chart);
  for (int i = 0; i < d; ++i) s.vec_[i] = c[i];
  for (int i = 0; i < d; ++i) s.cov_.add({i}, c[d + i]);
  return s;
}

GSection& GSection::operator+=(const GSection& o) {
  vec_ += o.vec_;
  cov_ += o.cov_;
  return *this;
}

GSection& GSection::operator-=(const GSection& o) {
  vec_ -= o.vec_;
  cov_ -= o.cov_;
  return *this;
}

std::string GSection::str() const {
  if (vec_.is_zero()) return cov_.str();
  if (cov_.is_zero()) return vec_.str();
  std::string c = cov_.str();
  return vec_.str() + (c[0] == '-' ? " - " + c.substr(1) : " + " + c);
}

RatFunc pairing(const GSection& a, const GSection& b) {
  require_same_chart(a.chart(), b.chart());
  return evaluate(a.cov(), b.vec()) + evaluate(b.cov(), a.vec());
}

GSection courant_bracket(const GSection& a, const GSection& b) {
  require_same_chart(a.chart(), b.chart());
  const ChartVars& c = a.chart();
  VField v = lie_bracket(a.vec(), b.vec());
  KForm half_d = ext_d(KForm::scalar(c, (evaluate(b.cov(), a.vec()) - evaluate(a.cov(), b.vec())) * GQ::ratio(1, 2)));
  KForm w = lie_derivative(a.vec(), b.cov()) - lie_derivative(b.vec(), a.cov()) - half_d;
  return GSection(std::move(v), std::move(w));
}

GSection jacobiator_defect(const GSection& a, const GSection& b, const GSection& c) {
  require_same_chart(a.chart(), b.chart());
  require_same_chart(a.chart(), c.chart());
  GSection ab = courant_bracket(a, b), bc = courant_bracket(b, c), ca = courant_bracket(c, a);
  GSection cyc = courant_bracket(ab, c) + courant_bracket(bc, a) + courant_bracket(ca, b);
  RatFunc t = (pairing(ab, c) + pairing(bc, a) + pairing(ca, b)) * GQ::ratio(1, 6);
  return cyc - GSection::covector(ext_d(KForm::scalar(a.chart(), t)));
}

GSection b_transform(const KForm& b, const GSection& e) {
  require(b.degree() == 2, ErrorCode::DegreeError, "B-field must be a 2-form");
  require_same_chart(b.chart(), e.chart());
  return GSection(e.vec(), e.cov() + interior(e.vec(), b));
}

}  // namespace gcx
