#include "gcx/cartan/forms.hpp"

#include <algorithm>

#include "gcx/error.hpp"

namespace gcx {

void require_same_chart(const ChartVars& a, const ChartVars& b) {
  require(a == b, ErrorCode::ChartMismatch, "operands live on different charts");
}

namespace {

std::string join_terms(const std::vector<std::pair<std::string, RatFunc>>& parts) {
  std::string out;
  for (const auto& [basis, f] : parts) {
    std::string t;
    if (basis.empty())
      t = f.str();
    else if (f.is_one())
      t = basis;
    else if (f == RatFunc(-1))
      t = "-" + basis;
    else
      t = "(" + f.str() + ")*" + basis;
    if (out.empty())
      out = t;
    else if (t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ------------------------------------------------------------------ VField

VField::VField(ChartVars chart, std::vector<RatFunc> coeffs) : chart_(chart), c_(std::move(coeffs)) {
  require(static_cast<int>(c_.size()) == chart_.dim(), ErrorCode::DimensionMismatch, "vector field length");
}

VField VField::coord(const ChartVars& chart, Var v) {
  VField x(chart);
  x.c_[chart.require_index(v)] = RatFunc(1);
  return x;
}

bool VField::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatFunc& f) { return f.is_zero(); });
}

RatFunc VField::apply(const RatFunc& f) const {
  RatFunc out;
  for (int i = 0; i < chart_.dim(); ++i)
    if (!c_[i].is_zero()) out += c_[i] * f.derivative(chart_.var(i));
  return out;
}

VField& VField::operator+=(const VField& o) {
  require_same_chart(chart_, o.chart_);
  for (int i = 0; i < chart_.dim(); ++i) c_[i] += o.c_[i];
  return *this;
}

VField& VField::operator-=(const VField& o) {
  require_same_chart(chart_, o.chart_);
  for (int i = 0; i < chart_.dim(); ++i) c_[i] -= o.c_[i];
  return *this;
}

VField operator-(const VField& a) {
  VField r = a;
  for (auto& f : r.c_) f = -f;
  return r;
}

VField operator*(const RatFunc& f, const VField& a) {
  VField r = a;
  for (auto& g : r.c_) g = f.is_zero() ? RatFunc() : f * g;
  return r;
}

VField VField::conj() const {
  VField r(chart_);
  for (int i = 0; i < chart_.dim(); ++i) r.c_[chart_.conj_index(i)] = c_[i].conj();
  return r;
}

std::string VField::str() const {
  std::vector<std::pair<std::string, RatFunc>> parts;
  for (int i = 0; i < chart_.dim(); ++i)
    if (!c_[i].is_zero()) parts.emplace_back("d/d" + chart_.var(i).name(), c_[i]);
  return join_terms(parts);
}

VField lie_bracket(const VField& x, const VField& y) {
  require_same_chart(x.chart(), y.chart());
  VField r(x.chart());
  for (int j = 0; j < x.chart().dim(); ++j) r[j] = x.apply(y[j]) - y.apply(x[j]);
  return r;
}

// ------------------------------------------------------------------- KForm

int sort_with_sign(KForm::Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

KForm::KForm(ChartVars chart, int degree) : chart_(chart), degree_(degree) {
  require(degree >= 0, ErrorCode::DegreeError, "negative form degree");
  require(degree <= kMaxFormDegree, ErrorCode::DegreeOverflow, "form degree above 3");
}

KForm KForm::scalar(const ChartVars& chart, const RatFunc& f) {
  KForm w(chart, 0);
  w.add({}, f);
  return w;
}

KForm KForm::monomial(const ChartVars& chart, const std::vector<Var>& vars, const RatFunc& f) {
  KForm w(chart, static_cast<int>(vars.size()));
  Index idx;
  for (Var v : vars) idx.push_back(chart.require_index(v));
  w.add(idx, f);
  return w;
}

RatFunc KForm::coeff(Index idx) const {
  require(static_cast<int>(idx.size()) == degree_, ErrorCode::DegreeError, "index length differs from degree");
  int s = sort_with_sign(idx);
  if (s == 0) return {};
  auto it = c_.find(idx);
  if (it == c_.end()) return {};
  return s > 0 ? it->second : -it->second;
}

void KForm::add(Index idx, const RatFunc& f) {
  require(static_cast<int>(idx.size()) == degree_, ErrorCode::DegreeError, "index length differs from degree");
  if (f.is_zero()) return;
  for (int i : idx) require(i >= 0 && i < chart_.dim(), ErrorCode::DimensionMismatch, "covector index out of range");
  int s = sort_with_sign(idx);
  if (s == 0) return;
  auto [it, inserted] = c_.try_emplace(idx);
  if (s > 0)
    it->second += f;
  else
    it->second -= f;
  if (it->second.is_zero()) c_.erase(it);
}

KForm& KForm::operator+=(const KForm& o) {
  require_same_chart(chart_, o.chart_);
  require(degree_ == o.degree_, ErrorCode::DegreeError, "sum of forms of different degree");
  for (const auto& [idx, f] : o.c_) add(idx, f);
  return *this;
}

KForm& KForm::operator-=(const KForm& o) { return *this += -o; }

KForm operator-(const KForm& a) {
  KForm r = a;
  for (auto& [idx, f] : r.c_) f = -f;
  return r;
}

KForm operator*(const RatFunc& f, const KForm& a) {
  KForm r(a.chart_, a.degree_);
  if (f.is_zero()) return r;
  for (const auto& [idx, g] : a.c_) r.c_.emplace(idx, f * g);
  return r;
}

bool operator==(const KForm& a, const KForm& b) {
  if (a.is_zero() && b.is_zero()) return a.chart_ == b.chart_;
  return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.c_ == b.c_;
}

KForm KForm::conj() const {
  KForm r(chart_, degree_);
  for (const auto& [idx, f] : c_) {
    Index j;
    for (int i : idx) j.push_back(chart_.conj_index(i));
    r.add(j, f.conj());
  }
  return r;
}

std::string KForm::str() const {
  std::vector<std::pair<std::string, RatFunc>> parts;
  for (const auto& [idx, f] : c_) {
    std::string basis;
    for (int i : idx) basis += (basis.empty() ? "d" : "^d") + chart_.var(i).name();
    parts.emplace_back(basis, f);
  }
  return join_terms(parts);
}

// ------------------------------------------------------------ calculus

KForm ext_d(const KForm& w) {
  require(w.degree() + 1 <= kMaxFormDegree, ErrorCode::DegreeOverflow, "exterior derivative above degree 3");
  const ChartVars& c = w.chart();
  KForm r(c, w.degree() + 1);
  for (const auto& [idx, f] : w.coeffs())
    for (int j = 0; j < c.dim(); ++j) {
      RatFunc df = f.derivative(c.var(j));
      if (df.is_zero()) continue;
      KForm::Index k{j};
      k.insert(k.end(), idx.begin(), idx.end());
      r.add(k, df);
    }
  return r;
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_chart(a.chart(), b.chart());
  require(a.degree() + b.degree() <= kMaxFormDegree, ErrorCode::DegreeOverflow, "wedge product above degree 3");
  KForm r(a.chart(), a.degree() + b.degree());
  for (const auto& [i, f] : a.coeffs())
    for (const auto& [j, g] : b.coeffs()) {
      KForm::Index k = i;
      k.insert(k.end(), j.begin(), j.end());
      r.add(k, f * g);
    }
  return r;
}

KForm interior(const VField& x, const KForm& w) {
  require_same_chart(x.chart(), w.chart());
  require(w.degree() >= 1, ErrorCode::DegreeError, "contraction of a function");
  KForm r(w.chart(), w.degree() - 1);
  for (const auto& [idx, f] : w.coeffs())
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const RatFunc& xs = x[idx[s]];
      if (xs.is_zero()) continue;
      KForm::Index rest;
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (t != s) rest.push_back(idx[t]);
      r.add(rest, s % 2 == 0 ? f * xs : -(f * xs));
    }
  return r;
}

KForm lie_derivative(const VField& x, const KForm& w) {
  require_same_chart(x.chart(), w.chart());
  const ChartVars& c = w.chart();
  KForm r(c, w.degree());
  for (const auto& [idx, f] : w.coeffs()) {
    r.add(idx, x.apply(f));
    for (std::size_t s = 0; s < idx.size(); ++s)
      for (int j = 0; j < c.dim(); ++j) {
        RatFunc dx = x[idx[s]].derivative(c.var(j));
        if (dx.is_zero()) continue;
        KForm::Index k = idx;
        k[s] = j;
        r.add(k, f * dx);
      }
  }
  return r;
}

RatFunc evaluate(const KForm& one_form, const VField& x) {
  require(one_form.degree() == 1, ErrorCode::DegreeError, "evaluation needs a 1-form");
  return interior(x, one_form).coeff({});
}

}  // namespace gcx
