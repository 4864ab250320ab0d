#include "gcx/gcs/differentials.hpp"

#include <algorithm>

#include "gcx/error.hpp"

namespace gcx {

namespace {

bool all_zero(const std::vector<RatFunc>& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& f) { return f.is_zero(); });
}

// Complex-basis vector components -> real-basis components:
// d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.
QMatrix complex_to_real(const ChartVars& c) {
  QMatrix t = QMatrix::identity(c.dim());
  const GQ half = GQ::ratio(1, 2);
  const GQ ihalf(mpq_class(0), mpq_class(1, 2));
  for (int l = 1; l <= c.k(); ++l) {
    int x = c.z_index(l), y = c.zbar_index(l);
    t(x, x) = half;
    t(y, x) = -ihalf;
    t(x, y) = half;
    t(y, y) = ihalf;
  }
  return t;
}

}  // namespace

bool LMinusCovector::is_zero() const { return all_zero(values); }
bool LPlusCovector::is_zero() const { return all_zero(values); }

LMinusCovector d_minus(const RatFunc& f, const ModelChart& chart) {
  LMinusCovector out;
  for (const auto& u : chart.lminus()) out.values.push_back(u.vec().apply(f));
  out.rep = chart.combine_plus(chart.frame_pairing_inverse().transpose().apply(out.values));
  return out;
}

LPlusCovector d_plus(const RatFunc& f, const ModelChart& chart) {
  LPlusCovector out;
  for (const auto& l : chart.lplus()) out.values.push_back(l.vec().apply(f));
  out.rep = chart.combine_minus(chart.frame_pairing_inverse().apply(out.values));
  return out;
}

RatFunc poisson_bracket(const RatFunc& f, const RatFunc& g, const ModelChart& chart) {
  return pairing(d_plus(f, chart).rep, d_minus(g, chart).rep);
}

// ------------------------------------------------------------ L- forms

LMinusForm::LMinusForm(int frame_size, int degree) : size_(frame_size), degree_(degree) {
  require(degree >= 0, ErrorCode::DegreeError, "negative form degree");
  require(degree <= kMaxFormDegree, ErrorCode::DegreeOverflow, "L- form degree above 3");
}

LMinusForm LMinusForm::function(int frame_size, const RatFunc& f) {
  LMinusForm w(frame_size, 0);
  w.add({}, f);
  return w;
}

LMinusForm LMinusForm::from_covector(const LMinusCovector& c) {
  LMinusForm w(static_cast<int>(c.values.size()), 1);
  for (std::size_t j = 0; j < c.values.size(); ++j) w.add({static_cast<int>(j)}, c.values[j]);
  return w;
}

RatFunc LMinusForm::value(Index idx) const {
  require(static_cast<int>(idx.size()) == degree_, ErrorCode::DegreeError, "tuple length differs from degree");
  int s = sort_with_sign(idx);
  if (s == 0) return {};
  auto it = v_.find(idx);
  if (it == v_.end()) return {};
  return s > 0 ? it->second : -it->second;
}

void LMinusForm::add(Index idx, const RatFunc& f) {
  require(static_cast<int>(idx.size()) == degree_, ErrorCode::DegreeError, "tuple length differs from degree");
  if (f.is_zero()) return;
  for (int i : idx) require(i >= 0 && i < size_, ErrorCode::DimensionMismatch, "frame index out of range");
  int s = sort_with_sign(idx);
  if (s == 0) return;
  auto [it, inserted] = v_.try_emplace(idx);
  if (s > 0)
    it->second += f;
  else
    it->second -= f;
  if (it->second.is_zero()) v_.erase(it);
}

std::vector<std::vector<std::vector<RatFunc>>> lminus_structure(const ModelChart& chart) {
  const int d = chart.dim();
  std::vector<std::vector<std::vector<RatFunc>>> c(d, std::vector<std::vector<RatFunc>>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (b < a) {
        c[a][b] = c[b][a];
        for (auto& x : c[a][b]) x = -x;
        continue;
      }
      if (a == b) {
        c[a][b].assign(d, RatFunc());
        continue;
      }
      GSection br = courant_bracket(chart.lminus()[a], chart.lminus()[b]);
      auto dec = chart.decompose(br);
      require(all_zero(dec.plus), ErrorCode::FrameError, "L- frame is not closed under the bracket");
      c[a][b] = dec.minus;
    }
  return c;
}

LMinusForm d_algebroid(const LMinusForm& w, const ModelChart& chart) {
  return d_algebroid(w, chart, lminus_structure(chart));
}

LMinusForm d_algebroid(const LMinusForm& w, const ModelChart& chart,
                       const std::vector<std::vector<std::vector<RatFunc>>>& structure) {
  const int d = chart.dim();
  require(w.frame_size() == d, ErrorCode::DimensionMismatch, "form is not on this chart's frame");
  require(w.degree() + 1 <= kMaxFormDegree, ErrorCode::DegreeOverflow, "L- differential above degree 3");
  const int k = w.degree() + 1;
  LMinusForm out(d, k);
  if (w.is_zero() || k > d) return out;
  // enumerate sorted k-tuples of frame indices
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    RatFunc acc;
    for (int s = 0; s < k; ++s) {
      std::vector<int> rest;
      for (int t = 0; t < k; ++t)
        if (t != s) rest.push_back(idx[t]);
      RatFunc v = w.value(rest);
      if (!v.is_zero()) {
        RatFunc term = chart.lminus()[idx[s]].vec().apply(v);
        acc += s % 2 == 0 ? term : -term;
      }
    }
    for (int s = 0; s < k; ++s)
      for (int t = s + 1; t < k; ++t) {
        std::vector<int> rest;
        for (int r = 0; r < k; ++r)
          if (r != s && r != t) rest.push_back(idx[r]);
        const auto& cst = structure[idx[s]][idx[t]];
        RatFunc term;
        for (int m = 0; m < d; ++m) {
          if (cst[m].is_zero()) continue;
          std::vector<int> full{m};
          full.insert(full.end(), rest.begin(), rest.end());
          RatFunc v = w.value(full);
          if (!v.is_zero()) term += cst[m] * v;
        }
        acc += (s + t) % 2 == 0 ? term : -term;
      }
    out.add(idx, acc);
    int p = k - 1;
    while (p >= 0 && idx[p] == d - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

// ------------------------------------------------------- holomorphy tests

LinearGCS linear_structure_at(const ModelChart& chart, const Point& pt) {
  const ChartVars& c = chart.vars();
  const int d = c.dim();
  QMatrix p(2 * d, 2 * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < 2 * d; ++i) {
      p(i, j) = eval_at(chart.lplus()[j].component(i), c, pt);
      p(i, d + j) = eval_at(chart.lminus()[j].component(i), c, pt);
    }
  QMatrix diag(2 * d, 2 * d);
  for (int j = 0; j < d; ++j) {
    diag(j, j) = GQ::i();
    diag(d + j, d + j) = -GQ::i();
  }
  auto pinv = inverse(p);
  require(pinv.has_value(), ErrorCode::FrameError, "frames degenerate at sample point");
  QMatrix jc = p * diag * *pinv;
  QMatrix t = complex_to_real(c);
  QMatrix s(2 * d, 2 * d);
  s.set_block(0, 0, t);
  s.set_block(d, d, inverse(t)->transpose());
  QMatrix jr = s * jc * *inverse(s);
  for (std::size_t i = 0; i < jr.rows(); ++i)
    for (std::size_t j = 0; j < jr.cols(); ++j)
      require(jr(i, j).is_real(), ErrorCode::FrameError, "structure is not real at sample point");
  return LinearGCS::from_full(jr);
}

QMatrix real_differential(const RatFunc& f, const ModelChart& chart, const Point& pt) {
  const ChartVars& c = chart.vars();
  const int d = c.dim();
  std::vector<GQ> dfc(d);
  for (int i = 0; i < d; ++i) dfc[i] = eval_at(f.derivative(c.var(i)), c, pt);
  // covector components transform by T^T: alpha_complex = T^T alpha_real
  auto dfr = solve(complex_to_real(c).transpose(), dfc);
  QMatrix out(2, d);
  for (int i = 0; i < d; ++i) {
    out(0, i) = GQ((*dfr)[i].re());
    out(1, i) = GQ((*dfr)[i].im());
  }
  return out;
}

bool HolomorphyReport::consistent() const {
  bool base = coordinate_criterion == holomorphic && pointwise_linear == holomorphic && cotangent_in_lminus == holomorphic;
  return base && (!pushforward || *pushforward == holomorphic);
}

HolomorphyReport is_gen_holomorphic(const RatFunc& f, const ModelChart& chart, int sample_count,
                                    bool with_pushforward) {
  const ChartVars& c = chart.vars();
  const int d = c.dim();
  HolomorphyReport r;

  LMinusCovector dm = d_minus(f, chart);
  r.holomorphic = dm.is_zero();
  for (int j = 0; j < d && r.witness.empty(); ++j)
    if (!dm.values[j].is_zero())
      r.witness = "d_minus(f) on " + chart.lminus()[j].str() + " = " + dm.values[j].str();

  // canonical-coordinate criterion: holomorphic in z, constant in p, q, and a
  // Casimir of pi when the chart carries one
  bool crit = true;
  for (int l = 1; l <= c.k(); ++l) crit = crit && f.derivative(Var::zbar(l)).is_zero();
  for (int l = 1; l <= c.m(); ++l) crit = crit && f.derivative(Var::p(l)).is_zero() && f.derivative(Var::q(l)).is_zero();
  if (crit && chart.kind() == ChartKind::HolomorphicPoisson)
    for (int mu = 0; mu < c.k(); ++mu) {
      RatFunc s;
      for (int l = 0; l < c.k(); ++l) s += f.derivative(Var::z(l + 1)) * chart.pi()(l, mu);
      crit = crit && s.is_zero();
    }
  r.coordinate_criterion = crit;

  // df in L- (intersected with T^*): consistency of l-_frame * x = (0, df)
  std::vector<RatFunc> rhs(2 * d);
  for (int i = 0; i < d; ++i) rhs[d + i] = f.derivative(c.var(i));
  r.cotangent_in_lminus = solve(frame_matrix(chart.lminus()), rhs).has_value();

  std::vector<RatFunc> defined{f};
  for (int i = 0; i < d; ++i) defined.push_back(f.derivative(c.var(i)));
  for (const auto& s : chart.lplus())
    for (int i = 0; i < 2 * d; ++i) defined.push_back(s.component(i));
  r.pointwise_linear = true;
  bool push = true;
  for (const Point& pt : sample_points(c, sample_count, defined)) {
    LinearGCS lin = linear_structure_at(chart, pt);
    QMatrix phi = real_differential(f, chart, pt);
    r.pointwise_linear = r.pointwise_linear && complex_valued_criterion(phi, lin);
    if (with_pushforward) push = push && gen_complex_linear_check(phi, lin, LinearGCS::complex(1)).ok();
  }
  if (with_pushforward) r.pushforward = push;
  return r;
}

}  // namespace gcx
