#include "gcx/gcs/chart.hpp"

#include "gcx/error.hpp"

namespace gcx {

namespace {

RatFunc pairing_value(const GSection& a, const GSection& b) { return pairing(a, b); }

}  // namespace

ModelChart::ModelChart(ChartVars vars, ChartKind kind, RMatrix pi, std::optional<KForm> b, std::vector<GSection> lplus)
    : vars_(vars), kind_(kind), pi_(std::move(pi)), b_(std::move(b)), lplus_(std::move(lplus)) {
  const int d = vars_.dim();
  for (const auto& s : lplus_) lminus_.push_back(s.conj());
  g_ = RMatrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g_(i, j) = pairing_value(lplus_[i], lminus_[j]);
  auto inv = inverse(g_);
  require(inv.has_value(), ErrorCode::FrameError, "L+ and L- frames are not dual");
  g_inv_ = *std::move(inv);
}

ModelChart ModelChart::darboux(int k, int m) {
  ChartVars c(k, m);
  std::vector<GSection> f;
  for (int l = 1; l <= k; ++l) f.push_back(GSection::vector(VField::coord(c, Var::z(l))));
  for (int l = 1; l <= k; ++l) f.push_back(GSection::covector(KForm::monomial(c, {Var::zbar(l)})));
  const RatFunc i = GQ::i();
  for (int l = 1; l <= m; ++l)
    f.emplace_back(VField::coord(c, Var::p(l)), KForm::monomial(c, {Var::q(l)}, -i));
  for (int l = 1; l <= m; ++l)
    f.emplace_back(VField::coord(c, Var::q(l)), KForm::monomial(c, {Var::p(l)}, i));
  return ModelChart(c, ChartKind::DarbouxProduct, RMatrix(k, k), std::nullopt, std::move(f));
}

ModelChart ModelChart::holomorphic_poisson(int k, int m, const RMatrix& pi) {
  ChartVars c(k, m);
  require(pi.rows() == static_cast<std::size_t>(k) && pi.cols() == static_cast<std::size_t>(k),
          ErrorCode::InvalidPoissonData, "pi must be k x k");
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      require(pi(a, b) == -pi(b, a), ErrorCode::InvalidPoissonData, "pi is not antisymmetric");
      for (auto id : pi(a, b).variable_ids()) {
        Var v = Var::from_id(id);
        require(v.kind == VarKind::Z && v.index <= k, ErrorCode::InvalidPoissonData,
                "pi entry " + pi(a, b).str() + " depends on " + v.name());
      }
    }
  std::vector<GSection> f;
  for (int l = 1; l <= k; ++l) f.push_back(GSection::vector(VField::coord(c, Var::z(l))));
  // dzbar_l + beta(dzbar_l)/2i = dzbar_l + 1/4 sum_mu conj(pi_{l mu}) d/dzbar_mu
  for (int l = 1; l <= k; ++l) {
    VField x(c);
    for (int mu = 1; mu <= k; ++mu) x[c.zbar_index(mu)] = pi(l - 1, mu - 1).conj() * GQ::ratio(1, 4);
    f.emplace_back(x, KForm::monomial(c, {Var::zbar(l)}));
  }
  const RatFunc i = GQ::i();
  for (int l = 1; l <= m; ++l)
    f.emplace_back(VField::coord(c, Var::p(l)), KForm::monomial(c, {Var::q(l)}, -i));
  for (int l = 1; l <= m; ++l)
    f.emplace_back(VField::coord(c, Var::q(l)), KForm::monomial(c, {Var::p(l)}, i));
  return ModelChart(c, ChartKind::HolomorphicPoisson, pi, std::nullopt, std::move(f));
}

ModelChart ModelChart::b_transformed(const KForm& b) const {
  require(b.degree() == 2, ErrorCode::InvalidBField, "B-field must be a 2-form");
  require(b.chart() == vars_, ErrorCode::ChartMismatch, "B-field lives on another chart");
  require(ext_d(b).is_zero(), ErrorCode::InvalidBField, "B-field is not closed");
  require(b.conj() == b, ErrorCode::InvalidBField, "B-field is not real");
  std::vector<GSection> f;
  for (const auto& s : lplus_) f.push_back(b_transform(b, s));
  KForm total = b_ ? *b_ + b : b;
  return ModelChart(vars_, kind_, pi_, total, std::move(f));
}

std::string ModelChart::describe() const {
  std::string s = kind_ == ChartKind::DarbouxProduct ? "darboux-product" : "holomorphic-poisson";
  s += " k=" + std::to_string(vars_.k()) + " m=" + std::to_string(vars_.m());
  if (kind_ == ChartKind::HolomorphicPoisson) {
    s += " pi=[";
    for (std::size_t a = 0; a < pi_.rows(); ++a)
      for (std::size_t b = a + 1; b < pi_.cols(); ++b) {
        if (s.back() != '[') s += ", ";
        s += "pi" + std::to_string(a + 1) + std::to_string(b + 1) + "=" + pi_(a, b).str();
      }
    s += "]";
  }
  if (b_) s += " B=" + b_->str();
  return s;
}

ModelChart::Decomposition ModelChart::decompose(const GSection& s) const {
  const int d = dim();
  std::vector<RatFunc> with_minus(d), with_plus(d);
  for (int j = 0; j < d; ++j) with_minus[j] = pairing(s, lminus_[j]);
  for (int i = 0; i < d; ++i) with_plus[i] = pairing(s, lplus_[i]);
  // (s, l-_j) = sum_i a_i G(i, j) and (s, l+_i) = sum_j b_j G(i, j)
  Decomposition out;
  out.plus = g_inv_.transpose().apply(with_minus);
  out.minus = g_inv_.apply(with_plus);
  return out;
}

GSection ModelChart::combine_plus(const std::vector<RatFunc>& a) const {
  GSection s(vars_);
  for (int i = 0; i < dim(); ++i)
    if (!a[i].is_zero()) s += a[i] * lplus_[i];
  return s;
}

GSection ModelChart::combine_minus(const std::vector<RatFunc>& b) const {
  GSection s(vars_);
  for (int i = 0; i < dim(); ++i)
    if (!b[i].is_zero()) s += b[i] * lminus_[i];
  return s;
}

std::vector<GSection> symplectic_frame(const ChartVars& chart, const KForm& omega) {
  require(omega.degree() == 2, ErrorCode::DegreeError, "symplectic form must be a 2-form");
  std::vector<GSection> f;
  for (Var v : chart.vars()) {
    VField x = VField::coord(chart, v);
    f.emplace_back(x, RatFunc(-GQ::i()) * interior(x, omega));
  }
  return f;
}

RMatrix frame_matrix(const std::vector<GSection>& frame) {
  require(!frame.empty(), ErrorCode::DimensionMismatch, "empty frame");
  const ChartVars& c = frame[0].chart();
  RMatrix m(2 * c.dim(), frame.size());
  for (std::size_t j = 0; j < frame.size(); ++j) {
    require_same_chart(c, frame[j].chart());
    for (int i = 0; i < 2 * c.dim(); ++i) m(i, j) = frame[j].component(i);
  }
  return m;
}

IntegrabilityReport check_integrability(const std::vector<GSection>& frame) {
  RMatrix f = frame_matrix(frame);
  const ChartVars& c = frame[0].chart();
  IntegrabilityReport out;
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = a + 1; b < frame.size(); ++b) {
      GSection br = courant_bracket(frame[a], frame[b]);
      ++out.pairs_checked;
      std::vector<RatFunc> rhs(2 * c.dim());
      for (int i = 0; i < 2 * c.dim(); ++i) rhs[i] = br.component(i);
      if (!solve(f, rhs)) {
        out.ok = false;
        out.witness = "[f" + std::to_string(a) + ", f" + std::to_string(b) + "] = " + br.str() + " leaves the span";
        return out;
      }
    }
  return out;
}

ChartReport check_chart(const ModelChart& chart) {
  ChartReport r;
  const int d = chart.dim();
  r.isotropic = true;
  for (int a = 0; a < d && r.isotropic; ++a)
    for (int b = a; b < d; ++b) {
      if (!pairing(chart.lplus()[a], chart.lplus()[b]).is_zero()) {
        r.isotropic = false;
        r.witness = "L+ frame not isotropic at (" + std::to_string(a) + ", " + std::to_string(b) + ")";
        break;
      }
      if (!pairing(chart.lminus()[a], chart.lminus()[b]).is_zero()) {
        r.isotropic = false;
        r.witness = "L- frame not isotropic at (" + std::to_string(a) + ", " + std::to_string(b) + ")";
        break;
      }
    }
  r.dual = !det(chart.frame_pairing()).is_zero();
  if (!r.dual && r.witness.empty()) r.witness = "frame pairing matrix is singular";
  r.conjugate = true;
  for (int a = 0; a < d; ++a)
    if (!(chart.lminus()[a] == chart.lplus()[a].conj())) r.conjugate = false;
  if (!r.conjugate && r.witness.empty()) r.witness = "L- frame is not the conjugate of L+";
  IntegrabilityReport plus = check_integrability(chart.lplus());
  IntegrabilityReport minus = check_integrability(chart.lminus());
  r.integrable = plus.ok && minus.ok;
  if (!r.integrable && r.witness.empty()) r.witness = plus.ok ? "L-: " + minus.witness : "L+: " + plus.witness;
  return r;
}

std::vector<Point> sample_points(const ChartVars& chart, int count, const std::vector<RatFunc>& must_be_defined) {
  std::vector<Point> out;
  for (long s = 0; static_cast<int>(out.size()) < count; ++s) {
    require(s < 10000, ErrorCode::SolverFailure, "no admissible sample points found");
    Point pt(chart.dim());
    for (int l = 1; l <= chart.k(); ++l) {
      GQ z(mpq_class(2 + s + 3 * l, 1 + s % 3), mpq_class(1 + 2 * s - l, 2 + l));
      pt[chart.z_index(l)] = z;
      pt[chart.zbar_index(l)] = z.conj();
    }
    for (int l = 1; l <= chart.m(); ++l) {
      pt[chart.p_index(l)] = GQ(mpq_class(3 + s + 2 * l, 2 + l));
      pt[chart.q_index(l)] = GQ(mpq_class(1 + 2 * s - 3 * l, 1 + s % 4));
    }
    bool ok = true;
    for (const auto& f : must_be_defined)
      if (f.den().eval([&](Var v) { return pt[chart.require_index(v)]; }).is_zero()) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(pt));
  }
  return out;
}

GQ eval_at(const RatFunc& f, const ChartVars& chart, const Point& pt) {
  return f.eval([&](Var v) { return pt[chart.require_index(v)]; });
}

}  // namespace gcx
