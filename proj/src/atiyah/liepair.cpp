#include "gcx/atiyah/liepair.hpp"

#include "gcx/error.hpp"

namespace gcx {

namespace {

RMatrix bracket(const RMatrix& a, const RMatrix& b) { return a * b - b * a; }

RMatrix derive(const VField& v, const RMatrix& m) {
  return m.map([&](const RatFunc& f) { return v.apply(f); });
}

/// Columns a_frame..., lifts... of a chart's Lie pair data.
RMatrix frame_basis(const LiePairData& d) {
  const int dim = d.chart.dim();
  RMatrix m(dim, d.a_frame.size() + d.lifts.size());
  std::size_t col = 0;
  for (const auto* fam : {&d.a_frame, &d.lifts})
    for (const auto& v : *fam) {
      for (int b = 0; b < dim; ++b) m(b, col) = v[b];
      ++col;
    }
  return m;
}

LiePairData::Split split_with(const RMatrix& basis, std::size_t n_a, const VField& v) {
  auto x = solve(basis, v.coeffs());
  if (!x) fail(ErrorCode::FrameError, "vector field " + v.str() + " is outside the span of the frame and lifts");
  LiePairData::Split s;
  s.a.assign(x->begin(), x->begin() + static_cast<long>(n_a));
  s.lift.assign(x->begin() + static_cast<long>(n_a), x->end());
  return s;
}

void check_shapes(const LiePairData& d) {
  require(d.flat.size() == d.a_frame.size(), ErrorCode::ShapeMismatch, "one flat matrix per A-frame vector");
  require(d.gamma.size() == d.lifts.size(), ErrorCode::ShapeMismatch, "one extension matrix per lift");
  for (const auto* fam : {&d.flat, &d.gamma})
    for (const auto& m : *fam)
      require(static_cast<int>(m.rows()) == d.rank && static_cast<int>(m.cols()) == d.rank, ErrorCode::ShapeMismatch,
              "connection matrices must be rank x rank");
}

void check_involutive(const LiePairData& d) {
  for (std::size_t x = 0; x < d.a_frame.size(); ++x)
    for (std::size_t y = x + 1; y < d.a_frame.size(); ++y) {
      VField br = lie_bracket(d.a_frame[x], d.a_frame[y]);
      for (const auto& c : d.decompose(br).lift)
        if (!c.is_zero()) fail(ErrorCode::FrameError, "A-frame is not involutive: [a" + std::to_string(x) + ", a" +
                                                          std::to_string(y) + "] = " + br.str());
    }
}

/// (nabla_a xi)(u_l) for the Bott action on (P/A)* tensored with End(E).
std::vector<RMatrix> nabla(const LiePairData& d, std::size_t c, const std::vector<RMatrix>& xi) {
  const VField& a = d.a_frame[c];
  std::vector<RMatrix> out;
  for (std::size_t l = 0; l < d.lifts.size(); ++l) {
    RMatrix m = derive(a, xi[l]) + bracket(d.flat[c], xi[l]);
    const auto pr = d.decompose(lie_bracket(a, d.lifts[l])).lift;
    for (std::size_t mu = 0; mu < pr.size(); ++mu)
      if (!pr[mu].is_zero()) m -= pr[mu] * xi[mu];
    out.push_back(std::move(m));
  }
  return out;
}

/// Coordinates of chart j (basis order) as functions of chart-i coordinates.
std::vector<RatFunc> image_coordinates(const Cover& c, int i, int j) {
  const CoordinateChange& t = c.transition(i, j);
  std::vector<RatFunc> y = t.z;
  for (const auto& z : t.z) y.push_back(z.conj());
  y.insert(y.end(), t.p.begin(), t.p.end());
  y.insert(y.end(), t.q.begin(), t.q.end());
  return y;
}

}  // namespace

LiePairData LiePairData::from_chart(const ModelChart& chart, int rank) {
  require(rank >= 0, ErrorCode::ShapeMismatch, "negative rank");
  const ChartVars& v = chart.vars();
  const int dim = v.dim();
  RMatrix rows(chart.lminus().size(), dim);
  for (std::size_t a = 0; a < chart.lminus().size(); ++a)
    for (int b = 0; b < dim; ++b) rows(a, b) = chart.lminus()[a].vec()[b];
  auto e = rref(rows);

  LiePairData d;
  d.chart = chart;
  d.rank = rank;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) d.a_frame.emplace_back(v, e.reduced.row(r));
  std::size_t current = e.pivots.size();
  RMatrix acc = e.reduced.block(0, 0, current, dim);
  for (int b = 0; b < dim && current < static_cast<std::size_t>(dim); ++b) {
    RMatrix trial(current + 1, dim);
    trial.set_block(0, 0, acc);
    trial(current, b) = RatFunc(1);
    if (gcx::rank(trial) == current + 1) {
      acc = trial;
      ++current;
      d.lifts.push_back(VField::coord(v, v.var(b)));
    }
  }
  d.flat.assign(d.a_frame.size(), RMatrix(rank, rank));
  d.gamma.assign(d.lifts.size(), RMatrix(rank, rank));
  check_involutive(d);
  return d;
}

LiePairData LiePairData::from_connection(const ModelChart& chart, const std::vector<RMatrix>& a) {
  require(static_cast<int>(a.size()) == chart.type(), ErrorCode::ShapeMismatch, "one matrix per dz component");
  const int r = a.empty() ? 0 : static_cast<int>(a[0].rows());
  LiePairData d = from_chart(chart, r);
  for (std::size_t l = 0; l < d.lifts.size(); ++l)
    for (int lam = 0; lam < chart.type(); ++lam) {
      const RatFunc& c = d.lifts[l][chart.vars().z_index(lam + 1)];
      if (!c.is_zero()) d.gamma[l] += c * a[lam];
    }
  return d;
}

LiePairData::Split LiePairData::decompose(const VField& v) const {
  return split_with(frame_basis(*this), a_frame.size(), v);
}

RMatrix LiePairData::along(const VField& v) const {
  Split s = decompose(v);
  RMatrix m(rank, rank);
  for (std::size_t c = 0; c < s.a.size(); ++c)
    if (!s.a[c].is_zero()) m += s.a[c] * flat[c];
  for (std::size_t l = 0; l < s.lift.size(); ++l)
    if (!s.lift[l].is_zero()) m += s.lift[l] * gamma[l];
  return m;
}

LieTensor liepair_cocycle(const LiePairData& d) {
  check_shapes(d);
  check_involutive(d);
  LieTensor r;
  for (std::size_t c = 0; c < d.a_frame.size(); ++c) {
    const VField& a = d.a_frame[c];
    std::vector<RMatrix> row;
    for (std::size_t l = 0; l < d.lifts.size(); ++l) {
      const VField& u = d.lifts[l];
      row.push_back(derive(a, d.gamma[l]) - derive(u, d.flat[c]) + bracket(d.flat[c], d.gamma[l]) -
                    d.along(lie_bracket(a, u)));
    }
    r.push_back(std::move(row));
  }
  return r;
}

std::vector<std::vector<RMatrix>> flat_curvature(const LiePairData& d) {
  check_shapes(d);
  const std::size_t n = d.a_frame.size();
  std::vector<std::vector<RMatrix>> f(n, std::vector<RMatrix>(n, RMatrix(d.rank, d.rank)));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      f[x][y] = derive(d.a_frame[x], d.flat[y]) - derive(d.a_frame[y], d.flat[x]) + bracket(d.flat[x], d.flat[y]) -
                d.along(lie_bracket(d.a_frame[x], d.a_frame[y]));
    }
  return f;
}

LieTensor lie_d0(const LiePairData& d, const std::vector<RMatrix>& xi) {
  check_shapes(d);
  require(xi.size() == d.lifts.size(), ErrorCode::ShapeMismatch, "one matrix per lift");
  LieTensor out;
  for (std::size_t c = 0; c < d.a_frame.size(); ++c) out.push_back(nabla(d, c, xi));
  return out;
}

LieTwoTensor lie_d1(const LiePairData& d, const LieTensor& t) {
  check_shapes(d);
  const std::size_t n = d.a_frame.size(), p = d.lifts.size();
  require(t.size() == n, ErrorCode::ShapeMismatch, "one row per A-frame vector");
  LieTwoTensor out(n, std::vector<std::vector<RMatrix>>(n, std::vector<RMatrix>(p, RMatrix(d.rank, d.rank))));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const auto nx = nabla(d, x, t[y]);
      const auto ny = nabla(d, y, t[x]);
      const auto br = d.decompose(lie_bracket(d.a_frame[x], d.a_frame[y])).a;
      for (std::size_t l = 0; l < p; ++l) {
        RMatrix m = nx[l] - ny[l];
        for (std::size_t f = 0; f < n; ++f)
          if (!br[f].is_zero()) m -= br[f] * t[f][l];
        out[x][y][l] = std::move(m);
      }
    }
  return out;
}

bool is_zero(const LieTensor& t) {
  for (const auto& row : t)
    for (const auto& m : row)
      if (!m.is_zero()) return false;
  return true;
}

bool is_zero(const LieTwoTensor& t) {
  for (const auto& row : t)
    if (!is_zero(row)) return false;
  return true;
}

LiePairClassReport liepair_class_tests(const LiePairData& d1, const LiePairData& d2) {
  if (d1.chart.describe() != d2.chart.describe() || !(d1.chart.vars() == d2.chart.vars()))
    fail(ErrorCode::MismatchedData, "Lie pair data live on different charts");
  if (d1.rank != d2.rank) fail(ErrorCode::MismatchedData, "Lie pair data have different ranks");
  if (d1.a_frame != d2.a_frame || d1.lifts != d2.lifts)
    fail(ErrorCode::MismatchedData, "Lie pair data use different frames");
  if (d1.flat != d2.flat) fail(ErrorCode::MismatchedData, "Lie pair data have different flat parts");

  LiePairClassReport rep;
  const LieTensor r1 = liepair_cocycle(d1), r2 = liepair_cocycle(d2);
  rep.r1_closed = is_zero(lie_d1(d1, r1));
  rep.r2_closed = is_zero(lie_d1(d2, r2));
  std::vector<RMatrix> dg;
  for (std::size_t l = 0; l < d1.gamma.size(); ++l) dg.push_back(d1.gamma[l] - d2.gamma[l]);
  const LieTensor exact = lie_d0(d1, dg);
  rep.difference = r1;
  for (std::size_t c = 0; c < r1.size(); ++c)
    for (std::size_t l = 0; l < r1[c].size(); ++l) rep.difference[c][l] -= r2[c][l];
  rep.difference_exact = rep.difference == exact;
  return rep;
}

std::optional<std::vector<LiePairData>> flat_extension_solve(const GHBundle& b, const AnsatzSpace& ansatz) {
  const Cover& c = b.cover();
  ansatz.validate(c);
  const std::size_t r = b.rank();
  std::vector<LiePairData> data;
  for (int i = 0; i < c.size(); ++i) data.push_back(LiePairData::from_chart(c.chart(i), b.rank()));

  AffineSystem sys;
  std::vector<std::vector<AffineMatrix>> gamma(c.size());
  for (int i = 0; i < c.size(); ++i)
    for (std::size_t l = 0; l < data[i].lifts.size(); ++l) gamma[i].push_back(ansatz_matrix(sys, ansatz.basis[i], r, r));

  auto connection = [&](int i, const LiePairData::Split& s, auto&& rewrite) {
    AffineMatrix m = AffineMatrix::zero(r, r);
    for (std::size_t x = 0; x < s.a.size(); ++x)
      if (!s.a[x].is_zero()) m.constant += s.a[x] * rewrite(data[i].flat[x]);
    for (std::size_t l = 0; l < s.lift.size(); ++l)
      if (!s.lift[l].is_zero()) m += s.lift[l] * gamma[i][l].map([&](const RatFunc& f) { return rewrite(f); });
    return m;
  };
  auto keep = [](const auto& x) { return x; };

  // Vanishing curvature on each chart.
  for (int i = 0; i < c.size(); ++i) {
    const LiePairData& d = data[i];
    for (std::size_t x = 0; x < d.a_frame.size(); ++x)
      for (std::size_t l = 0; l < d.lifts.size(); ++l) {
        const VField& a = d.a_frame[x];
        const VField& u = d.lifts[l];
        AffineMatrix eq = gamma[i][l].map([&](const RatFunc& f) { return a.apply(f); });
        eq.constant -= derive(u, d.flat[x]);
        eq += d.flat[x] * gamma[i][l] - gamma[i][l] * d.flat[x];
        eq -= connection(i, d.decompose(lie_bracket(a, u)), keep);
        sys.require_zero(eq);
      }
  }

  // The connections agree on overlaps: for v on chart i,
  // v(phi) + conn_i(v) phi = phi conn_j(T_* v).
  for (auto [i, j] : c.overlap_list()) {
    const RMatrix phi = b.phi(i, j);
    const std::vector<RatFunc> y = image_coordinates(c, i, j);
    const RMatrix basis_j = c.pull(frame_basis(data[j]), i, j);
    auto pulled = [&](const auto& x) { return c.pull(x, i, j); };
    for (const auto* fam : {&data[i].a_frame, &data[i].lifts})
      for (const VField& v : *fam) {
        std::vector<RatFunc> w;
        for (const auto& yb : y) w.push_back(v.apply(yb));
        const auto sj = split_with(basis_j, data[j].a_frame.size(), VField(c.vars(), w));
        AffineMatrix eq = connection(i, data[i].decompose(v), keep) * phi - phi * connection(j, sj, pulled);
        eq.constant += derive(v, phi);
        sys.require_zero(eq);
      }
  }

  auto x = sys.solve();
  if (!x) return std::nullopt;
  for (int i = 0; i < c.size(); ++i) {
    for (std::size_t l = 0; l < data[i].lifts.size(); ++l) data[i].gamma[l] = gamma[i][l].evaluate(*x);
    if (!is_zero(liepair_cocycle(data[i]))) fail(ErrorCode::SolverFailure, "solved extension is not flat");
  }
  return data;
}

}  // namespace gcx
