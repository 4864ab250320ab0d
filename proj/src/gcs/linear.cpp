#include "gcx/gcs/linear.hpp"

#include "gcx/error.hpp"

namespace gcx {

namespace {

QMatrix columns_to_matrix(std::size_t rows, const std::vector<std::vector<GQ>>& cols) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

QMatrix pairing_matrix(std::size_t n) {
  QMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n + i) = GQ(1);
    g(n + i, i) = GQ(1);
  }
  return g;
}

std::string first_mismatch(const QMatrix& a, const QMatrix& b, const std::string& label) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j)))
        return label + "[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + a(i, j).str() + ", expected " +
               b(i, j).str();
  return {};
}

}  // namespace

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "hstack row counts");
  QMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

QMatrix entrywise_conj(const QMatrix& a) {
  return a.map([](const GQ& x) { return x.conj(); });
}

QMatrix column_basis(const QMatrix& a) {
  auto e = rref(a);
  QMatrix out(a.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, k) = a(i, e.pivots[k]);
  return out;
}

bool same_span(const QMatrix& a, const QMatrix& b) {
  std::size_t ra = rank(a), rb = rank(b);
  return ra == rb && rank(hstack(a, b)) == ra;
}

QMatrix LinearGCS::full() const {
  const std::size_t d = dim();
  require(J.rows() == d && J.cols() == d && beta.rows() == d && beta.cols() == d && B.rows() == d && B.cols() == d,
          ErrorCode::DimensionMismatch, "structure blocks must be 2n x 2n");
  QMatrix m(2 * d, 2 * d);
  m.set_block(0, 0, J);
  m.set_block(0, d, beta);
  m.set_block(d, 0, B);
  m.set_block(d, d, -J.transpose());
  return m;
}

LinearGCS LinearGCS::from_full(const QMatrix& m) {
  require(m.square() && m.rows() % 4 == 0, ErrorCode::DimensionMismatch, "structure operator must be 4n x 4n");
  const std::size_t d = m.rows() / 2;
  LinearGCS s;
  s.n = static_cast<int>(d / 2);
  s.J = m.block(0, 0, d, d);
  s.beta = m.block(0, d, d, d);
  s.B = m.block(d, 0, d, d);
  require(m.block(d, d, d, d) == -s.J.transpose(), ErrorCode::DimensionMismatch,
          "lower right block is not -J^T; operator is not skew-adjoint");
  return s;
}

LinearGCS LinearGCS::complex(int n) {
  LinearGCS s;
  s.n = n;
  s.J = QMatrix(2 * n, 2 * n);
  for (int l = 0; l < n; ++l) {
    s.J(n + l, l) = GQ(1);
    s.J(l, n + l) = GQ(-1);
  }
  s.beta = QMatrix(2 * n, 2 * n);
  s.B = QMatrix(2 * n, 2 * n);
  return s;
}

LinearGCS LinearGCS::symplectic(int n) {
  LinearGCS s;
  s.n = n;
  s.J = QMatrix(2 * n, 2 * n);
  // omega_0(d/dp) = dq and omega_0(d/dq) = -dp; beta = -omega_0^{-1} = omega_0 here
  QMatrix w(2 * n, 2 * n);
  for (int l = 0; l < n; ++l) {
    w(n + l, l) = GQ(1);
    w(l, n + l) = GQ(-1);
  }
  s.B = w;
  s.beta = w;
  return s;
}

LinearGCS LinearGCS::product(const LinearGCS& a, const LinearGCS& b) {
  // block diagonal: a chart C^k x R^{2m} lists x, y of the first factor, then p, q
  const int n = a.n + b.n;
  std::vector<int> pos_a, pos_b;
  for (int i = 0; i < 2 * a.n; ++i) pos_a.push_back(i);
  for (int i = 0; i < 2 * b.n; ++i) pos_b.push_back(2 * a.n + i);
  auto embed = [&](const QMatrix& ma, const QMatrix& mb) {
    QMatrix m(2 * n, 2 * n);
    for (int i = 0; i < 2 * a.n; ++i)
      for (int j = 0; j < 2 * a.n; ++j) m(pos_a[i], pos_a[j]) = ma(i, j);
    for (int i = 0; i < 2 * b.n; ++i)
      for (int j = 0; j < 2 * b.n; ++j) m(pos_b[i], pos_b[j]) = mb(i, j);
    return m;
  };
  LinearGCS s;
  s.n = n;
  s.J = embed(a.J, b.J);
  s.beta = embed(a.beta, b.beta);
  s.B = embed(a.B, b.B);
  return s;
}

LinearCheck check_linear_gcs(const LinearGCS& s) {
  QMatrix m = s.full();
  const std::size_t d = m.rows();
  LinearCheck out;
  QMatrix sq = m * m;
  QMatrix minus_id = -QMatrix::identity(d);
  out.squares_to_minus_one = sq == minus_id;
  if (!out.squares_to_minus_one) out.witness = first_mismatch(sq, minus_id, "J^2");
  QMatrix g = pairing_matrix(d / 2);
  QMatrix o = m.transpose() * g * m;
  out.orthogonal = o == g;
  if (!out.orthogonal && out.witness.empty()) out.witness = first_mismatch(o, g, "J^T G J");
  return out;
}

QMatrix LinearDirac::subspace() const {
  const std::size_t n = E.rows(), d = E.cols();
  require(eps.rows() == d && eps.cols() == d, ErrorCode::DimensionMismatch, "eps must be square on E");
  QMatrix et = E.transpose();
  std::vector<std::vector<GQ>> cols;
  for (std::size_t a = 0; a < d; ++a) {
    auto alpha = solve(et, eps.row(a));
    require(alpha.has_value(), ErrorCode::DimensionMismatch, "E basis is not independent");
    std::vector<GQ> c = E.col(a);
    c.insert(c.end(), alpha->begin(), alpha->end());
    cols.push_back(std::move(c));
  }
  for (auto& ann : nullspace(et)) {
    std::vector<GQ> c(n);
    c.insert(c.end(), ann.begin(), ann.end());
    cols.push_back(std::move(c));
  }
  return columns_to_matrix(2 * n, cols);
}

LinearDirac LinearDirac::from_subspace(const QMatrix& l) {
  require(l.rows() % 2 == 0, ErrorCode::DimensionMismatch, "subspace must live in V (+) V^*");
  const std::size_t n = l.rows() / 2;
  QMatrix u = l.block(0, 0, n, l.cols());
  QMatrix a = l.block(n, 0, n, l.cols());
  auto e = rref(u);
  const std::size_t d = e.pivots.size();
  LinearDirac out;
  out.E = QMatrix(n, d);
  out.eps = QMatrix(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) out.E(i, k) = u(i, e.pivots[k]);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      GQ v;
      for (std::size_t i = 0; i < n; ++i) v += a(i, e.pivots[x]) * u(i, e.pivots[y]);
      out.eps(x, y) = v;
    }
  return out;
}

LinearDirac plus_eigenspace(const LinearGCS& s) {
  QMatrix m = s.full();
  QMatrix shifted = m - GQ::i() * QMatrix::identity(m.rows());
  return LinearDirac::from_subspace(columns_to_matrix(m.rows(), nullspace(shifted)));
}

LinearDirac poisson_part(const LinearDirac& l) {
  const std::size_t n = l.E.rows(), d = l.E.cols();
  QMatrix ebar = entrywise_conj(l.E);
  std::vector<std::vector<GQ>> inter;
  for (const auto& k : nullspace(hstack(l.E, -ebar))) {
    std::vector<GQ> c(k.begin(), k.begin() + static_cast<long>(d));
    inter.push_back(l.E.apply(c));
  }
  // conjugation-invariant intersection: real and imaginary parts span it
  std::vector<std::vector<GQ>> real_parts;
  for (const auto& v : inter) {
    std::vector<GQ> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = GQ(v[i].re());
      im[i] = GQ(v[i].im());
    }
    real_parts.push_back(re);
    real_parts.push_back(im);
  }
  QMatrix delta = real_parts.empty() ? QMatrix(n, 0) : column_basis(columns_to_matrix(n, real_parts));
  const std::size_t r = delta.cols();
  std::vector<std::vector<GQ>> coords;
  for (std::size_t a = 0; a < r; ++a) {
    auto c = solve(l.E, delta.col(a));
    require(c.has_value(), ErrorCode::DimensionMismatch, "intersection escapes E");
    coords.push_back(*c);
  }
  QMatrix omega(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      GQ v;
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) v += coords[a][x] * l.eps(x, y) * coords[b][y];
      omega(a, b) = GQ(v.im());
    }
  return LinearDirac{delta, omega};
}

LinearDirac pushforward_dirac(const QMatrix& phi, const LinearDirac& p) {
  const std::size_t nv = phi.cols(), nw = phi.rows();
  require(static_cast<std::size_t>(p.ambient()) == nv, ErrorCode::DimensionMismatch, "map source differs from Dirac space");
  QMatrix l = p.subspace();
  const std::size_t k = l.cols();
  QMatrix u = l.block(0, 0, nv, k);
  QMatrix a = l.block(nv, 0, nv, k);
  // unknowns (c, alpha): a c - phi^T alpha = 0
  QMatrix sys = hstack(a, -phi.transpose());
  std::vector<std::vector<GQ>> image;
  for (const auto& v : nullspace(sys)) {
    std::vector<GQ> c(v.begin(), v.begin() + static_cast<long>(k));
    std::vector<GQ> alpha(v.begin() + static_cast<long>(k), v.end());
    std::vector<GQ> col = phi.apply(u.apply(c));
    col.insert(col.end(), alpha.begin(), alpha.end());
    image.push_back(std::move(col));
  }
  QMatrix span = column_basis(columns_to_matrix(2 * nw, image));
  return LinearDirac::from_subspace(span);
}

LinearMapCheck gen_complex_linear_check(const QMatrix& phi, const LinearGCS& source, const LinearGCS& target) {
  require(phi.cols() == static_cast<std::size_t>(source.dim()) && phi.rows() == static_cast<std::size_t>(target.dim()),
          ErrorCode::DimensionMismatch, "map shape does not match the structures");
  LinearDirac lv = plus_eigenspace(source);
  LinearDirac lw = plus_eigenspace(target);
  LinearMapCheck out;
  QMatrix image = phi * lv.E;
  out.e_inclusion = rank(hstack(lw.E, image)) == rank(lw.E);
  LinearDirac pushed = pushforward_dirac(phi, poisson_part(lv));
  out.poisson_match = same_span(pushed.subspace(), poisson_part(lw).subspace());
  return out;
}

bool complex_valued_criterion(const QMatrix& phi, const LinearGCS& source) {
  require(phi.rows() == 2 && phi.cols() == static_cast<std::size_t>(source.dim()), ErrorCode::DimensionMismatch,
          "criterion applies to maps into R^2");
  QMatrix j0 = LinearGCS::complex(1).J;
  return phi * source.J == j0 * phi && (phi * source.beta).is_zero();
}

}  // namespace gcx
