#include "gcx/atiyah/ansatz.hpp"

#include <map>

#include "gcx/error.hpp"
#include "gcx/gcs/differentials.hpp"

namespace gcx {

namespace {

void exponent_vectors(int k, int lo, int window, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    int total = 0;
    for (int e : cur) total += e < 0 ? -e : e;
    if (total <= window) out.push_back(cur);
    return;
  }
  for (int e = lo; e <= window; ++e) {
    cur.push_back(e);
    exponent_vectors(k, lo, window, cur, out);
    cur.pop_back();
  }
}

bool holomorphic_on(const RatFunc& f, const ModelChart& chart) { return d_minus(f, chart).is_zero(); }

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex(a, b) < 0; }
};

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  Polynomial g = gcd(a, b);
  return *(a * b).divide_exact(g);
}

}  // namespace

AnsatzSpace AnsatzSpace::laurent(const Cover& c, int window, std::vector<bool> punctured) {
  require(window >= 1, ErrorCode::InvalidAnsatz, "ansatz window must be at least 1");
  if (punctured.empty()) punctured.assign(c.size(), false);
  require(static_cast<int>(punctured.size()) == c.size(), ErrorCode::ShapeMismatch, "one puncture flag per chart");
  AnsatzSpace a;
  a.window = window;
  a.punctured = punctured;
  const int k = c.type();
  for (int i = 0; i < c.size(); ++i) {
    std::vector<std::vector<int>> exps;
    std::vector<int> cur;
    exponent_vectors(k, punctured[i] ? -window : 0, window, cur, exps);
    std::vector<RatFunc> basis;
    for (const auto& e : exps) {
      RatFunc m(1);
      for (int l = 0; l < k; ++l) m *= RatFunc::variable(Var::z(l + 1)).pow(e[l]);
      if (holomorphic_on(m, c.chart(i))) basis.push_back(m);
    }
    a.basis.push_back(std::move(basis));
  }
  return a;
}

void AnsatzSpace::validate(const Cover& c) const {
  require(window >= 1, ErrorCode::InvalidAnsatz, "ansatz window must be at least 1");
  require(static_cast<int>(basis.size()) == c.size(), ErrorCode::InvalidAnsatz, "one basis per chart");
  for (int i = 0; i < c.size(); ++i)
    for (const auto& f : basis[i])
      require(holomorphic_on(f, c.chart(i)), ErrorCode::InvalidAnsatz,
              "basis element " + f.str() + " is not generalized holomorphic on chart " + std::to_string(i));
}

// ------------------------------------------------------------ AffineMatrix

AffineMatrix& AffineMatrix::operator+=(const AffineMatrix& o) {
  constant += o.constant;
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

AffineMatrix& AffineMatrix::operator-=(const AffineMatrix& o) {
  constant -= o.constant;
  for (const auto& [u, m] : o.terms) terms.emplace_back(u, -m);
  return *this;
}

AffineMatrix operator*(const RMatrix& l, const AffineMatrix& a) {
  AffineMatrix out(l * a.constant);
  for (const auto& [u, m] : a.terms) out.terms.emplace_back(u, l * m);
  return out;
}

AffineMatrix operator*(const AffineMatrix& a, const RMatrix& r) {
  AffineMatrix out(a.constant * r);
  for (const auto& [u, m] : a.terms) out.terms.emplace_back(u, m * r);
  return out;
}

AffineMatrix operator*(const RatFunc& f, const AffineMatrix& a) {
  AffineMatrix out(f * a.constant);
  for (const auto& [u, m] : a.terms) out.terms.emplace_back(u, f * m);
  return out;
}

RMatrix AffineMatrix::evaluate(const std::vector<GQ>& x) const {
  RMatrix out = constant;
  for (const auto& [u, m] : terms)
    if (!x.at(u).is_zero()) out += RatFunc(x[u]) * m;
  return out;
}

// ------------------------------------------------------------ AffineSystem

void AffineSystem::require_zero(const AffineMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::map<int, RatFunc> coeff;
      for (const auto& [u, t] : m.terms)
        if (!t(r, c).is_zero()) coeff[u] += t(r, c);
      Equation e{m.constant(r, c), {}};
      for (auto& [u, f] : coeff)
        if (!f.is_zero()) e.terms.emplace_back(u, std::move(f));
      if (e.constant.is_zero() && e.terms.empty()) continue;
      eqs_.push_back(std::move(e));
    }
}

std::optional<std::vector<GQ>> AffineSystem::solve() const {
  // Each identity becomes one scalar row per monomial after clearing denominators.
  std::vector<std::vector<std::pair<int, GQ>>> rows;
  std::vector<GQ> rhs;
  for (const auto& e : eqs_) {
    Polynomial den = e.constant.den();
    for (const auto& [u, f] : e.terms) den = lcm(den, f.den());
    auto cleared = [&](const RatFunc& f) { return f.num() * *den.divide_exact(f.den()); };
    std::map<Monomial, std::pair<GQ, std::vector<std::pair<int, GQ>>>, MonomialLess> by_mono;
    const Polynomial c0 = cleared(e.constant);
    for (const auto& t : c0.terms()) by_mono[t.mono].first = t.coeff;
    for (const auto& [u, f] : e.terms) {
      const Polynomial cf = cleared(f);
      for (const auto& t : cf.terms()) by_mono[t.mono].second.emplace_back(u, t.coeff);
    }
    for (auto& [mono, entry] : by_mono) {
      rows.push_back(std::move(entry.second));
      rhs.push_back(-entry.first);
    }
  }
  QMatrix a(rows.size(), static_cast<std::size_t>(unknowns_));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [u, c] : rows[i]) a(i, u) += c;
  if (unknowns_ == 0) {
    for (const auto& b : rhs)
      if (!b.is_zero()) return std::nullopt;
    return std::vector<GQ>{};
  }
  return gcx::solve(a, rhs);
}

AffineMatrix ansatz_matrix(AffineSystem& sys, const std::vector<RatFunc>& basis, std::size_t rows, std::size_t cols) {
  AffineMatrix m = AffineMatrix::zero(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      for (const auto& f : basis) {
        RMatrix e(rows, cols);
        e(r, c) = f;
        m.terms.emplace_back(sys.add_unknown(), std::move(e));
      }
  return m;
}

}  // namespace gcx
