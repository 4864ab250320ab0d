#include "gcx/atiyah/cech.hpp"

#include <algorithm>
#include <array>

#include "gcx/error.hpp"

namespace gcx {

namespace {

std::string cell_name(const std::vector<int>& cell) {
  std::string s = "(";
  for (std::size_t n = 0; n < cell.size(); ++n) s += (n ? "," : "") + std::to_string(cell[n]);
  return s + ")";
}

RMatrix checked_inverse(const RMatrix& m, const std::string& where) {
  auto inv = inverse(m);
  if (!inv) fail(ErrorCode::SingularTransition, "transition " + where + " is not invertible");
  return *inv;
}

/// J(l, mu) = dz'_mu/dz_l for the change from chart i to chart j.
RMatrix gstar_transition(const Cover& c, int i, int j) {
  return c.transition(i, j).holomorphic_jacobian(c.vars()).transpose();
}

std::vector<std::vector<int>> sorted_triples(const Cover& c) {
  std::vector<std::vector<int>> out;
  for (const auto& t : c.triples()) {
    std::vector<int> v(t.begin(), t.end());
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_components(const CechCochain& c, const std::vector<RMatrix>& v) {
  require(static_cast<int>(v.size()) == c.k, ErrorCode::ShapeMismatch, "cochain cell needs one matrix per dz component");
  for (const auto& m : v)
    require(static_cast<int>(m.rows()) == c.rank && static_cast<int>(m.cols()) == c.rank, ErrorCode::ShapeMismatch,
            "cochain matrices must be rank x rank");
}

/// Laurent-degree certificate for two type-1 charts glued by z' = 1/z with
/// entire coefficients on both sides.
std::optional<std::string> residue_certificate(const CechCochain& alpha, const GHBundle& b, const AnsatzSpace& ansatz) {
  const Cover& c = b.cover();
  if (c.size() != 2 || c.type() != 1 || !c.overlaps(0, 1)) return std::nullopt;
  if (ansatz.punctured.size() != 2 || ansatz.punctured[0] || ansatz.punctured[1]) return std::nullopt;
  const RatFunc inv_z = RatFunc::variable(Var::z(1)).inverse();
  if (!(c.transition(0, 1).z.at(0) == inv_z) || !(c.transition(1, 0).z.at(0) == inv_z)) return std::nullopt;

  RatFunc tr;
  const RMatrix a = alpha.at({0, 1}).at(0);
  for (int d = 0; d < alpha.rank; ++d) tr += a(d, d);
  const std::uint32_t z = Var::z(1).id();
  for (auto id : tr.variable_ids())
    if (id != z) return std::nullopt;
  if (tr.den().size() != 1) return std::nullopt;  // not a Laurent polynomial
  const auto e = tr.den().degree_in(z);
  if (e == 0) return std::nullopt;
  const auto coeffs = tr.num().coefficients_in(z);
  GQ residue;
  if (e - 1 < coeffs.size()) residue = coeffs[e - 1].constant_value() / tr.den().leading().coeff;
  if (residue.is_zero()) return std::nullopt;
  return "trace of alpha_01 has z1^-1 coefficient " + residue.str() +
         "; entire theta_0 contributes only z1-degrees >= 0 and transported theta_1 only z1-degrees <= -2, "
         "so no window can produce it";
}

}  // namespace

// ------------------------------------------------------------ cochains

CechCochain CechCochain::zero(int degree, int rank, int k) {
  CechCochain c;
  c.degree = degree;
  c.rank = rank;
  c.k = k;
  return c;
}

std::vector<RMatrix> CechCochain::at(const std::vector<int>& cell) const {
  auto it = cells.find(cell);
  if (it != cells.end()) return it->second;
  return std::vector<RMatrix>(k, RMatrix(rank, rank));
}

bool CechCochain::is_zero() const {
  for (const auto& [cell, v] : cells)
    for (const auto& m : v)
      if (!m.is_zero()) return false;
  return true;
}

bool operator==(const CechCochain& a, const CechCochain& b) {
  if (a.degree != b.degree || a.rank != b.rank || a.k != b.k) return false;
  std::vector<std::vector<int>> keys;
  for (const auto& [cell, v] : a.cells) keys.push_back(cell);
  for (const auto& [cell, v] : b.cells) keys.push_back(cell);
  for (const auto& cell : keys)
    if (a.at(cell) != b.at(cell)) return false;
  return true;
}

std::vector<RMatrix> transport(const std::vector<RMatrix>& theta_j, const GHBundle& b, int i, int j) {
  const Cover& c = b.cover();
  const int k = c.type();
  require(static_cast<int>(theta_j.size()) == k, ErrorCode::ShapeMismatch, "one matrix per dz component");
  if (i == j) return theta_j;
  const RMatrix phi = b.phi(i, j);
  const RMatrix phi_inv = checked_inverse(phi, cell_name({i, j}));
  const RMatrix jac = gstar_transition(c, i, j);
  std::vector<RMatrix> out(k, RMatrix(b.rank(), b.rank()));
  for (int mu = 0; mu < k; ++mu) {
    if (theta_j[mu].is_zero()) continue;
    const RMatrix conj = phi * c.pull(theta_j[mu], i, j) * phi_inv;
    for (int l = 0; l < k; ++l)
      if (!jac(l, mu).is_zero()) out[l] += jac(l, mu) * conj;
  }
  return out;
}

CechCochain cech_d(const CechCochain& x, const GHBundle& b) {
  const Cover& c = b.cover();
  require(x.rank == b.rank() && x.k == c.type(), ErrorCode::ShapeMismatch, "cochain does not match the bundle");
  for (const auto& [cell, v] : x.cells) {
    require(static_cast<int>(cell.size()) == x.degree + 1, ErrorCode::ShapeMismatch, "cell size must be degree + 1");
    check_components(x, v);
  }
  auto minus = [](std::vector<RMatrix> a, const std::vector<RMatrix>& b2) {
    for (std::size_t l = 0; l < a.size(); ++l) a[l] -= b2[l];
    return a;
  };
  auto plus = [](std::vector<RMatrix> a, const std::vector<RMatrix>& b2) {
    for (std::size_t l = 0; l < a.size(); ++l) a[l] += b2[l];
    return a;
  };
  CechCochain out = CechCochain::zero(x.degree + 1, x.rank, x.k);
  if (x.degree == 0) {
    for (auto [i, j] : c.overlap_list()) out.cells[{i, j}] = minus(transport(x.at({j}), b, i, j), x.at({i}));
  } else if (x.degree == 1) {
    for (const auto& t : sorted_triples(c)) {
      const int i = t[0], j = t[1], k = t[2];
      out.cells[t] = plus(minus(transport(x.at({j, k}), b, i, j), x.at({i, k})), x.at({i, j}));
    }
  } else {
    fail(ErrorCode::DegreeOverflow, "Cech differential is only defined up to degree 2");
  }
  return out;
}

CechCochain atiyah_cech(const GHBundle& b, int samples) {
  BundleReport rep = validate_bundle(b, samples);
  if (!rep.ok()) fail(ErrorCode::ValidationError, "bundle does not validate: " + rep.summary());
  const Cover& c = b.cover();
  const int k = c.type();
  CechCochain alpha = CechCochain::zero(1, b.rank(), k);
  for (auto [i, j] : c.overlap_list()) {
    const RMatrix phi = b.phi(i, j);
    const RMatrix phi_inv = checked_inverse(phi, cell_name({i, j}));
    std::vector<RMatrix> v;
    for (int l = 1; l <= k; ++l) v.push_back(phi.map([&](const RatFunc& f) { return f.derivative(Var::z(l)); }) * phi_inv);
    alpha.cells[{i, j}] = std::move(v);
  }
  return alpha;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Vanishing: return "vanishing";
    case Verdict::NonVanishing: return "non-vanishing";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

CechSolution coboundary_solve(const CechCochain& alpha, const GHBundle& b, const AnsatzSpace& ansatz) {
  const Cover& c = b.cover();
  ansatz.validate(c);
  require(alpha.degree == 1, ErrorCode::ShapeMismatch, "coboundary_solve expects a degree-1 cochain");
  if (!cech_d(alpha, b).is_zero()) fail(ErrorCode::ValidationError, "cochain is not closed");

  const int k = c.type();
  const std::size_t r = b.rank();
  AffineSystem sys;
  std::vector<std::vector<AffineMatrix>> theta(c.size());
  for (int i = 0; i < c.size(); ++i)
    for (int l = 0; l < k; ++l) theta[i].push_back(ansatz_matrix(sys, ansatz.basis[i], r, r));

  for (auto [i, j] : c.overlap_list()) {
    const RMatrix phi = b.phi(i, j);
    const RMatrix phi_inv = checked_inverse(phi, cell_name({i, j}));
    const RMatrix jac = gstar_transition(c, i, j);
    const auto a = alpha.at({i, j});
    for (int l = 0; l < k; ++l) {
      AffineMatrix eq = AffineMatrix(-a[l]) - theta[i][l];
      for (int mu = 0; mu < k; ++mu) {
        if (jac(l, mu).is_zero()) continue;
        AffineMatrix pulled = theta[j][mu].map([&](const RatFunc& f) { return c.pull(f, i, j); });
        eq += jac(l, mu) * (phi * pulled * phi_inv);
      }
      sys.require_zero(eq);
    }
  }

  CechSolution out;
  out.window = ansatz.window;
  out.unknowns = sys.unknowns();
  if (auto x = sys.solve()) {
    CechCochain th = CechCochain::zero(0, static_cast<int>(r), k);
    for (int i = 0; i < c.size(); ++i) {
      std::vector<RMatrix> v;
      for (const auto& m : theta[i]) v.push_back(m.evaluate(*x));
      th.cells[{i}] = std::move(v);
    }
    if (!(cech_d(th, b) == alpha)) fail(ErrorCode::SolverFailure, "solution does not reproduce the cocycle");
    out.verdict = Verdict::Vanishing;
    out.theta = std::move(th);
    return out;
  }
  if (auto cert = residue_certificate(alpha, b, ansatz)) {
    out.verdict = Verdict::NonVanishing;
    out.certificate = *cert;
  }
  return out;
}

// ------------------------------------------------------------ connections

Connection assemble_connection(const CechCochain& theta, const GHBundle& b) {
  require(theta.degree == 0 && theta.rank == b.rank() && theta.k == b.cover().type(), ErrorCode::ShapeMismatch,
          "assemble_connection expects a degree-0 cochain matching the bundle");
  Connection d;
  for (int i = 0; i < b.cover().size(); ++i) d.a.push_back(theta.at({i}));
  if (auto bad = connection_gluing_mismatch(d, b)) fail(ErrorCode::GluingMismatch, *bad);
  return d;
}

std::optional<std::string> connection_gluing_mismatch(const Connection& d, const GHBundle& b) {
  const Cover& c = b.cover();
  require(static_cast<int>(d.a.size()) == c.size(), ErrorCode::ShapeMismatch, "one coefficient list per chart");
  for (auto [i, j] : c.overlap_list()) {
    const RMatrix phi = b.phi(i, j);
    const RMatrix phi_inv = checked_inverse(phi, cell_name({i, j}));
    const auto lhs = transport(d.a[j], b, i, j);
    for (int l = 0; l < c.type(); ++l) {
      const RMatrix a = phi.map([&](const RatFunc& f) { return f.derivative(Var::z(l + 1)); }) * phi_inv;
      if (!(lhs[l] - d.a[i][l] == a))
        return "overlap " + cell_name({i, j}) + ", dz" + std::to_string(l + 1) + " component";
    }
  }
  return std::nullopt;
}

std::vector<RatFunc> apply_local(const Connection& d, int chart, const std::vector<RatFunc>& s) {
  const auto& a = d.a.at(chart);
  const std::size_t r = s.size();
  std::vector<RatFunc> out;
  for (std::size_t l = 0; l < a.size(); ++l) {
    require(a[l].rows() == r, ErrorCode::ShapeMismatch, "section rank does not match the connection");
    const auto as = a[l].apply(s);
    for (std::size_t al = 0; al < r; ++al) out.push_back(s[al].derivative(Var::z(static_cast<int>(l) + 1)) + as[al]);
  }
  return out;
}

BundleSection apply_connection(const Connection& d, const BundleSection& s, const GHBundle& b) {
  require_section(s, b);
  BundleSection out;
  for (int i = 0; i < b.cover().size(); ++i) out.local.push_back(apply_local(d, i, s.local[i]));
  return out;
}

ConnectionReport check_connection(const Connection& d, const GHBundle& b, const std::vector<BundleSection>& sections) {
  ConnectionReport rep;
  const Cover& c = b.cover();
  const int k = c.type(), r = b.rank();

  rep.glues = true;
  if (auto bad = connection_gluing_mismatch(d, b)) {
    rep.glues = false;
    rep.failures.push_back("gluing: " + *bad);
  }
  if (!sections.empty()) {
    GHBundle target = tensor_bundle(gstar_bundle(c), b);
    for (const auto& s : sections)
      if (auto bad = section_mismatch(apply_connection(d, s, b), target)) {
        rep.glues = false;
        rep.failures.push_back("D s does not glue: " + *bad);
      }
  }

  rep.holomorphic_coefficients = true;
  for (int i = 0; i < c.size(); ++i)
    for (const auto& m : d.a[i])
      for (std::size_t x = 0; x < m.rows(); ++x)
        for (std::size_t y = 0; y < m.cols(); ++y)
          if (!d_minus(m(x, y), c.chart(i)).is_zero()) {
            rep.holomorphic_coefficients = false;
            rep.failures.push_back("coefficient " + m(x, y).str() + " on chart " + std::to_string(i) +
                                   " is not generalized holomorphic");
          }

  rep.leibniz = rep.preserves_sections = true;
  for (int i = 0; i < c.size(); ++i) {
    const ModelChart& ch = c.chart(i);
    std::vector<std::vector<RatFunc>> local;
    for (int al = 0; al < r; ++al) {
      std::vector<RatFunc> e(r);
      e[al] = RatFunc(1);
      local.push_back(std::move(e));
    }
    for (const auto& s : sections) local.push_back(s.local[i]);

    std::vector<RatFunc> gens{RatFunc(1)};
    for (int l = 1; l <= k; ++l) {
      gens.push_back(RatFunc::variable(Var::z(l)));
      gens.push_back(RatFunc::variable(Var::z(l)).pow(2));
    }
    for (const auto& f : gens) {
      const auto dplus = d_plus(f, ch).values;
      for (const auto& s : local) {
        std::vector<RatFunc> fs;
        for (const auto& x : s) fs.push_back(f * x);
        const auto lhs = apply_local(d, i, fs);
        const auto ds = apply_local(d, i, s);
        bool holds = true;
        for (int l = 0; l < k; ++l)
          for (int al = 0; al < r; ++al)
            holds = holds && lhs[l * r + al] == dplus[l] * s[al] + f * ds[l * r + al];
        if (!holds) {
          rep.leibniz = false;
          rep.failures.push_back("Leibniz fails on chart " + std::to_string(i) + " for f = " + f.str());
        }
      }
    }

    // D_X s for X in {d/dz_l, z_m d/dz_l} and holomorphic s, z_m s.
    std::vector<std::vector<RatFunc>> tests = local;
    for (int m = 1; m <= k; ++m)
      for (const auto& s : local) {
        std::vector<RatFunc> zs;
        for (const auto& x : s) zs.push_back(RatFunc::variable(Var::z(m)) * x);
        tests.push_back(std::move(zs));
      }
    for (const auto& s : tests) {
      bool holo = true;
      for (const auto& x : s) holo = holo && d_minus(x, ch).is_zero();
      if (!holo) continue;
      const auto ds = apply_local(d, i, s);
      bool holds = true;
      for (int l = 0; l < k; ++l)
        for (int m = 0; m <= k; ++m) {
          const RatFunc coeff = m == 0 ? RatFunc(1) : RatFunc::variable(Var::z(m));
          for (int al = 0; al < r; ++al) holds = holds && d_minus(coeff * ds[l * r + al], ch).is_zero();
        }
      if (!holds) {
        rep.preserves_sections = false;
        rep.failures.push_back("D_X s is not generalized holomorphic on chart " + std::to_string(i));
      }
    }
  }
  return rep;
}

bool hamiltonian_check(const std::vector<RMatrix>& a, const ModelChart& chart, const std::vector<RatFunc>& fs) {
  require(chart.kind() == ChartKind::HolomorphicPoisson, ErrorCode::ChartMismatch,
          "Hamiltonian check needs a holomorphic-Poisson chart");
  const int k = chart.type();
  require(static_cast<int>(a.size()) == k, ErrorCode::ShapeMismatch, "one matrix per dz component");
  for (const auto& f : fs) {
    // X = pi#(df): X_mu = sum_l df/dz_l pi(l, mu).
    RMatrix dx(a.empty() ? 0 : a[0].rows(), a.empty() ? 0 : a[0].cols());
    for (int mu = 0; mu < k; ++mu) {
      RatFunc x;
      for (int l = 0; l < k; ++l) x += f.derivative(Var::z(l + 1)) * chart.pi()(l, mu);
      if (!x.is_zero()) dx += x * a[mu];
    }
    if (!dx.is_zero()) return false;
  }
  return true;
}

}  // namespace gcx
