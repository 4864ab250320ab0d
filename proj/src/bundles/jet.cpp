#include "gcx/bundles/jet.hpp"

#include "gcx/error.hpp"
#include "gcx/gcs/linear.hpp"

namespace gcx {

namespace {

QMatrix eval_matrix(const RMatrix& m, const ChartVars& c, const Point& pt) {
  return m.map([&](const RatFunc& f) { return eval_at(f, c, pt); });
}

QMatrix columns(std::size_t rows, const std::vector<std::vector<GQ>>& cols) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

RMatrix jet_transition(const RMatrix& phi, const CoordinateChange& t, const ChartVars& c) {
  const int r = static_cast<int>(phi.rows()), k = c.k();
  RMatrix jac = t.holomorphic_jacobian(c);  // (mu, l)
  RMatrix out(r + k * r, r + k * r);
  out.set_block(0, 0, phi);
  for (int l = 0; l < k; ++l) {
    const Var zl = Var::z(l + 1);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) out(r + l * r + a, b) = phi(a, b).derivative(zl);
    for (int mu = 0; mu < k; ++mu) {
      if (jac(mu, l).is_zero()) continue;
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) out(r + l * r + a, r + mu * r + b) = jac(mu, l) * phi(a, b);
    }
  }
  return out;
}

JetBundle jet_bundle(const GHBundle& b) {
  const Cover& c = b.cover();
  GHBundle jet(c, b.rank() * (1 + c.type()));
  for (auto [i, j] : c.overlap_list())
    jet.set_transition(i, j, jet_transition(b.phi(i, j), c.transition(i, j), c.vars()),
                       jet_transition(b.phi(j, i), c.transition(j, i), c.vars()));
  return {b, jet};
}

BundleSection jet_of_section(const BundleSection& s, const GHBundle& b) {
  require_section(s, b);
  BundleSection out;
  for (const auto& v : s.local) {
    std::vector<RatFunc> j = v;
    for (int l = 1; l <= b.cover().type(); ++l)
      for (const auto& f : v) j.push_back(f.derivative(Var::z(l)));
    out.local.push_back(std::move(j));
  }
  return out;
}

JetMaps jet_maps(const JetBundle& j) {
  const std::size_t r = j.base.rank(), kr = j.jet.rank() - r;
  JetMaps m{RMatrix(r + kr, kr), RMatrix(r, r + kr)};
  for (std::size_t a = 0; a < kr; ++a) m.inclusion(r + a, a) = RatFunc(1);
  for (std::size_t a = 0; a < r; ++a) m.projection(a, a) = RatFunc(1);
  return m;
}

JetReport check_jet(const JetBundle& j, int samples) {
  JetReport rep;
  const Cover& c = j.base.cover();
  BundleReport v = validate_bundle(j.jet, samples);
  rep.cocycle = v.ok();
  if (!v.ok()) rep.failures.push_back("jet cocycle: " + v.summary());

  JetMaps m = jet_maps(j);
  rep.composition_zero = (m.projection * m.inclusion).is_zero();
  if (!rep.composition_zero) rep.failures.push_back("projection o inclusion != 0");

  GHBundle coeff = tensor_bundle(gstar_bundle(c), j.base);
  rep.inclusion_intertwines = rep.projection_intertwines = true;
  for (int a = 0; a < c.size(); ++a)
    for (int b = 0; b < c.size(); ++b) {
      if (a == b || !c.overlaps(a, b)) continue;
      RMatrix jt = j.jet.phi(a, b);
      if (!(jt * m.inclusion == m.inclusion * coeff.phi(a, b))) {
        rep.inclusion_intertwines = false;
        rep.failures.push_back("inclusion does not intertwine on (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
      if (!(m.projection * jt == j.base.phi(a, b) * m.projection)) {
        rep.projection_intertwines = false;
        rep.failures.push_back("projection does not intertwine on (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }

  const std::size_t r = j.base.rank(), kr = j.jet.rank() - r;
  rep.exact_at_points = true;
  for (int a = 0; a < c.size(); ++a)
    for (const Point& pt : c.overlap_points(a, a, samples)) {
      QMatrix inc = eval_matrix(m.inclusion, c.vars(), pt);
      QMatrix proj = eval_matrix(m.projection, c.vars(), pt);
      QMatrix kernel = columns(r + kr, nullspace(proj));
      bool ok = rank(inc) == kr && rank(proj) == r && same_span(inc, kernel);
      if (!ok) {
        rep.exact_at_points = false;
        rep.failures.push_back("sequence not exact at a sample point of chart " + std::to_string(a));
      }
    }
  return rep;
}

}  // namespace gcx
