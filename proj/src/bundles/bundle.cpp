#include "gcx/bundles/bundle.hpp"

#include "gcx/error.hpp"

namespace gcx {

namespace {

std::string cell(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
std::string entry(int a, int b) { return "[" + std::to_string(a) + "][" + std::to_string(b) + "]"; }

// First Wirtinger-type derivative that obstructs holomorphy, if any.
std::optional<std::string> holomorphy_witness(const RatFunc& f, const ModelChart& chart) {
  if (d_minus(f, chart).is_zero()) return std::nullopt;
  for (Var v : chart.vars().vars()) {
    if (v.kind == VarKind::Z) continue;
    RatFunc d = f.derivative(v);
    if (!d.is_zero()) return "d/d" + v.name() + " of " + f.str() + " = " + d.str() + " != 0";
  }
  return "d_minus(" + f.str() + ") != 0 (not a Casimir)";
}

QMatrix eval_matrix(const RMatrix& m, const ChartVars& c, const Point& pt) {
  return m.map([&](const RatFunc& f) { return eval_at(f, c, pt); });
}

}  // namespace

GHBundle::GHBundle(Cover cover, int rank) : cover_(std::move(cover)), rank_(rank) {
  require(rank >= 0, ErrorCode::ShapeMismatch, "negative rank");
}

GHBundle GHBundle::trivial(const Cover& cover, int rank) {
  GHBundle b(cover, rank);
  for (auto [i, j] : cover.overlap_list()) b.set_transition(i, j, RMatrix::identity(rank), RMatrix::identity(rank));
  return b;
}

void GHBundle::set_transition(int i, int j, const RMatrix& phi) {
  require(phi.rows() == static_cast<std::size_t>(rank_) && phi.square(), ErrorCode::ShapeMismatch,
          "transition " + cell(i, j) + " is not " + std::to_string(rank_) + "x" + std::to_string(rank_));
  auto inv = inverse(phi);
  require(inv.has_value(), ErrorCode::SingularTransition, "transition " + cell(i, j) + " is singular");
  set_transition(i, j, phi, cover_.pull(*inv, j, i));
}

void GHBundle::set_transition(int i, int j, const RMatrix& phi_ij, const RMatrix& phi_ji) {
  require(cover_.overlaps(i, j) && i != j, ErrorCode::InvalidTransition, "no declared overlap " + cell(i, j));
  for (const RMatrix* m : {&phi_ij, &phi_ji})
    require(m->rows() == static_cast<std::size_t>(rank_) && m->square(), ErrorCode::ShapeMismatch,
            "transition " + cell(i, j) + " is not " + std::to_string(rank_) + "x" + std::to_string(rank_));
  phi_[{i, j}] = phi_ij;
  phi_[{j, i}] = phi_ji;
}

RMatrix GHBundle::phi(int i, int j) const {
  if (i == j) return RMatrix::identity(rank_);
  auto it = phi_.find({i, j});
  require(it != phi_.end(), ErrorCode::InvalidTransition, "no transition " + cell(i, j));
  return it->second;
}

std::string BundleReport::summary() const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& f : failures) s += (s.empty() ? "" : "; ") + f.where + ": " + f.what;
  return s;
}

BundleReport validate_bundle(const GHBundle& b, int samples) {
  BundleReport r;
  const Cover& c = b.cover();
  for (const auto& f : validate_cover(c).failures) r.failures.push_back({"cover", f});
  const RMatrix id = RMatrix::identity(b.rank());
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      if (i == j || !c.overlaps(i, j)) continue;
      const std::string at = "overlap " + cell(i, j);
      if (!b.has_transition(i, j)) {
        r.failures.push_back({at, "missing transition"});
        continue;
      }
      RMatrix phi = b.phi(i, j);
      if (!(phi * c.pull(b.phi(j, i), i, j) == id)) r.failures.push_back({at, "phi_ij * phi_ji != Id"});
      std::vector<RatFunc> entries;
      for (int a = 0; a < b.rank(); ++a)
        for (int e = 0; e < b.rank(); ++e) {
          entries.push_back(phi(a, e));
          if (auto w = holomorphy_witness(phi(a, e), c.chart(i)))
            r.failures.push_back({at, "entry " + entry(a, e) + " not generalized holomorphic: " + *w});
        }
      if (det(phi).is_zero()) {
        r.failures.push_back({at, "determinant vanishes identically"});
        continue;
      }
      for (const Point& pt : c.overlap_points(i, j, samples, entries))
        if (det(eval_matrix(phi, c.vars(), pt)).is_zero()) {
          r.failures.push_back({at, "determinant vanishes at a sample point"});
          break;
        }
    }
  for (const auto& [i, j, k] : c.triples()) {
    if (!b.has_transition(i, j) || !b.has_transition(j, k) || !b.has_transition(k, i)) continue;
    RMatrix prod = b.phi(i, j) * c.pull(b.phi(j, k), i, j) * c.pull(b.phi(k, i), i, k);
    if (!(prod == id))
      r.failures.push_back({"triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")",
                            "phi_ij phi_jk phi_ki != Id"});
  }
  return r;
}

GHBundle projective_line_bundle(int n) {
  GHBundle b(projective_line_cover(), 1);
  b.set_transition(0, 1, RMatrix(1, 1, {RatFunc::variable(Var::z(1)).pow(n)}));
  return b;
}

// ------------------------------------------------------------- sections

std::optional<std::string> section_mismatch(const BundleSection& s, const GHBundle& b) {
  if (static_cast<int>(s.local.size()) != b.cover().size()) return "wrong number of charts";
  for (const auto& v : s.local)
    if (static_cast<int>(v.size()) != b.rank()) return "coefficient vector length differs from rank";
  const Cover& c = b.cover();
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      if (i == j || !c.overlaps(i, j)) continue;
      std::vector<RatFunc> moved = b.phi(i, j).apply(c.pull(s.local[j], i, j));
      for (int a = 0; a < b.rank(); ++a)
        if (!(moved[a] == s.local[i][a]))
          return "overlap " + cell(i, j) + " component " + std::to_string(a) + ": " + s.local[i][a].str() +
                 " vs " + moved[a].str();
    }
  return std::nullopt;
}

void require_section(const BundleSection& s, const GHBundle& b) {
  if (auto w = section_mismatch(s, b)) fail(ErrorCode::IncompatibleSection, *w);
}

BundleSection section_from_chart0(const std::vector<RatFunc>& s0, const GHBundle& b) {
  require(static_cast<int>(s0.size()) == b.rank(), ErrorCode::IncompatibleSection, "length differs from rank");
  const Cover& c = b.cover();
  BundleSection s;
  s.local.push_back(s0);
  for (int j = 1; j < c.size(); ++j) {
    require(c.overlaps(j, 0), ErrorCode::IncompatibleSection, "chart " + std::to_string(j) + " misses chart 0");
    s.local.push_back(b.phi(j, 0).apply(c.pull(s0, j, 0)));
  }
  return s;
}

DelbarE del_bar_E(const BundleSection& s, const GHBundle& b) {
  require_section(s, b);
  DelbarE out(s.local.size());
  for (std::size_t i = 0; i < s.local.size(); ++i)
    for (const auto& f : s.local[i]) out[i].push_back(d_minus(f, b.cover().chart(static_cast<int>(i))));
  return out;
}

std::optional<std::string> delbar_overlap_mismatch(const BundleSection& s, const GHBundle& b) {
  DelbarE local = del_bar_E(s, b);
  const Cover& c = b.cover();
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      if (i == j || !c.overlaps(i, j)) continue;
      RMatrix phi = b.phi(i, j);
      std::vector<LMinusCovector> pulled;
      for (const auto& f : c.pull(s.local[j], i, j)) pulled.push_back(d_minus(f, c.chart(i)));
      const int d = c.vars().dim();
      for (int lam = 0; lam < b.rank(); ++lam)
        for (int a = 0; a < d; ++a) {
          RatFunc moved;
          for (int al = 0; al < b.rank(); ++al) moved += phi(lam, al) * pulled[al].values[a];
          if (!(moved == local[i][lam].values[a]))
            return "overlap " + cell(i, j) + " component " + std::to_string(lam) + " frame element " +
                   std::to_string(a);
        }
    }
  return std::nullopt;
}

bool delbar_squares_to_zero(const BundleSection& s, const GHBundle& b) {
  DelbarE local = del_bar_E(s, b);
  for (int i = 0; i < b.cover().size(); ++i) {
    const ModelChart& chart = b.cover().chart(i);
    auto st = lminus_structure(chart);
    for (const auto& dm : local[i])
      if (!d_algebroid(LMinusForm::from_covector(dm), chart, st).is_zero()) return false;
  }
  return true;
}

bool is_gh_section(const BundleSection& s, const GHBundle& b) {
  for (const auto& chart : del_bar_E(s, b))
    for (const auto& dm : chart)
      if (!dm.is_zero()) return false;
  return true;
}

BundleSection poisson_module_bracket(const std::vector<RatFunc>& f, const BundleSection& s, const GHBundle& b) {
  require_section(s, b);
  const Cover& c = b.cover();
  require(static_cast<int>(f.size()) == c.size(), ErrorCode::IncompatibleSection, "function needs one entry per chart");
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j)
      if (i != j && c.overlaps(i, j) && !(f[i] == c.pull(f[j], i, j)))
        fail(ErrorCode::IncompatibleSection, "function does not glue on overlap " + cell(i, j));
  BundleSection out;
  for (int i = 0; i < c.size(); ++i) {
    std::vector<RatFunc> v;
    for (const auto& x : s.local[i]) v.push_back(poisson_bracket(f[i], x, c.chart(i)));
    out.local.push_back(std::move(v));
  }
  return out;
}

BundleSection poisson_module_bracket(const RatFunc& f, const BundleSection& s, const GHBundle& b) {
  return poisson_module_bracket(std::vector<RatFunc>(b.cover().size(), f), s, b);
}

bool hom_check(const std::vector<RMatrix>& f, const GHBundle& src, const GHBundle& dst) {
  const Cover& c = src.cover();
  require(dst.cover().size() == c.size() && static_cast<int>(f.size()) == c.size(), ErrorCode::ShapeMismatch,
          "one matrix per chart of a shared cover expected");
  for (const auto& m : f)
    require(m.rows() == static_cast<std::size_t>(dst.rank()) && m.cols() == static_cast<std::size_t>(src.rank()),
            ErrorCode::ShapeMismatch, "homomorphism matrix shape differs from ranks");
  for (int i = 0; i < c.size(); ++i)
    for (std::size_t a = 0; a < f[i].rows(); ++a)
      for (std::size_t e = 0; e < f[i].cols(); ++e)
        if (!d_minus(f[i](a, e), c.chart(i)).is_zero()) return false;
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      if (i == j || !c.overlaps(i, j)) continue;
      if (!(f[i] * src.phi(i, j) == dst.phi(i, j) * c.pull(f[j], i, j))) return false;
    }
  return true;
}

// ------------------------------------------------- tangent and cotangent

namespace {

RMatrix checked_jacobian(const Cover& c, int i, int j) {
  RMatrix jac = c.transition(i, j).holomorphic_jacobian(c.vars());
  RatFunc dj = det(jac);
  require(!dj.is_zero(), ErrorCode::SingularTransition, "Jacobian of " + cell(i, j) + " is singular");
  std::vector<RatFunc> entries;
  for (std::size_t a = 0; a < jac.rows(); ++a)
    for (std::size_t e = 0; e < jac.cols(); ++e) entries.push_back(jac(a, e));
  for (const Point& pt : c.overlap_points(i, j, 5, entries))
    require(!eval_at(dj, c.vars(), pt).is_zero(), ErrorCode::SingularTransition,
            "Jacobian of " + cell(i, j) + " vanishes at a sample point");
  return jac;
}

}  // namespace

GHBundle gstar_bundle(const Cover& c) {
  GHBundle b(c, c.type());
  for (auto [i, j] : c.overlap_list())
    b.set_transition(i, j, checked_jacobian(c, i, j).transpose(), checked_jacobian(c, j, i).transpose());
  return b;
}

GHBundle g_bundle(const Cover& c) {
  GHBundle b(c, c.type());
  for (auto [i, j] : c.overlap_list())
    b.set_transition(i, j, *inverse(checked_jacobian(c, i, j)), *inverse(checked_jacobian(c, j, i)));
  return b;
}

std::vector<RatFunc> gh_pairing(const BundleSection& xi, const BundleSection& x, const Cover& c) {
  require_section(xi, gstar_bundle(c));
  require_section(x, g_bundle(c));
  std::vector<RatFunc> out;
  for (int i = 0; i < c.size(); ++i) {
    RatFunc s;
    for (int l = 0; l < c.type(); ++l) s += xi.local[i][l] * x.local[i][l];
    out.push_back(s);
  }
  return out;
}

GHBundle dual_bundle(const GHBundle& e) {
  GHBundle b(e.cover(), e.rank());
  for (auto [i, j] : e.cover().overlap_list()) {
    auto a = inverse(e.phi(i, j));
    auto r = inverse(e.phi(j, i));
    require(a && r, ErrorCode::SingularTransition, "singular transition " + cell(i, j));
    b.set_transition(i, j, a->transpose(), r->transpose());
  }
  return b;
}

GHBundle tensor_bundle(const GHBundle& e, const GHBundle& f) {
  require(e.cover().size() == f.cover().size(), ErrorCode::ShapeMismatch, "bundles live on different covers");
  GHBundle b(e.cover(), e.rank() * f.rank());
  for (auto [i, j] : e.cover().overlap_list())
    b.set_transition(i, j, kron(e.phi(i, j), f.phi(i, j)), kron(e.phi(j, i), f.phi(j, i)));
  return b;
}

}  // namespace gcx
