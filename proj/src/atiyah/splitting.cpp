#include "gcx/atiyah/splitting.hpp"

#include "gcx/error.hpp"

namespace gcx {

SplittingResult splitting_tests(const JetBundle& j, const Connection& d) {
  const Cover& c = j.base.cover();
  const int r = j.base.rank(), k = c.type();
  require(static_cast<int>(d.a.size()) == c.size(), ErrorCode::ShapeMismatch, "one coefficient list per chart");
  SplittingResult out;
  for (int i = 0; i < c.size(); ++i) {
    require(static_cast<int>(d.a[i].size()) == k, ErrorCode::ShapeMismatch, "one matrix per dz component");
    RMatrix s(r + k * r, r);
    s.set_block(0, 0, RMatrix::identity(r));
    for (int l = 0; l < k; ++l) s.set_block(r + l * r, 0, -d.a[i][l]);
    out.s.local.push_back(std::move(s));
  }
  const RMatrix proj = jet_maps(j).projection;
  out.right_inverse = true;
  for (const auto& s : out.s.local) out.right_inverse = out.right_inverse && proj * s == RMatrix::identity(r);
  out.homomorphism = hom_check(out.s.local, j.base, j.jet);
  return out;
}

Connection connection_from_splitting(const Splitting& s, const JetBundle& j) {
  const Cover& c = j.base.cover();
  const int r = j.base.rank(), k = c.type();
  require(static_cast<int>(s.local.size()) == c.size(), ErrorCode::ShapeMismatch, "one splitting matrix per chart");
  const RMatrix proj = jet_maps(j).projection;
  Connection d;
  for (int i = 0; i < c.size(); ++i) {
    const RMatrix& m = s.local[i];
    require(static_cast<int>(m.rows()) == r + k * r && static_cast<int>(m.cols()) == r, ErrorCode::ShapeMismatch,
            "splitting matrices must be (r + kr) x r");
    if (!(proj * m == RMatrix::identity(r)))
      fail(ErrorCode::NotASplitting, "projection o S is not the identity on chart " + std::to_string(i));
    std::vector<RMatrix> a;
    for (int l = 0; l < k; ++l) a.push_back(-m.block(r + l * r, 0, r, r));
    d.a.push_back(std::move(a));
  }
  return d;
}

std::optional<Splitting> splitting_solve(const JetBundle& j, const AnsatzSpace& ansatz) {
  const Cover& c = j.base.cover();
  ansatz.validate(c);
  const std::size_t r = j.base.rank(), kr = j.jet.rank() - r;
  AffineSystem sys;
  std::vector<AffineMatrix> s;
  for (int i = 0; i < c.size(); ++i) {
    AffineMatrix m = AffineMatrix::zero(r + kr, r);
    m.constant.set_block(0, 0, RMatrix::identity(r));
    AffineMatrix lower = ansatz_matrix(sys, ansatz.basis[i], kr, r);
    for (auto& [u, t] : lower.terms) {
      RMatrix full(r + kr, r);
      full.set_block(r, 0, t);
      m.terms.emplace_back(u, std::move(full));
    }
    s.push_back(std::move(m));
  }
  for (auto [a, b] : c.overlap_list()) {
    AffineMatrix pulled = s[b].map([&](const RatFunc& f) { return c.pull(f, a, b); });
    sys.require_zero(s[a] * j.base.phi(a, b) - j.jet.phi(a, b) * pulled);
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  Splitting out;
  for (const auto& m : s) out.local.push_back(m.evaluate(*x));
  if (!hom_check(out.local, j.base, j.jet)) fail(ErrorCode::SolverFailure, "solved splitting is not a homomorphism");
  return out;
}

}  // namespace gcx
