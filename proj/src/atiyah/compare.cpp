#include "gcx/atiyah/compare.hpp"

namespace gcx {

AtiyahComparison compare_constructions(const GHBundle& b, const AnsatzSpace& ansatz, int samples) {
  AtiyahComparison out;
  const CechCochain alpha = atiyah_cech(b, samples);
  out.cech = coboundary_solve(alpha, b, ansatz);
  const JetBundle j = jet_bundle(b);
  out.splittable = splitting_solve(j, ansatz).has_value();
  out.flat_extension = flat_extension_solve(b, ansatz).has_value();

  if (out.cech.theta) {
    bool ok = true;
    const Connection d = assemble_connection(*out.cech.theta, b);
    const ConnectionReport rep = check_connection(d, b);
    if (!rep.ok()) {
      ok = false;
      out.failures.insert(out.failures.end(), rep.failures.begin(), rep.failures.end());
    }
    const SplittingResult s = splitting_tests(j, d);
    if (!s.ok() || !(connection_from_splitting(s.s, j).a == d.a)) {
      ok = false;
      out.failures.push_back("splitting built from the connection does not round-trip");
    }
    for (int i = 0; i < b.cover().size(); ++i)
    {
      const ModelChart& ch = b.cover().chart(i);
      if (!is_zero(liepair_cocycle(LiePairData::from_connection(ch, d.a[i])))) {
        ok = false;
        out.failures.push_back("Lie pair curvature of the connection is nonzero on chart " + std::to_string(i));
      }
      std::vector<RatFunc> coords;
      for (int l = 1; l <= ch.type(); ++l) coords.push_back(RatFunc::variable(Var::z(l)));
      if (ch.kind() == ChartKind::HolomorphicPoisson && !hamiltonian_check(d.a[i], ch, coords)) {
        ok = false;
        out.failures.push_back("connection is not flat along Hamiltonian fields on chart " + std::to_string(i));
      }
    }
    out.bridge = ok;
  }
  return out;
}

GHBundle unipotent_bundle() {
  GHBundle b(projective_line_cover(), 2);
  RMatrix phi = RMatrix::identity(2);
  phi(0, 1) = RatFunc::variable(Var::z(1));
  b.set_transition(0, 1, phi);
  return b;
}

GHBundle direct_sum(const GHBundle& e, const GHBundle& f) {
  const Cover& c = e.cover();
  const int re = e.rank(), rf = f.rank();
  GHBundle out(c, re + rf);
  for (auto [i, j] : c.overlap_list()) {
    auto sum = [&](int a, int b) {
      RMatrix m(re + rf, re + rf);
      m.set_block(0, 0, e.phi(a, b));
      m.set_block(re, re, f.phi(a, b));
      return m;
    };
    out.set_transition(i, j, sum(i, j), sum(j, i));
  }
  return out;
}

std::vector<NamedBundle> atiyah_gallery() {
  std::vector<NamedBundle> g;
  g.push_back({"trivial rank 1 on the projective line", GHBundle::trivial(projective_line_cover(), 1)});
  for (int n : {-2, -1, 1, 2}) g.push_back({"projective model z^" + std::to_string(n), projective_line_bundle(n)});
  g.push_back({"cotangent G*M of the projective line", gstar_bundle(projective_line_cover())});
  g.push_back({"unipotent rank 2 [[1, z], [0, 1]]", unipotent_bundle()});
  g.push_back({"sum of z^1 and z^-1", direct_sum(projective_line_bundle(1), projective_line_bundle(-1))});
  g.push_back({"cotangent G*M on three charts", gstar_bundle(three_chart_cover())});
  g.push_back({"trivial rank 2 on a symplectic chart", GHBundle::trivial(Cover::single(ModelChart::darboux(0, 1)), 2)});
  RMatrix pi(2, 2);
  pi(0, 1) = RatFunc::variable(Var::z(1));
  pi(1, 0) = -RatFunc::variable(Var::z(1));
  g.push_back({"trivial rank 1 on a holomorphic-Poisson chart",
               GHBundle::trivial(Cover::single(ModelChart::holomorphic_poisson(2, 0, pi)), 1)});
  return g;
}

}  // namespace gcx
