#include "doctest.h"
#include "gcx/bundles/jet.hpp"
#include "gcx/error.hpp"
#include "gcx/scalar/parse.hpp"
#include "random_data.hpp"

using namespace gcx;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }
RMatrix M1(const RatFunc& f) { return RMatrix(1, 1, {f}); }
const Var z1 = Var::z(1), z2 = Var::z(2);

// Two charts of the projective plane: (z1, z2) -> (1/z1, z2/z1).
Cover plane_cover() {
  Cover c({ModelChart::darboux(2, 0), ModelChart::darboux(2, 0)});
  CoordinateChange t;
  t.z = {P("1/z1"), P("z2/z1")};
  c.add_overlap(0, 1, t, t);
  return c;
}

// Same chart twice, glued by the identity.
Cover doubled(const ModelChart& chart) {
  Cover c({chart, chart});
  auto id = CoordinateChange::identity(chart.vars());
  c.add_overlap(0, 1, id, id);
  return c;
}

std::vector<GHBundle> example_bundles() {
  std::vector<GHBundle> out;
  out.push_back(GHBundle::trivial(Cover::single(ModelChart::darboux(1, 0)), 2));
  for (int n = -2; n <= 2; ++n) out.push_back(projective_line_bundle(n));
  out.push_back(gstar_bundle(three_chart_cover()));
  out.push_back(g_bundle(plane_cover()));
  RMatrix pi(2, 2);
  pi(0, 1) = RatFunc(1);
  pi(1, 0) = RatFunc(-1);
  out.push_back(GHBundle::trivial(Cover::single(ModelChart::holomorphic_poisson(2, 0, pi)), 1));
  return out;
}

// Random chart-0 data with holomorphic or arbitrary coefficients, glued to all charts.
BundleSection random_section(testing::RandomData& rd, const GHBundle& b, bool holomorphic) {
  const ChartVars& c = b.cover().vars();
  std::vector<Var> zs;
  for (int l = 1; l <= c.k(); ++l) zs.push_back(Var::z(l));
  std::vector<RatFunc> s0;
  for (int a = 0; a < b.rank(); ++a)
    s0.push_back(holomorphic ? RatFunc(rd.polynomial_in(zs, 2)) : RatFunc(rd.polynomial(c, 2)));
  return section_from_chart0(s0, b);
}

}  // namespace

TEST_CASE("cover validation") {
  CHECK(validate_cover(projective_line_cover()).ok());
  CHECK(validate_cover(three_chart_cover()).ok());
  CHECK(validate_cover(plane_cover()).ok());

  Cover bad({ModelChart::darboux(1, 0), ModelChart::darboux(1, 0)});
  CoordinateChange t;
  t.z = {P("zbar1")};
  bad.add_overlap(0, 1, t, t);
  CoverReport r = validate_cover(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.failures.front().find("dzbar1") != std::string::npos);

  Cover wrong({ModelChart::darboux(1, 0), ModelChart::darboux(1, 0)});
  CoordinateChange a, b;
  a.z = {P("2*z1")};
  b.z = {P("z1")};
  wrong.add_overlap(0, 1, a, b);
  CHECK_FALSE(validate_cover(wrong).ok());

  // p' = 2p, q' = q scales the symplectic form
  Cover scaled({ModelChart::darboux(0, 1), ModelChart::darboux(0, 1)});
  CoordinateChange s, si;
  s.p = {P("2*p1")};
  s.q = {P("q1")};
  si.p = {P("p1/2")};
  si.q = {P("q1")};
  scaled.add_overlap(0, 1, s, si);
  CHECK_FALSE(validate_cover(scaled).ok());
  CoordinateChange sh, shi;
  sh.p = {P("p1 + 3")};
  sh.q = {P("q1 - p1")};
  shi.p = {P("p1 - 3")};
  shi.q = {P("q1 + p1 - 3")};
  Cover sheared({ModelChart::darboux(0, 1), ModelChart::darboux(0, 1)});
  sheared.add_overlap(0, 1, sh, shi);
  CHECK(validate_cover(sheared).ok());

  CHECK_THROWS_AS(Cover({ModelChart::darboux(1, 0), ModelChart::darboux(0, 1)}), Error);
}

TEST_CASE("bundle validation") {
  CHECK(validate_bundle(GHBundle::trivial(projective_line_cover(), 1)).ok());
  for (int n = -2; n <= 2; ++n) {
    CAPTURE(n);
    GHBundle b = projective_line_bundle(n);
    CHECK(validate_bundle(b).ok());
    // phi_10 in chart-1 coordinates w: z = 1/w, so (z^n)^{-1} = w^n
    CHECK(b.phi(1, 0) == M1(RatFunc::variable(z1).pow(n)));
  }
  for (const auto& b : example_bundles()) CHECK(validate_bundle(b).ok());

  GHBundle bad(projective_line_cover(), 1);
  bad.set_transition(0, 1, M1(P("zbar1")));
  BundleReport r = validate_bundle(bad);
  CHECK_FALSE(r.ok());
  bool wirtinger = false;
  for (const auto& f : r.failures)
    if (f.where == "overlap (0,1)" && f.what.find("d/dzbar1") != std::string::npos) wirtinger = true;
  CHECK(wirtinger);

  GHBundle broken(three_chart_cover(), 1);
  broken.set_transition(0, 1, M1(P("z1")));
  broken.set_transition(1, 2, M1(P("z1")));
  broken.set_transition(0, 2, M1(P("z1")));
  BundleReport t = validate_bundle(broken);
  CHECK_FALSE(t.ok());
  CHECK(t.failures.back().where == "triple (0,1,2)");

  GHBundle lopsided(projective_line_cover(), 1);
  lopsided.set_transition(0, 1, M1(P("z1")), M1(P("1/z1")));
  CHECK_FALSE(validate_bundle(lopsided).ok());
  CHECK_THROWS_AS(bad.set_transition(0, 1, RMatrix(2, 2)), Error);
  CHECK_THROWS_AS(bad.set_transition(0, 1, M1(RatFunc())), Error);
}

TEST_CASE("del bar E") {
  GHBundle triv = GHBundle::trivial(Cover::single(ModelChart::darboux(1, 0)), 1);
  BundleSection s{{{P("zbar1")}}};
  DelbarE d = del_bar_E(s, triv);
  CHECK(d[0][0].rep == GSection::covector(KForm::monomial(ChartVars(1, 0), {Var::zbar(1)})));
  CHECK(del_bar_E(BundleSection{{{P("z1^2 + 3")}}}, triv)[0][0].is_zero());

  GHBundle o1 = projective_line_bundle(1);
  BundleSection zs = section_from_chart0({P("z1")}, o1);
  CHECK(zs.local[1][0] == RatFunc(1));
  DelbarE dz = del_bar_E(zs, o1);
  CHECK(dz[0][0].is_zero());
  CHECK(dz[1][0].is_zero());
  CHECK_FALSE(delbar_overlap_mismatch(zs, o1));

  BundleSection wrong{{{P("z1")}, {P("z1")}}};
  CHECK(section_mismatch(wrong, o1));
  CHECK_THROWS_AS(del_bar_E(wrong, o1), Error);

  testing::RandomData rd(41);
  for (const auto& b : example_bundles())
    for (int t = 0; t < 20; ++t) {
      BundleSection x = random_section(rd, b, false);
      CHECK(delbar_squares_to_zero(x, b));
      if (t < 5) CHECK_FALSE(delbar_overlap_mismatch(x, b));
    }
}

TEST_CASE("generalized holomorphic sections") {
  GHBundle triv = GHBundle::trivial(Cover::single(ModelChart::darboux(1, 0)), 2);
  CHECK(is_gh_section(BundleSection{{{RatFunc(3), RatFunc(GQ::i())}}}, triv));
  GHBundle o1 = projective_line_bundle(1);
  CHECK(is_gh_section(section_from_chart0({P("z1")}, o1), o1));
  CHECK_FALSE(is_gh_section(section_from_chart0({P("zbar1")}, o1), o1));
  GHBundle mixed = GHBundle::trivial(Cover::single(ModelChart::darboux(1, 1)), 1);
  CHECK_FALSE(is_gh_section(BundleSection{{{P("p1")}}}, mixed));
  CHECK(is_gh_section(BundleSection{{{P("z1^3")}}}, mixed));

  testing::RandomData rd(42);
  for (const auto& b : example_bundles()) {
    if (b.cover().chart(0).kind() == ChartKind::HolomorphicPoisson) continue;
    for (int t = 0; t < 5; ++t) {
      BundleSection x = random_section(rd, b, true);
      CHECK(is_gh_section(x, b));
      bool all_components = true;
      for (std::size_t i = 0; i < x.local.size(); ++i)
        for (const auto& f : x.local[i])
          all_components = all_components && is_gen_holomorphic(f, b.cover().chart(int(i)), 2).holomorphic;
      CHECK(all_components);
    }
  }
}

TEST_CASE("Poisson module bracket") {
  RMatrix pi(2, 2);
  pi(0, 1) = RatFunc(1);
  pi(1, 0) = RatFunc(-1);
  GHBundle hp = GHBundle::trivial(Cover::single(ModelChart::holomorphic_poisson(2, 0, pi)), 1);
  CHECK(poisson_module_bracket(P("z1"), BundleSection{{{P("z2")}}}, hp).local[0][0] == RatFunc(GQ::ratio(1, 4)));
  CHECK(poisson_module_bracket(P("5"), BundleSection{{{P("z2*zbar1")}}}, hp).local[0][0].is_zero());

  testing::RandomData rd(43);
  GHBundle cx = GHBundle::trivial(Cover::single(ModelChart::darboux(1, 0)), 2);
  for (int t = 0; t < 10; ++t) {
    BundleSection s{{{RatFunc(rd.polynomial(cx.cover().vars(), 3)), RatFunc(rd.polynomial(cx.cover().vars(), 3))}}};
    BundleSection out = poisson_module_bracket(RatFunc(rd.polynomial(cx.cover().vars(), 3)), s, cx);
    CHECK(out.local[0][0].is_zero());
    CHECK(out.local[0][1].is_zero());
  }

  // axioms on a holomorphic-Poisson chart and on a symplectic chart, rank 2
  RMatrix piz(2, 2);
  piz(0, 1) = P("z1");
  piz(1, 0) = P("-z1");
  for (const auto& chart : {ModelChart::holomorphic_poisson(2, 0, piz), ModelChart::darboux(0, 1)}) {
    GHBundle b = GHBundle::trivial(Cover::single(chart), 2);
    const ChartVars& c = chart.vars();
    for (int t = 0; t < 6; ++t) {
      RatFunc f(rd.polynomial(c, 2)), g(rd.polynomial(c, 2));
      BundleSection s{{{RatFunc(rd.polynomial(c, 2)), RatFunc(rd.polynomial(c, 2))}}};
      BundleSection gs{{{g * s.local[0][0], g * s.local[0][1]}}};
      auto br = [&](const RatFunc& h, const BundleSection& x) { return poisson_module_bracket(h, x, b).local[0]; };
      RatFunc fg = poisson_bracket(f, g, chart);
      auto lhs1 = br(f, gs);
      auto fs = br(f, s), gsb = br(g, s);
      auto lhs2 = br(f * g, s);
      auto lhs3 = br(fg, s);
      auto f_gs = br(f, BundleSection{{gsb}}), g_fs = br(g, BundleSection{{fs}});
      for (int a = 0; a < 2; ++a) {
        CHECK(lhs1[a] == fg * s.local[0][a] + g * fs[a]);
        CHECK(lhs2[a] == f * gsb[a] + g * fs[a]);
        CHECK(lhs3[a] == f_gs[a] - g_fs[a]);
      }
    }
  }

  // overlap consistency: a global function acting on the O(1) model glues
  GHBundle o1 = projective_line_bundle(1);
  GHBundle fn = GHBundle::trivial(projective_line_cover(), 1);
  BundleSection f = section_from_chart0({P("z1*zbar1 + z1")}, fn);
  std::vector<RatFunc> fl{f.local[0][0], f.local[1][0]};
  BundleSection out = poisson_module_bracket(fl, section_from_chart0({P("zbar1^2")}, o1), o1);
  CHECK_FALSE(section_mismatch(out, o1));
  CHECK_THROWS_AS(poisson_module_bracket(P("z1"), section_from_chart0({P("z1")}, o1), o1), Error);
}

TEST_CASE("homomorphisms") {
  for (const auto& b : example_bundles()) {
    std::vector<RMatrix> id(b.cover().size(), RMatrix::identity(b.rank()));
    CHECK(hom_check(id, b, b));
  }
  GHBundle triv = GHBundle::trivial(Cover::single(ModelChart::darboux(1, 0)), 1);
  CHECK(hom_check({M1(P("z1"))}, triv, triv));
  CHECK_FALSE(hom_check({M1(P("zbar1"))}, triv, triv));
  CHECK_THROWS_AS(hom_check({RMatrix(2, 1)}, triv, triv), Error);
  GHBundle o1 = projective_line_bundle(1), o0 = projective_line_bundle(0);
  // the section z of O(1) as a map O(0) -> O(1): chart values z and 1
  CHECK(hom_check({M1(P("z1")), M1(RatFunc(1))}, o0, o1));
  CHECK_FALSE(hom_check({M1(P("z1")), M1(P("z1"))}, o1, o1));
}

TEST_CASE("tangent and cotangent bundles") {
  GHBundle single = gstar_bundle(Cover::single(ModelChart::darboux(2, 1)));
  CHECK(single.rank() == 2);
  CHECK(validate_bundle(single).ok());
  GHBundle gs = gstar_bundle(projective_line_cover());
  CHECK(gs.phi(0, 1) == M1(P("-1/z1^2")));
  CHECK(validate_bundle(gs).ok());
  CHECK(validate_bundle(g_bundle(projective_line_cover())).ok());
  CHECK(g_bundle(projective_line_cover()).phi(0, 1) == M1(P("-z1^2")));
  for (const Cover& c : {three_chart_cover(), plane_cover()}) {
    CHECK(validate_bundle(gstar_bundle(c)).ok());
    CHECK(validate_bundle(g_bundle(c)).ok());
  }
  GHBundle sy = gstar_bundle(doubled(ModelChart::darboux(0, 1)));
  CHECK(sy.rank() == 0);
  CHECK(validate_bundle(sy).ok());

  // O(-2) is the cotangent bundle: transition z^{-2} vs -1/z^2 differ by the constant -1
  GHBundle o = projective_line_bundle(-2);
  CHECK(o.phi(0, 1) == RatFunc(-1) * gs.phi(0, 1));

  Cover flat({ModelChart::darboux(2, 0), ModelChart::darboux(2, 0)});
  CoordinateChange t;
  t.z = {P("z1 + z2"), P("z1 + z2")};
  flat.add_overlap(0, 1, t, t);
  CHECK_THROWS_AS(gstar_bundle(flat), Error);
  Point pt = sample_points(ChartVars(1, 0), 1)[0];
  Cover crit({ModelChart::darboux(1, 0), ModelChart::darboux(1, 0)});
  CoordinateChange sq;
  sq.z = {(RatFunc::variable(z1) - RatFunc(pt[0])).pow(2)};
  crit.add_overlap(0, 1, sq, sq);
  try {
    gstar_bundle(crit);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularTransition);
  }
}

TEST_CASE("pairing of cotangent and tangent sections") {
  Cover one = Cover::single(ModelChart::darboux(1, 0));
  CHECK(gh_pairing(BundleSection{{{RatFunc(1)}}}, BundleSection{{{RatFunc(1)}}}, one)[0] == RatFunc(1));
  RatFunc f = P("z1^2 + 1"), g = P("3*z1");
  std::vector<RatFunc> fg = gh_pairing(BundleSection{{{f}}}, BundleSection{{{g}}}, one);
  CHECK(fg[0] == f * g);
  CHECK(is_gen_holomorphic(fg[0], one.chart(0)).holomorphic);

  Cover pl = projective_line_cover();
  BundleSection xi = section_from_chart0({P("z1")}, gstar_bundle(pl));
  BundleSection x = section_from_chart0({P("z1^2")}, g_bundle(pl));
  std::vector<RatFunc> v = gh_pairing(xi, x, pl);
  CHECK(v[0] == P("z1^3"));
  CHECK(v[0] == pl.pull(v[1], 0, 1));
  CHECK_THROWS_AS(gh_pairing(BundleSection{{{RatFunc(1)}, {RatFunc(1)}}}, x, pl), Error);
}

TEST_CASE("dual and tensor closure") {
  for (const auto& b : example_bundles()) {
    GHBundle end = tensor_bundle(dual_bundle(b), b);
    CHECK(end.rank() == b.rank() * b.rank());
    CHECK(validate_bundle(end).ok());
    GHBundle coeff = tensor_bundle(gstar_bundle(b.cover()), end);
    CHECK(validate_bundle(coeff).ok());
  }
  // End(L) of a line bundle is trivial
  GHBundle e = tensor_bundle(dual_bundle(projective_line_bundle(2)), projective_line_bundle(2));
  CHECK(e.phi(0, 1) == RMatrix::identity(1));
}

TEST_CASE("first jet bundle") {
  // two opens of one chart glued by the identity, phi_01 = A(z)
  Cover two = doubled(ModelChart::darboux(1, 0));
  GHBundle b(two, 1);
  RatFunc a = P("z1^3 + 2*z1 + 1");
  b.set_transition(0, 1, M1(a));
  JetBundle j = jet_bundle(b);
  RMatrix expected(2, 2);
  expected(0, 0) = a;
  expected(1, 0) = a.derivative(z1);
  expected(1, 1) = a;
  CHECK(j.jet.phi(0, 1) == expected);

  GHBundle single = GHBundle::trivial(Cover::single(ModelChart::darboux(1, 0)), 1);
  CHECK(jet_bundle(single).jet.rank() == 2);
  CHECK(jet_bundle(single).jet.phi(0, 0) == RMatrix::identity(2));

  // fiber coordinates of chart 0 mapped to chart 1, written in chart-0 coordinates
  GHBundle om = projective_line_bundle(-1);
  JetBundle pj = jet_bundle(om);
  RMatrix m = om.cover().pull(pj.jet.phi(1, 0), 0, 1);
  RMatrix proj(2, 2);
  proj(0, 0) = P("z1");
  proj(1, 0) = P("-z1^2");
  proj(1, 1) = P("-z1^3");
  CHECK(m == proj);
  JetReport pr = check_jet(pj);
  CHECK(pr.ok());
  JetMaps maps = jet_maps(pj);
  CHECK(maps.inclusion.cols() == 1);
  CHECK(maps.projection.rows() == 1);

  testing::RandomData rd(44);
  for (const auto& eb : example_bundles()) {
    JetBundle jb = jet_bundle(eb);
    JetReport r = check_jet(jb);
    CHECK(r.ok());
    CHECK(jb.jet.rank() == eb.rank() * (1 + eb.cover().type()));
    // chain-rule oracle: jets of holomorphic sections transform by the jet cocycle
    if (eb.cover().chart(0).kind() == ChartKind::HolomorphicPoisson) continue;
    for (int t = 0; t < 3; ++t) {
      BundleSection s = random_section(rd, eb, true);
      BundleSection js = jet_of_section(s, eb);
      CHECK_FALSE(section_mismatch(js, jb.jet));
    }
  }
}
