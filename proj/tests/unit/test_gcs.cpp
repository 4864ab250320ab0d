#include "doctest.h"
#include "gcx/error.hpp"
#include "gcx/gcs/differentials.hpp"
#include "gcx/scalar/parse.hpp"
#include "random_sections.hpp"

using namespace gcx;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }
const Var z1 = Var::z(1), z2 = Var::z(2), zb1 = Var::zbar(1), zb2 = Var::zbar(2), p1 = Var::p(1), q1 = Var::q(1);

RMatrix pi12(const RatFunc& v) {
  RMatrix pi(2, 2);
  pi(0, 1) = v;
  pi(1, 0) = -v;
  return pi;
}

bool spans_equal(const std::vector<GSection>& a, const std::vector<GSection>& b) {
  RMatrix ma = frame_matrix(a), mb = frame_matrix(b);
  RMatrix both(ma.rows(), ma.cols() + mb.cols());
  both.set_block(0, 0, ma);
  both.set_block(0, ma.cols(), mb);
  return rank(ma) == rank(mb) && rank(both) == rank(ma);
}

bool in_span(const GSection& s, const std::vector<GSection>& frame) {
  std::vector<RatFunc> rhs;
  for (int i = 0; i < 2 * s.chart().dim(); ++i) rhs.push_back(s.component(i));
  return solve(frame_matrix(frame), rhs).has_value();
}

std::vector<ModelChart> chart_suite() {
  std::vector<ModelChart> out{ModelChart::darboux(1, 0), ModelChart::darboux(0, 1),
                              ModelChart::holomorphic_poisson(2, 0, pi12(RatFunc())),
                              ModelChart::holomorphic_poisson(2, 0, pi12(RatFunc(1))),
                              ModelChart::holomorphic_poisson(2, 0, pi12(P("z1")))};
  const std::size_t base = out.size();
  for (std::size_t i = 0; i < base; ++i) {
    const ChartVars& c = out[i].vars();
    KForm b = c.k() > 0 ? KForm::monomial(c, {c.var(0), c.var(c.k())}, RatFunc(GQ::i()))
                        : KForm::monomial(c, {p1, q1}, P("p1^2 + q1"));
    out.push_back(out[i].b_transformed(b));
  }
  return out;
}

}  // namespace

TEST_CASE("linear structure checks") {
  CHECK(check_linear_gcs(LinearGCS::complex(1)).ok());
  CHECK(check_linear_gcs(LinearGCS::symplectic(1)).ok());
  CHECK(check_linear_gcs(LinearGCS::product(LinearGCS::complex(1), LinearGCS::symplectic(1))).ok());
  LinearGCS bad = LinearGCS::complex(1);
  bad.J = QMatrix::identity(2);
  LinearCheck r = check_linear_gcs(bad);
  CHECK_FALSE(r.squares_to_minus_one);
  CHECK_FALSE(r.witness.empty());
  LinearGCS wrong = LinearGCS::complex(1);
  wrong.B = QMatrix(3, 3);
  CHECK_THROWS_AS(check_linear_gcs(wrong), Error);
}

TEST_CASE("eigenframes of model charts") {
  ModelChart cx = ModelChart::darboux(1, 0);
  const ChartVars& c = cx.vars();
  CHECK(spans_equal(cx.lplus(), {GSection::vector(VField::coord(c, z1)), GSection::covector(KForm::monomial(c, {zb1}))}));

  ModelChart sy = ModelChart::darboux(0, 1);
  const ChartVars& s = sy.vars();
  // X - i omega(X) with omega(d/dp1) = dq1, omega(d/dq1) = -dp1
  GSection a(VField::coord(s, p1), KForm::monomial(s, {q1}, RatFunc(-GQ::i())));
  GSection b(VField::coord(s, q1), KForm::monomial(s, {p1}, RatFunc(GQ::i())));
  CHECK(spans_equal(sy.lplus(), {a, b}));
  CHECK(spans_equal(sy.lplus(), symplectic_frame(s, KForm::monomial(s, {p1, q1}))));

  ModelChart hp = ModelChart::holomorphic_poisson(2, 0, pi12(RatFunc(1)));
  const ChartVars& h = hp.vars();
  // beta = conj(pi)^sharp / (-2i) on (0,1)-covectors, so beta(dzbar1) = (1/(-2i)) d/dzbar2
  RatFunc beta_coeff = RatFunc(GQ(1) / (GQ(-2) * GQ::i()));
  GSection expected(beta_coeff * RatFunc(GQ(1) / (GQ(2) * GQ::i())) * VField::coord(h, zb2),
                    KForm::monomial(h, {zb1}));
  CHECK(in_span(expected, hp.lplus()));
  CHECK(hp.lplus()[2] == expected);
}

TEST_CASE("chart invariants and integrability") {
  for (const auto& chart : chart_suite()) {
    CAPTURE(chart.describe());
    ChartReport r = check_chart(chart);
    CHECK(r.ok());
  }
  CHECK(check_integrability(ModelChart::holomorphic_poisson(2, 0, pi12(P("z1"))).lplus()).ok);

  // omega = dp1^dq1 + p1 dp2^dq2 is non-degenerate where p1 != 0 but not closed
  ChartVars c(0, 2);
  KForm omega = KForm::monomial(c, {p1, q1}) + KForm::monomial(c, {Var::p(2), Var::q(2)}, P("p1"));
  CHECK_FALSE(ext_d(omega).is_zero());
  IntegrabilityReport bad = check_integrability(symplectic_frame(c, omega));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  KForm closed = KForm::monomial(c, {p1, q1}) + KForm::monomial(c, {Var::p(2), Var::q(2)}, P("1 + p1^0"));
  CHECK(check_integrability(symplectic_frame(c, closed)).ok);
}

TEST_CASE("invalid chart data") {
  CHECK_THROWS_AS(ModelChart::holomorphic_poisson(2, 0, pi12(P("zbar1"))), Error);
  RMatrix sym(2, 2);
  sym(0, 1) = RatFunc(1);
  sym(1, 0) = RatFunc(1);
  try {
    ModelChart::holomorphic_poisson(2, 0, sym);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPoissonData);
  }
  ModelChart m = ModelChart::darboux(1, 1);
  KForm open = KForm::monomial(m.vars(), {z1, p1}, P("q1"));
  try {
    m.b_transformed(open);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidBField);
  }
  CHECK_THROWS_AS(m.b_transformed(KForm::monomial(m.vars(), {z1, p1})), Error);  // not real
}

TEST_CASE("d minus examples") {
  ModelChart cx = ModelChart::darboux(1, 0);
  CHECK(d_minus(P("z1"), cx).is_zero());
  CHECK(d_minus(P("zbar1"), cx).rep == GSection::covector(KForm::monomial(cx.vars(), {zb1})));
  // on complex charts d- is dbar for every monomial of degree <= 3
  ChartVars c = cx.vars();
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      RatFunc f = RatFunc::variable(z1).pow(a) * RatFunc::variable(zb1).pow(b);
      CHECK(d_minus(f, cx).rep == GSection::covector(KForm::monomial(c, {zb1}, f.derivative(zb1))));
    }
}

TEST_CASE("df splits into d+ and d- with duality") {
  testing::RandomData rd(31);
  for (const auto& chart : chart_suite()) {
    const ChartVars& c = chart.vars();
    for (int t = 0; t < 12; ++t) {
      RatFunc f(rd.polynomial(c, 3));
      LMinusCovector dm = d_minus(f, chart);
      LPlusCovector dp = d_plus(f, chart);
      KForm df = ext_d(KForm::scalar(c, f));
      CHECK(dm.rep + dp.rep == GSection::covector(df));
      for (int j = 0; j < c.dim(); ++j) {
        CHECK(pairing(dm.rep, chart.lminus()[j]) == chart.lminus()[j].vec().apply(f));
        CHECK(in_span(dm.rep, chart.lplus()));
        CHECK(in_span(dp.rep, chart.lminus()));
      }
    }
  }
}

TEST_CASE("holomorphic Poisson d minus matches the dbar - pi formula on L-") {
  testing::RandomData rd(32);
  for (const RatFunc& v : {RatFunc(1), P("z1")}) {
    ModelChart hp = ModelChart::holomorphic_poisson(2, 0, pi12(v));
    const ChartVars& c = hp.vars();
    for (int t = 0; t < 20; ++t) {
      RatFunc f(rd.polynomial(c, 3));
      // dbar f - 1/4 pi#(df), pi#(dz_l) = sum_mu pi_{l mu} d/dz_mu
      VField pis(c);
      for (int l = 0; l < 2; ++l)
        for (int mu = 0; mu < 2; ++mu) pis[c.z_index(mu + 1)] += f.derivative(Var::z(l + 1)) * hp.pi()(l, mu);
      KForm dbar(c, 1);
      for (int l = 1; l <= 2; ++l) dbar.add({c.zbar_index(l)}, f.derivative(Var::zbar(l)));
      GSection formula(RatFunc(GQ::ratio(-1, 4)) * pis, dbar);
      LMinusCovector dm = d_minus(f, hp);
      for (int j = 0; j < c.dim(); ++j) CHECK(pairing(formula, hp.lminus()[j]) == dm.values[j]);
    }
  }
}

TEST_CASE("poisson bracket") {
  ModelChart hp = ModelChart::holomorphic_poisson(2, 0, pi12(RatFunc(1)));
  CHECK(poisson_bracket(P("z1"), P("z2"), hp) == RatFunc(GQ::ratio(1, 4)));
  CHECK(poisson_bracket(P("7"), P("z2"), hp).is_zero());
  ModelChart sy = ModelChart::darboux(0, 1);
  // hand decomposition: d+ p1 = i/2 d/dq1 + 1/2 dp1, d- q1 = i/2 d/dp1 + 1/2 dq1
  CHECK(poisson_bracket(P("p1"), P("q1"), sy) == RatFunc(GQ(mpq_class(0), mpq_class(1, 2))));
  testing::RandomData rd(33);
  ModelChart cx = ModelChart::darboux(1, 0);
  for (int t = 0; t < 20; ++t) {
    RatFunc f(rd.polynomial(cx.vars(), 3)), g(rd.polynomial(cx.vars(), 3));
    CHECK(poisson_bracket(f, g, cx).is_zero());
  }
  for (const auto& chart : chart_suite()) {
    const ChartVars& c = chart.vars();
    for (int t = 0; t < 6; ++t) {
      RatFunc f(rd.polynomial(c, 2)), g(rd.polynomial(c, 2)), h(rd.polynomial(c, 2));
      RatFunc fg = poisson_bracket(f, g, chart);
      CHECK(fg == -poisson_bracket(g, f, chart));
      CHECK(poisson_bracket(f, g * h, chart) == fg * h + g * poisson_bracket(f, h, chart));
      CHECK(poisson_bracket(f * h, g, chart) == f * poisson_bracket(h, g, chart) + fg * h);
      RatFunc jac = poisson_bracket(f, poisson_bracket(g, h, chart), chart) +
                    poisson_bracket(g, poisson_bracket(h, f, chart), chart) +
                    poisson_bracket(h, poisson_bracket(f, g, chart), chart);
      CHECK(jac.is_zero());
      RatFunc hol(rd.polynomial_in({z1}, 3));
      if (is_gen_holomorphic(hol, chart).holomorphic) CHECK(poisson_bracket(f, hol, chart).is_zero());
    }
  }
}

TEST_CASE("generalized holomorphic functions") {
  ModelChart cx = ModelChart::darboux(1, 0);
  ModelChart sy = ModelChart::darboux(0, 1);
  ModelChart hp = ModelChart::holomorphic_poisson(2, 0, pi12(P("z1")));
  CHECK(is_gen_holomorphic(P("z1^2 + 3*z1"), cx).holomorphic);
  CHECK_FALSE(is_gen_holomorphic(P("p1"), sy).holomorphic);
  CHECK(is_gen_holomorphic(P("5/2"), sy).holomorphic);
  HolomorphyReport nz = is_gen_holomorphic(P("z1"), hp);
  CHECK_FALSE(nz.holomorphic);
  CHECK_FALSE(nz.witness.empty());
  CHECK(nz.consistent());
  CHECK(is_gen_holomorphic(P("7"), hp).holomorphic);
  HolomorphyReport full = is_gen_holomorphic(P("z1^2"), ModelChart::darboux(1, 1), 3, true);
  CHECK(full.holomorphic);
  CHECK(full.consistent());
  HolomorphyReport notfull = is_gen_holomorphic(P("z1*p1"), ModelChart::darboux(1, 1), 3, true);
  CHECK_FALSE(notfull.holomorphic);
  CHECK(notfull.consistent());
}

TEST_CASE("equivalent holomorphy conditions agree on a corpus") {
  testing::RandomData rd(34);
  for (const auto& chart : chart_suite()) {
    const ChartVars& c = chart.vars();
    std::vector<Var> zs;
    for (int l = 1; l <= c.k(); ++l) zs.push_back(Var::z(l));
    for (int t = 0; t < 30; ++t) {
      RatFunc f;
      if (t % 3 == 0)
        f = RatFunc(rd.polynomial_in(zs, 3));
      else if (t % 3 == 1)
        f = RatFunc(rd.polynomial(c, 2));
      else
        f = RatFunc(rd.coeff());
      HolomorphyReport r = is_gen_holomorphic(f, chart);
      CAPTURE(chart.describe());
      CAPTURE(f.str());
      CHECK(r.consistent());
    }
  }
}

TEST_CASE("holomorphy is invariant under closed B-transforms") {
  testing::RandomData rd(35);
  ModelChart base = ModelChart::darboux(1, 1);
  const ChartVars& c = base.vars();
  KForm b = KForm::monomial(c, {z1, zb1}, RatFunc(GQ::i())) + KForm::monomial(c, {p1, q1}, P("p1"));
  REQUIRE(ext_d(b).is_zero());
  ModelChart bt = base.b_transformed(b);
  for (int t = 0; t < 50; ++t) {
    RatFunc f = t % 2 ? RatFunc(rd.polynomial_in({z1}, 3)) : RatFunc(rd.polynomial(c, 2));
    CHECK(is_gen_holomorphic(f, base, 2).holomorphic == is_gen_holomorphic(f, bt, 2).holomorphic);
  }
}

TEST_CASE("L- differential") {
  testing::RandomData rd(36);
  for (const auto& chart : chart_suite()) {
    auto st = lminus_structure(chart);
    const ChartVars& c = chart.vars();
    for (int t = 0; t < 4; ++t) {
      RatFunc f(rd.polynomial(c, 3));
      LMinusForm w0 = LMinusForm::function(c.dim(), f);
      LMinusForm w1 = d_algebroid(w0, chart, st);
      LMinusForm expected = LMinusForm::from_covector(d_minus(f, chart));
      CHECK(w1.values() == expected.values());
      CHECK(d_algebroid(w1, chart, st).is_zero());
      LMinusForm g(c.dim(), 1);
      for (int j = 0; j < c.dim(); ++j) g.add({j}, RatFunc(rd.polynomial(c, 2)));
      CHECK(d_algebroid(d_algebroid(g, chart, st), chart, st).is_zero());
    }
  }
  // complex chart, frame (d/dzbar1, dz1): d w (u0, u1) = rho(u0) w(u1) - rho(u1) w(u0) - w([u0, u1])
  ModelChart cx = ModelChart::darboux(1, 0);
  LMinusForm w(2, 1);
  w.add({1}, P("z1*zbar1"));
  CHECK(d_algebroid(w, cx).value({0, 1}) == P("z1"));
  // constant coefficients on a symplectic chart: only bracket terms, which vanish for this frame
  ModelChart sy = ModelChart::darboux(0, 1);
  LMinusForm k(2, 1);
  k.add({0}, RatFunc(3));
  k.add({1}, RatFunc(GQ::i()));
  CHECK(d_algebroid(k, sy).is_zero());
  LMinusForm top(2, 3);
  CHECK_THROWS_AS(d_algebroid(top, sy), Error);
}

TEST_CASE("linear generalized complex maps") {
  LinearGCS c1 = LinearGCS::complex(1);
  LinearGCS s1 = LinearGCS::symplectic(1);
  LinearGCS prod = LinearGCS::product(c1, s1);
  CHECK(gen_complex_linear_check(QMatrix::identity(2), c1, c1).ok());
  CHECK(gen_complex_linear_check(QMatrix::identity(2), s1, s1).ok());
  CHECK(gen_complex_linear_check(QMatrix::identity(4), prod, prod).ok());
  QMatrix proj(2, 4);
  proj(0, 0) = GQ(1);
  proj(1, 1) = GQ(1);
  CHECK(gen_complex_linear_check(proj, prod, c1).ok());
  CHECK(complex_valued_criterion(proj, prod));
  QMatrix bad(2, 2);
  bad(0, 0) = GQ(1);
  CHECK_FALSE(gen_complex_linear_check(bad, s1, c1).ok());
  CHECK_FALSE(complex_valued_criterion(bad, s1));
  // conjugation is not complex linear
  QMatrix conj(2, 2);
  conj(0, 0) = GQ(1);
  conj(1, 1) = GQ(-1);
  CHECK_FALSE(gen_complex_linear_check(conj, c1, c1).ok());
  CHECK_THROWS_AS(gen_complex_linear_check(QMatrix::identity(3), c1, c1), Error);
  // push-forward of the symplectic Poisson part along the identity is itself
  LinearDirac ps = poisson_part(plus_eigenspace(s1));
  CHECK(same_span(pushforward_dirac(QMatrix::identity(2), ps).subspace(), ps.subspace()));
}

TEST_CASE("pointwise structure matches the linear models") {
  ModelChart cx = ModelChart::darboux(1, 0);
  auto pts = sample_points(cx.vars(), 2);
  LinearGCS at = linear_structure_at(cx, pts[0]);
  CHECK(at.full() == LinearGCS::complex(1).full());
  ModelChart sy = ModelChart::darboux(0, 1);
  CHECK(linear_structure_at(sy, sample_points(sy.vars(), 1)[0]).full() == LinearGCS::symplectic(1).full());
  for (const auto& chart : chart_suite())
    for (const auto& pt : sample_points(chart.vars(), 2)) CHECK(check_linear_gcs(linear_structure_at(chart, pt)).ok());
}

TEST_CASE("sample points are deterministic and avoid poles") {
  ChartVars c(1, 1);
  auto a = sample_points(c, 5, {P("1/(z1 - zbar1)")});
  auto b = sample_points(c, 5, {P("1/(z1 - zbar1)")});
  CHECK(a == b);
  for (const auto& pt : a) {
    CHECK(pt[c.zbar_index(1)] == pt[c.z_index(1)].conj());
    CHECK_FALSE((pt[0] - pt[1]).is_zero());
  }
}
