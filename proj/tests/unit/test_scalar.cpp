#include "doctest.h"
#include "gcx/error.hpp"
#include "gcx/linalg/matrix.hpp"
#include "gcx/scalar/parse.hpp"
#include "random_data.hpp"

using namespace gcx;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }
const Var z1 = Var::z(1), zb1 = Var::zbar(1), p1 = Var::p(1), q1 = Var::q(1);

// Equality oracle that avoids the canonical form: a == b iff a.num*b.den - b.num*a.den = 0.
bool cross_equal(const RatFunc& a, const RatFunc& b) {
  return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

}  // namespace

TEST_CASE("gaussian rational arithmetic and printing") {
  GQ a(mpq_class(1, 2), mpq_class(3));
  CHECK(a.str() == "(1/2+3*i)");
  CHECK(GQ(-2).str() == "-2");
  CHECK(GQ::ratio(-1, 2).str() == "-1/2");
  CHECK(GQ::i().str() == "i");
  CHECK((GQ(-2) * GQ::i()).str() == "-2*i");
  CHECK(GQ::i() * GQ::i() == GQ(-1));
  CHECK(a * a.inverse() == GQ(1));
  CHECK(a.conj().conj() == a);
  CHECK(GQ(mpq_class(2, 4)) == GQ::ratio(1, 2));
  CHECK_THROWS_AS(GQ(0).inverse(), Error);
  CHECK(GQ::i().pow(-3) == GQ::i());
}

TEST_CASE("chart variables") {
  ChartVars c(1, 1);
  CHECK(c.dim() == 4);
  CHECK(c.var(0) == Var::z(1));
  CHECK(c.var(1) == Var::zbar(1));
  CHECK(c.var(2) == Var::p(1));
  CHECK(c.var(3) == Var::q(1));
  CHECK(c.conj_index(0) == 1);
  CHECK(c.conj_index(3) == 3);
  CHECK_FALSE(c.contains(Var::z(2)));
  CHECK_THROWS_AS(ChartVars(0, 0), Error);
  CHECK(parse_var("zbar12") == Var::zbar(12));
  CHECK_FALSE(parse_var("zb1").has_value());
  CHECK_FALSE(parse_var("z0").has_value());
}

TEST_CASE("field operations") {
  CHECK((P("z1") + P("-z1")).is_zero());
  CHECK((P("1/(1+p1)") * P("1+p1")).is_one());
  RatFunc q = P("z1^2-1") / P("z1-1");
  CHECK(q == P("z1+1"));
  CHECK(q.is_polynomial());
  // polynomial oracle: (z1 + 1)(z1 - 1) = z1^2 - 1 without any gcd
  Polynomial x = Polynomial::variable(z1);
  CHECK((x + Polynomial(1)) * (x - Polynomial(1)) == x * x - Polynomial(1));
  CHECK_THROWS_AS(P("z1") / RatFunc(), Error);
  try {
    (void)(P("z1") / RatFunc());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("canonical form makes equality structural") {
  testing::RandomData rd(11);
  ChartVars c(1, 1);
  for (int t = 0; t < 40; ++t) {
    RatFunc a = rd.ratfunc(c, 2);
    RatFunc b = rd.ratfunc(c, 2);
    RatFunc s = a + b;
    CHECK((s - b) == a);
    CHECK(cross_equal(s - b, a));
    if (!b.is_zero()) CHECK(a * b / b == a);
    CHECK(((a == b) == cross_equal(a, b)));
    CHECK(s.den().leading().coeff.is_one());
  }
}

TEST_CASE("field axioms on random data") {
  testing::RandomData rd(12);
  ChartVars c(1, 1);
  for (int t = 0; t < 25; ++t) {
    RatFunc a = rd.ratfunc(c, 2), b = rd.ratfunc(c, 2), d = rd.ratfunc(c, 2);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
  }
}

TEST_CASE("multivariate gcd") {
  Polynomial x = Polynomial::variable(z1), y = Polynomial::variable(zb1), p = Polynomial::variable(p1);
  Polynomial common = x * y + GQ::i() * p + Polynomial(3);
  Polynomial a = common * (x - y) * (x + Polynomial(2));
  Polynomial b = common * (y * y + p) * (x + Polynomial(2));
  Polynomial g = gcd(a, b);
  Polynomial expected = (common * (x + Polynomial(2))).monic();
  CHECK(g == expected);
  // cofactors are coprime
  CHECK(gcd(*a.divide_exact(g), *b.divide_exact(g)).is_constant());
  CHECK(gcd(Polynomial(), Polynomial()).is_zero());
  CHECK(gcd(x * x * y, x * y * y) == x * y);
}

TEST_CASE("random gcd against constructed common factor") {
  testing::RandomData rd(13);
  ChartVars c(1, 1);
  for (int t = 0; t < 30; ++t) {
    Polynomial f = rd.polynomial(c, 2), u = rd.polynomial(c, 2), v = rd.polynomial(c, 2);
    if (f.is_zero() || u.is_zero() || v.is_zero()) continue;
    Polynomial g = gcd(f * u, f * v);
    CHECK((f * u).divide_exact(g).has_value());
    CHECK((f * v).divide_exact(g).has_value());
    CHECK(g.divide_exact(f.monic()).has_value());
  }
}

TEST_CASE("wirtinger derivatives") {
  ChartVars c(1, 0);
  CHECK(wirtinger_diff(P("z1^2"), z1, c) == P("2*z1"));
  CHECK(wirtinger_diff(P("z1"), zb1, c).is_zero());
  RatFunc f = P("z1/(1+z1)");
  RatFunc df = wirtinger_diff(f, z1, c);
  CHECK(df == P("1/(1+z1)^2"));
  // quotient-rule oracle: f' v^2 = u' v - u v'
  Polynomial u = Polynomial::variable(z1), v = Polynomial(1) + Polynomial::variable(z1);
  Polynomial rhs = u.derivative(z1) * v - u * v.derivative(z1);
  CHECK(cross_equal(df, RatFunc::fraction(rhs, v * v)));
  CHECK_THROWS_AS(wirtinger_diff(f, p1, c), Error);
  try {
    wirtinger_diff(f, p1, c);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownVariable);
  }
}

TEST_CASE("leibniz rule and mixed partials") {
  testing::RandomData rd(14);
  ChartVars c(1, 1);
  for (int t = 0; t < 20; ++t) {
    RatFunc f = rd.ratfunc(c, 2), g = rd.ratfunc(c, 2);
    for (Var v : c.vars()) {
      CHECK(wirtinger_diff(f * g, v, c) == wirtinger_diff(f, v, c) * g + f * wirtinger_diff(g, v, c));
      for (Var w : c.vars())
        CHECK(wirtinger_diff(wirtinger_diff(f, v, c), w, c) == wirtinger_diff(wirtinger_diff(f, w, c), v, c));
    }
  }
}

TEST_CASE("formal conjugation") {
  CHECK(formal_conjugate(P("i*z1")) == P("-i*zbar1"));
  CHECK(formal_conjugate(P("p1+q1")) == P("p1+q1"));
  testing::RandomData rd(15);
  ChartVars c(2, 1);
  for (int t = 0; t < 50; ++t) {
    RatFunc f = RatFunc(rd.polynomial(c, 3));
    CHECK(formal_conjugate(formal_conjugate(f)) == f);
  }
  for (int t = 0; t < 20; ++t) {
    RatFunc f = rd.ratfunc(c, 2), g = rd.ratfunc(c, 2);
    CHECK(formal_conjugate(f * g) == formal_conjugate(f) * formal_conjugate(g));
    CHECK(formal_conjugate(f + g) == formal_conjugate(f) + formal_conjugate(g));
    CHECK(formal_conjugate(formal_conjugate(f)) == f);
  }
}

TEST_CASE("parse and print round trip") {
  CHECK(P("1/2").str() == "1/2");
  CHECK(P("z1^-2").str() == "1/z1^2");
  CHECK(P("(2+i)*z1 - 1/3*zbar1").str() == "(2+i)*z1 - 1/3*zbar1");
  CHECK(P("-z1^2") == RatFunc(-Polynomial::variable(z1).pow(2)));
  CHECK_THROWS_AS(P("z1 +"), Error);
  CHECK_THROWS_AS(P("w1"), Error);
  CHECK_THROWS_AS(P("1/0"), Error);
  CHECK_THROWS_AS(parse_ratfunc("p1", ChartVars(1, 0)), Error);
  testing::RandomData rd(16);
  ChartVars c(1, 1);
  for (int t = 0; t < 50; ++t) {
    RatFunc f = rd.ratfunc(c, 3);
    CHECK(P(f.str().c_str()) == f);
  }
}

TEST_CASE("substitution and evaluation") {
  RatFunc f = P("z1^2 + 1/z1");
  RatFunc g = f.substitute({{z1.id(), P("1/z1")}});
  CHECK(g == P("1/z1^2 + z1"));
  auto at = [](Var v) { return v == z1 ? GQ(2) : GQ(0); };
  CHECK(f.eval(at) == GQ(mpq_class(9, 2)));
  CHECK_THROWS_AS(P("1/z1").eval([](Var) { return GQ(0); }), Error);
}

TEST_CASE("exact linear algebra over Q(i)") {
  Matrix<GQ> m(3, 3, {GQ(2), GQ(1), GQ(0), GQ(1), GQ(3), GQ::i(), GQ(0), GQ(1), GQ(1)});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == Matrix<GQ>::identity(3));
  // cofactor expansion oracle for the determinant
  GQ cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  CHECK(det(m) == cof);
  Matrix<GQ> s(2, 3, {GQ(1), GQ(2), GQ(3), GQ(2), GQ(4), GQ(6)});
  CHECK(rank(s) == 1);
  auto ns = nullspace(s);
  CHECK(ns.size() == 2);
  for (const auto& v : ns)
    for (const auto& x : s.apply(v)) CHECK(x.is_zero());
  CHECK_FALSE(solve(s, std::vector<GQ>{GQ(1), GQ(1)}).has_value());
  auto x = solve(s, std::vector<GQ>{GQ(1), GQ(2)});
  REQUIRE(x.has_value());
  CHECK(s.apply(*x) == std::vector<GQ>{GQ(1), GQ(2)});
}

TEST_CASE("exact linear algebra over rational functions") {
  Matrix<RatFunc> m(2, 2, {P("z1"), P("1"), P("p1"), P("z1+p1")});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == Matrix<RatFunc>::identity(2));
  CHECK(det(m) == P("z1^2 + z1*p1 - p1"));
}
