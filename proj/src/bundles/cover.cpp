#include "gcx/bundles/cover.hpp"

#include "gcx/error.hpp"
#include "gcx/gcs/differentials.hpp"

namespace gcx {

namespace {

std::string cell(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// All chart coordinates of the target written through the source coordinates.
std::vector<RatFunc> coordinate_images(const CoordinateChange& t, const ChartVars& c) {
  auto sub = t.substitution(c);
  std::vector<RatFunc> out;
  for (Var v : c.vars()) out.push_back(sub.at(v.id()));
  return out;
}

}  // namespace

CoordinateChange CoordinateChange::identity(const ChartVars& c) {
  CoordinateChange t;
  for (int l = 1; l <= c.k(); ++l) t.z.push_back(RatFunc::variable(Var::z(l)));
  for (int l = 1; l <= c.m(); ++l) {
    t.p.push_back(RatFunc::variable(Var::p(l)));
    t.q.push_back(RatFunc::variable(Var::q(l)));
  }
  return t;
}

std::map<std::uint32_t, RatFunc> CoordinateChange::substitution(const ChartVars& c) const {
  require(static_cast<int>(z.size()) == c.k() && static_cast<int>(p.size()) == c.m() &&
              static_cast<int>(q.size()) == c.m(),
          ErrorCode::InvalidTransition, "coordinate change does not match the chart dimensions");
  std::map<std::uint32_t, RatFunc> s;
  for (int l = 1; l <= c.k(); ++l) {
    s[Var::z(l).id()] = z[l - 1];
    s[Var::zbar(l).id()] = z[l - 1].conj();
  }
  for (int l = 1; l <= c.m(); ++l) {
    s[Var::p(l).id()] = p[l - 1];
    s[Var::q(l).id()] = q[l - 1];
  }
  return s;
}

RMatrix CoordinateChange::holomorphic_jacobian(const ChartVars& c) const {
  RMatrix jac(c.k(), c.k());
  for (int mu = 0; mu < c.k(); ++mu)
    for (int l = 0; l < c.k(); ++l) jac(mu, l) = z[mu].derivative(Var::z(l + 1));
  return jac;
}

Cover::Cover(std::vector<ModelChart> charts) : charts_(std::move(charts)) {
  require(!charts_.empty(), ErrorCode::InvalidTransition, "cover needs at least one chart");
  for (const auto& ch : charts_)
    require(ch.vars() == charts_.front().vars(), ErrorCode::ChartMismatch, "cover charts differ in type or dimension");
}

Cover Cover::single(const ModelChart& chart) { return Cover({chart}); }

void Cover::add_overlap(int i, int j, CoordinateChange t_ij, CoordinateChange t_ji) {
  require(i != j && i >= 0 && j >= 0 && i < size() && j < size(), ErrorCode::InvalidTransition,
          "overlap " + cell(i, j) + " names unknown charts");
  subst_[{i, j}] = t_ij.substitution(vars());
  subst_[{j, i}] = t_ji.substitution(vars());
  t_[{i, j}] = std::move(t_ij);
  t_[{j, i}] = std::move(t_ji);
}

void Cover::add_triple(int i, int j, int k) {
  require(overlaps(i, j) && overlaps(j, k) && overlaps(i, k), ErrorCode::InvalidTransition,
          "triple overlap needs all three pairwise overlaps");
  triples_.push_back({i, j, k});
}

const ModelChart& Cover::chart(int i) const {
  require(i >= 0 && i < size(), ErrorCode::InvalidTransition, "unknown chart " + std::to_string(i));
  return charts_[i];
}

bool Cover::overlaps(int i, int j) const { return i == j || t_.count({i, j}) > 0; }

std::vector<std::pair<int, int>> Cover::overlap_list() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, t] : t_)
    if (key.first < key.second) out.push_back(key);
  return out;
}

const CoordinateChange& Cover::transition(int i, int j) const {
  auto it = t_.find({i, j});
  require(it != t_.end(), ErrorCode::InvalidTransition, "no declared overlap " + cell(i, j));
  return it->second;
}

RatFunc Cover::pull(const RatFunc& f, int i, int j) const {
  if (i == j) return f;
  auto it = subst_.find({i, j});
  require(it != subst_.end(), ErrorCode::InvalidTransition, "no declared overlap " + cell(i, j));
  return f.substitute(it->second);
}

std::vector<RatFunc> Cover::pull(const std::vector<RatFunc>& v, int i, int j) const {
  std::vector<RatFunc> out;
  for (const auto& f : v) out.push_back(pull(f, i, j));
  return out;
}

RMatrix Cover::pull(const RMatrix& m, int i, int j) const {
  return m.map([&](const RatFunc& f) { return pull(f, i, j); });
}

std::vector<Point> Cover::overlap_points(int i, int j, int count, const std::vector<RatFunc>& extra) const {
  std::vector<RatFunc> defined = extra;
  if (i != j)
    for (const auto& f : coordinate_images(transition(i, j), vars())) defined.push_back(f);
  return sample_points(vars(), count, defined);
}

CoverReport validate_cover(const Cover& c) {
  CoverReport r;
  const ChartVars& v = c.vars();
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      if (i == j || !c.overlaps(i, j)) continue;
      const CoordinateChange& t = c.transition(i, j);
      const std::string at = "overlap " + cell(i, j);
      for (int mu = 0; mu < v.k(); ++mu)
        for (Var x : v.vars())
          if (x.kind != VarKind::Z && !t.z[mu].derivative(x).is_zero())
            r.failures.push_back(at + ": d z'" + std::to_string(mu + 1) + "/d" + x.name() + " != 0");
      for (int l = 0; l < v.m(); ++l)
        for (const RatFunc* f : {&t.p[l], &t.q[l]})
          for (Var x : v.vars()) {
            RatFunc d = f->derivative(x);
            if (x.kind == VarKind::Z || x.kind == VarKind::Zbar) {
              if (!d.is_zero()) r.failures.push_back(at + ": symplectic coordinate depends on " + x.name());
            } else if (!d.is_constant()) {
              r.failures.push_back(at + ": symplectic coordinate " + f->str() + " is not affine");
            }
          }
      // T_ji o T_ij = id
      std::vector<RatFunc> back = c.pull(coordinate_images(c.transition(j, i), v), i, j);
      for (int a = 0; a < v.dim(); ++a)
        if (!(back[a] == RatFunc::variable(v.var(a))))
          r.failures.push_back(at + ": round trip sends " + v.var(a).name() + " to " + back[a].str());
      if (i < j) {
        // coordinate Poisson brackets: {y^a, y^b}_i = {y^a, y^b}_j o T_ij
        std::vector<RatFunc> y = coordinate_images(t, v);
        for (int a = 0; a < v.dim(); ++a)
          for (int b = a + 1; b < v.dim(); ++b) {
            RatFunc lhs = poisson_bracket(y[a], y[b], c.chart(i));
            RatFunc rhs = c.pull(
                poisson_bracket(RatFunc::variable(v.var(a)), RatFunc::variable(v.var(b)), c.chart(j)), i, j);
            if (!(lhs == rhs))
              r.failures.push_back(at + ": bracket of " + v.var(a).name() + ", " + v.var(b).name() +
                                   " not preserved (" + lhs.str() + " vs " + rhs.str() + ")");
          }
      }
    }
  for (const auto& [i, j, k] : c.triples()) {
    std::vector<RatFunc> composed = c.pull(coordinate_images(c.transition(j, k), v), i, j);
    std::vector<RatFunc> direct = coordinate_images(c.transition(i, k), v);
    for (int a = 0; a < v.dim(); ++a)
      if (!(composed[a] == direct[a]))
        r.failures.push_back("triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                             "): composition differs in " + v.var(a).name());
    for (const Point& pt : c.overlap_points(i, k, 2, composed)) {
      for (int a = 0; a < v.dim(); ++a)
        if (!(eval_at(composed[a], v, pt) == eval_at(direct[a], v, pt)))
          r.failures.push_back("triple composition differs at a sample point");
    }
  }
  return r;
}

Cover projective_line_cover() {
  Cover c({ModelChart::darboux(1, 0), ModelChart::darboux(1, 0)});
  CoordinateChange inv;
  inv.z = {RatFunc::variable(Var::z(1)).inverse()};
  c.add_overlap(0, 1, inv, inv);
  return c;
}

Cover three_chart_cover() {
  Cover c({ModelChart::darboux(1, 0), ModelChart::darboux(1, 0), ModelChart::darboux(1, 0)});
  const RatFunc z = RatFunc::variable(Var::z(1));
  const RatFunc one(1);
  auto change = [](const RatFunc& f) {
    CoordinateChange t;
    t.z = {f};
    return t;
  };
  c.add_overlap(0, 1, change(z.inverse()), change(z.inverse()));
  c.add_overlap(0, 2, change((one - z).inverse()), change((z - one) / z));
  c.add_overlap(1, 2, change(z / (z - one)), change(z / (z - one)));
  c.add_triple(0, 1, 2);
  return c;
}

}  // namespace gcx
