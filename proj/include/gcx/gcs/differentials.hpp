#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/gcs/chart.hpp"
#include "gcx/gcs/linear.hpp"

namespace gcx {

/// Element of Gamma(L-^*) stored both as its values on the L- frame and as the
/// representative in span(L+) that pairs to those values.
struct LMinusCovector {
  std::vector<RatFunc> values;
  GSection rep;
  bool is_zero() const;
};

/// Element of Gamma(L+^*): values on the L+ frame, representative in span(L-).
struct LPlusCovector {
  std::vector<RatFunc> values;
  GSection rep;
  bool is_zero() const;
};

/// L+ component of df; its values are rho(u) f on the L- frame.
LMinusCovector d_minus(const RatFunc& f, const ModelChart& chart);
/// L- component of df; its values are rho(l) f on the L+ frame.
LPlusCovector d_plus(const RatFunc& f, const ModelChart& chart);

/// {f, g} = (d+ f, d- g).
RatFunc poisson_bracket(const RatFunc& f, const RatFunc& g, const ModelChart& chart);

/// Alternating form on L- given by values on sorted tuples of L- frame indices.
class LMinusForm {
 public:
  using Index = std::vector<int>;

  LMinusForm(int frame_size, int degree);
  static LMinusForm function(int frame_size, const RatFunc& f);
  static LMinusForm from_covector(const LMinusCovector& c);

  int degree() const { return degree_; }
  int frame_size() const { return size_; }
  RatFunc value(Index idx) const;
  void add(Index idx, const RatFunc& f);
  const std::map<Index, RatFunc>& values() const { return v_; }
  bool is_zero() const { return v_.empty(); }

 private:
  int size_;
  int degree_;
  std::map<Index, RatFunc> v_;
};

/// Structure functions: [l-_a, l-_b] = sum_m C[a][b][m] l-_m.
std::vector<std::vector<std::vector<RatFunc>>> lminus_structure(const ModelChart& chart);

/// Lie algebroid differential of L- on forms of degree <= 2.
LMinusForm d_algebroid(const LMinusForm& w, const ModelChart& chart);
LMinusForm d_algebroid(const LMinusForm& w, const ModelChart& chart,
                       const std::vector<std::vector<std::vector<RatFunc>>>& structure);

struct HolomorphyReport {
  bool holomorphic = false;           // d- f = 0
  std::string witness;                // nonzero component of d- f
  bool coordinate_criterion = false;  // derivative conditions in canonical coordinates
  bool pointwise_linear = false;      // f J = J0 f_*, f_* beta = 0 at every sample point
  bool cotangent_in_lminus = false;   // df in L- at the symbolic level
  std::optional<bool> pushforward;    // generalized complex map check at sample points
  bool consistent() const;
};

HolomorphyReport is_gen_holomorphic(const RatFunc& f, const ModelChart& chart, int sample_count = 5,
                                    bool with_pushforward = false);

/// Generalized complex structure of the chart at a point, in the real basis
/// x_l, y_l (z = x + iy), p, q.
LinearGCS linear_structure_at(const ModelChart& chart, const Point& pt);
/// f_* at a point as a 2 x dim real matrix (rows Re df, Im df) in the real basis.
QMatrix real_differential(const RatFunc& f, const ModelChart& chart, const Point& pt);

}  // namespace gcx
