#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gcx/gcs/chart.hpp"

namespace gcx {

/// Coordinates of chart j as functions of the coordinates of chart i.
/// zbar' is the conjugate of z'; p', q' must be affine in p, q.
struct CoordinateChange {
  std::vector<RatFunc> z, p, q;

  static CoordinateChange identity(const ChartVars& c);
  /// Substitution map id(chart-j variable) -> expression in chart-i variables.
  std::map<std::uint32_t, RatFunc> substitution(const ChartVars& c) const;
  /// Jacobian dz'_mu/dz_l as a k x k matrix indexed (mu, l).
  RMatrix holomorphic_jacobian(const ChartVars& c) const;
};

/// Finite cover by model charts of equal type k and dimension with declared
/// overlaps, transitions in both directions and triple overlaps.
class Cover {
 public:
  explicit Cover(std::vector<ModelChart> charts);
  static Cover single(const ModelChart& chart);

  /// Declares the overlap of charts i and j; t_ij expresses chart-j coordinates
  /// through chart-i coordinates, t_ji the reverse.
  void add_overlap(int i, int j, CoordinateChange t_ij, CoordinateChange t_ji);
  void add_triple(int i, int j, int k);

  int size() const { return static_cast<int>(charts_.size()); }
  const ModelChart& chart(int i) const;
  const std::vector<ModelChart>& charts() const { return charts_; }
  const ChartVars& vars() const { return charts_.front().vars(); }
  int type() const { return vars().k(); }

  bool overlaps(int i, int j) const;
  /// Unordered overlaps as (i, j) with i < j.
  std::vector<std::pair<int, int>> overlap_list() const;
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }
  const CoordinateChange& transition(int i, int j) const;

  /// f o T_ij: a function on chart j rewritten in chart-i coordinates.
  RatFunc pull(const RatFunc& f, int i, int j) const;
  std::vector<RatFunc> pull(const std::vector<RatFunc>& v, int i, int j) const;
  RMatrix pull(const RMatrix& m, int i, int j) const;

  /// Deterministic points of chart i at which the transition to j and every
  /// listed function are defined.
  std::vector<Point> overlap_points(int i, int j, int count, const std::vector<RatFunc>& extra = {}) const;

 private:
  std::vector<ModelChart> charts_;
  std::map<std::pair<int, int>, CoordinateChange> t_;
  std::map<std::pair<int, int>, std::map<std::uint32_t, RatFunc>> subst_;
  std::vector<std::array<int, 3>> triples_;
};

struct CoverReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Transition pattern (z' free of zbar, p, q; p', q' affine and free of z),
/// symbolic round trips, triple composition, and preservation of the
/// coordinate Poisson brackets.
CoverReport validate_cover(const Cover& c);

/// Two complex charts of type 1 glued by z' = 1/z.
Cover projective_line_cover();
/// Three complex charts glued by z -> 1/z, z -> 1/(1 - z) with one triple overlap.
Cover three_chart_cover();

}  // namespace gcx
