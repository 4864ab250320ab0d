#pragma once

#include <optional>
#include <vector>

#include "gcx/atiyah/cech.hpp"

namespace gcx {

/// Lie pair (complexified tangent fields, A = rho(L-)) on one chart together
/// with a connection on a rank-r trivialized bundle: flat[c] is the matrix of
/// the flat A-connection along a_frame[c], gamma[l] that of the extension
/// along lifts[l].
struct LiePairData {
  ModelChart chart;
  int rank = 0;
  std::vector<VField> a_frame;
  std::vector<VField> lifts;
  std::vector<RMatrix> flat;
  std::vector<RMatrix> gamma;

  /// A-frame from the anchor image of the L- frame (row-reduced), lifts from
  /// the coordinate fields completing it, zero flat part and extension.
  /// Throws FrameError when the A-frame is not involutive.
  static LiePairData from_chart(const ModelChart& chart, int rank);
  /// Extension along each lift u taken from D = d+ + A: Gamma_u = sum_l u^{z_l} A_l.
  static LiePairData from_connection(const ModelChart& chart, const std::vector<RMatrix>& a);

  struct Split {
    std::vector<RatFunc> a, lift;
  };
  /// Coefficients of v in the basis a_frame + lifts.
  Split decompose(const VField& v) const;
  /// Connection matrix along v: sum of a-coefficients times flat plus lift-coefficients times gamma.
  RMatrix along(const VField& v) const;
};

/// [a][l] -> r x r matrix; an element of A* (x) (P/A)* (x) End(E).
using LieTensor = std::vector<std::vector<RMatrix>>;
/// [a][b][l] -> r x r matrix, antisymmetric in (a, b).
using LieTwoTensor = std::vector<std::vector<std::vector<RMatrix>>>;

/// R(a, u) = a(Gamma_u) - u(omega_a) + [omega_a, Gamma_u] - conn([a, u]).
LieTensor liepair_cocycle(const LiePairData& d);
/// Curvature of the flat part along pairs of A-frame vectors.
std::vector<std::vector<RMatrix>> flat_curvature(const LiePairData& d);

/// d_A of a degree-0 cochain xi[l] with the Bott action on (P/A)*:
/// (d xi)(a)(u) = a(xi_u) + [omega_a, xi_u] - xi(pr[a, u]).
LieTensor lie_d0(const LiePairData& d, const std::vector<RMatrix>& xi);
/// d_A of a degree-1 cochain: (dT)(a, b) = nabla_a T(b) - nabla_b T(a) - T([a, b]).
LieTwoTensor lie_d1(const LiePairData& d, const LieTensor& t);
bool is_zero(const LieTensor& t);
bool is_zero(const LieTwoTensor& t);

struct LiePairClassReport {
  bool r1_closed = false;
  bool r2_closed = false;
  bool difference_exact = false;  // R1 - R2 = d_A(Gamma1 - Gamma2)
  LieTensor difference;
  bool ok() const { return r1_closed && r2_closed && difference_exact; }
};

/// Throws MismatchedData unless both share chart, rank, frames and flat part.
LiePairClassReport liepair_class_tests(const LiePairData& d1, const LiePairData& d2);

/// Searches extensions Gamma^(i) in the ansatz span with R = 0 on every chart
/// whose induced connections agree on overlaps.
std::optional<std::vector<LiePairData>> flat_extension_solve(const GHBundle& b, const AnsatzSpace& ansatz);

}  // namespace gcx
