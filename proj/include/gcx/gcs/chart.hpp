#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/cartan/courant.hpp"
#include "gcx/linalg/matrix.hpp"

namespace gcx {

using RMatrix = Matrix<RatFunc>;

enum class ChartKind { DarbouxProduct, HolomorphicPoisson };

/// Canonical chart of type k: C^k x (R^{2m}, dp ^ dq), optionally carrying a
/// holomorphic Poisson bivector on the C^k factor and a closed real B-field.
/// Holds explicit frames of L+ and L- = conj(L+).
class ModelChart {
 public:
  ModelChart() : ModelChart(darboux(0, 1)) {}

  static ModelChart darboux(int k, int m);
  /// pi is a k x k antisymmetric matrix of functions of z only.
  static ModelChart holomorphic_poisson(int k, int m, const RMatrix& pi);
  /// B-transform of this chart; B must be a closed, real 2-form.
  ModelChart b_transformed(const KForm& b) const;

  const ChartVars& vars() const { return vars_; }
  ChartKind kind() const { return kind_; }
  int type() const { return vars_.k(); }
  int dim() const { return vars_.dim(); }
  const RMatrix& pi() const { return pi_; }
  const std::optional<KForm>& b_field() const { return b_; }
  std::string describe() const;

  const std::vector<GSection>& lplus() const { return lplus_; }
  const std::vector<GSection>& lminus() const { return lminus_; }
  /// G(i, j) = (l+_i, l-_j).
  const RMatrix& frame_pairing() const { return g_; }
  const RMatrix& frame_pairing_inverse() const { return g_inv_; }

  /// s = sum a_i l+_i + sum b_j l-_j.
  struct Decomposition {
    std::vector<RatFunc> plus, minus;
  };
  Decomposition decompose(const GSection& s) const;
  GSection combine_plus(const std::vector<RatFunc>& a) const;
  GSection combine_minus(const std::vector<RatFunc>& b) const;

 private:
  ModelChart(ChartVars vars, ChartKind kind, RMatrix pi, std::optional<KForm> b, std::vector<GSection> lplus);

  ChartVars vars_;
  ChartKind kind_ = ChartKind::DarbouxProduct;
  RMatrix pi_;
  std::optional<KForm> b_;
  std::vector<GSection> lplus_, lminus_;
  RMatrix g_, g_inv_;
};

/// Frame {X - i omega(X)} over the coordinate fields of a chart.
std::vector<GSection> symplectic_frame(const ChartVars& chart, const KForm& omega);

struct IntegrabilityReport {
  bool ok = true;
  int pairs_checked = 0;
  std::string witness;
};

/// Solves [f_i, f_j] = sum c_k f_k for every pair; fails on the first pair
/// whose bracket leaves the span.
IntegrabilityReport check_integrability(const std::vector<GSection>& frame);

struct ChartReport {
  bool isotropic = false;
  bool dual = false;
  bool conjugate = false;
  bool integrable = false;
  std::string witness;
  bool ok() const { return isotropic && dual && conjugate && integrable; }
};

/// Checks all frame invariants of a chart.
ChartReport check_chart(const ModelChart& chart);

/// Components of frame sections as columns (2 dim x frame size).
RMatrix frame_matrix(const std::vector<GSection>& frame);

// ---------------------------------------------------------- sample points

/// Values of the chart coordinates, indexed like the chart basis.
using Point = std::vector<GQ>;

/// Deterministic points with zbar = conj(z) and real p, q at which every
/// listed function is defined.
std::vector<Point> sample_points(const ChartVars& chart, int count, const std::vector<RatFunc>& must_be_defined = {});
GQ eval_at(const RatFunc& f, const ChartVars& chart, const Point& pt);

}  // namespace gcx
