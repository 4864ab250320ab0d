#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcx/bundles/cover.hpp"
#include "gcx/gcs/differentials.hpp"

namespace gcx {

/// Vector bundle of rank r given by transition matrices on a cover.
///
/// Convention: local coefficient vectors satisfy s^(i) = phi_ij * (s^(j) o T_ij),
/// with phi_ij a matrix of functions in chart-i coordinates.
class GHBundle {
 public:
  GHBundle(Cover cover, int rank);
  static GHBundle trivial(const Cover& cover, int rank);

  /// Sets phi_ij and derives phi_ji = phi_ij^{-1} o T_ji.
  void set_transition(int i, int j, const RMatrix& phi);
  /// Sets both directions explicitly (validation checks they are inverse).
  void set_transition(int i, int j, const RMatrix& phi_ij, const RMatrix& phi_ji);

  int rank() const { return rank_; }
  const Cover& cover() const { return cover_; }
  /// phi_ij; the identity for i == j.
  RMatrix phi(int i, int j) const;
  bool has_transition(int i, int j) const { return i == j || phi_.count({i, j}) > 0; }

 private:
  Cover cover_;
  int rank_;
  std::map<std::pair<int, int>, RMatrix> phi_;
};

struct BundleIssue {
  std::string where;  // overlap or triple id
  std::string what;
};

struct BundleReport {
  std::vector<BundleIssue> failures;
  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

/// Cocycle inverse and triple identities, generalized holomorphic entries,
/// nonzero determinants at sample points; also reports cover failures.
BundleReport validate_bundle(const GHBundle& b, int samples = 5);

/// Rank-1 model on the projective line cover with phi_01 = z^n.
GHBundle projective_line_bundle(int n);

/// Local coefficient vectors, one per chart.
struct BundleSection {
  std::vector<std::vector<RatFunc>> local;
};

/// Empty when s^(i) = phi_ij (s^(j) o T_ij) on every overlap, else a witness.
std::optional<std::string> section_mismatch(const BundleSection& s, const GHBundle& b);
void require_section(const BundleSection& s, const GHBundle& b);
/// Builds a section from its chart-0 coefficients by transport along phi_{j0}.
BundleSection section_from_chart0(const std::vector<RatFunc>& s0, const GHBundle& b);

/// Sum over lambda of d_minus(s_lambda) e_lambda, per chart.
using DelbarE = std::vector<std::vector<LMinusCovector>>;
DelbarE del_bar_E(const BundleSection& s, const GHBundle& b);
/// On each overlap, the L- values of del_bar_E in chart i equal phi_ij times
/// those of the pulled-back chart-j coefficients.
std::optional<std::string> delbar_overlap_mismatch(const BundleSection& s, const GHBundle& b);
/// d_algebroid applied to every component of del_bar_E vanishes.
bool delbar_squares_to_zero(const BundleSection& s, const GHBundle& b);
bool is_gh_section(const BundleSection& s, const GHBundle& b);

/// {f, s} = sum {f, s_lambda} e_lambda chart by chart. f is given per chart.
BundleSection poisson_module_bracket(const std::vector<RatFunc>& f, const BundleSection& s, const GHBundle& b);
/// Same expression in every chart; it must glue as a function.
BundleSection poisson_module_bracket(const RatFunc& f, const BundleSection& s, const GHBundle& b);

/// Chart-local matrices F_i (rank dst x rank src): generalized holomorphic
/// entries and F_i phi^src_ij = phi^dst_ij (F_j o T_ij).
bool hom_check(const std::vector<RMatrix>& f, const GHBundle& src, const GHBundle& dst);

/// Cotangent bundle in the dz frame: phi_ij(l, mu) = dz'_mu/dz_l.
GHBundle gstar_bundle(const Cover& c);
/// Tangent bundle in the d/dz frame: inverse transpose of the cotangent cocycle.
GHBundle g_bundle(const Cover& c);
/// Chart-wise sum of xi_l X_l; the result is a function section (rank-1 trivial).
std::vector<RatFunc> gh_pairing(const BundleSection& xi, const BundleSection& x, const Cover& c);

GHBundle dual_bundle(const GHBundle& e);
/// Basis e_a (x) f_b at index a * rank(f) + b.
GHBundle tensor_bundle(const GHBundle& e, const GHBundle& f);

}  // namespace gcx
