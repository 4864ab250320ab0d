#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcx/atiyah/ansatz.hpp"
#include "gcx/bundles/bundle.hpp"

namespace gcx {

/// G*M (x) End(E) valued cochain on the nerve of a cover. Each cell (sorted
/// chart ids) holds k matrices of size r x r, the dz_lambda components, written
/// in the coordinates and frame of the first chart of the cell. Cells that are
/// absent are zero.
struct CechCochain {
  int degree = 0;
  int rank = 0;
  int k = 0;
  std::map<std::vector<int>, std::vector<RMatrix>> cells;

  static CechCochain zero(int degree, int rank, int k);
  /// Components of a cell, zero matrices when absent.
  std::vector<RMatrix> at(const std::vector<int>& cell) const;
  bool is_zero() const;
  friend bool operator==(const CechCochain& a, const CechCochain& b);
};

/// Moves chart-j data to chart i: (Tr theta)_l = sum_mu (dz'_mu/dz_l) phi_ij (theta_mu o T_ij) phi_ij^{-1}.
std::vector<RMatrix> transport(const std::vector<RMatrix>& theta_j, const GHBundle& b, int i, int j);

/// (d theta)_ij = Tr_ij(theta_j) - theta_i and
/// (d alpha)_ijk = Tr_ij(alpha_jk) - alpha_ik + alpha_ij. Throws DegreeOverflow on degree 2.
CechCochain cech_d(const CechCochain& c, const GHBundle& b);

/// alpha_ij = (d+ phi_ij) phi_ij^{-1} on every overlap i < j; throws ValidationError
/// when the bundle does not validate.
CechCochain atiyah_cech(const GHBundle& b, int samples = 5);

enum class Verdict { Vanishing, NonVanishing, Inconclusive };
std::string verdict_name(Verdict v);

struct CechSolution {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<CechCochain> theta;  // degree 0 with d theta = alpha, when vanishing
  std::string certificate;           // degree argument, when non-vanishing
  int window = 0;
  int unknowns = 0;
};

/// Searches theta in the ansatz span with d theta = alpha. An infeasible search
/// is NonVanishing only when a Laurent-degree argument rules out every window.
CechSolution coboundary_solve(const CechCochain& alpha, const GHBundle& b, const AnsatzSpace& ansatz);

/// Local generalized holomorphic connection D = d+ + A_i; a[i][l] is the r x r
/// matrix of the dz_l component on chart i.
struct Connection {
  std::vector<std::vector<RMatrix>> a;
};

/// A_i = theta_i; throws GluingMismatch naming the first overlap where
/// Tr_ij(A_j) - A_i != alpha_ij.
Connection assemble_connection(const CechCochain& theta, const GHBundle& b);
/// Same gluing condition without throwing.
std::optional<std::string> connection_gluing_mismatch(const Connection& d, const GHBundle& b);

/// D s as a section of G*M (x) E (component l * r + a).
BundleSection apply_connection(const Connection& d, const BundleSection& s, const GHBundle& b);
/// D applied to chart-local coefficients on chart i.
std::vector<RatFunc> apply_local(const Connection& d, int chart, const std::vector<RatFunc>& s);

struct ConnectionReport {
  bool glues = false;               // gluing condition and D s glues for every test section
  bool holomorphic_coefficients = false;
  bool leibniz = false;             // D(f s) = d+f (x) s + f D s on generators
  bool preserves_sections = false;  // D_X s generalized holomorphic for holomorphic X, s
  std::vector<std::string> failures;
  bool ok() const { return glues && holomorphic_coefficients && leibniz && preserves_sections; }
};

/// Checks a connection on the frame sections of each chart, on the given
/// global sections, and on the generators 1, z_l, z_l^2 of the function algebra.
ConnectionReport check_connection(const Connection& d, const GHBundle& b, const std::vector<BundleSection>& sections = {});

/// D_X e = 0 for X = pi#(df) on a holomorphic-Poisson chart, for each f.
bool hamiltonian_check(const std::vector<RMatrix>& a, const ModelChart& chart, const std::vector<RatFunc>& fs);

}  // namespace gcx
