#pragma once

#include <string>

#include "gcx/linalg/matrix.hpp"
#include "gcx/scalar/gaussian_rational.hpp"

namespace gcx {

using QMatrix = Matrix<GQ>;

/// Constant generalized complex structure on V = R^{2n} given by its blocks:
/// the operator on V (+) V* is [[J, beta], [B, -J^T]]. beta maps V* -> V and
/// B maps V -> V*, both antisymmetric.
struct LinearGCS {
  int n = 1;
  QMatrix J, beta, B;

  int dim() const { return 2 * n; }
  QMatrix full() const;
  static LinearGCS from_full(const QMatrix& m);

  /// Standard complex structure on C^n with real coordinates x_1..x_n, y_1..y_n.
  static LinearGCS complex(int n);
  /// Structure of omega_0 = sum dp ^ dq on R^{2n} (coordinates p_1..p_n, q_1..q_n).
  static LinearGCS symplectic(int n);
  static LinearGCS product(const LinearGCS& a, const LinearGCS& b);
};

struct LinearCheck {
  bool squares_to_minus_one = false;
  bool orthogonal = false;
  std::string witness;
  bool ok() const { return squares_to_minus_one && orthogonal; }
};

/// Checks the operator squares to -1 and preserves the pairing.
LinearCheck check_linear_gcs(const LinearGCS& s);

/// Maximal isotropic subspace L(E, eps) of V_C (+) V_C^*. E is given by basis
/// columns, eps by its matrix on that basis.
struct LinearDirac {
  QMatrix E;
  QMatrix eps;

  int ambient() const { return static_cast<int>(E.rows()); }
  /// Basis columns of L(E, eps) in V (+) V^* coordinates.
  QMatrix subspace() const;
  /// Recovers (E, eps) from basis columns of a maximal isotropic subspace.
  static LinearDirac from_subspace(const QMatrix& l);
};

/// +i eigenspace of the operator as a Dirac subspace.
LinearDirac plus_eigenspace(const LinearGCS& s);
/// P_V = L(Delta, omega_Delta) with Delta the real part of E cap conj(E).
LinearDirac poisson_part(const LinearDirac& l);

/// phi_* P = { phi(u) + a : u + phi^T(a) in P }; phi is dim W x dim V.
LinearDirac pushforward_dirac(const QMatrix& phi, const LinearDirac& p);

struct LinearMapCheck {
  bool e_inclusion = false;     // phi(E_V) inside E_W
  bool poisson_match = false;   // phi_* P_V = P_W
  bool ok() const { return e_inclusion && poisson_match; }
};

LinearMapCheck gen_complex_linear_check(const QMatrix& phi, const LinearGCS& source, const LinearGCS& target);

/// Criterion for maps to (R^2, J_0): phi J = J_0 phi and phi beta = 0.
bool complex_valued_criterion(const QMatrix& phi, const LinearGCS& source);

/// Whether two sets of basis columns span the same subspace.
bool same_span(const QMatrix& a, const QMatrix& b);
/// Columns of a forming a basis of its column span.
QMatrix column_basis(const QMatrix& a);
QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix entrywise_conj(const QMatrix& a);

}  // namespace gcx
