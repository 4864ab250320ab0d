#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gcx/bundles/cover.hpp"

namespace gcx {

/// Finite families of generalized holomorphic coefficient functions, one per
/// chart: monomials z^e with exponents in [lo, D] and total |e| <= D, where
/// lo = -D on punctured charts and 0 on charts containing their origin.
struct AnsatzSpace {
  int window = 0;
  std::vector<bool> punctured;
  std::vector<std::vector<RatFunc>> basis;

  /// Keeps only monomials that are generalized holomorphic on their chart.
  static AnsatzSpace laurent(const Cover& c, int window, std::vector<bool> punctured = {});
  /// Throws InvalidAnsatz unless every basis element is generalized holomorphic.
  void validate(const Cover& c) const;
};

/// Matrix whose entries are affine in a set of scalar unknowns:
/// constant + sum_u x_u * terms[u].
struct AffineMatrix {
  RMatrix constant;
  std::vector<std::pair<int, RMatrix>> terms;

  AffineMatrix() = default;
  explicit AffineMatrix(RMatrix c) : constant(std::move(c)) {}
  static AffineMatrix zero(std::size_t rows, std::size_t cols) { return AffineMatrix(RMatrix(rows, cols)); }

  std::size_t rows() const { return constant.rows(); }
  std::size_t cols() const { return constant.cols(); }

  AffineMatrix& operator+=(const AffineMatrix& o);
  AffineMatrix& operator-=(const AffineMatrix& o);
  friend AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b) { return a += b; }
  friend AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b) { return a -= b; }
  friend AffineMatrix operator*(const RMatrix& l, const AffineMatrix& a);
  friend AffineMatrix operator*(const AffineMatrix& a, const RMatrix& r);
  friend AffineMatrix operator*(const RatFunc& f, const AffineMatrix& a);
  /// Applies an entrywise map that is linear over constants (substitution, derivative).
  template <class F>
  AffineMatrix map(F f) const {
    AffineMatrix out(constant.map(f));
    for (const auto& [u, m] : terms) out.terms.emplace_back(u, m.map(f));
    return out;
  }
  /// Value for a given assignment of the unknowns.
  RMatrix evaluate(const std::vector<GQ>& x) const;
};

/// Collects identities "affine expression == 0" between rational functions
/// and solves them for scalar unknowns over Q(i) by clearing denominators and
/// comparing monomial coefficients.
class AffineSystem {
 public:
  int add_unknown() { return unknowns_++; }
  int unknowns() const { return unknowns_; }
  void require_zero(const AffineMatrix& m);
  std::size_t equations() const { return eqs_.size(); }
  /// A solution (free unknowns set to 0), or nullopt when inconsistent.
  std::optional<std::vector<GQ>> solve() const;

 private:
  struct Equation {
    RatFunc constant;
    std::vector<std::pair<int, RatFunc>> terms;
  };
  int unknowns_ = 0;
  std::vector<Equation> eqs_;
};

/// Adds one unknown per ansatz element for each entry of an r x c matrix on a chart.
AffineMatrix ansatz_matrix(AffineSystem& sys, const std::vector<RatFunc>& basis, std::size_t rows, std::size_t cols);

}  // namespace gcx
