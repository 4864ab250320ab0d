#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gcx {

enum class VarKind : std::uint8_t { Z = 0, Zbar = 1, P = 2, Q = 3 };

/// A chart variable z_l, zbar_l, p_l or q_l (1-based index).
///
/// The packed id orders variables repo-wide as all z, then all zbar, then p,
/// then q, each block by index. Every chart's name order is a restriction of it.
struct Var {
  VarKind kind = VarKind::Z;
  std::uint16_t index = 1;

  std::uint32_t id() const { return (static_cast<std::uint32_t>(kind) << 16) | index; }
  static Var from_id(std::uint32_t id) {
    return {static_cast<VarKind>(id >> 16), static_cast<std::uint16_t>(id & 0xffffu)};
  }

  std::string name() const;
  Var conj() const;

  static Var z(int i) { return {VarKind::Z, static_cast<std::uint16_t>(i)}; }
  static Var zbar(int i) { return {VarKind::Zbar, static_cast<std::uint16_t>(i)}; }
  static Var p(int i) { return {VarKind::P, static_cast<std::uint16_t>(i)}; }
  static Var q(int i) { return {VarKind::Q, static_cast<std::uint16_t>(i)}; }

  friend bool operator==(const Var& a, const Var& b) { return a.id() == b.id(); }
  friend bool operator<(const Var& a, const Var& b) { return a.id() < b.id(); }
};

/// Parses "z3", "zbar1", "p2", "q1".
std::optional<Var> parse_var(const std::string& name);

/// Canonical coordinates of a type-k chart with m symplectic pairs:
/// z_1..z_k, zbar_1..zbar_k, p_1..p_m, q_1..q_m. Position in this list is the
/// basis index used for vector fields and forms.
class ChartVars {
 public:
  ChartVars() = default;
  ChartVars(int k, int m);

  int k() const { return k_; }
  int m() const { return m_; }
  int n() const { return k_ + m_; }
  int dim() const { return 2 * (k_ + m_); }

  Var var(int basis_index) const;
  std::optional<int> index_of(Var v) const;
  int require_index(Var v) const;
  bool contains(Var v) const { return index_of(v).has_value(); }
  std::vector<Var> vars() const;

  int z_index(int l) const { return l - 1; }
  int zbar_index(int l) const { return k_ + l - 1; }
  int p_index(int l) const { return 2 * k_ + l - 1; }
  int q_index(int l) const { return 2 * k_ + m_ + l - 1; }

  /// Basis index of the conjugate variable (z <-> zbar, p and q fixed).
  int conj_index(int basis_index) const;

  friend bool operator==(const ChartVars& a, const ChartVars& b) { return a.k_ == b.k_ && a.m_ == b.m_; }

 private:
  int k_ = 0;
  int m_ = 1;
};

}  // namespace gcx
