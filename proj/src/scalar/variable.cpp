#include "gcx/scalar/variable.hpp"

#include <cctype>

#include "gcx/error.hpp"

namespace gcx {

std::string Var::name() const {
  static const char* prefix[] = {"z", "zbar", "p", "q"};
  return prefix[static_cast<int>(kind)] + std::to_string(index);
}

Var Var::conj() const {
  switch (kind) {
    case VarKind::Z: return {VarKind::Zbar, index};
    case VarKind::Zbar: return {VarKind::Z, index};
    default: return *this;
  }
}

std::optional<Var> parse_var(const std::string& name) {
  VarKind kind;
  std::size_t pos;
  if (name.rfind("zbar", 0) == 0) {
    kind = VarKind::Zbar;
    pos = 4;
  } else if (!name.empty() && name[0] == 'z') {
    kind = VarKind::Z;
    pos = 1;
  } else if (!name.empty() && name[0] == 'p') {
    kind = VarKind::P;
    pos = 1;
  } else if (!name.empty() && name[0] == 'q') {
    kind = VarKind::Q;
    pos = 1;
  } else {
    return std::nullopt;
  }
  if (pos >= name.size() || name.size() - pos > 4) return std::nullopt;
  for (std::size_t i = pos; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  int idx = std::stoi(name.substr(pos));
  if (idx < 1) return std::nullopt;
  return Var{kind, static_cast<std::uint16_t>(idx)};
}

ChartVars::ChartVars(int k, int m) : k_(k), m_(m) {
  require(k >= 0 && m >= 0 && k + m >= 1, ErrorCode::DimensionMismatch,
          "chart needs k >= 0, m >= 0, k + m >= 1");
}

Var ChartVars::var(int i) const {
  require(i >= 0 && i < dim(), ErrorCode::DimensionMismatch, "basis index out of range");
  if (i < k_) return Var::z(i + 1);
  if (i < 2 * k_) return Var::zbar(i - k_ + 1);
  if (i < 2 * k_ + m_) return Var::p(i - 2 * k_ + 1);
  return Var::q(i - 2 * k_ - m_ + 1);
}

std::optional<int> ChartVars::index_of(Var v) const {
  int l = v.index;
  switch (v.kind) {
    case VarKind::Z:
      if (l <= k_) return z_index(l);
      break;
    case VarKind::Zbar:
      if (l <= k_) return zbar_index(l);
      break;
    case VarKind::P:
      if (l <= m_) return p_index(l);
      break;
    case VarKind::Q:
      if (l <= m_) return q_index(l);
      break;
  }
  return std::nullopt;
}

int ChartVars::require_index(Var v) const {
  auto idx = index_of(v);
  if (!idx) fail(ErrorCode::UnknownVariable, v.name() + " is not a chart variable");
  return *idx;
}

std::vector<Var> ChartVars::vars() const {
  std::vector<Var> out;
  out.reserve(dim());
  for (int i = 0; i < dim(); ++i) out.push_back(var(i));
  return out;
}

int ChartVars::conj_index(int i) const {
  if (i < k_) return i + k_;
  if (i < 2 * k_) return i - k_;
  return i;
}

}  // namespace gcx
