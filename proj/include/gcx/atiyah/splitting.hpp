#pragma once

#include <optional>
#include <vector>

#include "gcx/atiyah/cech.hpp"
#include "gcx/bundles/jet.hpp"

namespace gcx {

/// Chart-local maps E -> J1 E, each (r + kr) x r in jet fiber order.
struct Splitting {
  std::vector<RMatrix> local;
};

struct SplittingResult {
  Splitting s;
  bool homomorphism = false;  // hom_check(S, E, J1 E)
  bool right_inverse = false;  // projection o S = Id
  bool ok() const { return homomorphism && right_inverse; }
};

/// S s = [s] - D s, i.e. S_i = [Id; -A_{i,1}; ...; -A_{i,k}].
SplittingResult splitting_tests(const JetBundle& j, const Connection& d);
/// D s = [s] - S s; throws NotASplitting unless projection o S = Id on every chart.
Connection connection_from_splitting(const Splitting& s, const JetBundle& j);

/// Searches a splitting whose lower blocks lie in the ansatz span.
std::optional<Splitting> splitting_solve(const JetBundle& j, const AnsatzSpace& ansatz);

}  // namespace gcx
