#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/atiyah/liepair.hpp"
#include "gcx/atiyah/splitting.hpp"

namespace gcx {

/// Runs the three constructions on one bundle with the same ansatz.
struct AtiyahComparison {
  CechSolution cech;
  bool splittable = false;      // a splitting of the jet sequence exists in the ansatz
  bool flat_extension = false;  // an extension with R = 0 that glues exists in the ansatz
  /// When the Cech route succeeds: the assembled connection passes its checks,
  /// its splitting is a homomorphism and round-trips, and its Lie pair
  /// curvature vanishes on every chart.
  std::optional<bool> bridge;
  std::vector<std::string> failures;
  bool consistent() const {
    const bool solvable = cech.verdict == Verdict::Vanishing;
    return solvable == splittable && splittable == flat_extension && bridge.value_or(true);
  }
};

AtiyahComparison compare_constructions(const GHBundle& b, const AnsatzSpace& ansatz, int samples = 5);

struct NamedBundle {
  std::string name;
  GHBundle bundle;
};

/// Small bundles of type k <= 1 (plus single holomorphic-Poisson and
/// symplectic charts) on which all three constructions are run.
std::vector<NamedBundle> atiyah_gallery();
/// The rank-2 bundle on the projective line cover with phi_01 = [[1, z], [0, 1]].
GHBundle unipotent_bundle();
/// Direct sum of two rank-1 bundles on the same cover.
GHBundle direct_sum(const GHBundle& e, const GHBundle& f);

}  // namespace gcx
