#pragma once

#include <vector>

#include "gcx/bundles/bundle.hpp"

namespace gcx {

/// First jet bundle. Fiber coordinates are ordered u^1..u^r, then
/// u^alpha_lambda at index r + lambda * r + alpha.
struct JetBundle {
  GHBundle base;
  GHBundle jet;
};

/// [[A, 0], [dA/dz_l stacked, (dz'_mu/dz_l) A]] for each overlap.
JetBundle jet_bundle(const GHBundle& b);
RMatrix jet_transition(const RMatrix& phi, const CoordinateChange& t, const ChartVars& c);

/// Jet coordinates (s, ds/dz_1, ..., ds/dz_k) of a section, per chart.
BundleSection jet_of_section(const BundleSection& s, const GHBundle& b);

/// G*M (x) E -> J1 E and J1 E -> E in local blocks (chart independent).
struct JetMaps {
  RMatrix inclusion;   // (r + kr) x kr
  RMatrix projection;  // r x (r + kr)
};
JetMaps jet_maps(const JetBundle& j);

struct JetReport {
  bool cocycle = false;         // jet transitions validate as a bundle
  bool composition_zero = false;  // projection * inclusion = 0
  bool inclusion_intertwines = false;
  bool projection_intertwines = false;
  bool exact_at_points = false;  // ranks kr, r and image = kernel at sample points
  std::vector<std::string> failures;
  bool ok() const {
    return cocycle && composition_zero && inclusion_intertwines && projection_intertwines && exact_at_points;
  }
};

JetReport check_jet(const JetBundle& j, int samples = 5);

}  // namespace gcx
