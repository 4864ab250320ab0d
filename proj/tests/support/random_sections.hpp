#pragma once

#include "gcx/cartan/courant.hpp"
#include "random_data.hpp"

namespace gcx::testing {

inline VField random_vfield(RandomData& rd, const ChartVars& c, int deg, int sparsity = 2) {
  VField x(c);
  for (int i = 0; i < c.dim(); ++i)
    if (rd.integer(0, sparsity) == 0) x[i] = RatFunc(rd.polynomial(c, deg, 2));
  return x;
}

inline KForm random_form(RandomData& rd, const ChartVars& c, int degree, int deg, int terms = 3) {
  KForm w(c, degree);
  for (int t = 0; t < terms; ++t) {
    KForm::Index idx;
    for (int s = 0; s < degree; ++s) idx.push_back(rd.integer(0, c.dim() - 1));
    w.add(idx, RatFunc(rd.polynomial(c, deg, 2)));
  }
  return w;
}

inline GSection random_section(RandomData& rd, const ChartVars& c, int deg) {
  return GSection(random_vfield(rd, c, deg), random_form(rd, c, 1, deg));
}

}  // namespace gcx::testing
