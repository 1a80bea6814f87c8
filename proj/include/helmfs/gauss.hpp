#pragma once

#include "helmfs/series.hpp"

namespace helmfs {

struct GaussParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

// Gauss hypergeometric series F(a,b;c;z) for |z| < 1.
//
// For 0.9 <= z < 1 the standard 1-z linear transformation is applied when
// c-a-b is at least 0.05 away from an integer; otherwise the direct series
// runs with a raised term cap and reports converged=false if the tolerance
// is unmet.
EvalResult gauss_2f1(const GaussParams& p, double z, const SeriesOptions& opts);

} // namespace helmfs
