#pragma once

#include "helmfs/series.hpp"

namespace helmfs {

// Appell F2(a;b1,b2;c1,c2;x,y) as the double series, summed by increasing
// total degree m+n.  Requires |x|+|y| < 1.
EvalResult appell_f2_direct(double a, double b1, double b2, double c1,
                            double c2, double x, double y,
                            const SeriesOptions& opts);

// Same function through the expansion in products of Gauss functions:
//   sum_i (a)_i(b1)_i(b2)_i/((c1)_i(c2)_i i!) x^i y^i
//         * F(a+i,b1+i;c1+i;x) F(a+i,b2+i;c2+i;y)
EvalResult appell_f2_expanded(double a, double b1, double b2, double c1,
                              double c2, double x, double y,
                              const SeriesOptions& opts);

} // namespace helmfs
