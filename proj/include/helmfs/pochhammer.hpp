#pragma once

#include "helmfs/series.hpp"

namespace helmfs {

// Rising factorial (a)_n, extended to signed n:
//   n >= 0: a (a+1) ... (a+n-1), with (a)_0 = 1
//   n <  0: (-1)^{|n|} / (1-a)_{|n|} = 1 / ((a-1)(a-2)...(a-|n|))
// Computed by iterated multiplication, never through Gamma ratios.
// Throws PoleError when a negative index hits a zero factor.
double pochhammer(double a, long n);

// True when x is exactly zero or a negative integer (pole set of 1/Gamma).
bool is_nonpositive_integer(double x) noexcept;

} // namespace helmfs
