#include "helmfs/pochhammer.hpp"

#include <cmath>
#include <cstdlib>

namespace helmfs {

bool is_nonpositive_integer(double x) noexcept {
  return x <= 0.0 && x == std::floor(x);
}

double pochhammer(double a, long n) {
  if (n >= 0) {
    double r = 1.0;
    for (long j = 0; j < n; ++j) r *= a + static_cast<double>(j);
    return r;
  }
  double denom = 1.0;
  for (long j = 1; j <= -n; ++j) {
    const double f = a - static_cast<double>(j);
    if (f == 0.0)
      throw PoleError("pochhammer: (a)_n with n < 0 hits zero factor a - " +
                      std::to_string(j) + " = 0 at a = " + std::to_string(a));
    denom *= f;
  }
  return 1.0 / denom;
}

} // namespace helmfs
