#pragma once

// Internal helpers shared by the series evaluators.  Not installed.

#include <cmath>
#include <vector>

namespace helmfs::detail {

// log |Gamma(x)| with the sign of Gamma(x); sign == 0 marks a pole
// (x zero or a negative integer).
struct SignedLogGamma {
  double log = 0.0;
  int sign = 1;
};

inline SignedLogGamma lgamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  if (x == std::floor(x)) return {HUGE_VAL, 0};
  // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
  const double s = std::sin(M_PI * x);
  return {std::log(M_PI / std::fabs(s)) - std::lgamma(1.0 - x),
          s > 0.0 ? 1 : -1};
}

// Tracks the last `w` absolute term magnitudes; signals stop after `w`
// consecutive below-threshold terms.  err() is the window's absolute sum.
class StagnationWindow {
 public:
  explicit StagnationWindow(int w) : ring_(static_cast<size_t>(w), 0.0) {}

  bool push(double abs_term, double threshold) {
    ring_[idx_] = abs_term;
    idx_ = (idx_ + 1) % ring_.size();
    below_ = abs_term <= threshold ? below_ + 1 : 0;
    return below_ >= ring_.size();
  }

  double err() const {
    double s = 0.0;
    for (double d : ring_) s += d;
    return s;
  }

 private:
  std::vector<double> ring_;
  size_t idx_ = 0;
  size_t below_ = 0;
};

} // namespace helmfs::detail
