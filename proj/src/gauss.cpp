#include "helmfs/gauss.hpp"

#include <algorithm>
#include <cmath>

#include "helmfs/pochhammer.hpp"
#include "internal.hpp"

namespace helmfs {

namespace {

constexpr double kNearUnit = 0.9;
constexpr double kIntegerGap = 0.05;

EvalResult direct_series(const GaussParams& p, double z,
                         const SeriesOptions& opts, long cap,
                         bool throw_on_cap) {
  detail::StagnationWindow window(opts.stagnation_window);
  double term = 1.0;
  double sum = 1.0;
  long n = 0;
  EvalResult res;
  res.representation = Representation::direct;
  for (; n < cap; ++n) {
    const double dn = static_cast<double>(n);
    term *= (p.a + dn) * (p.b + dn) / ((p.c + dn) * (dn + 1.0)) * z;
    sum += term;
    const double thresh = opts.rel_tol * std::max(std::fabs(sum), 1e-300);
    if (window.push(std::fabs(term), thresh)) {
      res.converged = true;
      ++n;
      break;
    }
  }
  res.value = sum;
  res.terms_used = n + 1;
  res.err_estimate = window.err();
  if (!res.converged && throw_on_cap)
    throw NonConvergence("gauss_2f1: term cap exhausted at z = " +
                         std::to_string(z));
  return res;
}

// F(a,b;c;z) via the z -> 1-z linear transformation; requires c-a-b away
// from the integers.
EvalResult transformed_series(const GaussParams& p, double z,
                              const SeriesOptions& opts) {
  const double s = p.c - p.a - p.b;
  const double w = 1.0 - z;

  const auto lc = detail::lgamma_signed(p.c);
  const auto ls = detail::lgamma_signed(s);
  const auto lca = detail::lgamma_signed(p.c - p.a);
  const auto lcb = detail::lgamma_signed(p.c - p.b);
  const auto lms = detail::lgamma_signed(-s);
  const auto la = detail::lgamma_signed(p.a);
  const auto lb = detail::lgamma_signed(p.b);

  double coef1 = 0.0;
  if (lca.sign != 0 && lcb.sign != 0)
    coef1 = lc.sign * ls.sign * lca.sign * lcb.sign *
            std::exp(lc.log + ls.log - lca.log - lcb.log);
  double coef2 = 0.0;
  if (la.sign != 0 && lb.sign != 0)
    coef2 = lc.sign * lms.sign * la.sign * lb.sign *
            std::exp(lc.log + lms.log - la.log - lb.log);
  coef2 *= std::pow(w, s);

  EvalResult r1, r2;
  if (coef1 != 0.0)
    r1 = direct_series({p.a, p.b, p.a + p.b - p.c + 1.0}, w, opts,
                       opts.max_terms_per_index, true);
  if (coef2 != 0.0)
    r2 = direct_series({p.c - p.a, p.c - p.b, s + 1.0}, w, opts,
                       opts.max_terms_per_index, true);

  EvalResult res;
  res.value = coef1 * r1.value + coef2 * r2.value;
  res.err_estimate = std::fabs(coef1) * r1.err_estimate +
                     std::fabs(coef2) * r2.err_estimate +
                     4e-16 * std::fabs(res.value);
  res.terms_used = r1.terms_used + r2.terms_used;
  res.representation = Representation::one_minus_z;
  res.converged = (coef1 == 0.0 || r1.converged) && (coef2 == 0.0 || r2.converged);
  return res;
}

} // namespace

EvalResult gauss_2f1(const GaussParams& p, double z, const SeriesOptions& opts) {
  opts.check();
  if (is_nonpositive_integer(p.c))
    throw DomainError("gauss_2f1: c is zero or a negative integer");
  if (!(std::fabs(z) < 1.0))
    throw DomainError("gauss_2f1: |z| >= 1 outside the series domain");

  // Terminating polynomial when a or b is a nonpositive integer: the
  // direct series is exact regardless of how close z is to 1.
  if (is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b)) {
    const double deg = std::min(is_nonpositive_integer(p.a) ? -p.a : HUGE_VAL,
                                is_nonpositive_integer(p.b) ? -p.b : HUGE_VAL);
    const long cap = std::max<long>(opts.max_terms_per_index,
                                    static_cast<long>(deg) +
                                        opts.stagnation_window + 2);
    return direct_series(p, z, opts, cap, true);
  }

  if (z >= kNearUnit) {
    const double s = p.c - p.a - p.b;
    const double gap = std::fabs(s - std::round(s));
    if (gap >= kIntegerGap) return transformed_series(p, z, opts);
    // Integer-gap fallback: direct series with a raised cap; a missed
    // tolerance is reported through converged=false, never guessed.
    return direct_series(p, z, opts, 8L * opts.max_terms_per_index, false);
  }
  // The geometric tail needs ~ log(tol)/log|z| terms; keep the cap above
  // that so arguments just below the transform threshold still converge.
  long cap = opts.max_terms_per_index;
  if (std::fabs(z) > 0.5) {
    const double need = std::log(std::max(opts.rel_tol * 1e-2, 1e-18)) /
                        std::log(std::fabs(z));
    cap = std::max(cap, static_cast<long>(2.0 * need) + 64);
  }
  return direct_series(p, z, opts, cap, true);
}

} // namespace helmfs
