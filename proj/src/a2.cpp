#include "helmfs/a2.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gsl/gsl_sum.h>

#include "helmfs/appell.hpp"
#include "helmfs/gauss.hpp"
#include "helmfs/pochhammer.hpp"
#include "internal.hpp"

namespace helmfs {

namespace {

SeriesOptions inner_options(const SeriesOptions& opts) {
  SeriesOptions inner = opts;
  inner.rel_tol = std::max(opts.rel_tol * 1e-3, 5e-16);
  return inner;
}

void check_xy_domain(const A2Point& pt) {
  if (!(std::fabs(pt.x) + std::fabs(pt.y) < 1.0))
    throw DomainError("a2: |x| + |y| >= 1 outside the series domain");
}

// (a)_n for signed n, cached; poles surface only when a term actually
// needs the value (so z = 0 never trips an irrelevant pole).
class PochCache {
 public:
  explicit PochCache(double a) : a_(a) {}

  double get(long n) {
    if (n >= 0) {
      while (static_cast<long>(pos_.size()) <= n)
        pos_.push_back(pos_.back() *
                       (a_ + static_cast<double>(pos_.size() - 1)));
      return pos_[static_cast<size_t>(n)];
    }
    const long m = -n;
    while (static_cast<long>(neg_.size()) < m) {
      const double f = a_ - static_cast<double>(neg_.size() + 1);
      const double prev = neg_.empty() ? 1.0 : neg_.back();
      neg_.push_back(f == 0.0 ? HUGE_VAL : prev / f);
    }
    const double v = neg_[static_cast<size_t>(m - 1)];
    if (!std::isfinite(v))
      throw PoleError("a2: (a)_{m+n-k} hits a pole (a a positive integer)");
    return v;
  }

 private:
  double a_;
  std::vector<double> pos_{1.0};
  std::vector<double> neg_;
};

} // namespace

void A2Params::check() const {
  if (is_nonpositive_integer(c1) || is_nonpositive_integer(c2))
    throw DomainError("A2Params: c1, c2 must not be zero or a negative integer");
}

EvalResult a2_direct(const A2Params& p, const A2Point& pt,
                     const SeriesOptions& opts) {
  opts.check();
  p.check();
  check_xy_domain(pt);

  const long cap = opts.max_terms_per_index;
  const bool integer_a = (p.a == std::floor(p.a));

  // Degree-d row over m with n = d-m.  Non-integer a folds (a)_{m+n} into
  // the row (kept bounded; the k-shift divides it back out); integer a
  // keeps (a) outside and reads it from the pole-aware cache.
  std::vector<double> row{1.0}, prev;
  std::vector<double> rowdot{1.0}, absrowdot{1.0};
  std::vector<double> zfact{1.0};
  PochCache poch(p.a);

  detail::StagnationWindow window(opts.stagnation_window);
  double sum = 0.0;
  long terms = 0;
  bool converged = false;

  const long smax = 3 * cap;
  for (long s = 0; s <= smax; ++s) {
    if (s >= 1) {
      prev.swap(row);
      row.assign(static_cast<size_t>(s) + 1, 0.0);
      const double ad = integer_a ? 1.0 : p.a + static_cast<double>(s) - 1.0;
      double dot = 0.0, absdot = 0.0;
      const long mlo = std::max<long>(0, s - cap);
      const long mhi = std::min<long>(s, cap);
      for (long m = mlo; m <= mhi; ++m) {
        const long n = s - m;
        double v;
        if (n >= 1) {
          const double dn = static_cast<double>(n);
          v = prev[static_cast<size_t>(m)] * ad * (p.b2 + dn - 1.0) /
              ((p.c2 + dn - 1.0) * dn) * pt.y;
        } else {
          const double dm = static_cast<double>(m);
          v = prev[static_cast<size_t>(m - 1)] * ad * (p.b1 + dm - 1.0) /
              ((p.c1 + dm - 1.0) * dm) * pt.x;
        }
        row[static_cast<size_t>(m)] = v;
        dot += v;
        absdot += std::fabs(v);
      }
      rowdot.push_back(dot);
      absrowdot.push_back(absdot);
      zfact.push_back(zfact.back() * pt.z / static_cast<double>(s));
    }

    double g = 0.0, absg = 0.0;
    for (long k = 0; k <= std::min(s, cap); ++k) {
      const long d = s - k;
      if (zfact[static_cast<size_t>(k)] == 0.0) {
        if (pt.z == 0.0 && k > 0) break;
        continue;
      }
      if (absrowdot[static_cast<size_t>(d)] == 0.0) continue;
      double factor;
      if (integer_a) {
        factor = poch.get(d - k);
        if (!std::isfinite(factor))
          throw NonConvergence("a2_direct: Pochhammer overflow");
      } else {
        // 1 / (a+d-k)_k
        double denom = 1.0;
        for (long t = 0; t < k; ++t)
          denom *= p.a + static_cast<double>(s - 2 * k + t);
        if (!std::isfinite(denom) || std::fabs(denom) > 1e290) continue;
        factor = 1.0 / denom;
      }
      g += zfact[static_cast<size_t>(k)] * factor *
           rowdot[static_cast<size_t>(d)];
      absg += std::fabs(zfact[static_cast<size_t>(k)] * factor) *
              absrowdot[static_cast<size_t>(d)];
      terms += d + 1;
    }
    sum += g;
    const double thresh = opts.rel_tol * std::max(std::fabs(sum), 1e-300);
    if (window.push(absg, thresh)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergence("a2_direct: degree cap exhausted");

  EvalResult res;
  res.value = sum;
  res.err_estimate =
      window.err() + opts.rel_tol * std::max(std::fabs(sum), 1.0);
  res.terms_used = terms;
  res.representation = Representation::direct;
  res.converged = true;
  return res;
}

EvalResult a2_via_f2(const A2Params& p, const A2Point& pt,
                     const SeriesOptions& opts) {
  opts.check();
  p.check();
  check_xy_domain(pt);

  const SeriesOptions inner = inner_options(opts);
  detail::StagnationWindow window(opts.stagnation_window);
  double coef = 1.0; // (-z)^k / ((1-a)_k k!)
  double sum = 0.0, err = 0.0;
  long terms = 0;
  bool converged = false;

  for (long k = 0; k < opts.max_terms_per_index; ++k) {
    double term = 0.0;
    if (coef != 0.0) {
      const EvalResult f2 =
          appell_f2_direct(p.a - static_cast<double>(k), p.b1, p.b2, p.c1,
                           p.c2, pt.x, pt.y, inner);
      term = coef * f2.value;
      err += std::fabs(coef) * f2.err_estimate;
      terms += f2.terms_used;
    }
    sum += term;
    ++terms;
    const double thresh = opts.rel_tol * std::max(std::fabs(sum), 1e-300);
    if (window.push(std::fabs(term), thresh)) {
      converged = true;
      break;
    }
    if (pt.z == 0.0) {
      coef = 0.0;
      continue;
    }
    const double f = static_cast<double>(k + 1) - p.a;
    if (f == 0.0)
      throw PoleError("a2_via_f2: (1-a)_k vanishes (a is a positive integer)");
    coef *= -pt.z / (static_cast<double>(k + 1) * f);
  }
  if (!converged) throw NonConvergence("a2_via_f2: k cap exhausted");

  EvalResult res;
  res.value = sum;
  res.err_estimate =
      window.err() + err + opts.rel_tol * std::max(std::fabs(sum), 1.0);
  res.terms_used = terms;
  res.representation = Representation::via_f2;
  res.converged = true;
  return res;
}

namespace {

// Shared core of the (2.18)-style and regularized double expansions:
// outer index i weighted by (b1)_i(b2)_i/((c1)_i(c2)_i i!) * (xw*yw)^i,
// inner index j weighted by (a)_{i-j} z^j / j!, Gauss factors supplied by
// the caller.
struct ProductExpansion {
  double value = 0.0;
  double err = 0.0;
  double abs_sum = 0.0; // sum of |term|: roundoff/cancellation scale
  long terms = 0;
  bool stagnated = false;
  bool inner_ok = true;
  std::vector<double> groups;
};

template <typename GaussPair>
ProductExpansion product_expansion(const A2Params& p, double xy_weight,
                                   double z, const SeriesOptions& opts,
                                   const SeriesOptions& inner,
                                   GaussPair&& gauss_pair,
                                   bool keep_groups) {
  ProductExpansion out;
  detail::StagnationWindow window(opts.stagnation_window);
  // (a)_i(b1)_i(b2)_i / ((c1)_i(c2)_i i!) * xy_weight^i, kept as one factor:
  // (a)_i alone overflows near i ~ 170 while the product stays bounded.
  double base = 1.0;
  double sum = 0.0;

  for (long i = 0; i < opts.max_terms_per_index; ++i) {
    const double di = static_cast<double>(i);
    double group = 0.0, groupabs = 0.0;
    if (base != 0.0) {
      double coef = 1.0;
      int below = 0;
      for (long j = 0; j < opts.max_terms_per_index; ++j) {
        if (j > 0) {
          if (z == 0.0) break;
          const double f = p.a + di - static_cast<double>(j);
          if (f == 0.0)
            throw PoleError("a2 expansion: (a)_{i-j} hits a pole");
          coef *= z / (static_cast<double>(j) * f);
        }
        EvalResult f1, f2;
        gauss_pair(i, j, inner, f1, f2);
        const double term = base * coef * f1.value * f2.value;
        group += term;
        groupabs += std::fabs(term);
        out.err += std::fabs(base * coef) *
                   (f1.err_estimate * std::fabs(f2.value) +
                    std::fabs(f1.value) * f2.err_estimate);
        out.inner_ok = out.inner_ok && f1.converged && f2.converged;
        out.terms += f1.terms_used + f2.terms_used + 1;
        // Resolve each group relative to its own magnitude, not only the
        // global sum: the acceleration step consumes the group sequence
        // and amplifies per-group noise.
        const double thresh =
            std::min(opts.rel_tol * std::max(std::fabs(sum + group), 1e-300),
                     inner.rel_tol * std::max(groupabs, 1e-300));
        if (std::fabs(term) <= thresh) {
          if (++below >= 2) break;
        } else {
          below = 0;
        }
      }
    }
    sum += group;
    out.abs_sum += groupabs;
    if (keep_groups) out.groups.push_back(group);
    const double thresh = opts.rel_tol * std::max(std::fabs(sum), 1e-300);
    if (window.push(groupabs, thresh)) {
      out.stagnated = true;
      break;
    }
    base *= (p.a + di) * (p.b1 + di) * (p.b2 + di) /
            ((p.c1 + di) * (p.c2 + di) * (di + 1.0)) * xy_weight;
  }
  out.value = sum;
  // Floor at the roundoff left by whatever cancellation the sum went
  // through; near the PDE singularity with z != 0 this is what actually
  // limits the attainable accuracy.
  out.err += window.err() + 1e-15 * out.abs_sum;
  return out;
}

} // namespace

EvalResult a2_expanded(const A2Params& p, const A2Point& pt,
                       const SeriesOptions& opts) {
  opts.check();
  p.check();
  check_xy_domain(pt);

  const SeriesOptions inner = inner_options(opts);
  auto gp = [&](long i, long j, const SeriesOptions& io, EvalResult& f1,
                EvalResult& f2) {
    const double di = static_cast<double>(i);
    const double dj = static_cast<double>(j);
    f1 = gauss_2f1({p.a + di - dj, p.b1 + di, p.c1 + di}, pt.x, io);
    f2 = gauss_2f1({p.a + di - dj, p.b2 + di, p.c2 + di}, pt.y, io);
  };
  const ProductExpansion pe =
      product_expansion(p, pt.x * pt.y, pt.z, opts, inner, gp, false);
  if (!pe.stagnated) throw NonConvergence("a2_expanded: term cap exhausted");

  EvalResult res;
  res.value = pe.value;
  res.terms_used = pe.terms;
  res.representation = Representation::expanded;
  res.converged =
      pe.inner_ok &&
      pe.err <= opts.rel_tol * std::max(std::fabs(pe.value), 1.0);
  res.err_estimate =
      pe.err + opts.rel_tol * std::max(std::fabs(pe.value), 1.0);
  return res;
}

namespace detail {

ScaledSum a2_regularized_scaled(const A2Params& p, const A2Point& pt,
                                const SeriesOptions& opts) {
  opts.check();
  p.check();
  if (!(pt.x < 1.0 && pt.y < 1.0))
    throw DomainError("a2_regularized: requires x < 1 and y < 1");

  const double u = pt.x / (1.0 - pt.x);
  const double v = pt.y / (1.0 - pt.y);
  const double t1 = -u; // x/(x-1)
  const double t2 = -v; // y/(y-1)

  ScaledSum out;
  out.log_scale = -p.b1 * std::log1p(-pt.x) - p.b2 * std::log1p(-pt.y);

  const SeriesOptions inner = inner_options(opts);
  auto gp = [&](long i, long j, const SeriesOptions& io, EvalResult& f1,
                EvalResult& f2) {
    const double di = static_cast<double>(i);
    const double dj = static_cast<double>(j);
    f1 = gauss_2f1({p.c1 - p.a + dj, p.b1 + di, p.c1 + di}, t1, io);
    f2 = gauss_2f1({p.c2 - p.a + dj, p.b2 + di, p.c2 + di}, t2, io);
  };
  const ProductExpansion pe =
      product_expansion(p, u * v, pt.z, opts, inner, gp, true);

  EvalResult& m = out.mantissa;
  m.terms_used = pe.terms;
  if (pe.stagnated) {
    m.value = pe.value;
    m.err_estimate = pe.err;
    m.representation = Representation::regularized;
    m.converged = pe.inner_ok &&
                  m.err_estimate <=
                      opts.rel_tol * std::max(std::fabs(m.value), 1.0);
    m.err_estimate += opts.rel_tol * std::max(std::fabs(m.value), 1.0);
    return out;
  }

  // Slowly decaying outer tail (|uv| close to 1 near the PDE singularity).
  const size_t n = pe.groups.size();
  if (n < 24)
    throw NonConvergence("a2_regularized: cap too small for a tail estimate");
  const double glast = std::fabs(pe.groups[n - 1]);
  const double gprev = std::fabs(pe.groups[n - 2]);
  const double rho = gprev > 0.0 ? glast / gprev : 1.0;
  if (rho > 0.0 && rho <= 0.99) {
    // Clearly sub-unit ratio: the plain partial sum plus a geometric tail
    // bound beats extrapolation (measured: the Levin finish is ~1e-6
    // accurate here while the plain tail bound is nearly sharp).
    m.value = pe.value;
    m.err_estimate = pe.err + 2.0 * glast * rho / (1.0 - rho);
    m.representation = Representation::regularized;
    m.converged = false;
    return out;
  }
  // Ratio indistinguishable from 1: Levin u-acceleration of the groups,
  // with the distance from the plain sum folded into the error bar since
  // the library's own abserr is known to be optimistic.
  gsl_sum_levin_u_workspace* w = gsl_sum_levin_u_alloc(n);
  double val = 0.0, abserr = 0.0;
  gsl_sum_levin_u_accel(pe.groups.data(), n, w, &val, &abserr);
  gsl_sum_levin_u_free(w);
  m.value = val;
  m.err_estimate = 3.0 * std::fabs(abserr) + pe.err;
  m.representation = Representation::regularized_accel;
  m.converged = false;
  return out;
}

} // namespace detail

EvalResult a2_regularized(const A2Params& p, const A2Point& pt,
                          const SeriesOptions& opts) {
  const detail::ScaledSum s = detail::a2_regularized_scaled(p, pt, opts);
  EvalResult res = s.mantissa;
  const double scale = std::exp(s.log_scale);
  res.value *= scale;
  res.err_estimate *= scale;
  return res;
}

namespace {

// Taylor coefficients 1 / ((1-a)_k k!) of G(s) = sum_k s^k/((1-a)_k k!),
// truncated once the term bound at |s| = smax drops 19 decades below the
// largest bound seen.
class ConfluentFactor {
 public:
  ConfluentFactor(double a, double smax) {
    coef_.push_back(1.0);
    if (smax == 0.0) return;
    double c = 1.0, bound = 1.0, peak = 1.0;
    for (long k = 1; k < 600; ++k) {
      const double dk = static_cast<double>(k);
      const double f = dk - a; // trailing factor of (1-a)_k
      c /= f * dk;
      coef_.push_back(c);
      bound *= smax / (dk * std::fabs(f));
      peak = std::max(peak, bound);
      if (bound <= 1e-19 * peak && dk > a) return;
    }
    throw NonConvergence("a2_integral: confluent factor did not truncate");
  }

  void eval(double s, double& val, double& absval) const {
    val = 1.0;
    absval = 1.0;
    double sp = 1.0;
    int below = 0;
    for (size_t k = 1; k < coef_.size(); ++k) {
      sp *= s;
      const double t = coef_[k] * sp;
      val += t;
      absval += std::fabs(t);
      if (std::fabs(t) <= 1e-18 * absval) {
        if (++below >= 2) break;
      } else {
        below = 0;
      }
    }
  }

 private:
  std::vector<double> coef_;
};

// tanh-sinh abscissas on (0,1) with the Euler weight u^{b-1}(1-u)^{q-1}
// and the Jacobian folded into w, at step h.
struct TsNodes {
  std::vector<double> u;
  std::vector<double> w;
};

TsNodes ts_nodes(double b, double q, double h) {
  TsNodes out;
  const long n = static_cast<long>(6.5 / h);
  out.u.reserve(2 * n + 1);
  out.w.reserve(2 * n + 1);
  for (long k = -n; k <= n; ++k) {
    const double t = h * static_cast<double>(k);
    const double g = M_PI * std::sinh(t);
    const double lu = -std::log1p(std::exp(-g));  // log u
    const double l1u = -std::log1p(std::exp(g));  // log (1-u)
    const double lw = b * lu + q * l1u + std::log(M_PI * std::cosh(t));
    if (lw < -480.0) continue; // weight underflown past all relevance
    out.u.push_back(std::exp(lu));
    out.w.push_back(h * std::exp(lw));
  }
  return out;
}

} // namespace

EvalResult a2_integral(const A2Params& p, const A2Point& pt,
                       const SeriesOptions& opts) {
  opts.check();
  p.check();
  if (!(p.b1 > 0.0 && p.b2 > 0.0 && p.c1 > p.b1 && p.c2 > p.b2))
    throw DomainError("a2_integral: requires 0 < b1 < c1 and 0 < b2 < c2");
  if (!(std::max(pt.x, 0.0) + std::max(pt.y, 0.0) < 1.0))
    throw DomainError("a2_integral: requires max(x,0) + max(y,0) < 1");
  if (pt.z != 0.0 && p.a > 0.0 && p.a == std::floor(p.a))
    throw PoleError("a2_integral: a is a positive integer with z != 0");

  const double t_top = 1.0 + std::max(-pt.x, 0.0) + std::max(-pt.y, 0.0);
  const ConfluentFactor g(p.a, std::fabs(pt.z) * t_top);

  const double cnorm =
      std::exp(std::lgamma(p.c1) - std::lgamma(p.b1) -
               std::lgamma(p.c1 - p.b1) + std::lgamma(p.c2) -
               std::lgamma(p.b2) - std::lgamma(p.c2 - p.b2));

  constexpr int kMaxLevel = 7;
  double prev = 0.0, val = 0.0, absval = 0.0, diff = HUGE_VAL;
  long nodes = 0;
  bool settled = false;
  for (int level = 0; level <= kMaxLevel; ++level) {
    const double h = 0.5 / static_cast<double>(1 << level);
    const TsNodes nu = ts_nodes(p.b1, p.c1 - p.b1, h);
    const TsNodes nv = ts_nodes(p.b2, p.c2 - p.b2, h);
    double acc = 0.0, accabs = 0.0;
    for (size_t iu = 0; iu < nu.u.size(); ++iu) {
      const double tu = 1.0 - nu.u[iu] * pt.x;
      double row = 0.0, rowabs = 0.0;
      for (size_t iv = 0; iv < nv.u.size(); ++iv) {
        const double big_t = tu - nv.u[iv] * pt.y;
        const double ta = std::exp(-p.a * std::log(big_t));
        double gv, ga;
        g.eval(-pt.z * big_t, gv, ga);
        row += nv.w[iv] * ta * gv;
        rowabs += nv.w[iv] * ta * ga;
      }
      acc += nu.w[iu] * row;
      accabs += nu.w[iu] * rowabs;
    }
    nodes += static_cast<long>(nu.u.size() * nv.u.size());
    val = acc;
    absval = accabs;
    diff = std::fabs(val - prev);
    if (level >= 2 &&
        diff <= 0.25 * opts.rel_tol * std::max(std::fabs(val), 1e-300)) {
      settled = true;
      break;
    }
    prev = val;
  }

  EvalResult res;
  res.value = cnorm * val;
  // Error scale is the value itself (never an absolute floor of 1): the
  // kernel mantissas this path serves can be 1e-13 and smaller while still
  // carrying full relative accuracy.
  const double raw = cnorm * (diff + 1e-15 * absval);
  res.terms_used = nodes;
  res.representation = Representation::integral;
  res.converged =
      settled &&
      raw <= opts.rel_tol * std::max(std::fabs(res.value), 1e-300);
  res.err_estimate = raw + opts.rel_tol * std::fabs(res.value);
  return res;
}

namespace detail {

bool prefer_integral(const A2Params& p, const A2Point& pt,
                     const SeriesOptions& opts) {
  const bool applicable =
      p.b1 > 0.0 && p.b2 > 0.0 && p.c1 > p.b1 && p.c2 > p.b2 &&
      std::max(pt.x, 0.0) + std::max(pt.y, 0.0) < 1.0 &&
      !(pt.z != 0.0 && p.a > 0.0 && p.a == std::floor(p.a));
  if (!applicable) return false;
  // z-direction cancellation of the double expansions.
  if (pt.z != 0.0 &&
      std::fabs(pt.z * (1.0 - pt.x) * (1.0 - pt.y)) > 16.0)
    return true;
  // Outer ratio of the regularized expansion too close to 1 for the term
  // cap: plain stagnation is out of reach and the Levin finish is only
  // good to ~1e-6 there.
  const double uv =
      std::fabs(pt.x / (pt.x - 1.0) * (pt.y / (pt.y - 1.0)));
  if (uv >= 0.9 && uv < 1.0) {
    const double need =
        std::log(opts.rel_tol * (1.0 - uv)) / std::log(uv);
    if (need > 0.9 * static_cast<double>(opts.max_terms_per_index))
      return true;
  }
  return uv >= 1.0;
}

} // namespace detail

EvalResult a2_auto(const A2Params& p, const A2Point& pt,
                   const SeriesOptions& opts) {
  if (std::fabs(pt.x) + std::fabs(pt.y) <= 0.7) return a2_direct(p, pt, opts);
  if (detail::prefer_integral(p, pt, opts)) return a2_integral(p, pt, opts);
  return a2_regularized(p, pt, opts);
}

EvalResult a2_derivative(const A2Params& p, const DerivOrders& orders,
                         const A2Point& pt, const SeriesOptions& opts) {
  if (orders.dx < 0 || orders.dy < 0 || orders.dz < 0)
    throw std::invalid_argument("a2_derivative: orders must be nonnegative");
  const long shift = orders.dx + orders.dy - orders.dz;
  A2Params sp{p.a + static_cast<double>(shift),
              p.b1 + static_cast<double>(orders.dx),
              p.b2 + static_cast<double>(orders.dy),
              p.c1 + static_cast<double>(orders.dx),
              p.c2 + static_cast<double>(orders.dy)};
  sp.check();
  const double pre = pochhammer(p.a, shift) * pochhammer(p.b1, orders.dx) *
                     pochhammer(p.b2, orders.dy) /
                     (pochhammer(p.c1, orders.dx) * pochhammer(p.c2, orders.dy));
  EvalResult res = a2_auto(sp, pt, opts);
  res.value *= pre;
  res.err_estimate *= std::fabs(pre);
  return res;
}

A2Params omega_params(int idx, const A2Params& p) {
  switch (idx) {
    case 1:
      return p;
    case 2:
      return {p.a + 1.0 - p.c1, p.b1 + 1.0 - p.c1, p.b2, 2.0 - p.c1, p.c2};
    case 3:
      return {p.a + 1.0 - p.c2, p.b1, p.b2 + 1.0 - p.c2, p.c1, 2.0 - p.c2};
    case 4:
      return {p.a + 2.0 - p.c1 - p.c2, p.b1 + 1.0 - p.c1, p.b2 + 1.0 - p.c2,
              2.0 - p.c1, 2.0 - p.c2};
    default:
      throw std::invalid_argument("omega: idx must be 1..4");
  }
}

namespace {

// sign * exp(log) accumulation of base^expo; zero base with positive
// exponent short-circuits the whole product to 0.
struct PowerAccum {
  double log = 0.0;
  double sign = 1.0;
  bool zero = false;

  void mul_pow(double base, double expo) {
    if (expo == 0.0) return;
    if (base > 0.0) {
      log += expo * std::log(base);
    } else if (base == 0.0) {
      if (expo > 0.0)
        zero = true;
      else
        throw DomainError("omega: zero base with nonpositive exponent");
    } else {
      if (expo != std::floor(expo))
        throw DomainError("omega: negative base with non-integer exponent");
      log += expo * std::log(-base);
      if (std::fmod(std::fabs(expo), 2.0) == 1.0) sign = -sign;
    }
  }
};

} // namespace

EvalResult omega(int idx, const A2Params& p, const A2Point& pt,
                 const SeriesOptions& opts) {
  const A2Params sp = omega_params(idx, p);
  sp.check();
  const double tau = (idx == 2 || idx == 4) ? 1.0 - p.c1 : 0.0;
  const double nu = (idx == 3 || idx == 4) ? 1.0 - p.c2 : 0.0;

  PowerAccum pa;
  pa.mul_pow(pt.x, tau);
  pa.mul_pow(pt.y, nu);
  if (pa.zero) {
    EvalResult res;
    res.value = 0.0;
    res.converged = true;
    return res;
  }
  EvalResult res = a2_auto(sp, pt, opts);
  const double pre = pa.sign * std::exp(pa.log);
  res.value *= pre;
  res.err_estimate *= std::fabs(pre);
  return res;
}

} // namespace helmfs
