#include "helmfs/appell.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "helmfs/gauss.hpp"
#include "helmfs/pochhammer.hpp"
#include "internal.hpp"

namespace helmfs {

namespace {

void check_f2_inputs(double c1, double c2, double x, double y) {
  if (is_nonpositive_integer(c1) || is_nonpositive_integer(c2))
    throw DomainError("appell_f2: c1/c2 must not be zero or a negative integer");
  if (!(std::fabs(x) + std::fabs(y) < 1.0))
    throw DomainError("appell_f2: |x| + |y| >= 1 outside the convergence domain");
}

SeriesOptions inner_options(const SeriesOptions& opts) {
  SeriesOptions inner = opts;
  inner.rel_tol = std::max(opts.rel_tol * 1e-3, 5e-16);
  return inner;
}

} // namespace

EvalResult appell_f2_direct(double a, double b1, double b2, double c1,
                            double c2, double x, double y,
                            const SeriesOptions& opts) {
  opts.check();
  check_f2_inputs(c1, c2, x, y);

  const long cap = opts.max_terms_per_index;
  detail::StagnationWindow window(opts.stagnation_window);

  // row[m] = (a)_{m+n}(b1)_m(b2)_n / ((c1)_m(c2)_n m! n!) x^m y^n at n = d-m
  std::vector<double> row{1.0}, prev;
  double sum = 1.0;
  long terms = 1;
  EvalResult res;
  res.representation = Representation::direct;

  for (long d = 1; d <= 2 * cap; ++d) {
    prev.swap(row);
    row.assign(static_cast<size_t>(d) + 1, 0.0);
    const double ad = a + static_cast<double>(d) - 1.0;
    double g = 0.0, absg = 0.0;
    const long mlo = std::max<long>(0, d - cap);
    const long mhi = std::min<long>(d, cap);
    for (long m = mlo; m <= mhi; ++m) {
      const long n = d - m;
      double v;
      if (n >= 1) {
        const double dn = static_cast<double>(n);
        v = prev[static_cast<size_t>(m)] * ad * (b2 + dn - 1.0) /
            ((c2 + dn - 1.0) * dn) * y;
      } else {
        const double dm = static_cast<double>(m);
        v = prev[static_cast<size_t>(m - 1)] * ad * (b1 + dm - 1.0) /
            ((c1 + dm - 1.0) * dm) * x;
      }
      row[static_cast<size_t>(m)] = v;
      g += v;
      absg += std::fabs(v);
      ++terms;
    }
    sum += g;
    const double thresh = opts.rel_tol * std::max(std::fabs(sum), 1e-300);
    if (window.push(absg, thresh)) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged)
    throw NonConvergence("appell_f2_direct: degree cap exhausted");
  res.value = sum;
  res.terms_used = terms;
  res.err_estimate = window.err();
  return res;
}

EvalResult appell_f2_expanded(double a, double b1, double b2, double c1,
                              double c2, double x, double y,
                              const SeriesOptions& opts) {
  opts.check();
  check_f2_inputs(c1, c2, x, y);

  const SeriesOptions inner = inner_options(opts);
  detail::StagnationWindow window(opts.stagnation_window);

  double weight = 1.0; // (a)_i(b1)_i(b2)_i/((c1)_i(c2)_i i!) (xy)^i
  double sum = 0.0, err = 0.0;
  long terms = 0;
  EvalResult res;
  res.representation = Representation::expanded;

  for (long i = 0; i < opts.max_terms_per_index; ++i) {
    double term = 0.0, absterm = 0.0;
    if (weight != 0.0) {
      const double di = static_cast<double>(i);
      const EvalResult f1 =
          gauss_2f1({a + di, b1 + di, c1 + di}, x, inner);
      const EvalResult f2 =
          gauss_2f1({a + di, b2 + di, c2 + di}, y, inner);
      term = weight * f1.value * f2.value;
      absterm = std::fabs(term);
      err += std::fabs(weight) * (f1.err_estimate * std::fabs(f2.value) +
                                  std::fabs(f1.value) * f2.err_estimate);
      terms += f1.terms_used + f2.terms_used;
    }
    sum += term;
    ++terms;
    const double thresh = opts.rel_tol * std::max(std::fabs(sum), 1e-300);
    if (window.push(absterm, thresh)) {
      res.converged = true;
      break;
    }
    const double di = static_cast<double>(i);
    weight *= (a + di) * (b1 + di) * (b2 + di) /
              ((c1 + di) * (c2 + di) * (di + 1.0)) * x * y;
  }
  if (!res.converged)
    throw NonConvergence("appell_f2_expanded: term cap exhausted");
  res.value = sum;
  res.terms_used = terms;
  res.err_estimate = window.err() + err;
  return res;
}

} // namespace helmfs
