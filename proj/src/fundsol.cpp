#include "helmfs/fundsol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace helmfs {

void HelmholtzParams::check() const {
  if (!(alpha > 0.0 && 2.0 * alpha < 1.0))
    throw DomainError("HelmholtzParams: require 0 < 2*alpha < 1");
  if (!(beta > 0.0 && 2.0 * beta < 1.0))
    throw DomainError("HelmholtzParams: require 0 < 2*beta < 1");
  if (!(lambda >= 0.0))
    throw DomainError("HelmholtzParams: require lambda >= 0");
  if (p < 3) throw DomainError("HelmholtzParams: require p >= 3");
}

void KernelSpec::check() const {
  if (index < 1 || index > 4)
    throw std::invalid_argument("KernelSpec: index must be 1..4");
  if (!std::isfinite(k))
    throw std::invalid_argument("KernelSpec: k must be finite");
}

Geometry geometry(const HalfSpacePoint& x, const HalfSpacePoint& x0,
                  const HelmholtzParams& hp) {
  const size_t dim = static_cast<size_t>(hp.p);
  if (x.coords.size() != dim || x0.coords.size() != dim)
    throw DimensionMismatch("geometry: points must have p = " +
                            std::to_string(hp.p) + " coordinates");
  Geometry g;
  for (size_t i = 0; i < dim; ++i) {
    const double d = x.coords[i] - x0.coords[i];
    g.r2 += d * d;
  }
  if (g.r2 == 0.0)
    throw CoincidentPoints("geometry: x and x0 coincide");
  g.r1_2 = g.r2 + 4.0 * x.x1() * x0.x1();
  g.r2_2 = g.r2 + 4.0 * x.x2() * x0.x2();
  g.xi = -4.0 * x.x1() * x0.x1() / g.r2;
  g.eta = -4.0 * x.x2() * x0.x2() / g.r2;
  g.zeta = -hp.lambda * hp.lambda * g.r2 / 4.0;
  g.P = std::pow(g.r2, 1.0 - hp.alpha - hp.beta - 0.5 * hp.p);
  return g;
}

A2Params kernel_a2_params(int index, const HelmholtzParams& hp) {
  const double a = hp.alpha, b = hp.beta, hp2 = 0.5 * hp.p;
  switch (index) {
    case 1:
      return {a + b - 1.0 + hp2, a, b, 2.0 * a, 2.0 * b};
    case 2:
      return {-a + b + hp2, 1.0 - a, b, 2.0 - 2.0 * a, 2.0 * b};
    case 3:
      return {a - b + hp2, a, 1.0 - b, 2.0 * a, 2.0 - 2.0 * b};
    case 4:
      return {1.0 - a - b + hp2, 1.0 - a, 1.0 - b, 2.0 - 2.0 * a,
              2.0 - 2.0 * b};
    default:
      throw std::invalid_argument("kernel_a2_params: index must be 1..4");
  }
}

namespace {

double r2_exponent(int index, const HelmholtzParams& hp) {
  const double hp2 = 0.5 * hp.p;
  switch (index) {
    case 1:
      return 1.0 - hp.alpha - hp.beta - hp2;
    case 2:
      return hp.alpha - hp.beta - hp2;
    case 3:
      return -hp.alpha + hp.beta - hp2;
    default:
      return -1.0 + hp.alpha + hp.beta - hp2;
  }
}

} // namespace

EvalResult q(const KernelSpec& spec, const HalfSpacePoint& x,
             const HalfSpacePoint& x0, const HelmholtzParams& hp,
             const SeriesOptions& opts) {
  spec.check();
  const Geometry g = geometry(x, x0, hp);

  const double tau1 =
      (spec.index == 2 || spec.index == 4) ? 1.0 - 2.0 * hp.alpha : 0.0;
  const double tau2 =
      (spec.index == 3 || spec.index == 4) ? 1.0 - 2.0 * hp.beta : 0.0;
  const double s1 = x.x1() * x0.x1();
  const double s2 = x.x2() * x0.x2();
  if (s1 < 0.0 || s2 < 0.0)
    throw DomainError("q: points must lie in the half-space x1, x2 >= 0");

  EvalResult res;
  // tau1, tau2 > 0 whenever present, so the kernel vanishes exactly on the
  // corresponding coordinate plane.
  if ((tau1 != 0.0 && s1 == 0.0) || (tau2 != 0.0 && s2 == 0.0)) {
    res.converged = true;
    return res;
  }
  double log_pre = r2_exponent(spec.index, hp) * std::log(g.r2);
  if (tau1 != 0.0) log_pre += tau1 * std::log(s1);
  if (tau2 != 0.0) log_pre += tau2 * std::log(s2);

  const A2Params ap = kernel_a2_params(spec.index, hp);
  const A2Point pt{g.xi, g.eta, g.zeta};

  if (std::fabs(pt.x) + std::fabs(pt.y) <= 0.7) {
    res = a2_direct(ap, pt, opts);
    const double scale = spec.k * std::exp(log_pre);
    res.value *= scale;
    res.err_estimate *= std::fabs(scale);
    return res;
  }
  if (detail::prefer_integral(ap, pt, opts)) {
    res = a2_integral(ap, pt, opts);
    const double scale = spec.k * std::exp(log_pre);
    res.value *= scale;
    res.err_estimate *= std::fabs(scale);
    return res;
  }
  const detail::ScaledSum s = detail::a2_regularized_scaled(ap, pt, opts);
  res = s.mantissa;
  const double scale = spec.k * std::exp(log_pre + s.log_scale);
  res.value *= scale;
  res.err_estimate *= std::fabs(scale);
  return res;
}

TransformedField apply_constructive(int formula, ScalarField u,
                                    const HelmholtzParams& hp) {
  if (formula != 1 && formula != 2)
    throw std::invalid_argument("apply_constructive: formula must be 1 or 2");
  TransformedField out;
  out.params = hp;
  if (formula == 1) {
    const double e = 1.0 - 2.0 * hp.alpha;
    out.params.alpha = 1.0 - hp.alpha;
    out.field = [e, u = std::move(u)](const HalfSpacePoint& pt) {
      return std::pow(pt.x1(), e) * u(pt);
    };
  } else {
    const double e = 1.0 - 2.0 * hp.beta;
    out.params.beta = 1.0 - hp.beta;
    out.field = [e, u = std::move(u)](const HalfSpacePoint& pt) {
      return std::pow(pt.x2(), e) * u(pt);
    };
  }
  return out;
}

} // namespace helmfs
