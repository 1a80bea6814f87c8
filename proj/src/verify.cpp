#include "helmfs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace helmfs {

void StencilConfig::check() const {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("StencilConfig: step must be positive");
  if (order != 2 && order != 4)
    throw std::invalid_argument("StencilConfig: order must be 2 or 4");
  if (richardson_levels < 0 || richardson_levels > 4)
    throw std::invalid_argument("StencilConfig: richardson_levels in 0..4");
}

namespace {

using Fn1 = std::function<double(double)>;

double stencil_d1(const Fn1& f, double h, int order) {
  if (order == 2) return (f(h) - f(-h)) / (2.0 * h);
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

double stencil_d2(const Fn1& f, double f0, double h, int order) {
  if (order == 2) return (f(h) - 2.0 * f0 + f(-h)) / (h * h);
  return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f0 + 16.0 * f(-h) -
          f(-2.0 * h)) /
         (12.0 * h * h);
}

// Richardson extrapolation of a central-stencil value with leading error
// C h^order and even-power corrections.
double richardson(const Fn1& approx, double h, int order, int levels) {
  std::vector<double> t(static_cast<size_t>(levels) + 1);
  for (int i = 0; i <= levels; ++i)
    t[static_cast<size_t>(i)] = approx(h / std::pow(2.0, i));
  for (int lev = 1; lev <= levels; ++lev) {
    const double fac = std::pow(2.0, order + 2 * (lev - 1));
    for (int i = levels; i >= lev; --i)
      t[static_cast<size_t>(i)] =
          (fac * t[static_cast<size_t>(i)] - t[static_cast<size_t>(i - 1)]) /
          (fac - 1.0);
  }
  return t[static_cast<size_t>(levels)];
}

// Largest stencil half-width used over all Richardson levels.
double stencil_extent(double h, int order) {
  return (order == 4 ? 2.0 : 1.0) * h;
}

double safe_step(double step, int order, double margin) {
  if (stencil_extent(step, order) < 0.5 * margin) return step;
  return 0.1 * margin / (order == 4 ? 2.0 : 1.0);
}

ResidualReport make_report(std::string id, double residual, double scale,
                           std::vector<double> location, double tol) {
  ResidualReport rep;
  rep.id = std::move(id);
  rep.residual = residual;
  rep.scale = scale;
  rep.relative = std::fabs(residual) / std::max(scale, 1e-300);
  rep.location = std::move(location);
  rep.pass = rep.relative <= tol;
  return rep;
}

} // namespace

ResidualReport helmholtz_residual(const ScalarField& u, const HalfSpacePoint& x,
                                  const HelmholtzParams& hp,
                                  const StencilConfig& st, double tol,
                                  const HalfSpacePoint* singular_at) {
  // hp deliberately not range-checked: the constructive-formula identity
  // applies this operator with alpha or beta reflected to 1-alpha / 1-beta.
  st.check();
  const size_t dim = static_cast<size_t>(hp.p);
  if (x.coords.size() != dim)
    throw DimensionMismatch("helmholtz_residual: point must have p coords");

  double margin = std::min(x.x1(), x.x2());
  if (singular_at != nullptr) {
    if (singular_at->coords.size() != dim)
      throw DimensionMismatch("helmholtz_residual: singular point dimension");
    double d2 = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      const double d = x.coords[i] - singular_at->coords[i];
      d2 += d * d;
    }
    margin = std::min(margin, std::sqrt(d2));
  }
  if (!(margin > 0.0))
    throw StepTooLarge("helmholtz_residual: point on an axis or singular");
  const double h = safe_step(st.step, st.order, margin);

  const double u0 = u(x);
  double lap = 0.0, lap_scale = 0.0;
  double ux1 = 0.0, ux2 = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    auto along = [&](double t) {
      HalfSpacePoint y = x;
      y.coords[i] += t;
      return u(y);
    };
    const double dii = richardson(
        [&](double hh) { return stencil_d2(along, u0, hh, st.order); }, h,
        st.order, st.richardson_levels);
    lap += dii;
    lap_scale += std::fabs(dii);
    if (i <= 1) {
      const double di = richardson(
          [&](double hh) { return stencil_d1(along, hh, st.order); }, h,
          st.order, st.richardson_levels);
      if (i == 0)
        ux1 = di;
      else
        ux2 = di;
    }
  }
  const double t1 = 2.0 * hp.alpha / x.x1() * ux1;
  const double t2 = 2.0 * hp.beta / x.x2() * ux2;
  const double t3 = -hp.lambda * hp.lambda * u0;
  const double residual = lap + t1 + t2 + t3;
  const double scale = lap_scale + std::fabs(t1) + std::fabs(t2) +
                       std::fabs(t3) + std::fabs(u0);
  return make_report("helmholtz", residual, scale, x.coords, tol);
}

namespace {

struct OmegaDerivs {
  double w = 0, wx = 0, wy = 0, wz = 0;
  double wxx = 0, wyy = 0, wzz = 0;
  double wxy = 0, wxz = 0, wyz = 0;
};

// All derivatives of omega_idx = |x|^tau |y|^nu A2(shifted params) needed
// by the second-order system.  |.|^tau is used because the kernel checks
// evaluate at xi, eta < 0; d|x|^tau/dx = tau |x|^tau / x on either branch.
OmegaDerivs omega_derivs(int idx, const A2Params& p, const A2Point& pt,
                         const SeriesOptions& opts) {
  const double tau = (idx == 2 || idx == 4) ? 1.0 - p.c1 : 0.0;
  const double nu = (idx == 3 || idx == 4) ? 1.0 - p.c2 : 0.0;
  if (tau != 0.0 && pt.x == 0.0)
    throw DomainError("omega_derivs: x = 0 under a power prefactor");
  if (nu != 0.0 && pt.y == 0.0)
    throw DomainError("omega_derivs: y = 0 under a power prefactor");

  const A2Params sp = omega_params(idx, p);
  auto d = [&](int i, int j, int k) {
    return a2_derivative(sp, {i, j, k}, pt, opts).value;
  };
  const double A = a2_auto(sp, pt, opts).value;
  const double Ax = d(1, 0, 0), Ay = d(0, 1, 0), Az = d(0, 0, 1);
  const double Axx = d(2, 0, 0), Ayy = d(0, 2, 0), Azz = d(0, 0, 2);
  const double Axy = d(1, 1, 0), Axz = d(1, 0, 1), Ayz = d(0, 1, 1);

  const double pre = std::pow(std::fabs(pt.x), tau) *
                     std::pow(std::fabs(pt.y), nu);
  const double tx = tau == 0.0 ? 0.0 : tau / pt.x;
  const double ty = nu == 0.0 ? 0.0 : nu / pt.y;
  const double txx = tau == 0.0 ? 0.0 : tau * (tau - 1.0) / (pt.x * pt.x);
  const double tyy = nu == 0.0 ? 0.0 : nu * (nu - 1.0) / (pt.y * pt.y);

  OmegaDerivs od;
  od.w = pre * A;
  od.wx = pre * (Ax + tx * A);
  od.wy = pre * (Ay + ty * A);
  od.wz = pre * Az;
  od.wxx = pre * (Axx + 2.0 * tx * Ax + txx * A);
  od.wyy = pre * (Ayy + 2.0 * ty * Ay + tyy * A);
  od.wzz = pre * Azz;
  od.wxy = pre * (Axy + tx * Ay + ty * Ax + tx * ty * A);
  od.wxz = pre * (Axz + tx * Az);
  od.wyz = pre * (Ayz + ty * Az);
  return od;
}

ResidualReport sum_terms(std::string id, std::initializer_list<double> terms,
                         const A2Point& pt, double tol) {
  double r = 0.0, s = 0.0;
  for (double t : terms) {
    r += t;
    s += std::fabs(t);
  }
  return make_report(std::move(id), r, s, {pt.x, pt.y, pt.z}, tol);
}

} // namespace

std::array<ResidualReport, 3> system_residual(int omega_idx, const A2Params& p,
                                              const A2Point& pt,
                                              const SeriesOptions& opts,
                                              double tol) {
  p.check();
  const OmegaDerivs o = omega_derivs(omega_idx, p, pt, opts);
  const double x = pt.x, y = pt.y, z = pt.z;

  return {
      sum_terms("E1",
                {x * (1.0 - x) * o.wxx, -x * y * o.wxy, x * z * o.wxz,
                 (p.c1 - (p.a + p.b1 + 1.0) * x) * o.wx, -p.b1 * y * o.wy,
                 p.b1 * z * o.wz, -p.a * p.b1 * o.w},
                pt, tol),
      sum_terms("E2",
                {y * (1.0 - y) * o.wyy, -x * y * o.wxy, y * z * o.wyz,
                 (p.c2 - (p.a + p.b2 + 1.0) * y) * o.wy, -p.b2 * x * o.wx,
                 p.b2 * z * o.wz, -p.a * p.b2 * o.w},
                pt, tol),
      sum_terms("E3",
                {z * o.wzz, -x * o.wxz, -y * o.wyz, (1.0 - p.a) * o.wz, o.w},
                pt, tol),
  };
}

ReductionCoefficients reduction_coefficients(const HalfSpacePoint& x,
                                             const HalfSpacePoint& x0,
                                             const HelmholtzParams& hp) {
  hp.check();
  const Geometry g = geometry(x, x0, hp);
  if (!(x.x1() > 0.0 && x.x2() > 0.0))
    throw DomainError("reduction_coefficients: need x1, x2 > 0");
  const double f1 = 4.0 * g.P / g.r2 * (x0.x1() / x.x1());
  const double f2 = 4.0 * g.P / g.r2 * (x0.x2() / x.x2());
  const double al = hp.alpha, be = hp.beta, hp2 = 0.5 * hp.p;
  const double l2P = hp.lambda * hp.lambda * g.P;
  const double xi = g.xi, eta = g.eta, ze = g.zeta;

  ReductionCoefficients co;
  co.a1 = -f1 * xi * (1.0 - xi);
  co.a2 = -f2 * eta * (1.0 - eta);
  co.a3 = -l2P * ze;
  co.b1 = f1 * xi * eta + f2 * xi * eta;
  co.b2 = -f1 * xi * ze + l2P * xi;
  co.b3 = -f2 * eta * ze + l2P * eta;
  co.c1 = -f1 * (2.0 * al - (2.0 * al + be + hp2) * xi) + f2 * be * xi;
  co.c2 = f1 * al * eta - f2 * (2.0 * be - (al + 2.0 * be + hp2) * eta);
  co.c3 = -f1 * al * ze - f2 * be * ze - l2P * (hp2 - al - be);
  co.d = 4.0 * g.P / g.r2 * (x0.x1() / x.x1() * al + x0.x2() / x.x2() * be) *
             (al + be - 1.0 + hp2) -
         l2P;
  return co;
}

ReductionCoefficients definitional_coefficients(const HalfSpacePoint& x,
                                                const HalfSpacePoint& x0,
                                                const HelmholtzParams& hp,
                                                const StencilConfig& st) {
  st.check();
  hp.check();
  const Geometry g0 = geometry(x, x0, hp);
  if (!(x.x1() > 0.0 && x.x2() > 0.0))
    throw DomainError("definitional_coefficients: need x1, x2 > 0");
  const double margin = std::min({x.x1(), x.x2(), std::sqrt(g0.r2)});
  const double h = safe_step(st.step, st.order, margin);

  const size_t dim = static_cast<size_t>(hp.p);
  // first/second derivatives of xi, eta, zeta, P along each coordinate
  std::array<std::vector<double>, 4> d1, d2;
  const std::array<double, 4> base{g0.xi, g0.eta, g0.zeta, g0.P};
  for (auto& v : d1) v.assign(dim, 0.0);
  for (auto& v : d2) v.assign(dim, 0.0);

  for (size_t i = 0; i < dim; ++i) {
    for (int m = 0; m < 4; ++m) {
      auto along = [&](double t) {
        HalfSpacePoint y = x;
        y.coords[i] += t;
        const Geometry g = geometry(y, x0, hp);
        switch (m) {
          case 0: return g.xi;
          case 1: return g.eta;
          case 2: return g.zeta;
          default: return g.P;
        }
      };
      d1[static_cast<size_t>(m)][i] = richardson(
          [&](double hh) { return stencil_d1(along, hh, st.order); }, h,
          st.order, st.richardson_levels);
      d2[static_cast<size_t>(m)][i] = richardson(
          [&](double hh) {
            return stencil_d2(along, base[static_cast<size_t>(m)], hh,
                              st.order);
          },
          h, st.order, st.richardson_levels);
    }
  }

  auto dot = [&](int u, int v) {
    double s = 0.0;
    for (size_t i = 0; i < dim; ++i)
      s += d1[static_cast<size_t>(u)][i] * d1[static_cast<size_t>(v)][i];
    return s;
  };
  auto lap = [&](int u) {
    double s = 0.0;
    for (size_t i = 0; i < dim; ++i) s += d2[static_cast<size_t>(u)][i];
    return s;
  };
  auto first_order = [&](int u) {
    // P * [lap(u) + 2a/x1 u_x1 + 2b/x2 u_x2] + 2 grad P . grad u
    return g0.P * (lap(u) +
                   2.0 * hp.alpha / x.x1() * d1[static_cast<size_t>(u)][0] +
                   2.0 * hp.beta / x.x2() * d1[static_cast<size_t>(u)][1]) +
           2.0 * dot(3, u);
  };

  ReductionCoefficients co;
  co.a1 = g0.P * dot(0, 0);
  co.a2 = g0.P * dot(1, 1);
  co.a3 = g0.P * dot(2, 2);
  co.b1 = 2.0 * g0.P * dot(0, 1);
  co.b2 = 2.0 * g0.P * dot(0, 2);
  co.b3 = 2.0 * g0.P * dot(1, 2);
  co.c1 = first_order(0);
  co.c2 = first_order(1);
  co.c3 = first_order(2);
  co.d = lap(3) + 2.0 * hp.alpha / x.x1() * d1[3][0] +
         2.0 * hp.beta / x.x2() * d1[3][1] -
         hp.lambda * hp.lambda * g0.P;
  return co;
}

std::vector<ResidualReport> coefficient_consistency(const HalfSpacePoint& x,
                                                    const HalfSpacePoint& x0,
                                                    const HelmholtzParams& hp,
                                                    const StencilConfig& st,
                                                    double tol) {
  const ReductionCoefficients printed = reduction_coefficients(x, x0, hp);
  const ReductionCoefficients defined =
      definitional_coefficients(x, x0, hp, st);

  const std::array<std::pair<const char*, std::pair<double, double>>, 10>
      pairs{{{"A1", {printed.a1, defined.a1}},
             {"A2", {printed.a2, defined.a2}},
             {"A3", {printed.a3, defined.a3}},
             {"B1", {printed.b1, defined.b1}},
             {"B2", {printed.b2, defined.b2}},
             {"B3", {printed.b3, defined.b3}},
             {"C1", {printed.c1, defined.c1}},
             {"C2", {printed.c2, defined.c2}},
             {"C3", {printed.c3, defined.c3}},
             {"D", {printed.d, defined.d}}}};

  std::vector<ResidualReport> out;
  out.reserve(pairs.size());
  for (const auto& [id, vals] : pairs) {
    const double scale = std::max(std::fabs(vals.first),
                                  std::fabs(vals.second));
    out.push_back(make_report(id, vals.first - vals.second, scale, x.coords,
                              tol));
  }
  return out;
}

ResidualReport substituted_equation_residual(int omega_idx,
                                             const ReductionCoefficients& co,
                                             const HalfSpacePoint& x,
                                             const HalfSpacePoint& x0,
                                             const HelmholtzParams& hp,
                                             const SeriesOptions& opts,
                                             double tol) {
  hp.check();
  const Geometry g = geometry(x, x0, hp);
  const A2Point pt{g.xi, g.eta, g.zeta};
  const A2Params p = kernel_a2_params(1, hp);
  const OmegaDerivs o = omega_derivs(omega_idx, p, pt, opts);

  ResidualReport rep = sum_terms(
      "substituted_omega" + std::to_string(omega_idx),
      {co.a1 * o.wxx, co.a2 * o.wyy, co.a3 * o.wzz, co.b1 * o.wxy,
       co.b2 * o.wxz, co.b3 * o.wyz, co.c1 * o.wx, co.c2 * o.wy,
       co.c3 * o.wz, co.d * o.w},
      pt, tol);
  rep.location = x.coords;
  return rep;
}

ExponentFit singularity_exponent(const KernelSpec& spec,
                                 const HalfSpacePoint& x0,
                                 const std::vector<double>& direction,
                                 const std::vector<double>& radii,
                                 const HelmholtzParams& hp,
                                 const SeriesOptions& opts) {
  spec.check();
  hp.check();
  const size_t dim = static_cast<size_t>(hp.p);
  if (x0.coords.size() != dim || direction.size() != dim)
    throw DimensionMismatch("singularity_exponent: p coords required");
  double norm = 0.0;
  for (double d : direction) norm += d * d;
  norm = std::sqrt(norm);
  if (!(norm > 0.0))
    throw std::invalid_argument("singularity_exponent: zero direction");

  std::vector<double> lr, lq;
  for (double r : radii) {
    if (!(r > 0.0))
      throw std::invalid_argument("singularity_exponent: radii must be > 0");
    HalfSpacePoint x = x0;
    for (size_t i = 0; i < dim; ++i) x.coords[i] += r * direction[i] / norm;
    const EvalResult v = q(spec, x, x0, hp, opts);
    if (v.value == 0.0 || !std::isfinite(v.value)) continue;
    // A sample whose error bar is a sizable fraction of the value would
    // only pollute the log-log fit; drop it and let the sample count
    // decide whether a fit is still meaningful.
    if (v.err_estimate > 1e-3 * std::fabs(v.value)) continue;
    lr.push_back(std::log(r));
    lq.push_back(std::log(std::fabs(v.value)));
  }
  const size_t n = lr.size();
  if (n < 3)
    throw FitDegenerate("singularity_exponent: fewer than 3 usable samples");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += lr[i];
    sy += lq[i];
    sxx += lr[i] * lr[i];
    sxy += lr[i] * lq[i];
  }
  const double dn = static_cast<double>(n);
  const double det = dn * sxx - sx * sx;
  if (std::fabs(det) < 1e-14 * dn * sxx)
    throw FitDegenerate("singularity_exponent: radii too close for a fit");

  ExponentFit fit;
  fit.slope = (dn * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / dn;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double e = lq[i] - (fit.slope * lr[i] + fit.intercept);
    ss += e * e;
  }
  fit.fit_residual = std::sqrt(ss / dn);
  fit.points_used = static_cast<int>(n);
  return fit;
}

BoundaryLimit boundary_limit(const KernelSpec& spec, int axis,
                             BoundaryMode mode,
                             const HalfSpacePoint& x_template,
                             const HalfSpacePoint& x0,
                             const HelmholtzParams& hp,
                             const SeriesOptions& opts, double tol) {
  spec.check();
  hp.check();
  if (axis != 1 && axis != 2)
    throw std::invalid_argument("boundary_limit: axis must be 1 or 2");
  const size_t ci = static_cast<size_t>(axis - 1);
  if (x_template.coords.size() != static_cast<size_t>(hp.p))
    throw DimensionMismatch("boundary_limit: template must have p coords");

  auto sample = [&](double eps) {
    HalfSpacePoint x = x_template;
    x.coords[ci] = eps;
    if (mode == BoundaryMode::value) return q(spec, x, x0, hp, opts).value;
    const double h = 0.3 * eps;
    HalfSpacePoint xp = x, xm = x;
    xp.coords[ci] = eps + h;
    xm.coords[ci] = eps - h;
    return (q(spec, xp, x0, hp, opts).value -
            q(spec, xm, x0, hp, opts).value) /
           (2.0 * h);
  };

  BoundaryLimit bl;
  const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
  for (size_t i = 0; i < 3; ++i) bl.samples[i] = sample(eps[i]);

  // One step of estimated-order extrapolation: with s(eps) ~ L + C eps^kappa
  // and a decade between samples, (s1-s2)/(s2-s3) ~ 10^kappa.
  const double d1 = bl.samples[0] - bl.samples[1];
  const double d2 = bl.samples[1] - bl.samples[2];
  double limit = bl.samples[2];
  if (d2 != 0.0 && std::isfinite(d1 / d2)) {
    const double ratio = d1 / d2;
    if (ratio > 1.05) limit = bl.samples[2] - d2 / (ratio - 1.0);
  }
  bl.limit = limit;

  // Reference scale: the kernel magnitude at the interior template point.
  bl.reference = std::fabs(q(spec, x_template, x0, hp, opts).value);
  bl.pass = std::fabs(bl.limit) <= tol * std::max(bl.reference, 1e-300);
  return bl;
}

} // namespace helmfs
