#pragma once

#include "helmfs/series.hpp"

namespace helmfs {

// Parameters of the confluent hypergeometric function of three variables
//   A2(a; b1,b2; c1,c2; x,y,z)
//     = sum (a)_{m+n-k} (b1)_m (b2)_n / ((c1)_m (c2)_n m! n! k!) x^m y^n z^k.
struct A2Params {
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;

  // c1, c2 must not be zero or negative integers.
  void check() const;
};

struct A2Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct DerivOrders {
  int dx = 0;
  int dy = 0;
  int dz = 0;
};

// Triple series summed by total degree m+n+k.  Requires |x|+|y| < 1;
// z is unrestricted (the k-direction is entire).
EvalResult a2_direct(const A2Params& p, const A2Point& pt,
                     const SeriesOptions& opts);

// Single series of Appell F2 values:
//   sum_k (-z)^k / ((1-a)_k k!) F2(a-k; b1,b2; c1,c2; x,y).
// Throws PoleError when a is a positive integer small enough that a reached
// (1-a)_k vanishes.
EvalResult a2_via_f2(const A2Params& p, const A2Point& pt,
                     const SeriesOptions& opts);

// Double series of products of Gauss functions:
//   sum_{i,j} (a)_{i-j}(b1)_i(b2)_i/((c1)_i(c2)_i i! j!) x^i y^i z^j
//             * F(a+i-j,b1+i;c1+i;x) F(a+i-j,b2+i;c2+i;y)
EvalResult a2_expanded(const A2Params& p, const A2Point& pt,
                       const SeriesOptions& opts);

// Regularized expansion with arguments mapped into (-1,1):
//   (1-x)^{-b1}(1-y)^{-b2} sum_{i,j} (a)_{i-j}(b1)_i(b2)_i/((c1)_i(c2)_i i!j!)
//     (x/(1-x))^i (y/(1-y))^i z^j
//     * F(c1-a+j, b1+i; c1+i; x/(x-1)) F(c2-a+j, b2+i; c2+i; y/(y-1))
// Valid for unbounded negative x, y; this is the production path near the
// singular point of the PDE kernels.  Requires x < 1 and y < 1.
EvalResult a2_regularized(const A2Params& p, const A2Point& pt,
                          const SeriesOptions& opts);

// Euler-type double-integral representation, evaluated by tanh-sinh
// product quadrature:
//   A2 = C int_0^1 int_0^1 u^{b1-1}(1-u)^{c1-b1-1} v^{b2-1}(1-v)^{c2-b2-1}
//          T^{-a} G(-z T) du dv,     T = 1 - u x - v y,
//   G(s) = sum_k s^k / ((1-a)_k k!),
//   C = Gamma(c1)Gamma(c2)/(Gamma(b1)Gamma(b2)Gamma(c1-b1)Gamma(c2-b2)).
// Requires 0 < b1 < c1, 0 < b2 < c2, and max(x,0) + max(y,0) < 1; x and y
// may be arbitrarily negative.  The integrand stays uniformly bounded as
// x, y -> -inf, so this is the only representation whose conditioning does
// not blow up near the PDE singularity when z != 0.
EvalResult a2_integral(const A2Params& p, const A2Point& pt,
                       const SeriesOptions& opts);

// Dispatches to a2_direct when |x|+|y| <= 0.7; otherwise to a2_integral
// when detail::prefer_integral says the z-direction of the regularized
// expansion would cancel catastrophically, else to a2_regularized.
EvalResult a2_auto(const A2Params& p, const A2Point& pt,
                   const SeriesOptions& opts);

// Partial derivative d^{i+j+k} A2 / dx^i dy^j dz^k via the shift formula:
//   (a)_{i+j-k}(b1)_i(b2)_j/((c1)_i(c2)_j)
//     * A2(a+i+j-k; b1+i,b2+j; c1+i,c2+j; x,y,z)
EvalResult a2_derivative(const A2Params& p, const DerivOrders& orders,
                         const A2Point& pt, const SeriesOptions& opts);

// The four linearly independent solutions of the associated hypergeometric
// system: omega_1 = A2 itself; omega_2, omega_3, omega_4 carry power
// prefactors x^{1-c1} and/or y^{1-c2} and shifted parameters.  Prefactor
// bases must be positive where a non-integer real power is taken.
EvalResult omega(int idx, const A2Params& p, const A2Point& pt,
                 const SeriesOptions& opts);

// Parameter set of the A2 factor of omega_idx.
A2Params omega_params(int idx, const A2Params& p);

namespace detail {

// a2_regularized split as exp(log_scale) * mantissa.value so that callers
// can recombine the power prefactors with their own in log space.
struct ScaledSum {
  double log_scale = 0.0;
  EvalResult mantissa;
};

ScaledSum a2_regularized_scaled(const A2Params& p, const A2Point& pt,
                                const SeriesOptions& opts);

// True when a2_integral is applicable and the regularized expansion is
// not trustworthy at pt: either its z-direction would lose about
// exp(2 sqrt(|z (1-x)(1-y)|)) to cancellation, or its outer ratio is so
// close to 1 that the term cap forces the (~1e-6-accurate) Levin finish.
bool prefer_integral(const A2Params& p, const A2Point& pt,
                     const SeriesOptions& opts);

} // namespace detail

} // namespace helmfs
