#pragma once

#include <functional>
#include <vector>

#include "helmfs/a2.hpp"
#include "helmfs/series.hpp"

namespace helmfs {

// Operator H u = sum_i u_{x_i x_i} + (2a/x_1) u_{x_1} + (2b/x_2) u_{x_2}
//                - lambda^2 u  on the half-space x_1 > 0, x_2 > 0.
struct HelmholtzParams {
  double alpha = 0.25;
  double beta = 0.25;
  double lambda = 0.0;
  int p = 3;

  // Nominal range 0 < 2*alpha, 2*beta < 1, lambda >= 0, p >= 3.  The
  // constructive-formula checks deliberately build transformed sets with
  // alpha or beta replaced by 1-alpha / 1-beta, so the range is validated
  // here (used at the CLI and kernel entry points), not enforced on
  // construction.
  void check() const;
};

struct HalfSpacePoint {
  std::vector<double> coords;

  HalfSpacePoint() = default;
  explicit HalfSpacePoint(std::vector<double> c) : coords(std::move(c)) {}

  double x1() const { return coords.at(0); }
  double x2() const { return coords.at(1); }
};

// Similarity variables of the kernel ansatz for a point pair (x, x0):
//   r^2   = sum (x_i - x0_i)^2
//   r1^2  = r^2 + 4 x_1 x0_1,   r2^2 = r^2 + 4 x_2 x0_2
//   xi    = -4 x_1 x0_1 / r^2,  eta  = -4 x_2 x0_2 / r^2
//   zeta  = -lambda^2 r^2 / 4,  P    = (r^2)^{1-alpha-beta-p/2}
struct Geometry {
  double r2 = 0.0;
  double r1_2 = 0.0;
  double r2_2 = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
  double P = 0.0;
};

struct KernelSpec {
  int index = 1;       // which fundamental solution q_1 .. q_4
  double k = 1.0;      // normalization constant, caller-configurable

  void check() const;
};

Geometry geometry(const HalfSpacePoint& x, const HalfSpacePoint& x0,
                  const HelmholtzParams& hp);

// A2 parameter set of kernel q_index.
A2Params kernel_a2_params(int index, const HelmholtzParams& hp);

// Fundamental solution q_index(x, x0): power prefactors times A2 evaluated
// at (xi, eta, zeta).  Prefactors are recombined in log space with the
// regularized representation's own scale near the singularity.
EvalResult q(const KernelSpec& spec, const HalfSpacePoint& x,
             const HalfSpacePoint& x0, const HelmholtzParams& hp,
             const SeriesOptions& opts);

using ScalarField = std::function<double(const HalfSpacePoint&)>;

// Constructive formulas: multiplying a field by x_1^{1-2 alpha}
// (formula 1) or x_2^{1-2 beta} (formula 2) intertwines H_{alpha,beta}
// with H_{1-alpha,beta} / H_{alpha,1-beta}.
struct TransformedField {
  ScalarField field;        // x_1^{1-2 alpha} * u  (or the x_2 analogue)
  HelmholtzParams params;   // parameter set the right-hand side uses
};

TransformedField apply_constructive(int formula, ScalarField u,
                                    const HelmholtzParams& hp);

} // namespace helmfs
