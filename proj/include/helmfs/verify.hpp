#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "helmfs/fundsol.hpp"

namespace helmfs {

struct StencilConfig {
  double step = 1e-2;       // base finite-difference step
  int order = 4;            // central-stencil accuracy, 2 or 4
  int richardson_levels = 1;

  void check() const;
};

struct ResidualReport {
  std::string id;
  double residual = 0.0;
  double scale = 0.0;    // sum of absolute term magnitudes
  double relative = 0.0; // residual / scale
  std::vector<double> location;
  bool pass = false;
};

// Residual of H u at x by central differences.  The step auto-shrinks to
// 0.1 * min(distance to axes, distance to singular_at) when the configured
// step violates that margin; StepTooLarge if the point itself sits on an
// axis or at the singular point.
ResidualReport helmholtz_residual(const ScalarField& u, const HalfSpacePoint& x,
                                  const HelmholtzParams& hp,
                                  const StencilConfig& st, double tol,
                                  const HalfSpacePoint* singular_at = nullptr);

// Residuals of the three equations of the hypergeometric system for
// omega_idx (1..4), using exact series derivatives, no stencils.
std::array<ResidualReport, 3> system_residual(int omega_idx, const A2Params& p,
                                              const A2Point& pt,
                                              const SeriesOptions& opts,
                                              double tol);

// The ten closed-form coefficients of the substituted equation, as printed.
struct ReductionCoefficients {
  double a1 = 0, a2 = 0, a3 = 0;
  double b1 = 0, b2 = 0, b3 = 0;
  double c1 = 0, c2 = 0, c3 = 0;
  double d = 0;
};

ReductionCoefficients reduction_coefficients(const HalfSpacePoint& x,
                                             const HalfSpacePoint& x0,
                                             const HelmholtzParams& hp);

// Same ten coefficients from their definitions, by stencils on the
// geometry maps xi(x), eta(x), zeta(x), P(x).
ReductionCoefficients definitional_coefficients(const HalfSpacePoint& x,
                                                const HalfSpacePoint& x0,
                                                const HelmholtzParams& hp,
                                                const StencilConfig& st);

// Printed-vs-definitional comparison, one report per coefficient.
// Diagnostic only: discrepancies are reported, never corrected.
std::vector<ResidualReport> coefficient_consistency(const HalfSpacePoint& x,
                                                    const HalfSpacePoint& x0,
                                                    const HelmholtzParams& hp,
                                                    const StencilConfig& st,
                                                    double tol);

// Assembles the substituted equation from the given coefficients and the
// exact series derivatives of omega_idx built on (xi, eta, zeta); the
// result must annihilate the solution.
ResidualReport substituted_equation_residual(int omega_idx,
                                             const ReductionCoefficients& co,
                                             const HalfSpacePoint& x,
                                             const HalfSpacePoint& x0,
                                             const HelmholtzParams& hp,
                                             const SeriesOptions& opts,
                                             double tol);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0; // RMS residual of the log-log fit
  int points_used = 0;
};

// Evaluates q at x = x0 + r_i * direction and fits log|q| against log r_i
// by least squares.  Expected slope: -(p-2).
ExponentFit singularity_exponent(const KernelSpec& spec,
                                 const HalfSpacePoint& x0,
                                 const std::vector<double>& direction,
                                 const std::vector<double>& radii,
                                 const HelmholtzParams& hp,
                                 const SeriesOptions& opts);

enum class BoundaryMode { value, normal_derivative };

struct BoundaryLimit {
  double limit = 0.0;        // extrapolated value at the axis
  double reference = 0.0;    // kernel magnitude at the template point
  std::array<double, 3> samples{};
  bool pass = false;
};

// Sweeps the probed axis coordinate over {1e-2, 1e-3, 1e-4}, extrapolates
// to 0 with an estimated-order Richardson step, and compares against 0
// relative to the kernel magnitude at the template point.
BoundaryLimit boundary_limit(const KernelSpec& spec, int axis,
                             BoundaryMode mode,
                             const HalfSpacePoint& x_template,
                             const HalfSpacePoint& x0,
                             const HelmholtzParams& hp,
                             const SeriesOptions& opts, double tol);

} // namespace helmfs
