#pragma once

#include <stdexcept>
#include <string>

namespace helmfs {

// Truncation control shared by every series evaluator in the library.
struct SeriesOptions {
  double rel_tol = 1e-12;        // relative stopping tolerance, in (0,1)
  int max_terms_per_index = 400; // cap on each summation index
  int stagnation_window = 3;     // consecutive small terms required to stop

  void check() const;
};

enum class Representation {
  direct,
  expanded,
  via_f2,
  regularized,
  regularized_accel, // regularized series finished by sequence acceleration
  one_minus_z,       // 2F1 linear transformation z -> 1-z
  integral,          // Euler-type double integral, tanh-sinh quadrature
};

const char* to_string(Representation r) noexcept;

struct EvalResult {
  double value = 0.0;
  double err_estimate = 0.0; // absolute truncation/propagation estimate
  long terms_used = 0;
  Representation representation = Representation::direct;
  bool converged = false;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoincidentPoints : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StepTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FitDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace helmfs
