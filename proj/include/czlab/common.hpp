#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace czlab {

using Cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Thrown when an argument violates an operation's preconditions
/// (wrong shape, non-Hermitian input, invalid exponent, ...).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a ball or averaging operator is requested below the
/// resolution guard of the grid.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a mathematical hypothesis that an algorithm relies on
/// fails on the given data (e.g. a stopping-time normalization).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical tolerances used across the spectral calculus.
struct Tolerances {
  double herm = 1e-10;  // relative Hermiticity slack on inputs
  double proj = 1e-8;   // idempotence / PSD slack for projections
  double eig  = 1e-10;  // relative slack at spectral thresholds: (0, lam] keeps
                        // eigenvalues up to lam + eig*||A||
  double zero = 1e-12;  // relative cutoff below which an eigenvalue counts as 0
                        // (the left end of (0, lam] is open)
  double rank = 1e-9;   // relative eigenvalue cutoff for range joins
};

inline const Tolerances& default_tols() {
  static const Tolerances t{};
  return t;
}

}  // namespace czlab
