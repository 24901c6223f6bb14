#pragma once

// Finite-dimensional operator algebra: n x n complex Hermitian matrices with
// the (unnormalized) matrix trace, spectral calculus and the projection
// lattice. Everything downstream (averages, stopping projections, norms)
// reduces to these primitives.

#include <functional>
#include <span>
#include <vector>

#include "czlab/common.hpp"

namespace czlab {

struct SpectralData {
  RVec eigenvalues;  // ascending
  Mat  eigenvectors; // unitary, columns match eigenvalues
};

bool is_hermitian(const Mat& a, double tol_rel = default_tols().herm);
void require_hermitian(const Mat& a, const char* who,
                       double tol_rel = default_tols().herm);

/// Eigendecomposition of a Hermitian matrix. Throws InvalidInput if the
/// input is not Hermitian within tolerance.
SpectralData spectral_decompose(const Mat& a);

/// U g(Lambda) U* for a real scalar function g.
Mat func_calc(const Mat& a, const std::function<double(double)>& g);

/// Spectral projection onto eigenvalues in (0, lam]. The left end is open:
/// eigenvalues below zero * ||A|| count as kernel and are excluded; the right
/// end keeps eigenvalues up to lam + eig * ||A||.
Mat spectral_proj_leq(const Mat& a, double lam,
                      const Tolerances& tol = default_tols());

/// Spectral projection onto eigenvalues strictly above lam (same slack as
/// spectral_proj_leq, so the two are exact complements on PSD inputs up to
/// the kernel).
Mat spectral_proj_gt(const Mat& a, double lam,
                     const Tolerances& tol = default_tols());

/// Projection onto the closed span of the ranges. Empty input gives the zero
/// projection of dimension dim.
Mat proj_join(std::span<const Mat> ps, int dim,
              const Tolerances& tol = default_tols());
/// Projection onto the intersection of the ranges. Empty input gives the
/// identity of dimension dim.
Mat proj_meet(std::span<const Mat> ps, int dim,
              const Tolerances& tol = default_tols());

/// Range projection of a PSD accumulation (unvalidated fast path used by the
/// lattice operations and the dilated joins).
Mat support_of_psd(const Mat& s, double rank_tol_rel);

bool is_projection(const Mat& p, double tol = default_tols().proj);

double trace_re(const Mat& a);
/// Largest singular value.
double op_norm(const Mat& a);
/// Schatten p-norm, p in [1, inf]; p = inf gives op_norm.
double schatten_norm(const Mat& a, double p);
/// Singular values in descending order (|eigenvalues| for Hermitian input).
RVec singular_values(const Mat& a);
/// PSD square root with negative eigenvalues from rounding clipped to 0.
Mat herm_sqrt(const Mat& psd);

inline Mat identity(int n) { return Mat::Identity(n, n); }

}  // namespace czlab
