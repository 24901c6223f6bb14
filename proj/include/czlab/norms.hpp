#pragma once

// The (quasi-)norms: L_p over the window with the matrix trace, the weak-L1
// quasi-norm through the exact spectral distribution, column/row square
// function norms, sum-norm upper bounds from explicit witnesses, and the
// dyadic BMO norms in both matrix-unit frames.

#include <functional>
#include <span>
#include <vector>

#include "czlab/field.hpp"
#include "czlab/grid.hpp"

namespace czlab {

enum class Side { row, col };
enum class Frame { e_k1, e_1k };

/// ||f||_p = (sum_cells |cell| tr |f|^p)^{1/p}; p = inf gives the sup of the
/// cell operator norms.
double lp_norm(const OperatorField& f, double p);

/// phi(|f| > lam) computed exactly from singular values.
double distribution(const OperatorField& f, double lam);

/// Exact pooled spectral distribution of |f|.
struct SpectralDistribution {
  std::vector<double> breakpoints;  // ascending, distinct, > 0
  std::vector<double> weights;      // phi(|f| >= breakpoint), nonincreasing
};
SpectralDistribution spectral_distribution(const OperatorField& f);

/// sup_{lam>0} lam * phi(|f| > lam); the sup is attained at a breakpoint.
double weak_l1(const OperatorField& f);

/// Pointwise square function field (sum_k |f_k|^2)^{1/2} (col) or with
/// adjoints (row).
OperatorField sq_function(std::span<const OperatorField> seq, Side side);

/// || (sum_k |f_k|^2)^{1/2} ||_p and the row analogue.
double sq_norm(std::span<const OperatorField> seq, double p, Side side);

/// Witness upper bound for the weak sum-norm: weak_l1 of the column square
/// function of g plus weak_l1 of the row square function of h, for a
/// decomposition f_k = g_k + h_k supplied by the caller.
double rc_weak_upper(std::span<const OperatorField> g_col,
                     std::span<const OperatorField> h_row);

/// Dyadic BMO norm of F = sum_k f_k (x) e_frame over all dyadic cubes of
/// levels 0..K. Mean-centered.
double bmo_d(std::span<const OperatorField> seq, Side side, Frame frame);

/// Restricted/center-replaced variant: sup over the given cubes only, with
/// the per-cube centers alpha(Q, k) instead of the mean when alpha is set.
using CubeCenter = std::function<Mat(const DyadicCube&, int)>;
double bmo_d_over(std::span<const OperatorField> seq, Side side, Frame frame,
                  std::span<const DyadicCube> cubes,
                  const CubeCenter& alpha = nullptr);

}  // namespace czlab
