#pragma once

// Cuculescu's stopping-time construction and the operator-valued
// Calderon-Zygmund decomposition: the level projections q_k, the stopping
// projections p_k = q_{k-1} - q_k, the four-way split of f into diagonal and
// off-diagonal good/bad parts with all indexed pieces, the dilated-join
// excision projection zeta, pseudo-localization supports and the maximal
// projection.

#include <filesystem>
#include <map>
#include <vector>

#include "czlab/field.hpp"
#include "czlab/operators.hpp"

namespace czlab {

struct CuculescuSequence {
  double lambda = 0.0;
  // q[k] lives at level k, k = 0..K, with q[0] = identity. p[k] = q_{k-1}-q_k
  // (parent value minus child value), k = 1..K; p[0] is unused and empty.
  std::vector<ProjectionField> q;
  std::vector<ProjectionField> p;
  ProjectionField q_final;  // meet of the chain; equals q[K] since the chain
                            // is decreasing along every cell path
};

/// Runs the recursion q_k = 1_{(0,lam]}(q_{k-1} f_k q_{k-1}) cell by cell.
/// Requires f >= 0 and ||E_0 f||_op <= lam (the normalized start).
CuculescuSequence cuculescu(const OperatorField& f, double lambda,
                            const Tolerances& tol = default_tols());

struct CZBundle {
  CuculescuSequence cu;
  OperatorField good_diag;   // q f q + sum_k p_k f_k p_k
  OperatorField good_off;    // q f q^perp + q^perp f q + sum_{i!=j} p_i f_{i v j} p_j
  OperatorField bad_diag;    // sum_n p_n (f - f_n) p_n
  OperatorField bad_off;     // sum_{i!=j} p_i (f - f_{i v j}) p_j
  std::vector<OperatorField> b_n;  // b_n[n], n = 1..K (index 0 empty)
  // symmetrized off-diagonal bad pieces, keyed by (n, s), n>=1, s>=1, n+s<=K
  std::map<std::pair<int, int>, OperatorField> b_ns;
  // g_left[s][k] = p_k df_{k+s} q_{k+s-1}, g_right the mirror; keyed (s, k)
  std::map<std::pair<int, int>, OperatorField> g_left, g_right;
  ProjectionField zeta;  // excision projection from the 5-dilated join
};

CZBundle cz_decompose(const OperatorField& f, double lambda,
                      const Tolerances& tol = default_tols());

/// zeta = (join over levels k and cubes Q with x in 5Q of p_Q)^perp.
ProjectionField zeta_projection(const CuculescuSequence& cu,
                                const Tolerances& tol = default_tols());

/// Pointwise join over levels of the i-dilated per-level projections:
/// J(x) = join over k and cubes Q in level k with x in iQ of levels[k](Q).
/// levels[k] must live at level k (index 0 unused and may be empty).
ProjectionField dilated_join(const DyadicDomain& dom,
                             const std::vector<ProjectionField>& levels,
                             int dilation, int mat_dim,
                             const Tolerances& tol = default_tols());

/// Support projection A_{h,s} = join over k of the 5-dilated A_k, after
/// checking the annihilation hypothesis A_k^perp dh_{k+s} = 0. dh[j] is the
/// level-j martingale difference of h (index 0 unused); levels j <= s must
/// vanish for the hypothesis to cover everything.
ProjectionField pseudo_loc_support(const std::vector<OperatorField>& dh,
                                   int s,
                                   const std::vector<ProjectionField>& a_fields,
                                   double hypothesis_eps = 1e-10,
                                   const Tolerances& tol = default_tols());

struct MaximalProjectionResult {
  ProjectionField q;        // e1 ^ e2 ^ e3, per cell
  double sup_qmq = 0.0;     // sup_k || q M_k f q ||_inf over the range
  double mass = 0.0;        // phi(1 - q)
  double lambda = 0.0;
};

/// Projection q with sup_k ||q M_k f q|| small and lambda phi(1-q)
/// controlled by ||f||_1, built from the Cuculescu chain for the martingale
/// part and spectral cuts of the witness square functions for the
/// fluctuation part.
MaximalProjectionResult maximal_projection(const OperatorField& f,
                                           double lambda,
                                           const LevelRange& range,
                                           int subsamples = 8,
                                           const Tolerances& tol =
                                               default_tols());

void save_bundle(const CZBundle& bundle, const std::filesystem::path& file);
CZBundle load_bundle(const std::filesystem::path& file);

}  // namespace czlab
