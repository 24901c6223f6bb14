#pragma once

// One checker per verified claim: the stopping-time properties, the
// decomposition estimates and cancellations, the almost-orthogonality
// principle, decay sweeps, the weak (1,1) / BMO / strong (p,p) measurements
// and the scalar-reference equivalences. The registry at the bottom binds
// every claim to exactly one check id so a full run can prove coverage.

#include <optional>
#include <string>
#include <vector>

#include "czlab/corpus.hpp"
#include "czlab/czd.hpp"
#include "czlab/norms.hpp"
#include "czlab/operators.hpp"
#include "czlab/report.hpp"

namespace czlab::checks {

Instance describe(const CorpusInstance& ci, double lambda,
                  const LevelRange& range);

/// Empirical windows used when a claim has no explicit constant. These are
/// generous ceilings; the informative value is the measured constant in the
/// report.
struct Windows {
  double goff_slice_l2 = 32.0;
  double weak11 = 32.0;
  double bmo = 16.0;
  double bmo_center = 4.0;
  double square_sum_l2 = 16.0;
  double strong_pp = 64.0;
  double rk_weak = 64.0;
  double maximal_mass = 64.0;
};

// --- per-instance checks -------------------------------------------------

/// commutation, level bound, mass bound (constant 1), pairwise
/// disjointness, resolution of the identity.
std::vector<CheckReport> cuculescu_properties(const CorpusInstance& ci,
                                              const CZBundle& bz,
                                              const LevelRange& range);

/// f = good_diag + good_off + bad_diag + bad_off within 1e-10 relative.
CheckReport cz_reconstruction(const CorpusInstance& ci, const CZBundle& bz,
                              const LevelRange& range);

/// ||good_diag||_2^2 <= 2^d lam ||f||_1 and ||bad_diag||_1 <= 2 ||f||_1.
std::vector<CheckReport> diagonal_estimates(const CorpusInstance& ci,
                                            const CZBundle& bz,
                                            const LevelRange& range);

/// the slice reorganization of good_off: sum identity, martingale-slice
/// identity, per-slice orthogonality and the L2 slice bound.
std::vector<CheckReport> good_off_reorganization(const CorpusInstance& ci,
                                                 const CZBundle& bz,
                                                 const LevelRange& range,
                                                 const Windows& win = {});

/// lam phi(1 - zeta) <= 5^d ||f||_1 and zeta(x) p_Q = 0 on dilated cubes.
std::vector<CheckReport> zeta_properties(const CorpusInstance& ci,
                                         const CZBundle& bz,
                                         const LevelRange& range);

/// cube integrals of the off-diagonal bad pieces vanish; the double-sided
/// excision kills them on dilated cubes. x_stride subsamples the outer cell
/// loop of the excision scan (1 = exhaustive).
std::vector<CheckReport> bad_off_cancellations(const CorpusInstance& ci,
                                               const CZBundle& bz,
                                               const LevelRange& range,
                                               int x_stride = 1);

/// zeta (M_k - E_k) b_n zeta = 0 for k >= n, exhaustive over the range.
CheckReport zeta_sandwich_vanish(const CorpusInstance& ci, const CZBundle& bz,
                                 const LevelRange& range);

/// the almost-orthogonality principle on its three instances.
std::vector<CheckReport> almost_orthogonality_suite(const CorpusInstance& ci,
                                                    const CZBundle& bz,
                                                    const LevelRange& range);

/// exhaustive-sign identity: avg over Omega of |Tf|^2 = sum_k |T_k f|^2.
CheckReport omega_square_identity(const CorpusInstance& ci,
                                  const LevelRange& range);

/// quasi-triangle inequality of the weak quasi-norm on random pairs.
CheckReport weak_quasi_triangle(const DyadicDomain& dom, int mat_dim,
                                std::uint64_t seed);

struct Weak11Result {
  CheckReport report;
  double constant = 0.0;  // sup_lambda lam * phi(|Tf| > lam) / ||f||_1
};
/// Weak (1,1) measurement over the lambda grid (absolute lambdas), with the
/// per-piece diagnostics at CZ-admissible lambdas when diagnostics is true.
Weak11Result weak11(const CorpusInstance& ci,
                    const std::vector<double>& lambdas,
                    const LevelRange& range, bool diagnostics,
                    const Windows& win = {});

/// BMO norms in all four frame/side combinations, far-support vanishing,
/// the center-Lipschitz geometry bound and the alpha-witness comparison.
std::vector<CheckReport> bmo_suite(const CorpusInstance& ci,
                                   const LevelRange& range,
                                   std::uint64_t sample_seed,
                                   const Windows& win = {});

/// strong (p,p): square sums at p = 2, intersection norms at p > 2 and the
/// witness sum-norm at p < 2.
std::vector<CheckReport> strong_pp(const CorpusInstance& ci,
                                   const std::vector<double>& p_list,
                                   const LevelRange& range,
                                   const Windows& win = {});

/// the three-term split of R_k and the measured weak constant of (R_k f).
std::vector<CheckReport> rk_checks(const CorpusInstance& ci,
                                   const std::vector<double>& lambdas,
                                   const LevelRange& range,
                                   const Windows& win = {});

/// sup_k ||q M_k f q|| <= 3 lam and mass of the complement.
std::vector<CheckReport> maximal_projection_check(const CorpusInstance& ci,
                                                  double lambda,
                                                  const LevelRange& range,
                                                  const Windows& win = {});

/// diagonal embeddings against the scalar reference, all operators and
/// norms; measured = worst relative deviation.
CheckReport oracle_equivalence(const CorpusInstance& ci,
                               const LevelRange& range, double lambda);

/// weak constant of a diagonal instance computed purely by the scalar
/// reference, for T_k sums (use_rk = false) or R_k sums (use_rk = true).
double oracle_weak_constant(const CorpusInstance& ci,
                            const std::vector<double>& lambdas,
                            const LevelRange& range, bool use_rk);

// --- family-level checks -------------------------------------------------

/// fitted slope of ||M_{k,n} f||_2 / ||f||_2 against n-k.
CheckReport boundary_avg_decay(const std::string& family,
                               const std::vector<CorpusInstance>& instances,
                               const std::vector<int>& k_values, int max_gap,
                               double slope_bound, DecaySweep* sweep_out);

/// M_k u = M_{k,n} u for fields with vanishing level-n cube averages.
CheckReport boundary_avg_reduction(const CorpusInstance& ci,
                                   const LevelRange& range);

/// fitted slopes of ||(M_k - E_k) df_n||_2 / ||df_n||_2 against |n-k|,
/// one report per regime (k >= n and k < n).
std::vector<CheckReport> tk_martdiff_decay(
    const std::vector<CorpusInstance>& instances, const LevelRange& range,
    double slope_bound, std::vector<DecaySweep>* sweeps_out);

/// pseudo-localization decay against s on the adversarial family.
CheckReport pseudoloc_decay(const DyadicDomain& dom, int mat_dim,
                            const std::vector<int>& s_values, int seeds,
                            std::uint64_t base_seed, const LevelRange& range,
                            double slope_bound, DecaySweep* sweep_out);

/// with A_k = p_k the support join reproduces the excision complement.
CheckReport pseudoloc_zeta_identity(const CorpusInstance& ci,
                                    const CZBundle& bz, int s);

/// stability of sum_k ||T_k f||_2^2 / ||f||_2^2 under grid refinement.
CheckReport square_sum_stability(int d, int mat_dim, int coarse_K, int fine_K,
                                 const LevelRange& range, std::uint64_t seed,
                                 double rel_window);

/// joint (s, n-k) decay surface of ||M_k b_{n,s}||_1, both marginal slopes
/// reported, plus the reduction identity M_k b_{n,s} = M_{k,n+s} b_{n,s}.
std::vector<CheckReport> bad_off_decay_surface(const CorpusInstance& ci,
                                               const CZBundle& bz,
                                               const LevelRange& range,
                                               std::vector<DecaySweep>* sweeps);

// --- registry --------------------------------------------------------------

struct ClaimBinding {
  std::string claim;
  std::string check_id;
};
const std::vector<ClaimBinding>& claim_registry();
/// claims with no executed check among the given reports.
std::vector<std::string> missing_claims(
    const std::vector<CheckReport>& executed);

}  // namespace czlab::checks
