#pragma once

// Independent scalar reference implementation. Everything here works on
// plain std::vector<double> step functions over the periodic window and
// shares no code with the matrix pipeline; the dyadic indexing and the ball
// coverage are reimplemented from scratch. Used as the ground truth for the
// diagonal-embedding corpus.

#include <cstdint>
#include <vector>

namespace czlab::oracle {

struct ScalarField {
  int d = 1;  // 1 or 2
  int K = 6;  // depth
  std::vector<double> v;  // 2^{K d} values, row-major

  std::int64_t cells() const { return static_cast<std::int64_t>(v.size()); }
  double cell_vol() const { return 1.0 / static_cast<double>(v.size()); }
};

ScalarField cond_exp(const ScalarField& f, int k);
ScalarField ball_avg(const ScalarField& f, int k, int subsamples = 8);
ScalarField tk(const ScalarField& f, int k, int subsamples = 8);
ScalarField rk(const ScalarField& f, int k, int subsamples = 8);
ScalarField mkn(const ScalarField& f, int k, int n, int subsamples = 8);
ScalarField mart_diff(const ScalarField& f, int n);

/// sum_j signs[j] * tk(f, k_lo + j).
ScalarField rademacher_sum(const ScalarField& f, const std::vector<int>& signs,
                           int k_lo, int subsamples = 8);

double lp(const ScalarField& f, double p);
double distribution(const ScalarField& f, double lam);
double weak_l1(const ScalarField& f);

/// pointwise (sum_j seq_j(x)^2)^{1/2}
ScalarField sq_function(const std::vector<ScalarField>& seq);

/// classical dyadic BMO: sup over dyadic cubes of
/// sqrt(mean over Q of (f - mean_Q)^2)
double bmo(const ScalarField& f);

/// q_k(x) = 1 while f_j(x) <= lam for every j <= k; one field per level
/// 0..K. Classical stopping time of the dyadic martingale.
std::vector<ScalarField> stopping_chain(const ScalarField& f, double lam);

/// zeta(x) = 0 iff x lies in the 5-dilation of some stopping cube.
ScalarField zeta_indicator(const std::vector<ScalarField>& chain);

/// Hardy-Littlewood style maximal function over the dyadic ball family
/// k = k_lo..k_hi.
ScalarField maximal_ball(const ScalarField& f, int k_lo, int k_hi,
                         int subsamples = 8);

}  // namespace czlab::oracle
