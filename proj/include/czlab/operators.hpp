#pragma once

// The linear operators acting on operator fields: dyadic conditional
// expectations E_k, ball averages M_k, the differences T_k = M_k - E_k and
// R_k = M_k - M_{k-1}, the boundary averages M_{k,n}, martingale differences
// and Rademacher-linearized sums over a level range.

#include <cstdint>
#include <vector>

#include "czlab/field.hpp"

namespace czlab {

struct LevelRange {
  int lo = 0;
  int hi = 0;
  LevelRange() = default;
  LevelRange(int l, int h) : lo(l), hi(h) {
    if (l < 0 || h < l) throw InvalidInput("LevelRange: need 0 <= lo <= hi");
  }
  int size() const { return hi - lo + 1; }
  bool contains(int k) const { return k >= lo && k <= hi; }
};

/// E_k f: field constant on level-k cubes, value = mean over the cube.
OperatorField cond_exp(const OperatorField& f, int k);

/// M_k f: ball average of radius 2^-k around each cell center.
OperatorField ball_avg(const OperatorField& f, int k, int subsamples = 8);

/// T_k f = (M_k - E_k) f.
OperatorField tk(const OperatorField& f, int k, int subsamples = 8);

/// R_k f = (M_k - M_{k-1}) f, k >= 1.
OperatorField rk(const OperatorField& f, int k, int subsamples = 8);

/// M_{k,n} f: average of f restricted to the boundary region I(B_k + x, n),
/// still normalized by |B_k|. Requires k < n <= K.
OperatorField mkn(const OperatorField& f, int k, int n, int subsamples = 8);

/// df_n = E_n f - E_{n-1} f, n >= 1, stored at level n.
OperatorField mart_diff(const OperatorField& f, int n);

struct SignPattern {
  enum class Provenance { exhaustive_index, seeded_sample };
  std::vector<int> signs;  // +-1, indexed by k - range.lo
  Provenance provenance = Provenance::exhaustive_index;
};

/// All 2^m sign patterns (m <= 20 guard).
std::vector<SignPattern> omega_exhaustive(int m);
/// `count` seeded random patterns.
std::vector<SignPattern> omega_sampled(int m, int count, std::uint64_t seed);

/// sum over k in range of eps_k T_k f, from precomputed T_k fields
/// (tks[j] = T_{range.lo + j} f).
OperatorField rademacher_sum(const std::vector<OperatorField>& tks,
                             const SignPattern& eps);

/// Convenience: computes the T_k fields and sums them with the signs.
OperatorField rademacher_T(const OperatorField& f, const SignPattern& eps,
                           const LevelRange& range, int subsamples = 8);

/// T_k f for every k in the range (shared by the Omega sweeps).
std::vector<OperatorField> tk_family(const OperatorField& f,
                                     const LevelRange& range,
                                     int subsamples = 8);

}  // namespace czlab
