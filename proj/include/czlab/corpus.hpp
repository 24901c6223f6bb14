#pragma once

// Reproducible test-field generators. All families produce strictly positive
// definite fields normalized to ||f||_1 = 1 (a small multiple of the
// identity is folded in so the stopping recursion never meets a kernel);
// the adversarial family produces martingale differences with prescribed
// supports for the pseudo-localization sweeps.

#include <cstdint>
#include <string>
#include <vector>

#include "czlab/field.hpp"

namespace czlab {

struct CorpusInstance {
  OperatorField f;
  std::string family;
  std::uint64_t seed = 0;
  int index = 0;
  // diagonal family: the scalar components, for the oracle
  std::vector<std::vector<double>> scalar_components;
  // spike family bookkeeping
  double height = 0.0;
  double support_fraction = 0.0;
};

struct AdversarialInstance {
  OperatorField h;
  std::vector<OperatorField> dh;          // dh[j] at level j; index 0 empty
  std::vector<ProjectionField> a_fields;  // A_k at level k; index 0 empty
  int s = 1;
  std::uint64_t seed = 0;
};

CorpusInstance gen_smooth(const DyadicDomain& dom, int mat_dim,
                          std::uint64_t seed);
CorpusInstance gen_spike(const DyadicDomain& dom, int mat_dim,
                         std::uint64_t seed);
CorpusInstance gen_diagonal(const DyadicDomain& dom, int mat_dim,
                            std::uint64_t seed);
AdversarialInstance gen_adversarial(const DyadicDomain& dom, int mat_dim,
                                    int s, std::uint64_t seed);

/// family is "smooth", "spike" or "diagonal".
std::vector<CorpusInstance> gen_family(const std::string& family,
                                       const DyadicDomain& dom, int mat_dim,
                                       int count, std::uint64_t base_seed);

/// Random Hermitian matrix with unit-scale Gaussian entries.
Mat random_hermitian(int n, std::uint64_t seed);
/// Random rank-r orthogonal projection.
Mat random_projection(int n, int rank, std::uint64_t seed);

}  // namespace czlab
