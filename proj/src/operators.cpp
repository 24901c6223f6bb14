#include "czlab/operators.hpp"

#include <random>

#include "czlab/parallel.hpp"

namespace czlab {

OperatorField cond_exp(const OperatorField& f, int k) {
  if (k < 0 || k > f.level())
    throw InvalidInput("cond_exp: level must be in [0, level(f)]");
  if (k == f.level()) return f;
  const DyadicDomain& dom = f.domain();
  OperatorField out(dom, k, f.mat_dim());
  const int up = f.level() - k;
  const std::int64_t block = std::int64_t{1} << (dom.dim * up);
  const double inv = 1.0 / static_cast<double>(block);
  parallel_for(out.size(), [&](std::int64_t q) {
    Mat acc = Mat::Zero(f.mat_dim(), f.mat_dim());
    if (dom.dim == 1) {
      const std::int64_t base = q << up;
      for (std::int64_t j = 0; j < block; ++j) acc += f.value(base + j);
    } else {
      const int kside = 1 << k;
      const int qx = static_cast<int>(q % kside), qy = static_cast<int>(q / kside);
      const int span = 1 << up;
      const int fside = 1 << f.level();
      for (int y = 0; y < span; ++y)
        for (int x = 0; x < span; ++x)
          acc += f.value(static_cast<std::int64_t>(qy * span + y) * fside +
                         (qx * span + x));
    }
    out.value(q) = inv * acc;
  });
  return out;
}

OperatorField ball_avg(const OperatorField& f, int k, int subsamples) {
  const DyadicDomain& dom = f.domain();
  const BallStencil st = make_ball_stencil(dom, k, subsamples);
  const OperatorField ff = f.refined(dom.depth);
  OperatorField out(dom, dom.depth, f.mat_dim());
  const bool periodic = dom.boundary == BoundaryMode::periodic;
  parallel_for(out.size(), [&](std::int64_t x) {
    const auto c = dom.coords_of(x);
    Mat acc = Mat::Zero(f.mat_dim(), f.mat_dim());
    double w_used = 0.0;
    for (const BallEntry& e : st.entries) {
      std::array<int, 2> t = {c[0] + e.offset[0], c[1] + e.offset[1]};
      if (periodic) {
        acc += e.weight * ff.value(dom.wrap_cell(t));
        w_used += e.weight;
      } else if (dom.in_window(t)) {
        acc += e.weight * ff.value(dom.cell_at(t));
        w_used += e.weight;
      }
    }
    out.value(x) = (1.0 / w_used) * acc;
  });
  return out;
}

OperatorField tk(const OperatorField& f, int k, int subsamples) {
  return ball_avg(f, k, subsamples) - cond_exp(f, k);
}

OperatorField rk(const OperatorField& f, int k, int subsamples) {
  if (k < 1) throw InvalidInput("rk: need k >= 1");
  return ball_avg(f, k, subsamples) - ball_avg(f, k - 1, subsamples);
}

OperatorField mkn(const OperatorField& f, int k, int n, int subsamples) {
  const DyadicDomain& dom = f.domain();
  if (n <= k) throw InvalidInput("mkn: need n > k");
  if (n > dom.depth) throw InvalidInput("mkn: n beyond depth");
  const BallStencil st = make_ball_stencil(dom, k, subsamples);
  const OperatorField ff = f.refined(dom.depth);
  OperatorField out(dom, dom.depth, f.mat_dim());
  const double inv_ball = 1.0 / st.total_weight;
  parallel_for(out.size(), [&](std::int64_t x) {
    Mat acc = Mat::Zero(f.mat_dim(), f.mat_dim());
    for (const WeightedCell& w : boundary_cells(dom, st, x, n))
      acc += w.weight * ff.value(w.cell);
    out.value(x) = inv_ball * acc;
  });
  return out;
}

OperatorField mart_diff(const OperatorField& f, int n) {
  if (n < 1)
    throw InvalidInput("mart_diff: differences start at n = 1");
  if (n > f.level()) throw InvalidInput("mart_diff: n beyond field level");
  return cond_exp(f, n) - cond_exp(f, n - 1);
}

std::vector<SignPattern> omega_exhaustive(int m) {
  if (m < 0 || m > 20) throw InvalidInput("omega_exhaustive: bad m");
  std::vector<SignPattern> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint32_t idx = 0; idx < (std::uint32_t{1} << m); ++idx) {
    SignPattern p;
    p.provenance = SignPattern::Provenance::exhaustive_index;
    p.signs.resize(m);
    for (int b = 0; b < m; ++b) p.signs[b] = (idx >> b) & 1 ? -1 : 1;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SignPattern> omega_sampled(int m, int count, std::uint64_t seed) {
  if (m < 0 || count <= 0) throw InvalidInput("omega_sampled: bad arguments");
  std::mt19937_64 rng(seed);
  std::vector<SignPattern> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    SignPattern p;
    p.provenance = SignPattern::Provenance::seeded_sample;
    p.signs.resize(m);
    for (int b = 0; b < m; ++b) p.signs[b] = (rng() & 1) ? -1 : 1;
    out.push_back(std::move(p));
  }
  return out;
}

OperatorField rademacher_sum(const std::vector<OperatorField>& tks,
                             const SignPattern& eps) {
  if (tks.empty()) throw InvalidInput("rademacher_sum: empty family");
  if (eps.signs.size() != tks.size())
    throw InvalidInput("rademacher_sum: sign count does not match the range");
  OperatorField acc = static_cast<double>(eps.signs[0]) * tks[0];
  for (std::size_t j = 1; j < tks.size(); ++j)
    acc += static_cast<double>(eps.signs[j]) * tks[j];
  return acc;
}

OperatorField rademacher_T(const OperatorField& f, const SignPattern& eps,
                           const LevelRange& range, int subsamples) {
  return rademacher_sum(tk_family(f, range, subsamples), eps);
}

std::vector<OperatorField> tk_family(const OperatorField& f,
                                     const LevelRange& range, int subsamples) {
  if (range.hi > f.domain().max_ball_level())
    throw ResolutionError("tk_family: range exceeds the resolution guard");
  std::vector<OperatorField> out;
  out.reserve(static_cast<std::size_t>(range.size()));
  for (int k = range.lo; k <= range.hi; ++k)
    out.push_back(tk(f, k, subsamples));
  return out;
}

}  // namespace czlab
