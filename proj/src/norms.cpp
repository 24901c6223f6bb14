#include "czlab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "czlab/parallel.hpp"

namespace czlab {

double lp_norm(const OperatorField& f, double p) {
  if (p < 1.0) throw InvalidInput("lp_norm: p must be >= 1");
  std::vector<double> per_cell(static_cast<std::size_t>(f.size()));
  parallel_for(f.size(), [&](std::int64_t i) {
    RVec sv = singular_values(f.value(i));
    if (std::isinf(p)) {
      per_cell[static_cast<std::size_t>(i)] = sv.size() ? sv[0] : 0.0;
    } else {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < sv.size(); ++j) acc += std::pow(sv[j], p);
      per_cell[static_cast<std::size_t>(i)] = acc;
    }
  });
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : per_cell) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : per_cell) acc += v;
  return std::pow(f.cell_volume() * acc, 1.0 / p);
}

namespace {

// pooled (singular value, cell volume) pairs, descending by value
std::vector<std::pair<double, double>> pooled_values(const OperatorField& f) {
  const double vol = f.cell_volume();
  std::vector<std::vector<double>> per_cell(
      static_cast<std::size_t>(f.size()));
  parallel_for(f.size(), [&](std::int64_t i) {
    RVec sv = singular_values(f.value(i));
    auto& dst = per_cell[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < sv.size(); ++j)
      if (sv[j] > 0.0) dst.push_back(sv[j]);
  });
  std::vector<std::pair<double, double>> pool;
  for (const auto& cell : per_cell)
    for (double s : cell) pool.emplace_back(s, vol);
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  return pool;
}

}  // namespace

double distribution(const OperatorField& f, double lam) {
  double acc = 0.0;
  for (const auto& [s, v] : pooled_values(f))
    if (s > lam) acc += v;
  return acc;
}

SpectralDistribution spectral_distribution(const OperatorField& f) {
  SpectralDistribution d;
  auto pool = pooled_values(f);  // descending
  double cum = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    cum += pool[i].second;
    const bool last_of_tie =
        (i + 1 == pool.size()) || (pool[i + 1].first != pool[i].first);
    if (last_of_tie) {
      d.breakpoints.push_back(pool[i].first);
      d.weights.push_back(cum);
    }
  }
  std::reverse(d.breakpoints.begin(), d.breakpoints.end());
  std::reverse(d.weights.begin(), d.weights.end());
  return d;
}

double weak_l1(const OperatorField& f) {
  SpectralDistribution d = spectral_distribution(f);
  double best = 0.0;
  for (std::size_t i = 0; i < d.breakpoints.size(); ++i)
    best = std::max(best, d.breakpoints[i] * d.weights[i]);
  return best;
}

namespace {

// sum_k f_k(x)* f_k(x) (col) or f_k(x) f_k(x)* (row), per cell, at the
// finest level present in the sequence
OperatorField gram_sum(std::span<const OperatorField> seq, Side side) {
  if (seq.empty()) throw InvalidInput("square function: empty sequence");
  int lvl = 0;
  for (const auto& f : seq) {
    if (f.domain() != seq[0].domain() || f.mat_dim() != seq[0].mat_dim())
      throw InvalidInput("square function: shape mismatch");
    lvl = std::max(lvl, f.level());
  }
  OperatorField s(seq[0].domain(), lvl, seq[0].mat_dim());
  std::vector<OperatorField> fine;
  fine.reserve(seq.size());
  for (const auto& f : seq) fine.push_back(f.refined(lvl));
  parallel_for(s.size(), [&](std::int64_t i) {
    Mat acc = Mat::Zero(s.mat_dim(), s.mat_dim());
    for (const auto& f : fine) {
      const Mat& v = f.value(i);
      acc += side == Side::col ? Mat(v.adjoint() * v) : Mat(v * v.adjoint());
    }
    s.value(i) = (acc + acc.adjoint()) / 2.0;
  });
  return s;
}

}  // namespace

OperatorField sq_function(std::span<const OperatorField> seq, Side side) {
  OperatorField s = gram_sum(seq, side);
  parallel_for(s.size(),
               [&](std::int64_t i) { s.value(i) = herm_sqrt(s.value(i)); });
  return s;
}

double sq_norm(std::span<const OperatorField> seq, double p, Side side) {
  if (p < 1.0) throw InvalidInput("sq_norm: p must be >= 1");
  OperatorField s = gram_sum(seq, side);
  // tr S^{p/2} from the eigenvalues of S; avoids forming the matrix root
  std::vector<double> per_cell(static_cast<std::size_t>(s.size()));
  parallel_for(s.size(), [&](std::int64_t i) {
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.compute(s.value(i), Eigen::EigenvaluesOnly);
    double acc = 0.0;
    if (std::isinf(p)) {
      acc = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    } else {
      for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
        acc += std::pow(std::max(0.0, es.eigenvalues()[j]), p / 2.0);
    }
    per_cell[static_cast<std::size_t>(i)] = acc;
  });
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : per_cell) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : per_cell) acc += v;
  return std::pow(s.cell_volume() * acc, 1.0 / p);
}

double rc_weak_upper(std::span<const OperatorField> g_col,
                     std::span<const OperatorField> h_row) {
  if (g_col.empty() && h_row.empty())
    throw InvalidInput("rc_weak_upper: empty decomposition");
  double acc = 0.0;
  if (!g_col.empty()) acc += weak_l1(sq_function(g_col, Side::col));
  if (!h_row.empty()) acc += weak_l1(sq_function(h_row, Side::row));
  return acc;
}

namespace {

struct CubeStats {
  double value = 0.0;
};

double cube_oscillation(std::span<const OperatorField> fine,
                        const DyadicDomain& dom, const DyadicCube& q,
                        Side side, Frame frame, const CubeCenter& alpha) {
  const int n = fine[0].mat_dim();
  const int m = static_cast<int>(fine.size());
  const std::vector<std::int64_t> cells = cells_of_cube(dom, q);
  const double inv = 1.0 / static_cast<double>(cells.size());

  std::vector<Mat> centers(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    if (alpha) {
      centers[static_cast<std::size_t>(k)] = alpha(q, k);
    } else {
      Mat acc = Mat::Zero(n, n);
      for (std::int64_t c : cells) acc += fine[static_cast<std::size_t>(k)].value(c);
      centers[static_cast<std::size_t>(k)] = inv * acc;
    }
  }

  // which frame/side combination collapses to a plain sum of squares:
  // e_k1 + col and e_1k + row; the other two need the full Gram matrix
  const bool simple = (frame == Frame::e_k1 && side == Side::col) ||
                      (frame == Frame::e_1k && side == Side::row);
  const bool left_adjoint =
      simple ? (frame == Frame::e_k1)  // dev* dev for col, dev dev* for row
             : (frame == Frame::e_1k);

  if (simple) {
    Mat s = Mat::Zero(n, n);
    for (std::int64_t c : cells) {
      for (int k = 0; k < m; ++k) {
        Mat dev = fine[static_cast<std::size_t>(k)].value(c) -
                  centers[static_cast<std::size_t>(k)];
        s += left_adjoint ? Mat(dev.adjoint() * dev) : Mat(dev * dev.adjoint());
      }
    }
    s *= inv;
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.compute((s + s.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }

  Mat gram = Mat::Zero(static_cast<Eigen::Index>(m) * n,
                       static_cast<Eigen::Index>(m) * n);
  for (std::int64_t c : cells) {
    std::vector<Mat> dev(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
      dev[static_cast<std::size_t>(k)] =
          fine[static_cast<std::size_t>(k)].value(c) -
          centers[static_cast<std::size_t>(k)];
    for (int k1 = 0; k1 < m; ++k1)
      for (int k2 = 0; k2 < m; ++k2) {
        const Mat& a = dev[static_cast<std::size_t>(k1)];
        const Mat& b = dev[static_cast<std::size_t>(k2)];
        gram.block(k1 * n, k2 * n, n, n) +=
            left_adjoint ? Mat(a.adjoint() * b) : Mat(a * b.adjoint());
      }
  }
  gram *= inv;
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.compute((gram + gram.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

double bmo_d_over(std::span<const OperatorField> seq, Side side, Frame frame,
                  std::span<const DyadicCube> cubes, const CubeCenter& alpha) {
  if (seq.empty()) throw InvalidInput("bmo_d: empty sequence");
  const DyadicDomain& dom = seq[0].domain();
  std::vector<OperatorField> fine;
  fine.reserve(seq.size());
  for (const auto& f : seq) fine.push_back(f.refined(dom.depth));
  std::vector<double> vals(cubes.size());
  parallel_for(static_cast<std::int64_t>(cubes.size()), [&](std::int64_t i) {
    vals[static_cast<std::size_t>(i)] = cube_oscillation(
        fine, dom, cubes[static_cast<std::size_t>(i)], side, frame, alpha);
  });
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  return m;
}

double bmo_d(std::span<const OperatorField> seq, Side side, Frame frame) {
  if (seq.empty()) throw InvalidInput("bmo_d: empty sequence");
  const DyadicDomain& dom = seq[0].domain();
  std::vector<DyadicCube> cubes;
  for (int j = 0; j <= dom.depth; ++j) {
    const int cside = 1 << j;
    for (int y = 0; y < (dom.dim == 2 ? cside : 1); ++y)
      for (int x = 0; x < cside; ++x) cubes.push_back({j, {x, y}});
  }
  return bmo_d_over(seq, side, frame, cubes, nullptr);
}

}  // namespace czlab
