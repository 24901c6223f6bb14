#include "czlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace czlab::oracle {

namespace {

int side_of(const ScalarField& f) { return 1 << f.K; }

std::int64_t wrap(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

double& at(ScalarField& f, int x, int y) {
  return f.v[static_cast<std::size_t>(
      f.d == 1 ? x : static_cast<std::int64_t>(y) * side_of(f) + x)];
}
double get(const ScalarField& f, std::int64_t x, std::int64_t y) {
  const int s = side_of(f);
  return f.v[static_cast<std::size_t>(
      f.d == 1 ? wrap(x, s) : wrap(y, s) * s + wrap(x, s))];
}

void check_level(const ScalarField& f, int k) {
  if (k < 0 || k > f.K) throw std::invalid_argument("oracle: bad level");
}

}  // namespace

ScalarField cond_exp(const ScalarField& f, int k) {
  check_level(f, k);
  ScalarField out = f;
  const int span = 1 << (f.K - k);
  const int s = side_of(f);
  if (f.d == 1) {
    for (int b = 0; b < s; b += span) {
      double acc = 0.0;
      for (int j = 0; j < span; ++j) acc += f.v[static_cast<std::size_t>(b + j)];
      acc /= span;
      for (int j = 0; j < span; ++j) out.v[static_cast<std::size_t>(b + j)] = acc;
    }
    return out;
  }
  for (int by = 0; by < s; by += span)
    for (int bx = 0; bx < s; bx += span) {
      double acc = 0.0;
      for (int y = 0; y < span; ++y)
        for (int x = 0; x < span; ++x) acc += get(f, bx + x, by + y);
      acc /= static_cast<double>(span) * span;
      for (int y = 0; y < span; ++y)
        for (int x = 0; x < span; ++x) at(out, bx + x, by + y) = acc;
    }
  return out;
}

namespace {

// coverage weights of the ball of radius 2^{K-k} cells, relative offsets;
// weights in cell areas, paired with a flag marking boundary cells
struct Cover {
  std::vector<std::array<std::int64_t, 2>> off;
  std::vector<double> w;
  std::vector<bool> frac;
  double total = 0.0;
};

Cover ball_cover(const ScalarField& f, int k, int subsamples) {
  if (k < 0 || k > f.K - 2)
    throw std::invalid_argument("oracle: ball level out of range");
  Cover c;
  const std::int64_t R = std::int64_t{1} << (f.K - k);
  if (f.d == 1) {
    for (std::int64_t o = -R; o <= R; ++o) {
      const bool end = (o == -R || o == R);
      c.off.push_back({o, 0});
      c.w.push_back(end ? 0.5 : 1.0);
      c.frac.push_back(end);
      c.total += end ? 0.5 : 1.0;
    }
    return c;
  }
  const double rr = static_cast<double>(R) * R;
  for (std::int64_t oy = -R; oy <= R; ++oy)
    for (std::int64_t ox = -R; ox <= R; ++ox) {
      const double nx = std::clamp(0.5, double(ox), double(ox + 1));
      const double ny = std::clamp(0.5, double(oy), double(oy + 1));
      const double near2 = (nx - 0.5) * (nx - 0.5) + (ny - 0.5) * (ny - 0.5);
      if (near2 >= rr) continue;
      double far2 = 0.0;
      for (int uy = 0; uy <= 1; ++uy)
        for (int ux = 0; ux <= 1; ++ux) {
          const double dx = double(ox + ux) - 0.5, dy = double(oy + uy) - 0.5;
          far2 = std::max(far2, dx * dx + dy * dy);
        }
      if (far2 <= rr) {
        c.off.push_back({ox, oy});
        c.w.push_back(1.0);
        c.frac.push_back(false);
        c.total += 1.0;
        continue;
      }
      int inside = 0;
      for (int v = 0; v < subsamples; ++v)
        for (int u = 0; u < subsamples; ++u) {
          const double px = double(ox) + (u + 0.5) / subsamples - 0.5;
          const double py = double(oy) + (v + 0.5) / subsamples - 0.5;
          if (px * px + py * py <= rr) ++inside;
        }
      if (!inside) continue;
      const double w = double(inside) / (subsamples * subsamples);
      c.off.push_back({ox, oy});
      c.w.push_back(w);
      c.frac.push_back(true);
      c.total += w;
    }
  return c;
}

}  // namespace

ScalarField ball_avg(const ScalarField& f, int k, int subsamples) {
  const Cover c = ball_cover(f, k, subsamples);
  ScalarField out = f;
  const int s = side_of(f);
  for (int y = 0; y < (f.d == 2 ? s : 1); ++y)
    for (int x = 0; x < s; ++x) {
      double acc = 0.0;
      for (std::size_t e = 0; e < c.w.size(); ++e)
        acc += c.w[e] * get(f, x + c.off[e][0], y + c.off[e][1]);
      at(out, x, y) = acc / c.total;
    }
  return out;
}

ScalarField tk(const ScalarField& f, int k, int subsamples) {
  ScalarField m = ball_avg(f, k, subsamples), e = cond_exp(f, k);
  for (std::size_t i = 0; i < m.v.size(); ++i) m.v[i] -= e.v[i];
  return m;
}

ScalarField rk(const ScalarField& f, int k, int subsamples) {
  if (k < 1) throw std::invalid_argument("oracle: rk needs k >= 1");
  ScalarField a = ball_avg(f, k, subsamples), b = ball_avg(f, k - 1, subsamples);
  for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
  return a;
}

ScalarField mkn(const ScalarField& f, int k, int n, int subsamples) {
  if (n <= k || n > f.K) throw std::invalid_argument("oracle: mkn needs k < n <= K");
  const Cover c = ball_cover(f, k, subsamples);
  ScalarField out = f;
  const int s = side_of(f);
  const std::int64_t span = std::int64_t{1} << (f.K - n);
  const std::int64_t cube_sz = f.d == 1 ? span : span * span;
  for (int y = 0; y < (f.d == 2 ? s : 1); ++y)
    for (int x = 0; x < s; ++x) {
      // classify the level-n cubes the ball touches around this center
      std::vector<std::array<std::int64_t, 3>> tagged;  // cube id, count, frac
      auto cube_id = [&](std::size_t e) {
        const std::int64_t cx = wrap(x + c.off[e][0], s) / span;
        const std::int64_t cy =
            f.d == 2 ? wrap(y + c.off[e][1], s) / span : 0;
        return cy * (s / span) + cx;
      };
      std::vector<std::int64_t> ids(c.w.size());
      for (std::size_t e = 0; e < c.w.size(); ++e) ids[e] = cube_id(e);
      // count distinct covered cells per cube (wrap images can repeat cells)
      std::vector<std::pair<std::int64_t, std::size_t>> cell_entry;
      for (std::size_t e = 0; e < c.w.size(); ++e) {
        const std::int64_t cx = wrap(x + c.off[e][0], s);
        const std::int64_t cy = f.d == 2 ? wrap(y + c.off[e][1], s) : 0;
        cell_entry.emplace_back(cy * s + cx, e);
      }
      std::sort(cell_entry.begin(), cell_entry.end());
      double acc = 0.0;
      // walk merged cells, accumulate per-cube stats then sum partial cubes
      std::vector<std::int64_t> count_per(std::size_t(1) << (f.d * n), 0);
      std::vector<char> frac_per(std::size_t(1) << (f.d * n), 0);
      std::vector<double> wsum_per(std::size_t(1) << (f.d * n), 0.0);
      std::vector<double> val_per(std::size_t(1) << (f.d * n), 0.0);
      std::int64_t prev_cell = -1;
      for (const auto& [cell, e] : cell_entry) {
        const std::int64_t id = ids[e];
        if (cell != prev_cell) {
          count_per[static_cast<std::size_t>(id)] += 1;
          prev_cell = cell;
        }
        if (c.frac[e]) frac_per[static_cast<std::size_t>(id)] = 1;
        wsum_per[static_cast<std::size_t>(id)] += c.w[e];
        val_per[static_cast<std::size_t>(id)] +=
            c.w[e] * f.v[static_cast<std::size_t>(cell)];
      }
      for (std::size_t id = 0; id < count_per.size(); ++id) {
        if (count_per[id] == 0) continue;
        const bool full = (count_per[id] == cube_sz) && !frac_per[id];
        if (!full) acc += val_per[id];
      }
      at(out, x, y) = acc / c.total;
    }
  return out;
}

ScalarField mart_diff(const ScalarField& f, int n) {
  if (n < 1) throw std::invalid_argument("oracle: mart_diff needs n >= 1");
  ScalarField a = cond_exp(f, n), b = cond_exp(f, n - 1);
  for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
  return a;
}

ScalarField rademacher_sum(const ScalarField& f, const std::vector<int>& signs,
                           int k_lo, int subsamples) {
  ScalarField acc = f;
  std::fill(acc.v.begin(), acc.v.end(), 0.0);
  for (std::size_t j = 0; j < signs.size(); ++j) {
    ScalarField t = tk(f, k_lo + static_cast<int>(j), subsamples);
    for (std::size_t i = 0; i < acc.v.size(); ++i)
      acc.v[i] += signs[j] * t.v[i];
  }
  return acc;
}

double lp(const ScalarField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("oracle: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (double x : f.v) acc += std::pow(std::abs(x), p);
  return std::pow(acc * f.cell_vol(), 1.0 / p);
}

double distribution(const ScalarField& f, double lam) {
  double acc = 0.0;
  for (double x : f.v)
    if (std::abs(x) > lam) acc += f.cell_vol();
  return acc;
}

double weak_l1(const ScalarField& f) {
  std::vector<double> mags;
  mags.reserve(f.v.size());
  for (double x : f.v)
    if (std::abs(x) > 0) mags.push_back(std::abs(x));
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double best = 0.0, cum = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    cum += f.cell_vol();
    if (i + 1 == mags.size() || mags[i + 1] != mags[i])
      best = std::max(best, mags[i] * cum);
  }
  return best;
}

ScalarField sq_function(const std::vector<ScalarField>& seq) {
  if (seq.empty()) throw std::invalid_argument("oracle: empty sequence");
  ScalarField out = seq[0];
  std::fill(out.v.begin(), out.v.end(), 0.0);
  for (const auto& f : seq)
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += f.v[i] * f.v[i];
  for (double& x : out.v) x = std::sqrt(x);
  return out;
}

double bmo(const ScalarField& f) {
  double best = 0.0;
  const int s = side_of(f);
  for (int k = 0; k <= f.K; ++k) {
    const int span = 1 << (f.K - k);
    for (int by = 0; by < (f.d == 2 ? s : 1); by += (f.d == 2 ? span : 1))
      for (int bx = 0; bx < s; bx += span) {
        double mean = 0.0;
        const double cnt =
            f.d == 1 ? span : static_cast<double>(span) * span;
        for (int y = 0; y < (f.d == 2 ? span : 1); ++y)
          for (int x = 0; x < span; ++x) mean += get(f, bx + x, by + y);
        mean /= cnt;
        double var = 0.0;
        for (int y = 0; y < (f.d == 2 ? span : 1); ++y)
          for (int x = 0; x < span; ++x) {
            const double dvv = get(f, bx + x, by + y) - mean;
            var += dvv * dvv;
          }
        best = std::max(best, std::sqrt(var / cnt));
      }
  }
  return best;
}

std::vector<ScalarField> stopping_chain(const ScalarField& f, double lam) {
  std::vector<ScalarField> chain;
  ScalarField q = f;
  std::fill(q.v.begin(), q.v.end(), 1.0);
  chain.push_back(q);
  for (int k = 1; k <= f.K; ++k) {
    const ScalarField fk = cond_exp(f, k);
    ScalarField qk = chain.back();
    for (std::size_t i = 0; i < qk.v.size(); ++i)
      if (fk.v[i] > lam) qk.v[i] = 0.0;
    chain.push_back(std::move(qk));
  }
  return chain;
}

ScalarField zeta_indicator(const std::vector<ScalarField>& chain) {
  const ScalarField& base = chain.front();
  ScalarField zeta = base;
  std::fill(zeta.v.begin(), zeta.v.end(), 1.0);
  const int s = side_of(base);
  const int K = base.K;
  for (int k = 1; k < static_cast<int>(chain.size()); ++k) {
    const int span = 1 << (K - k);
    const int cubes = 1 << k;
    for (int cy = 0; cy < (base.d == 2 ? cubes : 1); ++cy)
      for (int cx = 0; cx < cubes; ++cx) {
        // stopping cube: survived at k-1, dead at k
        const int sx = cx * span, sy = base.d == 2 ? cy * span : 0;
        const std::size_t cell = static_cast<std::size_t>(
            base.d == 1 ? sx : static_cast<std::int64_t>(sy) * s + sx);
        if (!(chain[static_cast<std::size_t>(k - 1)].v[cell] > 0.5 &&
              chain[static_cast<std::size_t>(k)].v[cell] < 0.5))
          continue;
        for (int dy = (base.d == 2 ? -2 : 0); dy <= (base.d == 2 ? 2 : 0); ++dy)
          for (int dx = -2; dx <= 2; ++dx) {
            const std::int64_t nx = wrap(cx + dx, cubes);
            const std::int64_t ny = base.d == 2 ? wrap(cy + dy, cubes) : 0;
            for (int y = 0; y < (base.d == 2 ? span : 1); ++y)
              for (int x = 0; x < span; ++x) {
                const std::int64_t fx = nx * span + x;
                const std::int64_t fy = base.d == 2 ? ny * span + y : 0;
                zeta.v[static_cast<std::size_t>(fy * (base.d == 2 ? s : 1) +
                                                fx)] = 0.0;
              }
          }
      }
  }
  return zeta;
}

ScalarField maximal_ball(const ScalarField& f, int k_lo, int k_hi,
                         int subsamples) {
  ScalarField absf = f;
  for (double& x : absf.v) x = std::abs(x);
  ScalarField out = f;
  std::fill(out.v.begin(), out.v.end(), 0.0);
  for (int k = k_lo; k <= k_hi; ++k) {
    ScalarField m = ball_avg(absf, k, subsamples);
    for (std::size_t i = 0; i < out.v.size(); ++i)
      out.v[i] = std::max(out.v[i], m.v[i]);
  }
  return out;
}

}  // namespace czlab::oracle
