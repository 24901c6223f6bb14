#include "czlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace czlab {

DyadicCube cube_of(const DyadicDomain& dom, std::int64_t cell, int k) {
  if (k < 0 || k > dom.depth)
    throw InvalidInput("cube_of: level out of range");
  auto c = dom.coords_of(cell);
  const int shift = dom.depth - k;
  return {k, {c[0] >> shift, c[1] >> shift}};
}

std::int64_t cube_index(const DyadicDomain& dom, const DyadicCube& q) {
  if (dom.dim == 1) return q.coords[0];
  return (static_cast<std::int64_t>(q.coords[1]) << q.level) + q.coords[0];
}

std::int64_t cube_count(const DyadicDomain& dom, int k) {
  return std::int64_t{1} << (dom.dim * k);
}

std::vector<std::int64_t> cells_of_cube(const DyadicDomain& dom,
                                        const DyadicCube& q) {
  const int span = 1 << (dom.depth - q.level);
  std::vector<std::int64_t> out;
  if (dom.dim == 1) {
    out.reserve(span);
    const int base = q.coords[0] * span;
    for (int i = 0; i < span; ++i) out.push_back(base + i);
    return out;
  }
  out.reserve(static_cast<std::size_t>(span) * span);
  const int bx = q.coords[0] * span, by = q.coords[1] * span;
  for (int y = 0; y < span; ++y)
    for (int x = 0; x < span; ++x)
      out.push_back(dom.cell_at({bx + x, by + y}));
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 2> cube_center(const DyadicDomain& dom,
                                  const DyadicCube& q) {
  (void)dom;
  const double s = q.side_len();
  return {(q.coords[0] + 0.5) * s, (q.coords[1] + 0.5) * s};
}

namespace {

// Circular (torus) distance between level-k coordinates.
int circ_dist(int a, int b, int cubes) {
  int d = std::abs(a - b) % cubes;
  return std::min(d, cubes - d);
}

}  // namespace

bool in_dilated(const DyadicDomain& dom, const DyadicCube& q, int i,
                std::int64_t cell) {
  if (i <= 0 || i % 2 == 0) throw InvalidInput("in_dilated: i must be odd");
  const int reach = (i - 1) / 2;
  const int cubes = 1 << q.level;
  const DyadicCube cq = cube_of(dom, cell, q.level);
  for (int a = 0; a < dom.dim; ++a) {
    if (dom.boundary == BoundaryMode::periodic) {
      if (circ_dist(cq.coords[a], q.coords[a], cubes) > reach) return false;
    } else {
      if (std::abs(cq.coords[a] - q.coords[a]) > reach) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> dilate_cells(const DyadicDomain& dom,
                                       const DyadicCube& q, int i) {
  if (i <= 0 || i % 2 == 0) throw InvalidInput("dilate_cells: i must be odd");
  std::vector<std::int64_t> out;
  for (std::int64_t cell = 0; cell < dom.cell_count(); ++cell)
    if (in_dilated(dom, q, i, cell)) out.push_back(cell);
  return out;
}

BallStencil make_ball_stencil(const DyadicDomain& dom, int k, int subsamples) {
  if (k < 0) throw InvalidInput("ball: negative level");
  if (k > dom.max_ball_level())
    throw ResolutionError("ball of radius 2^-" + std::to_string(k) +
                          " is below the resolution guard at depth " +
                          std::to_string(dom.depth));
  BallStencil st;
  st.k = k;
  const int R = 1 << (dom.depth - k);  // radius in cells

  if (dom.dim == 1) {
    // Ball endpoints sit on the half-integer lattice, so the two extreme
    // cells are always exactly half covered and everything between is full.
    st.entries.reserve(2 * R + 1);
    for (int o = -R; o <= R; ++o) {
      const bool end = (o == -R || o == R);
      st.entries.push_back({{o, 0}, end ? 0.5 : 1.0, end});
    }
    st.total_weight = 2.0 * R;
    return st;
  }

  const double cx = 0.5, cy = 0.5;  // disc center within the center cell
  const double rr = static_cast<double>(R) * R;
  double total = 0.0;
  for (int oy = -R; oy <= R; ++oy) {
    for (int ox = -R; ox <= R; ++ox) {
      // nearest point of the cell [ox,ox+1]x[oy,oy+1] to the center
      const double nx = std::clamp(cx, double(ox), double(ox + 1));
      const double ny = std::clamp(cy, double(oy), double(oy + 1));
      const double near2 = (nx - cx) * (nx - cx) + (ny - cy) * (ny - cy);
      if (near2 >= rr) continue;  // fully outside
      // farthest corner decides full coverage (the disc is convex)
      double far2 = 0.0;
      for (int uy = 0; uy <= 1; ++uy)
        for (int ux = 0; ux <= 1; ++ux) {
          const double dx = ox + ux - cx, dy = oy + uy - cy;
          far2 = std::max(far2, dx * dx + dy * dy);
        }
      if (far2 <= rr) {
        st.entries.push_back({{ox, oy}, 1.0, false});
        total += 1.0;
        continue;
      }
      // boundary cell: midpoint sampling on a subsamples^2 grid
      int inside = 0;
      for (int v = 0; v < subsamples; ++v)
        for (int u = 0; u < subsamples; ++u) {
          const double px = ox + (u + 0.5) / subsamples;
          const double py = oy + (v + 0.5) / subsamples;
          const double d2 = (px - cx) * (px - cx) + (py - cy) * (py - cy);
          if (d2 <= rr) ++inside;
        }
      if (inside == 0) continue;
      const double w = static_cast<double>(inside) / (subsamples * subsamples);
      st.entries.push_back({{ox, oy}, w, true});
      total += w;
    }
  }
  st.total_weight = total;
  return st;
}

namespace {

std::vector<WeightedCell> apply_stencil(const DyadicDomain& dom,
                                        const BallStencil& st,
                                        std::int64_t x) {
  const auto c = dom.coords_of(x);
  std::vector<WeightedCell> raw;
  raw.reserve(st.entries.size());
  for (const BallEntry& e : st.entries) {
    std::array<int, 2> t = {c[0] + e.offset[0], c[1] + e.offset[1]};
    std::int64_t cell;
    if (dom.boundary == BoundaryMode::periodic) {
      cell = dom.wrap_cell(t);
    } else {
      if (!dom.in_window(t)) continue;
      cell = dom.cell_at(t);
    }
    raw.push_back({cell, e.weight, e.fractional});
  }
  std::sort(raw.begin(), raw.end(),
            [](const WeightedCell& a, const WeightedCell& b) {
              return a.cell < b.cell;
            });
  // merge wrap images landing on the same cell
  std::vector<WeightedCell> out;
  out.reserve(raw.size());
  for (const WeightedCell& w : raw) {
    if (!out.empty() && out.back().cell == w.cell) {
      out.back().weight += w.weight;
      out.back().fractional = out.back().fractional || w.fractional;
    } else {
      out.push_back(w);
    }
  }
  return out;
}

}  // namespace

std::vector<WeightedCell> ball_cells(const DyadicDomain& dom, std::int64_t x,
                                     int k, int subsamples) {
  return apply_stencil(dom, make_ball_stencil(dom, k, subsamples), x);
}

std::vector<WeightedCell> boundary_cells(const DyadicDomain& dom,
                                         const BallStencil& st,
                                         std::int64_t x, int n) {
  if (n <= st.k) throw InvalidInput("boundary_cells: need n > k");
  if (n > dom.depth) throw InvalidInput("boundary_cells: n beyond depth");
  std::vector<WeightedCell> covered = apply_stencil(dom, st, x);
  const std::int64_t cube_sz = std::int64_t{1} << (dom.dim * (dom.depth - n));

  // classify each touched level-n cube: fully covered iff every one of its
  // cells is covered and none fractionally
  std::map<std::int64_t, std::pair<std::int64_t, bool>> cubes;  // count, frac
  for (const WeightedCell& w : covered) {
    auto& slot = cubes[cube_index(dom, cube_of(dom, w.cell, n))];
    slot.first += 1;
    slot.second = slot.second || w.fractional;
  }
  std::vector<WeightedCell> out;
  for (const WeightedCell& w : covered) {
    const auto& slot = cubes[cube_index(dom, cube_of(dom, w.cell, n))];
    const bool full = (slot.first == cube_sz) && !slot.second;
    if (!full) out.push_back(w);
  }
  return out;
}

std::vector<WeightedCell> boundary_cells(const DyadicDomain& dom,
                                         std::int64_t x, int k, int n,
                                         int subsamples) {
  return boundary_cells(dom, make_ball_stencil(dom, k, subsamples), x, n);
}

}  // namespace czlab
