#pragma once

// Dyadic geometry of the finite window [0,1)^d at resolution 2^-K:
// cubes, dilations, balls and the boundary cube sets that the averaging
// operators integrate over. d is 1 or 2; the finest cells are indexed
// row-major. Levels run 0 (one cube) .. K (single cells).

#include <array>
#include <cstdint>
#include <vector>

#include "czlab/common.hpp"

namespace czlab {

enum class BoundaryMode { periodic, interior };

/// Balls must span at least 4 cells per axis: operators touching the ball
/// average require k <= K - kResolutionGuard.
inline constexpr int kResolutionGuard = 2;

struct DyadicDomain {
  int dim = 1;   // 1 or 2
  int depth = 6; // K
  BoundaryMode boundary = BoundaryMode::periodic;

  int side() const { return 1 << depth; }
  std::int64_t cell_count() const {
    return std::int64_t{1} << (dim * depth);
  }
  double cell_volume() const { return 1.0 / static_cast<double>(cell_count()); }
  int max_ball_level() const { return depth - kResolutionGuard; }

  std::array<int, 2> coords_of(std::int64_t cell) const {
    if (dim == 1) return {static_cast<int>(cell), 0};
    return {static_cast<int>(cell % side()), static_cast<int>(cell / side())};
  }
  std::int64_t cell_at(std::array<int, 2> c) const {
    if (dim == 1) return c[0];
    return static_cast<std::int64_t>(c[1]) * side() + c[0];
  }
  std::int64_t wrap_cell(std::array<int, 2> c) const {
    const int s = side();
    c[0] = ((c[0] % s) + s) % s;
    c[1] = dim == 2 ? ((c[1] % s) + s) % s : 0;
    return cell_at(c);
  }
  bool in_window(std::array<int, 2> c) const {
    if (c[0] < 0 || c[0] >= side()) return false;
    if (dim == 2 && (c[1] < 0 || c[1] >= side())) return false;
    return true;
  }

  bool operator==(const DyadicDomain&) const = default;
};

struct DyadicCube {
  int level = 0;
  std::array<int, 2> coords = {0, 0};

  double side_len() const { return 1.0 / static_cast<double>(1 << level); }
  double volume(int dim) const {
    double s = side_len();
    return dim == 1 ? s : s * s;
  }
};

/// The unique level-k cube containing a finest-level cell.
DyadicCube cube_of(const DyadicDomain& dom, std::int64_t cell, int k);
/// Index of a cube among the 2^{k d} cubes of its level.
std::int64_t cube_index(const DyadicDomain& dom, const DyadicCube& q);
/// Number of cubes at level k.
std::int64_t cube_count(const DyadicDomain& dom, int k);
/// Finest-level cells of a cube, in ascending index order.
std::vector<std::int64_t> cells_of_cube(const DyadicDomain& dom,
                                        const DyadicCube& q);
/// Center of a cube in window coordinates.
std::array<double, 2> cube_center(const DyadicDomain& dom,
                                  const DyadicCube& q);

/// Does the finest-level cell lie in the concentric dilation iQ (i odd)?
bool in_dilated(const DyadicDomain& dom, const DyadicCube& q, int i,
                std::int64_t cell);
/// All finest-level cells of iQ, ascending. Wraps or clips per boundary mode.
std::vector<std::int64_t> dilate_cells(const DyadicDomain& dom,
                                       const DyadicCube& q, int i);

// --- balls -----------------------------------------------------------------

/// One covered cell of a ball, as an offset from the center cell.
/// `fractional` marks cells the ball boundary passes through.
struct BallEntry {
  std::array<int, 2> offset;
  double weight;  // coverage of the cell, in cell volumes
  bool fractional;
};

/// Coverage stencil of the ball of radius 2^-k centered at a cell center.
/// Offsets are unwrapped; appliers wrap (periodic) or clip (interior).
/// d = 1 weights are exact; d = 2 weights of boundary cells use subsample^2
/// midpoint sampling, interior/exterior cells are classified exactly.
struct BallStencil {
  int k = 0;
  double total_weight = 0.0;  // |B_k| in cell volumes (before any clipping)
  std::vector<BallEntry> entries;
};

BallStencil make_ball_stencil(const DyadicDomain& dom, int k,
                              int subsamples = 8);

/// Materialized weighted cell set of the ball around cell x (after wrap or
/// clip), merged per cell, ascending cell order.
struct WeightedCell {
  std::int64_t cell;
  double weight;
  bool fractional;
};
std::vector<WeightedCell> ball_cells(const DyadicDomain& dom, std::int64_t x,
                                     int k, int subsamples = 8);

/// Cells of the boundary region I(B_k + x, n): cells of level-n cubes that
/// the ball covers only partially, clipped to the ball (ball weights kept).
std::vector<WeightedCell> boundary_cells(const DyadicDomain& dom,
                                         std::int64_t x, int k, int n,
                                         int subsamples = 8);

/// Same as boundary_cells but from a prebuilt stencil (hot path).
std::vector<WeightedCell> boundary_cells(const DyadicDomain& dom,
                                         const BallStencil& st,
                                         std::int64_t x, int n);

}  // namespace czlab
