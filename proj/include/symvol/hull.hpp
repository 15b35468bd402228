#pragma once

#include "symvol/common.hpp"

#include <span>
#include <vector>

namespace symvol {

/// Area of the convex hull of a planar point set. Degenerate input
/// (fewer than 3 points, collinear points, duplicates) yields 0. The hull is
/// built by a monotone chain with exact-sign orientation tests; the area is
/// then accumulated in double precision.
double hull_volume_2d(std::span<const Vec2> points);

/// Volume of the convex hull of a spatial point set; 0 for affinely
/// dependent input. Incremental construction with exact-sign orientation
/// tests, so antipodal point sets (which are full of exactly coplanar
/// quadruples) never produce inconsistent facets.
double hull_volume_3d(std::span<const Vec3> points);

/// vol(conv{±x_1, ..., ±x_N}).
double symmetric_hull_volume_2d(std::span<const Vec2> points);
double symmetric_hull_volume_3d(std::span<const Vec3> points);

/// Reusable scratch space for the allocation-free hull kernels used in the
/// Monte Carlo inner loop.
struct HullWorkspace {
  std::vector<Vec2> pts2;
  std::vector<Vec3> pts3;
  std::vector<int> hull_idx;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<int, 3>> new_faces;
  std::vector<char> visible;
};

/// In-place hull area over ws.pts2 (the buffer is reordered).
double hull_area_2d_ws(HullWorkspace& ws);

/// Volume of conv{±x : x in ws.pts3}; assumes the points are the half set.
/// Falls back to the generic incremental hull when the first three points
/// are linearly dependent.
double symmetric_hull_volume_3d_ws(HullWorkspace& ws);

}  // namespace symvol
