#pragma once

#include "symvol/common.hpp"

namespace symvol {

/// Sign of the orientation of the triangle (a, b, c): +1 for a left turn
/// (counterclockwise), -1 for a right turn, 0 for exactly collinear points.
/// A floating-point filter decides the overwhelming majority of calls; near
/// the decision boundary the determinant is re-evaluated in exact rational
/// arithmetic, so the sign is always correct. Antipodal point sets hit the
/// exact path routinely (their coordinate sums cancel to zero).
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// Sign of det[b-a, c-a, d-a]: +1 when d lies on the positive side of the
/// oriented plane (a, b, c), 0 when exactly coplanar. Same filter + exact
/// fallback scheme as orient2d.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// True when a, b, c are exactly collinear in 3-D (all three 2x2 minors of
/// the cross product vanish).
bool collinear3d(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace symvol
