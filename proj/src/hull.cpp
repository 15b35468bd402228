#include "symvol/hull.hpp"

#include "symvol/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace symvol {
namespace {

bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

void sort_points(std::vector<Vec2>& p) {
  // Insertion sort beats std::sort for the tiny point counts the Monte
  // Carlo loop feeds through here.
  if (p.size() <= 32) {
    for (std::size_t i = 1; i < p.size(); ++i) {
      Vec2 key = p[i];
      std::size_t j = i;
      while (j > 0 && lex_less(key, p[j - 1])) {
        p[j] = p[j - 1];
        --j;
      }
      p[j] = key;
    }
  } else {
    std::sort(p.begin(), p.end(), lex_less);
  }
}

}  // namespace

double hull_area_2d_ws(HullWorkspace& ws) {
  auto& p = ws.pts2;
  if (p.size() < 3) return 0.0;
  sort_points(p);
  p.erase(std::unique(p.begin(), p.end(),
                      [](const Vec2& a, const Vec2& b) { return a.x() == b.x() && a.y() == b.y(); }),
          p.end());
  const int n = static_cast<int>(p.size());
  if (n < 3) return 0.0;

  auto& h = ws.hull_idx;
  h.resize(2 * n + 1);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && orient2d(p[h[k - 2]], p[h[k - 1]], p[i]) <= 0) --k;
    h[k++] = i;
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && orient2d(p[h[k - 2]], p[h[k - 1]], p[i]) <= 0) --k;
    h[k++] = i;
  }
  // h[0..k) is the closed counterclockwise hull cycle, h[k-1] == h[0].
  if (k - 1 < 3) return 0.0;
  double twice_area = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    const Vec2& a = p[h[i]];
    const Vec2& b = p[h[i + 1]];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice_area);
}

double hull_volume_2d(std::span<const Vec2> points) {
  HullWorkspace ws;
  ws.pts2.assign(points.begin(), points.end());
  return hull_area_2d_ws(ws);
}

double symmetric_hull_volume_2d(std::span<const Vec2> points) {
  HullWorkspace ws;
  ws.pts2.reserve(2 * points.size());
  for (const Vec2& x : points) ws.pts2.push_back(x);
  for (const Vec2& x : points) ws.pts2.push_back(-x);
  return hull_area_2d_ws(ws);
}

namespace {

using Face = std::array<int, 3>;

// Incremental hull over an abstract indexed point set. PointFn maps an index
// to a Vec3. Faces are oriented with outward normals: a point q is strictly
// outside face (a, b, c) iff orient3d(a, b, c, q) > 0. Deleting only
// strictly visible faces keeps the face set a valid boundary cover even when
// inserted points are exactly coplanar with retained faces, which happens
// systematically for antipodal inputs.
template <typename PointFn>
void insert_point(std::vector<Face>& faces, std::vector<Face>& scratch, std::vector<char>& visible,
                  PointFn&& pt, int qi) {
  const Vec3 q = pt(qi);
  visible.assign(faces.size(), 0);
  int num_visible = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (orient3d(pt(faces[f][0]), pt(faces[f][1]), pt(faces[f][2]), q) > 0) {
      visible[f] = 1;
      ++num_visible;
    }
  }
  if (num_visible == 0) return;  // inside or on the boundary

  scratch.clear();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!visible[f]) continue;
    for (int e = 0; e < 3; ++e) {
      const int u = faces[f][e];
      const int v = faces[f][(e + 1) % 3];
      // (u, v) is a horizon edge iff the neighboring face, which contains
      // the reversed edge (v, u), is not visible.
      bool reversed_visible = false;
      for (std::size_t g = 0; g < faces.size() && !reversed_visible; ++g) {
        if (!visible[g]) continue;
        for (int e2 = 0; e2 < 3; ++e2) {
          if (faces[g][e2] == v && faces[g][(e2 + 1) % 3] == u) {
            reversed_visible = true;
            break;
          }
        }
      }
      if (!reversed_visible) scratch.push_back({u, v, qi});
    }
  }

  std::size_t keep = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!visible[f]) faces[keep++] = faces[f];
  }
  faces.resize(keep);
  faces.insert(faces.end(), scratch.begin(), scratch.end());
}

template <typename PointFn>
double volume_from_faces(const std::vector<Face>& faces, PointFn&& pt, const Vec3& origin) {
  double six_vol = 0.0;
  for (const Face& f : faces) {
    Vec3 a = pt(f[0]) - origin;
    Vec3 b = pt(f[1]) - origin;
    Vec3 c = pt(f[2]) - origin;
    six_vol += a.dot(b.cross(c));
  }
  return std::abs(six_vol) / 6.0;
}

}  // namespace

double hull_volume_3d(std::span<const Vec3> points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) return 0.0;
  auto pt = [&](int i) { return points[i]; };

  // Initial simplex: first four affinely independent points.
  int i0 = 0;
  int i1 = -1;
  for (int j = 1; j < n && i1 < 0; ++j) {
    if (points[j].x() != points[i0].x() || points[j].y() != points[i0].y() ||
        points[j].z() != points[i0].z()) {
      i1 = j;
    }
  }
  if (i1 < 0) return 0.0;
  int i2 = -1;
  for (int j = i1 + 1; j < n && i2 < 0; ++j) {
    if (!collinear3d(points[i0], points[i1], points[j])) i2 = j;
  }
  if (i2 < 0) return 0.0;
  int i3 = -1;
  int s = 0;
  for (int j = i2 + 1; j < n && i3 < 0; ++j) {
    s = orient3d(points[i0], points[i1], points[i2], points[j]);
    if (s != 0) i3 = j;
  }
  if (i3 < 0) return 0.0;
  if (s > 0) std::swap(i1, i2);

  HullWorkspace ws;
  ws.faces = {{i0, i1, i2}, {i0, i3, i1}, {i1, i3, i2}, {i2, i3, i0}};
  for (int j = 1; j < n; ++j) {
    if (j == i1 || j == i2 || j == i3) continue;
    insert_point(ws.faces, ws.new_faces, ws.visible, pt, j);
  }
  return volume_from_faces(ws.faces, pt, points[i0]);
}

double symmetric_hull_volume_3d_ws(HullWorkspace& ws) {
  const int n = static_cast<int>(ws.pts3.size());
  if (n < 3) return 0.0;
  const auto& x = ws.pts3;
  auto pt = [&](int i) -> Vec3 { return i < n ? x[i] : -x[i - n]; };

  // det[x0; x1; x2]; nonzero means conv{±x0, ±x1, ±x2} is an octahedron
  // with the origin strictly inside.
  const int s = orient3d(Vec3::Zero(), x[0], x[1], x[2]);
  if (s == 0) {
    // Degenerate base; hand the doubled point set to the generic hull.
    std::vector<Vec3> all;
    all.reserve(2 * n);
    for (int i = 0; i < 2 * n; ++i) all.push_back(pt(i));
    return hull_volume_3d(all);
  }

  ws.faces.clear();
  for (int mask = 0; mask < 8; ++mask) {
    Face f;
    int sign_product = 1;
    for (int k = 0; k < 3; ++k) {
      const bool negative = mask & (1 << k);
      f[k] = negative ? k + n : k;
      if (negative) sign_product = -sign_product;
    }
    if (sign_product * s < 0) std::swap(f[1], f[2]);
    ws.faces.push_back(f);
  }
  for (int k = 3; k < n; ++k) {
    insert_point(ws.faces, ws.new_faces, ws.visible, pt, k);
    insert_point(ws.faces, ws.new_faces, ws.visible, pt, k + n);
  }

  double six_vol = 0.0;
  for (const Face& f : ws.faces) six_vol += pt(f[0]).dot(pt(f[1]).cross(pt(f[2])));
  return std::abs(six_vol) / 6.0;
}

double symmetric_hull_volume_3d(std::span<const Vec3> points) {
  HullWorkspace ws;
  ws.pts3.assign(points.begin(), points.end());
  return symmetric_hull_volume_3d_ws(ws);
}

}  // namespace symvol
