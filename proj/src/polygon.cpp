#include "symvol/polygon.hpp"

#include "symvol/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symvol {

double cycle_area(const std::vector<Vec2>& cycle) {
  double twice = 0.0;
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = cycle[i];
    const Vec2& b = cycle[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

SymmetricPolygon::SymmetricPolygon(std::vector<Vec2> half_vertices) : half_(std::move(half_vertices)) {
  const int m = static_cast<int>(half_.size());
  if (m < 2) throw InvalidBodyError("symmetric polygon needs at least 2 half-vertices");
  for (const Vec2& v : half_) {
    if (!v.allFinite()) throw InvalidBodyError("symmetric polygon vertex is not finite");
  }

  cycle_.reserve(2 * m);
  for (const Vec2& v : half_) cycle_.push_back(v);
  for (const Vec2& v : half_) cycle_.push_back(-v);

  const int n = 2 * m;
  for (int i = 0; i < n; ++i) {
    if (orient2d(cycle_[i], cycle_[(i + 1) % n], cycle_[(i + 2) % n]) <= 0) {
      throw InvalidBodyError("symmetric polygon cycle is not strictly convex counterclockwise");
    }
  }

  for (const Vec2& v : half_) diameter_ = std::max(diameter_, 2.0 * v.norm());
  area_ = cycle_area(cycle_);
  if (!(area_ > 1e-12 * diameter_ * diameter_)) {
    throw InvalidBodyError("symmetric polygon is degenerate (area <= 0 within tolerance)");
  }

  fan_cumulative_.reserve(n);
  double running = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = cycle_[i];
    const Vec2& b = cycle_[(i + 1) % n];
    running += 0.5 * (a.x() * b.y() - b.x() * a.y());
    fan_cumulative_.push_back(running);
  }
}

SymmetricPolygon SymmetricPolygon::linear_image(const Mat2& transform) const {
  const double det = transform.determinant();
  if (det == 0.0) throw InvalidBodyError("linear image requires an invertible map");
  std::vector<Vec2> image;
  image.reserve(half_.size());
  if (det > 0.0) {
    for (const Vec2& v : half_) image.push_back(transform * v);
  } else {
    // Orientation flips; a reversed run of m consecutive cycle vertices is
    // again a valid half list.
    for (auto it = half_.rbegin(); it != half_.rend(); ++it) image.push_back(-(transform * *it));
  }
  return SymmetricPolygon(std::move(image));
}

SymmetricPolygon SymmetricPolygon::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidBodyError("scale factor must be positive");
  std::vector<Vec2> scaled_half;
  scaled_half.reserve(half_.size());
  for (const Vec2& v : half_) scaled_half.push_back(factor * v);
  return SymmetricPolygon(std::move(scaled_half));
}

void SymmetricPolygon::sample(RandomStream& rng, double* out) const {
  const double total = fan_cumulative_.back();
  const double pick = rng.uniform() * total;
  const auto it = std::lower_bound(fan_cumulative_.begin(), fan_cumulative_.end(), pick);
  std::size_t tri = std::min<std::size_t>(it - fan_cumulative_.begin(), fan_cumulative_.size() - 1);
  const Vec2& b = cycle_[tri];
  const Vec2& c = cycle_[(tri + 1) % cycle_.size()];
  // Uniform point of the triangle (0, b, c).
  const double root = std::sqrt(rng.uniform());
  const double along = rng.uniform();
  const Vec2 point = root * (b + along * (c - b));
  out[0] = point.x();
  out[1] = point.y();
}

double SymmetricPolygon::support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const {
  const Vec2 u(direction[0], direction[1]);
  double h = 0.0;
  for (const Vec2& v : half_) h = std::max(h, std::abs(v.dot(u)));
  return h;
}

double SymmetricPolygon::slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  const Vec2 u(direction[0], direction[1]);
  const double eps = 1e-12 * diameter_;
  std::vector<Vec2> clipped = clip_halfplane(cycle_, u, r, eps);
  clipped = clip_halfplane(clipped, -u, r, eps);
  if (clipped.size() < 3) return 0.0;
  return std::abs(cycle_area(clipped));
}

double SymmetricPolygon::chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  const Vec2 u(direction[0], direction[1]);
  const Vec2 u_perp(-u.y(), u.x());
  const int n = static_cast<int>(cycle_.size());
  double smin = std::numeric_limits<double>::infinity();
  double smax = -std::numeric_limits<double>::infinity();
  bool hit = false;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = cycle_[i];
    const Vec2& b = cycle_[(i + 1) % n];
    const double da = a.dot(u) - r;
    const double db = b.dot(u) - r;
    if (da == 0.0) {
      const double s = a.dot(u_perp);
      smin = std::min(smin, s);
      smax = std::max(smax, s);
      hit = true;
    } else if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      const Vec2 p = a + t * (b - a);
      const double s = p.dot(u_perp);
      smin = std::min(smin, s);
      smax = std::max(smax, s);
      hit = true;
    }
  }
  return hit ? smax - smin : 0.0;
}

double polygon_area(const SymmetricPolygon& p) { return p.area(); }

std::pair<double, double> chord_and_slab_2d(const SymmetricPolygon& p, double r, double theta) {
  Eigen::Vector2d u(std::cos(theta), std::sin(theta));
  return {p.chord(r, u), p.slab_measure(r, u)};
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& polygon, const Vec2& normal, double c,
                                 double eps) {
  std::vector<Vec2> out;
  const std::size_t n = polygon.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    const double da = a.dot(normal) - c;
    const double db = b.dot(normal) - c;
    const bool a_in = da <= eps;
    const bool b_in = db <= eps;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

}  // namespace symvol
