#include "symvol/movements.hpp"

#include "symvol/hull.hpp"
#include "symvol/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace symvol {
namespace {

// Projection coordinate onto v-perp chosen so that (x, r) = (proj, <p,v>) is
// an orientation-preserving rotation of the plane.
Vec2 perp_of(const Vec2& v) { return Vec2(v.y(), -v.x()); }

double proj_coord(const Vec2& p, const Vec2& v) { return p.dot(perp_of(v)); }

int cyclic(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) {
    throw std::domain_error("piecewise-linear function needs matching breakpoints and values");
  }
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    if (!(xs_[k] < xs_[k + 1])) {
      throw std::domain_error("piecewise-linear breakpoints must be strictly increasing");
    }
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  const std::size_t hi = it - xs_.begin();
  if (xs_[hi] == x) return ys_[hi];
  const std::size_t lo = hi - 1;
  const double span = xs_[hi] - xs_[lo];
  return (ys_[lo] * (xs_[hi] - x) + ys_[hi] * (x - xs_[lo])) / span;
}

bool PiecewiseLinear::is_odd() const {
  const double scale = std::max(std::abs(xs_.front()), std::abs(xs_.back()));
  if (std::abs(xs_.front() + xs_.back()) > 1e-12 * scale) return false;
  double value_scale = 0.0;
  for (double y : ys_) value_scale = std::max(value_scale, std::abs(y));
  for (std::size_t k = 0; k < xs_.size(); ++k) {
    if (std::abs((*this)(-xs_[k]) + ys_[k]) > 1e-12 * std::max(value_scale, 1e-300)) return false;
  }
  return true;
}

Envelopes envelopes(const SymmetricPolygon& p, const Vec2& v_in) {
  const double norm = v_in.norm();
  if (!(norm > 0.0)) throw std::domain_error("envelopes require a nonzero direction");
  const Vec2 v = v_in / norm;
  const auto& cycle = p.cycle();
  const int n = static_cast<int>(cycle.size());

  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = proj_coord(cycle[i], v);

  const auto lex_less = [&](int a, int b) {
    const double ra = cycle[a].dot(v), rb = cycle[b].dot(v);
    return xs[a] < xs[b] || (xs[a] == xs[b] && ra < rb);
  };
  int bottom_left = 0, top_right = 0;
  for (int i = 1; i < n; ++i) {
    if (lex_less(i, bottom_left)) bottom_left = i;
    if (lex_less(top_right, i)) top_right = i;
  }

  // Counterclockwise from the bottom-left vertex, the cycle first traverses
  // the lower chain (x strictly increasing) to the bottom-right vertex.
  const auto walk_chain = [&](int start) {
    std::vector<double> bx, by;
    int i = start;
    bx.push_back(xs[i]);
    by.push_back(cycle[i].dot(v));
    while (true) {
      const int j = cyclic(i + 1, n);
      if (!(xs[j] > xs[i])) break;
      bx.push_back(xs[j]);
      by.push_back(cycle[j].dot(v));
      i = j;
    }
    return std::make_pair(bx, by);
  };
  const auto walk_chain_back = [&](int start) {
    // Forward from the top-right vertex, x strictly decreasing: the upper
    // chain, collected right to left and then reversed.
    std::vector<double> bx, by;
    int i = start;
    bx.push_back(xs[i]);
    by.push_back(cycle[i].dot(v));
    while (true) {
      const int j = cyclic(i + 1, n);
      if (!(xs[j] < xs[i])) break;
      bx.push_back(xs[j]);
      by.push_back(cycle[j].dot(v));
      i = j;
    }
    std::reverse(bx.begin(), bx.end());
    std::reverse(by.begin(), by.end());
    return std::make_pair(bx, by);
  };

  auto [lower_x, lower_y] = walk_chain(bottom_left);
  auto [upper_x, upper_y] = walk_chain_back(top_right);
  return {PiecewiseLinear(std::move(lower_x), std::move(lower_y)),
          PiecewiseLinear(std::move(upper_x), std::move(upper_y))};
}

namespace {

double slope(const PiecewiseLinear& f, std::size_t segment) {
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  return (ys[segment + 1] - ys[segment]) / (xs[segment + 1] - xs[segment]);
}

// Slope of the segment of f lying just right (resp. left) of x.
double slope_right_of(const PiecewiseLinear& f, double x) {
  const auto& xs = f.breakpoints();
  std::size_t k = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  k = std::min(std::max<std::size_t>(k, 1), xs.size() - 1);
  return slope(f, k - 1);
}

double slope_left_of(const PiecewiseLinear& f, double x) {
  const auto& xs = f.breakpoints();
  std::size_t k = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
  k = std::min(std::max<std::size_t>(k, 1), xs.size() - 1);
  return slope(f, k - 1);
}

}  // namespace

SpeedFunction::SpeedFunction(SymmetricPolygon base, const Vec2& direction, PiecewiseLinear beta)
    : base_(std::move(base)), direction_(direction.normalized()), beta_(std::move(beta)) {
  const Envelopes env = envelopes(base_, direction_);

  std::vector<double> points = env.lower.breakpoints();
  points.insert(points.end(), env.upper.breakpoints().begin(), env.upper.breakpoints().end());
  points.insert(points.end(), beta_.breakpoints().begin(), beta_.breakpoints().end());
  std::sort(points.begin(), points.end());

  // f + t*beta convex and g + t*beta concave are affine conditions in t: at
  // each interior kink, jump(f) + t*jump(beta) >= 0 and
  // jump(g) + t*jump(beta) <= 0. Breakpoints within an ulp-scale tolerance
  // describe one geometric kink whose coordinate was computed along different
  // floating-point routes (typical for near-axis chord directions), so the
  // jumps are taken across whole clusters.
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const double domain_lo = env.lower.domain_min();
  const double domain_hi = env.lower.domain_max();
  const double cluster_tol = 1e-12 * (domain_hi - domain_lo);
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j + 1 < points.size() && points[j + 1] - points[j] <= cluster_tol) ++j;
    const double xa = points[i];
    const double xb = points[j];
    i = j + 1;
    if (xa <= domain_lo + cluster_tol || xb >= domain_hi - cluster_tol) continue;
    const double db = slope_right_of(beta_, xb) - slope_left_of(beta_, xa);
    if (db == 0.0) continue;
    const double df = slope_right_of(env.lower, xb) - slope_left_of(env.lower, xa);
    const double dg = slope_right_of(env.upper, xb) - slope_left_of(env.upper, xa);
    if (db > 0.0) {
      lo = std::max(lo, -df / db);
      hi = std::min(hi, -dg / db);
    } else {
      hi = std::min(hi, -df / db);
      lo = std::max(lo, -dg / db);
    }
  }
  t_min_ = std::min(lo, 0.0);
  t_max_ = std::max(hi, 0.0);
  srs_ = beta_.is_odd();
}

SpeedFunction steiner_movement(const SymmetricPolygon& p, const Vec2& v) {
  const Vec2 unit = v.normalized();
  const Envelopes env = envelopes(p, unit);
  std::vector<double> xs = env.lower.breakpoints();
  xs.insert(xs.end(), env.upper.breakpoints().begin(), env.upper.breakpoints().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(-(env.lower(x) + env.upper(x)));
  return SpeedFunction(p, unit, PiecewiseLinear(std::move(xs), std::move(ys)));
}

VertexMovement vertex_movement(const SymmetricPolygon& p, int vertex_index) {
  const int m = p.half_count();
  if (m < 3) {
    throw std::domain_error("vertex movement needs at least 3 half-vertices (parallelograms "
                            "admit none)");
  }
  if (vertex_index < 0 || vertex_index >= m) throw std::domain_error("vertex index out of range");
  const auto& cycle = p.cycle();
  const int n = 2 * m;
  const Vec2 moved = cycle[vertex_index];
  const Vec2 prev = cycle[cyclic(vertex_index - 1, n)];
  const Vec2 next = cycle[cyclic(vertex_index + 1, n)];

  const Vec2 chord = next - prev;
  const double chord_len = chord.norm();
  const Vec2 v = chord / chord_len;

  // In the projection onto v-perp both neighbors share the coordinate c and
  // the moved vertex is the strict extreme; the odd hat peaking at its
  // projection with value |chord| moves P_i by exactly t * (next - prev).
  double xi = proj_coord(moved, v);
  double c = proj_coord(next, v);
  double peak = chord_len;
  if (xi < 0.0) {
    xi = -xi;
    c = -c;
    peak = -peak;
  }
  std::vector<double> xs, ys;
  if (c > 0.0) {
    xs = {-xi, -c, c, xi};
    ys = {-peak, 0.0, 0.0, peak};
  } else {
    xs = {-xi, 0.0, xi};
    ys = {-peak, 0.0, peak};
  }
  SpeedFunction speed(p, v, PiecewiseLinear(std::move(xs), std::move(ys)));
  VertexMovement movement{std::move(speed), 0.0, 0.0, vertex_index};
  movement.eps1 = movement.speed.t_max();
  movement.eps2 = -movement.speed.t_min();
  return movement;
}

SymmetricPolygon apply_movement(const SpeedFunction& s, double t) {
  if (t == 0.0) return s.base();
  const double width = std::max({std::abs(s.t_min()), std::abs(s.t_max()), 1.0});
  if (t < s.t_min() - 1e-12 * width || t > s.t_max() + 1e-12 * width) {
    throw std::domain_error("movement parameter outside the validity interval");
  }

  const Vec2 v = s.direction();
  const auto& cycle = s.base().cycle();
  const int n = static_cast<int>(cycle.size());
  const auto& breaks = s.beta().breakpoints();

  // Refine: insert a vertex wherever an edge crosses a beta breakpoint, so
  // the shifted point set is exactly the polygon of the shifted envelopes.
  std::vector<Vec2> refined;
  std::vector<double> refined_x;
  refined.reserve(cycle.size() + 2 * breaks.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& a = cycle[i];
    const Vec2& b = cycle[(i + 1) % n];
    const double xa = proj_coord(a, v);
    const double xb = proj_coord(b, v);
    refined.push_back(a);
    refined_x.push_back(xa);
    if (xa == xb) continue;
    std::vector<double> inside;
    for (double x : breaks) {
      if ((x > xa && x < xb) || (x > xb && x < xa)) inside.push_back(x);
    }
    std::sort(inside.begin(), inside.end());
    if (xb < xa) std::reverse(inside.begin(), inside.end());
    for (double x : inside) {
      const double frac = (x - xa) / (xb - xa);
      refined.push_back(a + frac * (b - a));
      refined_x.push_back(x);
    }
  }

  std::vector<Vec2> shifted;
  shifted.reserve(refined.size());
  for (std::size_t i = 0; i < refined.size(); ++i) {
    shifted.push_back(refined[i] + (t * s.beta()(refined_x[i])) * v);
  }

  // Collapse collinear triples (exact collinearity appears at the validity
  // endpoints, where a vertex lands on a neighbor edge).
  const double eps_area = 1e-9 * s.base().diameter() * s.base().diameter();
  bool changed = true;
  while (changed && shifted.size() > 2) {
    changed = false;
    const int count = static_cast<int>(shifted.size());
    for (int i = 0; i < count; ++i) {
      const Vec2& a = shifted[cyclic(i - 1, static_cast<int>(shifted.size()))];
      const Vec2& b = shifted[i];
      const Vec2& c = shifted[cyclic(i + 1, static_cast<int>(shifted.size()))];
      const double cross = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
      if (std::abs(cross) <= eps_area) {
        shifted.erase(shifted.begin() + i);
        changed = true;
        break;
      }
    }
  }

  if (shifted.size() < 4 || shifted.size() % 2 != 0) {
    throw InvalidMovementError("movement image degenerated to fewer than 4 vertices");
  }
  const int half = static_cast<int>(shifted.size()) / 2;
  const double tol = 1e-9 * s.base().diameter();
  for (int i = 0; i < half; ++i) {
    if ((shifted[i] + shifted[i + half]).norm() > tol) {
      throw InvalidMovementError(s.is_srs() ? "SRS movement image lost its symmetry"
                                            : "movement image is not symmetric (speed function "
                                              "is not odd)");
    }
  }
  try {
    return SymmetricPolygon(std::vector<Vec2>(shifted.begin(), shifted.begin() + half));
  } catch (const InvalidBodyError& err) {
    throw InvalidMovementError(std::string("movement image is not convex: ") + err.what());
  }
}

namespace {

void fill_second_differences(ScanReport& report) {
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    if (i == 0 || i + 1 == report.points.size()) {
      report.points[i].second_difference = nan;
      continue;
    }
    report.points[i].second_difference = report.points[i - 1].value -
                                         2.0 * report.points[i].value +
                                         report.points[i + 1].value;
  }
}

void check_grid(std::span<const double> grid) {
  if (grid.size() < 3) throw std::domain_error("scan grid needs at least 3 points");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::domain_error("scan grid must be sorted");
  }
}

}  // namespace

ScanReport convexity_scan_area(const LinearParameterSystem& system, std::span<const double> grid) {
  check_grid(grid);
  const auto& cycle = system.base.cycle();
  if (system.speeds.size() != cycle.size()) {
    throw std::domain_error("linear parameter system needs one speed per cycle vertex");
  }
  ScanReport report;
  report.functional = "area";
  std::vector<Vec2> moved(cycle.size());
  for (double t : grid) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      moved[i] = cycle[i] + (t * system.speeds[i]) * system.direction;
    }
    report.points.push_back({t, hull_volume_2d(moved), 0.0, 0.0});
  }
  fill_second_differences(report);
  double scale = 0.0;
  for (const auto& pt : report.points) scale = std::max(scale, std::abs(pt.value));
  for (std::size_t i = 1; i + 1 < report.points.size(); ++i) {
    if (report.points[i].second_difference < -1e-9 * scale) report.convexity_violation = true;
  }
  return report;
}

ScanReport convexity_scan_area(const SpeedFunction& s, std::span<const double> grid) {
  check_grid(grid);
  ScanReport report;
  report.functional = "area";
  for (double t : grid) report.points.push_back({t, apply_movement(s, t).area(), 0.0, 0.0});
  fill_second_differences(report);
  double scale = 0.0;
  for (const auto& pt : report.points) scale = std::max(scale, std::abs(pt.value));
  for (std::size_t i = 1; i + 1 < report.points.size(); ++i) {
    if (report.points[i].second_difference < -1e-9 * scale) report.convexity_violation = true;
  }
  return report;
}

ScanReport convexity_scan_moment(const SpeedFunction& s, std::span<const double> grid,
                                 const MomentSpec& spec, const MCConfig& cfg) {
  check_grid(grid);
  ScanReport report;
  report.functional = "moment";
  for (double t : grid) {
    const SymmetricPolygon body = apply_movement(s, t);
    const MomentEstimate est = estimate_moment(body, spec, cfg);
    report.points.push_back({t, est.mean, est.std_error, 0.0});
  }
  fill_second_differences(report);
  for (std::size_t i = 1; i + 1 < report.points.size(); ++i) {
    const double se_prev = report.points[i - 1].std_error;
    const double se_mid = report.points[i].std_error;
    const double se_next = report.points[i + 1].std_error;
    const double propagated =
        std::sqrt(se_prev * se_prev + 4.0 * se_mid * se_mid + se_next * se_next);
    if (report.points[i].second_difference < -4.0 * propagated) report.convexity_violation = true;
  }
  return report;
}

std::string scan_csv(const ScanReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "t,value,std_error,second_difference\n";
  for (const auto& pt : report.points) {
    out << pt.t << "," << pt.value << "," << pt.std_error << ",";
    if (std::isnan(pt.second_difference)) {
      out << "";
    } else {
      out << pt.second_difference;
    }
    out << "\n";
  }
  return out.str();
}

SqueezeResult squeeze_to_parallelogram(const SymmetricPolygon& p, const MomentSpec& spec,
                                       const MCConfig& cfg) {
  SqueezeResult result{p, {}};
  while (result.final_polygon.half_count() > 2) {
    const VertexMovement movement = vertex_movement(result.final_polygon, 0);
    const SymmetricPolygon at_eps1 = apply_movement(movement.speed, movement.speed.t_max());
    const SymmetricPolygon at_eps2 = apply_movement(movement.speed, movement.speed.t_min());
    const MomentEstimate est1 = estimate_moment(at_eps1, spec, cfg);
    const MomentEstimate est2 = estimate_moment(at_eps2, spec, cfg);
    const double spread = std::sqrt(est1.std_error * est1.std_error +
                                    est2.std_error * est2.std_error);
    const double z = spread > 0.0 ? (est1.mean - est2.mean) / spread : 0.0;
    // Ties inside one z go to the eps1 endpoint; both endpoints dominate the
    // interior by convexity, so either choice is admissible.
    const bool pick_first = std::abs(z) < 1.0 || z > 0.0;
    const SymmetricPolygon& chosen = pick_first ? at_eps1 : at_eps2;
    const MomentEstimate& est = pick_first ? est1 : est2;
    if (chosen.half_count() >= result.final_polygon.half_count()) {
      throw InvalidMovementError("vertex movement failed to reduce the vertex count");
    }
    result.trace.push_back({2 * chosen.half_count(), est.mean, est.std_error,
                            pick_first ? movement.speed.t_max() : movement.speed.t_min()});
    result.final_polygon = chosen;
  }
  return result;
}

}  // namespace symvol
