#pragma once

#include "symvol/common.hpp"
#include "symvol/montecarlo.hpp"
#include "symvol/polygon.hpp"

#include <span>
#include <string>
#include <vector>

namespace symvol {

/// Piecewise-affine function given by strictly increasing breakpoints and
/// values. Evaluation is exact at breakpoints and uses the barycentric form
/// between them, which makes mirror identities such as g(-x) = -f(x) hold to
/// the last bit when breakpoints and values are exact negations.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double x) const;
  const std::vector<double>& breakpoints() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }
  double domain_min() const { return xs_.front(); }
  double domain_max() const { return xs_.back(); }

  /// beta(-x) = -beta(x) at every breakpoint (symmetric domain required).
  bool is_odd() const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

struct Envelopes {
  PiecewiseLinear lower;  // f_v, convex
  PiecewiseLinear upper;  // g_v, concave
};

/// Lower/upper envelopes of the polygon in direction v over the projection
/// onto v-perp. For a symmetric polygon, upper(-x) == -lower(x) exactly.
Envelopes envelopes(const SymmetricPolygon& p, const Vec2& v);

/// An RS-movement of a symmetric polygon: K_t shifts every point x by
/// t * beta(pi_v(x)) * v. The validity interval [t_min, t_max] is the range
/// of t for which f_v + t*beta stays convex and g_v + t*beta stays concave
/// (the conditions are affine in t, so checking slope jumps at breakpoints
/// is exhaustive).
class SpeedFunction {
 public:
  /// Maximal validity interval is computed from the slope-jump constraints.
  SpeedFunction(SymmetricPolygon base, const Vec2& direction, PiecewiseLinear beta);

  const SymmetricPolygon& base() const { return base_; }
  const Vec2& direction() const { return direction_; }
  const PiecewiseLinear& beta() const { return beta_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  bool is_srs() const { return srs_; }

 private:
  SymmetricPolygon base_;
  Vec2 direction_;
  PiecewiseLinear beta_;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  bool srs_ = false;
};

/// beta = -(f_v + g_v): K_1 is the reflection about v-perp and K_{1/2} the
/// Steiner symmetrization; always an SRS-movement.
SpeedFunction steiner_movement(const SymmetricPolygon& p, const Vec2& v);

struct VertexMovement {
  SpeedFunction speed;
  double eps1;  // t at which the moved vertex reaches line(P_{i+1}, P_{i+2})
  double eps2;  // -t at which it reaches line(P_{i-1}, P_{i-2})
  int vertex_index;
};

/// The explicit movement from the planar maximizer construction: slides
/// half-vertex i (and its antipode) along the chord direction connecting its
/// two cycle neighbors. Both endpoint polygons lose one antipodal vertex
/// pair. Requires at least 3 half-vertices (a parallelogram admits no such
/// movement).
VertexMovement vertex_movement(const SymmetricPolygon& p, int vertex_index);

/// K_t for t inside the validity interval. Vertices are inserted at beta
/// breakpoints that land on edges before shifting, so the image is exactly
/// the polygon of the shifted envelopes; exactly collinear triples created
/// at interval endpoints are collapsed. Throws InvalidMovementError when the
/// shifted cycle fails convexity or (for SRS speeds) symmetry.
SymmetricPolygon apply_movement(const SpeedFunction& s, double t);

/// conv{x_i + t * speeds_i * v} over the full vertex cycle; no convexity or
/// symmetry is assumed for t != 0 (hull volume convexity holds regardless).
struct LinearParameterSystem {
  SymmetricPolygon base;
  Vec2 direction;
  std::vector<double> speeds;  // one per full-cycle vertex
};

struct ScanPoint {
  double t = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  double second_difference = 0.0;  // NaN at the two grid ends
};

struct ScanReport {
  std::string functional;
  std::vector<ScanPoint> points;
  bool convexity_violation = false;
};

ScanReport convexity_scan_area(const LinearParameterSystem& system, std::span<const double> grid);
ScanReport convexity_scan_area(const SpeedFunction& s, std::span<const double> grid);

/// Monte Carlo moment along the movement with common random numbers (every
/// grid point reuses cfg.seed). A second difference counts as a violation
/// only beyond 4x the propagated standard error.
ScanReport convexity_scan_moment(const SpeedFunction& s, std::span<const double> grid,
                                 const MomentSpec& spec, const MCConfig& cfg);

/// CSV serialization: t,value,std_error,second_difference.
std::string scan_csv(const ScanReport& report);

struct SqueezeStep {
  int vertex_count = 0;  // of the polygon after the step
  double estimate = 0.0;
  double std_error = 0.0;
  double chosen_t = 0.0;
};

struct SqueezeResult {
  SymmetricPolygon final_polygon;
  std::vector<SqueezeStep> trace;
};

/// Iterates the vertex movement, at each step keeping whichever endpoint
/// polygon has the larger estimated moment (ties within |z| < 1 go to the
/// eps1 end), until a parallelogram remains.
SqueezeResult squeeze_to_parallelogram(const SymmetricPolygon& p, const MomentSpec& spec,
                                       const MCConfig& cfg);

}  // namespace symvol
