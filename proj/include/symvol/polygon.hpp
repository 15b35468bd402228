#pragma once

#include "symvol/body.hpp"
#include "symvol/common.hpp"

#include <utility>
#include <vector>

namespace symvol {

/// Origin-symmetric convex polygon with vertices {±P_1, ..., ±P_m}, stored
/// as the half list (P_1, ..., P_m) such that the induced 2m-cycle is
/// strictly convex and counterclockwise. The workhorse body for the planar
/// reduction formula and for RS/SRS-movements.
class SymmetricPolygon final : public Body {
 public:
  /// Validates strict convexity (exact orientation tests over the full
  /// cycle) and a positive area; throws InvalidBodyError otherwise.
  explicit SymmetricPolygon(std::vector<Vec2> half_vertices);

  int half_count() const { return static_cast<int>(half_.size()); }
  const std::vector<Vec2>& half_vertices() const { return half_; }

  /// Full 2m vertex cycle, counterclockwise; element m + k is exactly -P_k.
  const std::vector<Vec2>& cycle() const { return cycle_; }

  double area() const { return area_; }
  double diameter() const { return diameter_; }

  /// Image under an invertible linear map (orientation is repaired when
  /// det T < 0).
  SymmetricPolygon linear_image(const Mat2& transform) const;
  SymmetricPolygon scaled(double factor) const;

  // Body interface.
  int dimension() const override { return 2; }
  double volume() const override { return area_; }
  std::string kind() const override { return "polygon"; }
  void sample(RandomStream& rng, double* out) const override;
  double support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;

 private:
  std::vector<Vec2> half_;
  std::vector<Vec2> cycle_;
  std::vector<double> fan_cumulative_;  // fan triangulation areas, for sampling
  double area_ = 0.0;
  double diameter_ = 0.0;
};

/// Lebesgue area of the polygon (shoelace over the full cycle).
double polygon_area(const SymmetricPolygon& p);

/// (chord length, symmetric slab area) of P against the direction
/// u = (cos theta, sin theta) at offset r >= 0; computed exactly by clipping.
/// r beyond the support radius gives (0, area).
std::pair<double, double> chord_and_slab_2d(const SymmetricPolygon& p, double r, double theta);

/// Clips a counterclockwise convex polygon against {<x,n> <= c}. Points
/// within eps of the boundary line count as inside, so near-tangent cuts do
/// not produce sliver facets.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& polygon, const Vec2& normal, double c,
                                 double eps);

/// Shoelace area of a simple polygon given as a vertex cycle.
double cycle_area(const std::vector<Vec2>& cycle);

}  // namespace symvol
