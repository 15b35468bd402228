#pragma once

#include "symvol/body.hpp"
#include "symvol/common.hpp"
#include "symvol/polygon.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace symvol {

/// Ellipse (n = 2) or ellipsoid (n = 3): the image of the unit ball under a
/// symmetric positive definite shape matrix.
class Ellipsoid final : public Body {
 public:
  Ellipsoid(int dim, Eigen::MatrixXd shape);

  const Eigen::MatrixXd& shape() const { return shape_; }

  int dimension() const override { return dim_; }
  double volume() const override { return volume_; }
  std::string kind() const override { return "ellipsoid"; }
  void sample(RandomStream& rng, double* out) const override;
  double support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;

 private:
  int dim_;
  Eigen::MatrixXd shape_;
  Eigen::MatrixXd inv_transpose_;
  double det_ = 0.0;
  double volume_ = 0.0;
};

/// Image of [-1,1]^n under an invertible generator matrix.
class Parallelotope final : public Body {
 public:
  Parallelotope(int dim, Eigen::MatrixXd generators);

  const Eigen::MatrixXd& generators() const { return gens_; }

  int dimension() const override { return dim_; }
  double volume() const override { return volume_; }
  std::string kind() const override { return "parallelotope"; }
  void sample(RandomStream& rng, double* out) const override;
  double support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;

 private:
  int dim_;
  Eigen::MatrixXd gens_;
  double volume_ = 0.0;
  std::vector<Vec3> vertices_;                 // n = 3 only
  std::vector<std::pair<int, int>> edges_;     // n = 3 only
  std::optional<SymmetricPolygon> polygon_;    // n = 2 only
};

/// Symmetric convex hull of ±g_1, ..., ±g_n (generalized octahedron).
class Crosspolytope final : public Body {
 public:
  Crosspolytope(int dim, Eigen::MatrixXd generators);

  const Eigen::MatrixXd& generators() const { return gens_; }

  int dimension() const override { return dim_; }
  double volume() const override { return volume_; }
  std::string kind() const override { return "crosspolytope"; }
  void sample(RandomStream& rng, double* out) const override;
  double support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;
  double section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const override;

 private:
  int dim_;
  Eigen::MatrixXd gens_;
  double volume_ = 0.0;
  std::vector<Vec3> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::optional<SymmetricPolygon> polygon_;
};

/// vol_n(conv{±x_1, ..., ±x_N}) for n in {2, 3}.
double symmetric_hull_volume(std::span<const Vec2> points);
double symmetric_hull_volume(std::span<const Vec3> points);

/// Uniform point of B; dispatches to the body's sampler.
Eigen::VectorXd sample_uniform(const Body& body, RandomStream& rng);

/// (section area A(r), symmetric slab volume V(r)) of a 3-D ellipsoid
/// against the given unit direction. r < 0 is a domain error.
std::pair<double, double> section_and_slab_3d(const Ellipsoid& body, double r,
                                              const Vec3& direction);

/// Reads a body from its JSON description:
///   {"kind": "polygon"|"ellipsoid"|"parallelotope"|"crosspolytope",
///    "dimension": n, "half_vertices": [[x,y],...] | "matrix": [[...],...]}
std::unique_ptr<Body> body_from_json_text(const std::string& text);
std::unique_ptr<Body> load_body(const std::string& path);

/// Canonical bodies by name: square, cube, disc, ball, hexagon, octagon,
/// diamond, octahedron (and regular-<m> for a symmetric 2m-gon).
std::unique_ptr<Body> make_kind(const std::string& name);

/// Regular symmetric 2m-gon with circumradius 1.
SymmetricPolygon regular_polygon(int half_count);

/// Polygon version of a canonical planar kind (square, hexagon, octagon,
/// diamond, regular-<m>); used by the movement commands.
SymmetricPolygon make_polygon_kind(const std::string& name);

/// Polygon view of any planar polytopal body (polygon, 2-D parallelotope or
/// crosspolytope); throws InvalidBodyError for smooth or 3-D bodies.
SymmetricPolygon as_polygon(const Body& body);

}  // namespace symvol
