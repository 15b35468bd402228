#pragma once

#include "symvol/common.hpp"
#include "symvol/rng.hpp"

#include <string>

namespace symvol {

/// A symmetric convex body. Implementations are immutable after
/// construction and safe to share across threads; all randomness comes
/// through the caller-supplied stream.
///
/// Directions passed to the geometry queries must be unit vectors of the
/// body's dimension.
class Body {
 public:
  virtual ~Body() = default;

  virtual int dimension() const = 0;
  virtual double volume() const = 0;
  virtual std::string kind() const = 0;

  /// Writes dimension() coordinates of one uniform sample.
  virtual void sample(RandomStream& rng, double* out) const = 0;

  /// h(u) = max_{x in K} <x, u>.
  virtual double support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const = 0;

  /// vol(K ∩ {|<x,u>| <= r}), nondecreasing in r, equal to volume() once
  /// r >= support_radius(u).
  virtual double slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const = 0;

  /// n = 2 only: length of the line {<x,u> = r} ∩ K.
  virtual double chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const;

  /// n = 3 only: area of the planar section K ∩ {<x,u> = r}.
  virtual double section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const;
};

Vec2 sample2(const Body& body, RandomStream& rng);
Vec3 sample3(const Body& body, RandomStream& rng);

}  // namespace symvol
