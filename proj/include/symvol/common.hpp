#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symvol {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// A body description failed validation (degenerate polygon, singular
/// generator matrix, non-SPD ellipsoid shape, malformed JSON).
class InvalidBodyError : public std::runtime_error {
 public:
  explicit InvalidBodyError(const std::string& what) : std::runtime_error(what) {}
};

/// A speed function produced a non-convex (or, for SRS, non-symmetric) image.
class InvalidMovementError : public std::runtime_error {
 public:
  explicit InvalidMovementError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature ran out of budget. Carries the best value reached and
/// the error estimate at that point.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value(best_value), error_estimate(error_estimate) {}

  double best_value;
  double error_estimate;
};

}  // namespace symvol
