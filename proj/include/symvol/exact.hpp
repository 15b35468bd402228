#pragma once

#include "symvol/common.hpp"
#include "symvol/quadrature.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace symvol {

/// Arbitrary-precision rational; always stored normalized with a positive
/// denominator.
using ExactRational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const ExactRational& value);
double rational_to_double(const ExactRational& value);

/// Which moment of which hull to take: E V_{K,N}^p (symmetric) or
/// E U_{K,N}^p.
struct MomentSpec {
  int num_points = 2;    // N
  double power = 1.0;    // p
  bool symmetric = true;

  /// N >= n for the symmetric hull, N >= n + 1 otherwise; p >= 1.
  void validate(int dimension) const;
};

/// H_n = sum_{k=1..n} 1/k in rational arithmetic.
ExactRational harmonic_number(int n);

/// E V_{P,N} for a parallelogram: 1 - 4 H_{N+1} / (3 (N+1)); N >= 2.
ExactRational ev_parallelogram(int num_points);

/// E V_{E^2,N} for an ellipse by adaptive quadrature of the 1-D reduction
/// integral; N >= 2.
double ev_ellipse(int num_points, const QuadConfig& cfg = {});

/// E V_{E^3,N} for an ellipsoid, exactly: the integrand expands to an
/// integer polynomial that is integrated term by term in rational
/// arithmetic; N >= 3.
ExactRational ev_ellipsoid(int num_points);

/// Density of V_{P,2} (parallelogram, two symmetric points) at t; zero
/// outside [0, 1]. The two interior logarithmic singularities are split off
/// and each piece is integrated under an exponential substitution that
/// absorbs the log endpoints.
double density_vp2(double t);

/// Density of V_{E^2,2} (disc) at t; zero outside [0, 2/pi]. Closed form via
/// the antiderivative of s^{-2} sqrt(1-s^2).
double density_ve2(double t);

/// Isotropic constant from a second moment: L_K^2 = (n! m2)^{1/n} / 4 for
/// symmetric bodies with m2 = E V_{K,n}^2, or L_K^2 = (n! m2 / (n+1))^{1/n}
/// for centered bodies with m2 = E U_{K,n+1}^2.
double isotropic_constant(double moment2, int dimension, bool symmetric);

/// CLI-facing closed-form result.
struct ExactResult {
  double value_decimal = 0.0;
  std::optional<ExactRational> value_rational;
  std::string formula;
  int num_points = 0;
};

std::string exact_result_json(const ExactResult& result);

}  // namespace symvol
