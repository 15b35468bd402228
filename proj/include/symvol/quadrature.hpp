#pragma once

#include "symvol/common.hpp"
#include "symvol/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace symvol {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGauss7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss-Kronrod 7-15 pass over [a, b], with the QUADPACK error model.
template <typename F>
Panel gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv1[7], fv2[7];
  const double fc = f(center);
  double result_gauss = kGauss7Weights[3] * fc;
  double result_kronrod = kGk15Weights[7] * fc;
  double result_abs = std::abs(result_kronrod);
  for (int j = 0; j < 7; ++j) {
    const double abscissa = half * kGk15Nodes[j];
    fv1[j] = f(center - abscissa);
    fv2[j] = f(center + abscissa);
    const double sum = fv1[j] + fv2[j];
    if (j % 2 == 1) result_gauss += kGauss7Weights[j / 2] * sum;
    result_kronrod += kGk15Weights[j] * sum;
    result_abs += kGk15Weights[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }
  const double mean = result_kronrod * 0.5;
  double result_asc = kGk15Weights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kGk15Weights[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  double err = std::abs((result_kronrod - result_gauss) * half);
  result_asc *= std::abs(half);
  result_abs *= std::abs(half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  constexpr double kTiny = std::numeric_limits<double>::min();
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (result_abs > kTiny / (50.0 * kEps)) {
    err = std::max(kEps * 50.0 * result_abs, err);
  }
  return {a, b, result_kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7-15 quadrature of f over [a, b].
/// Succeeds once the summed error estimate drops below
/// max(abs_tol, rel_tol * |value|); throws QuadratureError (carrying the best
/// value and its estimate) when the subdivision budget runs out first.
/// Integrable endpoint singularities are fine: the rule never evaluates the
/// endpoints, and the adaptive refinement concentrates there.
template <typename F>
QuadResult integrate_1d(F&& f, double a, double b, const QuadConfig& cfg = {}) {
  if (!(a <= b)) throw std::domain_error("integrate_1d requires a <= b");
  if (a == b) return {0.0, 0.0, 0};
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk15(f, a, b));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int subdivisions = 1;
  while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (subdivisions >= cfg.max_subdivisions) {
      throw QuadratureError("integrate_1d: subdivision budget exhausted", total, total_err);
    }
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw QuadratureError("integrate_1d: interval at floating-point resolution", total,
                            total_err);
    }
    panels.pop();
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }
  return {total, total_err, subdivisions};
}

/// E V_{P,N} for a symmetric polygon via the planar reduction formula: the
/// polygon is rescaled to unit area, the radial integral runs to the support
/// radius and is split at the radii where the slab boundary crosses a vertex,
/// and exact dihedral symmetries of the vertex set shrink the angular range.
double ev_symmetric_2d(const SymmetricPolygon& p, int num_points, const QuadConfig& cfg = {});

/// E V_{B,N} for the 3-D ball of unit volume via the spatial reduction
/// formula; rotational symmetry collapses the angular integrals to 4*pi.
double ev_symmetric_ball_3d(int num_points, const QuadConfig& cfg = {});

}  // namespace symvol
