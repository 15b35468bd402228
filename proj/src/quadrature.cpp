#include "symvol/quadrature.hpp"

#include "symvol/bodies.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace symvol {
namespace {

constexpr double kPi = std::numbers::pi;

// Exact set-invariance of the vertex cycle under a coordinate map. Only maps
// that are exact in floating point qualify (quarter-turn, diagonal swap), so
// the detected symmetry is a true symmetry of the stored polygon, not an
// approximate one.
template <typename MapFn>
bool cycle_invariant(const std::vector<Vec2>& cycle, MapFn&& map) {
  for (const Vec2& v : cycle) {
    const Vec2 image = map(v);
    bool found = false;
    for (const Vec2& w : cycle) {
      if (image.x() == w.x() && image.y() == w.y()) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

double ev_symmetric_2d(const SymmetricPolygon& p, int num_points, const QuadConfig& cfg) {
  if (num_points < 2) throw std::domain_error("ev_symmetric_2d requires N >= 2");
  // The reduction formula assumes |K| = 1.
  const SymmetricPolygon unit = p.scaled(1.0 / std::sqrt(p.area()));

  // theta-range reduction from exact dihedral symmetries.
  double theta_max = kPi;
  double factor = 2.0;
  const auto& cycle = unit.cycle();
  const bool quarter_turn = cycle_invariant(cycle, [](const Vec2& v) { return Vec2(-v.y(), v.x()); });
  const bool diagonal = cycle_invariant(cycle, [](const Vec2& v) { return Vec2(v.y(), v.x()); });
  if (quarter_turn && diagonal) {
    theta_max = kPi / 4.0;
    factor = 8.0;
  } else if (quarter_turn) {
    theta_max = kPi / 2.0;
    factor = 4.0;
  }

  QuadConfig inner_cfg = cfg;
  inner_cfg.abs_tol = std::max(cfg.abs_tol * 1e-3, 1e-15);
  inner_cfg.rel_tol = std::max(cfg.rel_tol * 1e-3, 1e-14);

  const auto inner = [&](double theta) {
    Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    // Radii where the slab boundary crosses a vertex: the chord length is
    // piecewise affine in r between consecutive ones.
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (const Vec2& v : unit.half_vertices()) cuts.push_back(std::abs(v.dot(u)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto integrand = [&](double r) {
      const double chord = unit.chord(r, u);
      const double slab = unit.slab_measure(r, u);
      return std::pow(slab, num_points - 1) * chord * chord * chord;
    };
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      acc += integrate_1d(integrand, cuts[k], cuts[k + 1], inner_cfg).value;
    }
    return acc;
  };

  const double outer = integrate_1d(inner, 0.0, theta_max, cfg).value;
  return 1.0 - (num_points / 3.0) * factor * outer;
}

double ev_symmetric_ball_3d(int num_points, const QuadConfig& cfg) {
  if (num_points < 3) throw std::domain_error("ev_symmetric_ball_3d requires N >= 3");
  const double radius = std::cbrt(3.0 / (4.0 * kPi));
  const Ellipsoid ball(3, radius * Eigen::MatrixXd::Identity(3, 3));
  const Vec3 axis = Vec3::UnitZ();

  // a(r) = 35/(48 pi^2) * A(r) for circular sections, and the angular
  // integrals contribute the full solid angle 4*pi.
  const double section_constant = 35.0 / (48.0 * kPi * kPi);
  const auto integrand = [&](double r) {
    const auto [area, slab] = section_and_slab_3d(ball, r, axis);
    return std::pow(slab, num_points - 2) * area * area * area * (section_constant * area);
  };

  QuadConfig tight = cfg;
  tight.abs_tol = std::min(cfg.abs_tol, 1e-13);
  tight.rel_tol = std::min(cfg.rel_tol, 1e-13);
  const double radial = integrate_1d(integrand, 0.0, radius, tight).value;
  const double n = num_points;
  return 1.0 - 1.0 / (n + 1.0) - (2.0 * n * (n - 1.0) / 3.0) * (4.0 * kPi) * radial;
}

}  // namespace symvol
