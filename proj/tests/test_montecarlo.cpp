#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symvol/bodies.hpp"
#include "symvol/exact.hpp"
#include "symvol/hull.hpp"
#include "symvol/montecarlo.hpp"
#include "symvol/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using symvol::MCConfig;
using symvol::MomentEstimate;
using symvol::MomentSpec;
using symvol::Vec2;
using symvol::Vec3;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("estimates hit the paper values within four standard errors") {
  MCConfig cfg;
  cfg.samples = 1000000;
  cfg.seed = 1;

  const auto disc = symvol::make_kind("disc");
  const MomentEstimate disc_est = symvol::estimate_moment(*disc, {2, 1.0, true}, cfg);
  CHECK(std::abs(disc_est.mean - 16.0 / (9.0 * kPi * kPi)) < 4.0 * disc_est.std_error);
  CHECK(disc_est.mean >= 0.0);
  CHECK(disc_est.mean <= 1.0);

  const auto ball = symvol::make_kind("ball");
  const MomentEstimate ball_est = symvol::estimate_moment(*ball, {3, 1.0, true}, cfg);
  CHECK(std::abs(ball_est.mean - 27.0 / 512.0) < 4.0 * ball_est.std_error);

  const auto square = symvol::make_kind("square");
  const MomentEstimate square_est = symvol::estimate_moment(*square, {2, 2.0, true}, cfg);
  CHECK(std::abs(square_est.mean - 1.0 / 18.0) < 4.0 * square_est.std_error);
}

TEST_CASE("degenerate point source estimates zero") {
  MCConfig cfg;
  cfg.samples = 1000;
  cfg.batch = 100;
  cfg.seed = 2;
  const auto square = symvol::make_kind("square");
  const auto frozen = [](symvol::RandomStream&, double* out) {
    out[0] = 0.25;
    out[1] = -0.125;
  };
  const MomentEstimate est = symvol::estimate_moment(*square, {4, 1.0, true}, cfg, frozen);
  CHECK(est.mean == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("worker count never changes the result bits") {
  const auto hexagon = symvol::make_kind("hexagon");
  const MomentSpec spec{3, 1.0, true};
  MCConfig cfg;
  cfg.samples = 100000;
  cfg.seed = 3;
  cfg.batch = 1024;
  MomentEstimate reference;
  for (int workers : {1, 2, 4, 8}) {
    cfg.workers = workers;
    const MomentEstimate est = symvol::estimate_moment(*hexagon, spec, cfg);
    if (workers == 1) {
      reference = est;
    } else {
      CHECK(est.mean == reference.mean);
      CHECK(est.std_error == reference.std_error);
    }
  }
}

TEST_CASE("hull volume is pathwise monotone in N and under symmetrization") {
  const auto disc = symvol::make_kind("disc");
  symvol::RandomStream stream(4, 0);
  for (int rep = 0; rep < 10000; ++rep) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(symvol::sample2(*disc, stream));

    const double v4 = symvol::symmetric_hull_volume_2d(std::span(pts.data(), 4));
    const double v5 = symvol::symmetric_hull_volume_2d(std::span(pts.data(), 5));
    CHECK(v5 >= v4 - 1e-15);

    const double u5 = symvol::hull_volume_2d(std::span(pts.data(), 5));
    CHECK(v5 >= u5 - 1e-15);
  }
}

TEST_CASE("linear images with mapped common random numbers are pathwise equal") {
  const auto square = symvol::make_kind("square");
  Eigen::Matrix2d t;
  t << 1.5, 0.7, -0.3, 1.1;
  const double det = std::abs(t.determinant());
  symvol::RandomStream stream(5, 0);
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<Vec2> pts, mapped;
    for (int i = 0; i < 3; ++i) {
      const Vec2 p = symvol::sample2(*square, stream);
      pts.push_back(p);
      mapped.push_back(t * p);
    }
    const double v = symvol::symmetric_hull_volume_2d(pts) / 4.0;
    const double v_mapped = symvol::symmetric_hull_volume_2d(mapped) / (4.0 * det);
    CHECK(v_mapped == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("empirical cdf is a cdf and saturates at the support end") {
  const auto disc = symvol::make_kind("disc");
  MCConfig cfg;
  cfg.samples = 200000;
  cfg.seed = 6;
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i * (2.0 / kPi) / 100.0);
  const auto cdf = symvol::empirical_cdf(*disc, {2, 1.0, true}, cfg, grid);
  REQUIRE(cdf.size() == grid.size());
  CHECK(cdf.front().second >= 0.0);
  for (std::size_t i = 1; i < cdf.size(); ++i) CHECK(cdf[i].second >= cdf[i - 1].second);
  CHECK(cdf.back().second == 1.0);  // V_{disc,2} is supported on [0, 2/pi]

  std::vector<double> unsorted = {0.5, 0.25};
  CHECK_THROWS_AS(symvol::empirical_cdf(*disc, {2, 1.0, true}, cfg, unsorted),
                  std::domain_error);
}

TEST_CASE("empirical cdf tracks the exact density cdf (DKW at 1e6 samples)") {
  const auto square = symvol::make_kind("square");
  MCConfig cfg;
  cfg.samples = 1000000;
  cfg.seed = 7;
  std::vector<double> grid;
  const int cells = 100;
  for (int i = 1; i <= cells; ++i) grid.push_back(static_cast<double>(i) / cells);
  const auto cdf = symvol::empirical_cdf(*square, {2, 1.0, true}, cfg, grid);

  symvol::QuadConfig qcfg;
  qcfg.abs_tol = 1e-10;
  qcfg.rel_tol = 1e-10;
  qcfg.max_subdivisions = 4000;
  double exact_cdf = 0.0;
  double worst = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double lo = static_cast<double>(i) / cells;
    const double hi = static_cast<double>(i + 1) / cells;
    exact_cdf += symvol::integrate_1d(symvol::density_vp2, lo, hi, qcfg).value;
    worst = std::max(worst, std::abs(cdf[i].second - exact_cdf));
  }
  // DKW: P(KS > 0.004) <= 2 exp(-2 n eps^2) ~ 2e-14 at n = 1e6.
  CHECK(worst < 0.004);
}

TEST_CASE("compare ranks bodies and sees through rotations") {
  MCConfig cfg;
  cfg.samples = 1000000;
  cfg.seed = 8;
  const auto disc = symvol::make_kind("disc");
  const auto hexagon = symvol::make_kind("hexagon");
  const auto square = symvol::make_kind("square");

  const symvol::CompareReport single =
      symvol::compare_bodies({{"disc", disc.get()}}, {3, 1.0, true}, cfg);
  CHECK(single.rows.size() == 1);

  // A rotated square is the same body in distribution.
  const symvol::SymmetricPolygon rotated({Vec2(std::sqrt(2.0), 0), Vec2(0, std::sqrt(2.0))});
  const symvol::CompareReport rotation_pair = symvol::compare_bodies(
      {{"square", square.get()}, {"rotated", &rotated}}, {3, 1.0, true}, cfg);
  CHECK(std::abs(rotation_pair.z_scores(0, 1)) < 4.0);

  const symvol::CompareReport ranked = symvol::compare_bodies(
      {{"square", square.get()}, {"disc", disc.get()}, {"hexagon", hexagon.get()}},
      {3, 1.0, true}, cfg);
  CHECK(ranked.rows[0].name == "disc");
  CHECK(ranked.rows[1].name == "hexagon");
  CHECK(ranked.rows[2].name == "square");
  CHECK(ranked.z_scores(1, 0) > 3.0);
  CHECK(ranked.z_scores(2, 1) > 3.0);

  const auto ball = symvol::make_kind("ball");
  CHECK_THROWS_AS(
      symvol::compare_bodies({{"disc", disc.get()}, {"ball", ball.get()}}, {3, 1.0, true}, cfg),
      std::domain_error);
}

TEST_CASE("configuration validation") {
  const auto disc = symvol::make_kind("disc");
  MCConfig cfg;
  cfg.samples = 100;
  CHECK_THROWS_AS(symvol::estimate_moment(*disc, {1, 1.0, true}, cfg), std::domain_error);
  CHECK_THROWS_AS(symvol::estimate_moment(*disc, {2, 0.5, true}, cfg), std::domain_error);
  MCConfig bad = cfg;
  bad.batch = 0;
  CHECK_THROWS_AS(symvol::estimate_moment(*disc, {2, 1.0, true}, bad), std::domain_error);
  bad = cfg;
  bad.samples = 10;
  bad.batch = 100;
  CHECK_THROWS_AS(symvol::estimate_moment(*disc, {2, 1.0, true}, bad), std::domain_error);
}

TEST_CASE("json line serialization") {
  MomentEstimate est;
  est.mean = 0.25;
  est.std_error = 0.001;
  est.samples = 1000;
  est.spec = {2, 1.0, true};
  est.seed = 42;
  est.elapsed_seconds = 1.5;
  const std::string with_elapsed = symvol::estimate_json_line("disc", est, true);
  CHECK(with_elapsed.find("elapsed_seconds") != std::string::npos);
  const std::string without = symvol::estimate_json_line("disc", est, false);
  CHECK(without.find("elapsed_seconds") == std::string::npos);
  CHECK(without.find("\"mean\":0.25") != std::string::npos);
}
