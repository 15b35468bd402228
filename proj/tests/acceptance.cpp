// Acceptance suite: one pass/fail line per criterion, full-size runs.
// Expect a few minutes of wall clock on one core; pass criterion numbers as
// arguments to run a subset.

#include "symvol/bodies.hpp"
#include "symvol/exact.hpp"
#include "symvol/hull.hpp"
#include "symvol/montecarlo.hpp"
#include "symvol/movements.hpp"
#include "symvol/quadrature.hpp"
#include "symvol/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Half-vertices in angular order on a random ellipse: strictly convex by
// construction.
symvol::SymmetricPolygon random_symmetric_polygon(symvol::RandomStream& rng, int half_count) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<double> angles;
    for (int i = 0; i < half_count; ++i) angles.push_back(rng.uniform() * kPi);
    std::sort(angles.begin(), angles.end());
    bool spaced = true;
    for (int i = 0; i + 1 < half_count; ++i) {
      if (angles[i + 1] - angles[i] < 1e-2) spaced = false;
    }
    if (!spaced || angles.front() + kPi - angles.back() < 1e-2) continue;
    const double a = 0.5 + rng.uniform();
    const double b = 0.5 + rng.uniform();
    const double tilt = rng.uniform() * kPi;
    Eigen::Matrix2d frame;
    frame << a * std::cos(tilt), -b * std::sin(tilt), a * std::sin(tilt), b * std::cos(tilt);
    std::vector<symvol::Vec2> half;
    for (double angle : angles) {
      half.push_back(frame * symvol::Vec2(std::cos(angle), std::sin(angle)));
    }
    try {
      return symvol::SymmetricPolygon(half);
    } catch (const symvol::InvalidBodyError&) {
    }
  }
  throw std::runtime_error("failed to draw a random symmetric polygon");
}

// Criterion-3 Monte Carlo runs are shared with criterion 9.
struct SquareRun {
  symvol::MomentEstimate workers8;
};
std::map<int, SquareRun>& square_runs() {
  static std::map<int, SquareRun> runs;
  return runs;
}

const std::vector<int>& criterion3_points() {
  static const std::vector<int> ns = {2, 3, 5, 10};
  return ns;
}

void ensure_square_runs() {
  if (!square_runs().empty()) return;
  const auto square = symvol::make_kind("square");
  for (int n : criterion3_points()) {
    symvol::MCConfig cfg;
    cfg.samples = 10000000;
    cfg.seed = 90210 + n;
    cfg.workers = 8;
    square_runs()[n] = {symvol::estimate_moment(*square, {n, 1.0, true}, cfg)};
  }
}

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<int, symvol::ExactRational>> golden = {
      {3, symvol::ExactRational(27, 512)},
      {4, symvol::ExactRational(72, 715)},
      {5, symvol::ExactRational(585, 4096)},
      {6, symvol::ExactRational(58104, 323323)}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [n, expected] : golden) {
    const symvol::ExactRational got = symvol::ev_ellipsoid(n);
    if (got != expected) {
      pass = false;
      detail << "N=" << n << " got " << symvol::rational_to_string(got) << " ";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    pass = false;
    detail << "runtime " << elapsed << "s";
  } else {
    detail << "bit-exact for N=3..6 in " << elapsed << "s";
  }
  report(1, "ellipsoid rational golden values", pass, detail.str());
}

void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double fourth_form = 7.0 * (-3289.0 + 600.0 * pi2) / (432.0 * pi4);
  const std::vector<std::pair<int, double>> golden = {
      {2, 16.0 / (9.0 * pi2)},
      {3, 35.0 / (12.0 * pi2)},
      {4, (-5632.0 + 1575.0 * pi2) / (270.0 * pi4)},
      {6, fourth_form}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [n, expected] : golden) {
    const double got = symvol::ev_ellipse(n);
    if (std::abs(got - expected) > 1e-9) {
      pass = false;
      detail << "N=" << n << " off by " << std::abs(got - expected) << "; ";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) pass = false;
  detail << "runtime " << elapsed << "s";
  if (!pass) {
    // Source-table erratum: the fourth closed form is the N = 5 value. The
    // reduction integral itself is hand-verified at N = 2 and Monte Carlo
    // confirms both E V at N = 5 and N = 6 (see the diagnostics below); the
    // literal N = 6 pairing asserted by this criterion cannot hold.
    detail << "; diagnosis: |ev_ellipse(5) - fourth_form| = "
           << std::abs(symvol::ev_ellipse(5) - fourth_form);
    symvol::MCConfig cfg;
    cfg.samples = 4000000;
    cfg.seed = 20206;
    cfg.workers = 8;
    const auto disc = symvol::make_kind("disc");
    const auto mc5 = symvol::estimate_moment(*disc, {5, 1.0, true}, cfg);
    const auto mc6 = symvol::estimate_moment(*disc, {6, 1.0, true}, cfg);
    detail << ", MC(N=5) = " << mc5.mean << " +/- " << mc5.std_error
           << " vs fourth_form = " << fourth_form << ", MC(N=6) = " << mc6.mean << " +/- "
           << mc6.std_error << " vs ev_ellipse(6) = " << symvol::ev_ellipse(6);
  }
  report(2, "ellipse closed forms within 1e-9 at N=2,3,4,6", pass, detail.str());
}

void criterion_3() {
  ensure_square_runs();
  const symvol::SymmetricPolygon square({symvol::Vec2(1, 1), symvol::Vec2(-1, 1)});
  symvol::QuadConfig qcfg;
  qcfg.abs_tol = 1e-9;
  qcfg.rel_tol = 1e-9;
  bool pass = true;
  std::ostringstream detail;
  for (int n : criterion3_points()) {
    const double exact = symvol::rational_to_double(symvol::ev_parallelogram(n));
    const double quad = symvol::ev_symmetric_2d(square, n, qcfg);
    const symvol::MomentEstimate& mc = square_runs()[n].workers8;
    const bool quad_ok = std::abs(quad - exact) <= 1e-6;
    const bool mc_exact_ok = std::abs(mc.mean - exact) <= 4.0 * mc.std_error;
    const bool mc_quad_ok = std::abs(mc.mean - quad) <= 4.0 * mc.std_error + 1e-6;
    if (!(quad_ok && mc_exact_ok && mc_quad_ok)) {
      pass = false;
      detail << "N=" << n << " exact " << exact << " quad " << quad << " mc " << mc.mean
             << "+/-" << mc.std_error << "; ";
    }
  }
  if (pass) detail << "rational = quadrature = Monte Carlo for N in {2,3,5,10}";
  report(3, "triple-oracle agreement on the square", pass, detail.str());
}

void criterion_4() {
  symvol::QuadConfig cfg;
  cfg.abs_tol = 1e-12;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 6000;
  bool pass = true;
  std::ostringstream detail;

  const auto vp2_moment = [&](int k) {
    const auto f = [k](double t) { return std::pow(t, k) * symvol::density_vp2(t); };
    return symvol::integrate_1d(f, 0.0, 0.5, cfg).value +
           symvol::integrate_1d(f, 0.5, 1.0, cfg).value;
  };
  const double vp2_mass = vp2_moment(0);
  const double vp2_mean = vp2_moment(1);
  const double vp2_m2 = vp2_moment(2);
  if (std::abs(vp2_mass - 1.0) > 1e-8) pass = false;
  if (std::abs(vp2_mean - 5.0 / 27.0) > 1e-6) pass = false;
  if (std::abs(vp2_m2 - 1.0 / 18.0) > 1e-6) pass = false;

  const double upper = 2.0 / kPi;
  const double ve2_mass = symvol::integrate_1d(symvol::density_ve2, 0.0, upper, cfg).value;
  const double ve2_mean =
      symvol::integrate_1d([](double t) { return t * symvol::density_ve2(t); }, 0.0, upper, cfg)
          .value;
  if (std::abs(ve2_mass - 1.0) > 1e-10) pass = false;
  if (std::abs(ve2_mean - 16.0 / (9.0 * kPi * kPi)) > 1e-8) pass = false;

  // Kolmogorov-Smirnov distance against 1e7-sample empirical CDFs.
  const auto ks_distance = [&](const symvol::Body& body, double support_end,
                               const std::function<double(double)>& density) {
    const int cells = 200;
    std::vector<double> grid;
    for (int i = 1; i <= cells; ++i) grid.push_back(support_end * i / cells);
    symvol::MCConfig mc;
    mc.samples = 10000000;
    mc.seed = 424242;
    mc.workers = 8;
    const auto cdf = symvol::empirical_cdf(body, {2, 1.0, true}, mc, grid);
    double exact_cdf = 0.0;
    double worst = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double lo = support_end * i / cells;
      const double hi = support_end * (i + 1) / cells;
      exact_cdf += symvol::integrate_1d(density, lo, hi, cfg).value;
      worst = std::max(worst, std::abs(cdf[i].second - exact_cdf));
    }
    return worst;
  };
  const double ks_square = ks_distance(*symvol::make_kind("square"), 1.0, symvol::density_vp2);
  const double ks_disc = ks_distance(*symvol::make_kind("disc"), upper, symvol::density_ve2);
  if (ks_square > 0.002) pass = false;
  if (ks_disc > 0.002) pass = false;

  detail << "vp2 mass " << vp2_mass << " mean " << vp2_mean << " m2 " << vp2_m2 << "; ve2 mass "
         << ve2_mass << " mean " << ve2_mean << "; KS square " << ks_square << " disc "
         << ks_disc;
  report(4, "density normalization, moments, and KS fit", pass, detail.str());
}

void criterion_5() {
  bool pass = true;
  std::ostringstream detail;
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const double quad = symvol::ev_symmetric_ball_3d(n);
    const double exact = symvol::rational_to_double(symvol::ev_ellipsoid(n));
    worst = std::max(worst, std::abs(quad - exact));
    if (std::abs(quad - exact) > 1e-9) {
      pass = false;
      detail << "N=" << n << " off by " << std::abs(quad - exact) << "; ";
    }
  }
  detail << "max |err| " << worst << " over N=3..8";
  report(5, "spatial reduction equals ellipsoid rationals within 1e-9", pass, detail.str());
}

void criterion_6() {
  symvol::RandomStream rng(606060, 0);
  bool pass = true;
  std::ostringstream detail;
  int violations = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 2 + static_cast<int>(rng.next_u64() % 5);  // m <= 6
    const symvol::SymmetricPolygon base = random_symmetric_polygon(rng, m);
    symvol::LinearParameterSystem system{
        base, symvol::Vec2(rng.normal(), rng.normal()).normalized(), {}};
    for (std::size_t i = 0; i < base.cycle().size(); ++i) {
      system.speeds.push_back(rng.uniform_sym());
    }
    std::vector<double> grid;
    for (int i = 0; i < 21; ++i) grid.push_back(-1.0 + 2.0 * i / 20.0);
    const auto scan = symvol::convexity_scan_area(system, grid);
    if (scan.convexity_violation) ++violations;
  }
  if (violations > 0) {
    pass = false;
    detail << violations << " of 50 systems violated convexity";
  } else {
    detail << "hull area convex along all 50 random linear parameter systems";
  }
  report(6, "exact hull area is convex in t", pass, detail.str());
}

void criterion_7() {
  const symvol::SymmetricPolygon hexagon = symvol::regular_polygon(3);
  const auto movement = symvol::vertex_movement(hexagon, 0);
  std::vector<double> grid;
  for (int i = 0; i < 21; ++i) {
    grid.push_back(movement.speed.t_min() +
                   (movement.speed.t_max() - movement.speed.t_min()) * i / 20.0);
  }
  bool pass = true;
  std::ostringstream detail;
  const std::vector<std::pair<int, double>> configs = {{2, 1.0}, {2, 2.0}, {3, 1.0}};
  for (const auto& [n, p] : configs) {
    symvol::MCConfig cfg;
    cfg.samples = 1000000;
    cfg.seed = 7070 + n + static_cast<int>(p);
    cfg.workers = 8;
    const auto scan = symvol::convexity_scan_moment(movement.speed, grid, {n, p, true}, cfg);
    const auto& mid = scan.points[10];
    const double best_end = std::max(scan.points.front().value, scan.points.back().value);
    const double end_se = std::max(scan.points.front().std_error, scan.points.back().std_error);
    const double spread = std::sqrt(end_se * end_se + mid.std_error * mid.std_error);
    const bool endpoint_wins = best_end - mid.value > 3.0 * spread;
    if (scan.convexity_violation || !endpoint_wins) {
      pass = false;
      detail << "(N=" << n << ",p=" << p << ") violation=" << scan.convexity_violation
             << " endpoint z=" << (best_end - mid.value) / spread << "; ";
    } else {
      detail << "(N=" << n << ",p=" << p
             << ") endpoint z=" << (best_end - mid.value) / spread << "; ";
    }
  }
  for (int n : {2, 3}) {
    symvol::MCConfig cfg;
    cfg.samples = 1000000;
    cfg.seed = 7171 + n;
    cfg.workers = 8;
    const auto run = symvol::squeeze_to_parallelogram(hexagon, {n, 1.0, true}, cfg);
    const double target = symvol::rational_to_double(symvol::ev_parallelogram(n));
    const auto& last = run.trace.back();
    if (std::abs(last.estimate - target) > 4.0 * last.std_error) {
      pass = false;
      detail << "squeeze N=" << n << " ended at " << last.estimate << " vs " << target << "; ";
    }
  }
  report(7, "SRS convexity, strictness, and squeeze to the parallelogram", pass, detail.str());
}

void criterion_8() {
  symvol::MCConfig cfg;
  cfg.samples = 10000000;
  cfg.seed = 808080;
  cfg.workers = 8;
  const auto disc = symvol::make_kind("disc");
  const auto hexagon = symvol::make_kind("hexagon");
  const auto octagon = symvol::make_kind("octagon");
  const auto square = symvol::make_kind("square");
  const auto result = symvol::compare_bodies({{"disc", disc.get()},
                                              {"hexagon", hexagon.get()},
                                              {"octagon", octagon.get()},
                                              {"square", square.get()}},
                                             {3, 1.0, true}, cfg);
  std::map<std::string, int> rank;
  std::ostringstream detail;
  detail << "ranking:";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    rank[result.rows[i].name] = static_cast<int>(i);
    detail << " " << result.rows[i].name << "=" << result.rows[i].estimate.mean;
  }
  // The paper proves the disc minimum and square maximum; the interior
  // octagon/hexagon order is reported but not asserted.
  bool pass = true;
  const auto gap_z = [&](const std::string& low, const std::string& high) {
    return result.z_scores(rank[high], rank[low]);
  };
  for (const auto& [low, high] : std::vector<std::pair<std::string, std::string>>{
           {"disc", "hexagon"}, {"disc", "octagon"}, {"hexagon", "square"},
           {"octagon", "square"}}) {
    const double z = gap_z(low, high);
    if (!(z > 3.0)) {
      pass = false;
      detail << "; " << low << "<" << high << " z=" << z;
    }
  }
  detail << "; octagon-vs-hexagon z=" << gap_z("octagon", "hexagon");
  report(8, "moment ordering disc < {hexagon, octagon} < square", pass, detail.str());
}

void criterion_9() {
  ensure_square_runs();
  const auto square = symvol::make_kind("square");
  bool pass = true;
  std::ostringstream detail;
  for (int n : criterion3_points()) {
    symvol::MCConfig cfg;
    cfg.samples = 10000000;
    cfg.seed = 90210 + n;
    cfg.workers = 1;
    const symvol::MomentEstimate single = symvol::estimate_moment(*square, {n, 1.0, true}, cfg);
    const symvol::MomentEstimate& eight = square_runs()[n].workers8;
    if (single.mean != eight.mean || single.std_error != eight.std_error) {
      pass = false;
      detail << "N=" << n << " differs; ";
    }
  }
  if (pass) detail << "means and standard errors bit-identical for workers in {1, 8}";
  report(9, "worker-count determinism of the criterion-3 runs", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  const auto want = [&](int index) { return selected.empty() || selected.count(index) > 0; };

  const auto start = std::chrono::steady_clock::now();
  if (want(1)) criterion_1();
  if (want(2)) criterion_2();
  if (want(3)) criterion_3();
  if (want(4)) criterion_4();
  if (want(5)) criterion_5();
  if (want(6)) criterion_6();
  if (want(7)) criterion_7();
  if (want(8)) criterion_8();
  if (want(9)) criterion_9();
  std::printf("%s (%d failure%s, %.1fs total)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures, g_failures == 1 ? "" : "s", seconds_since(start));
  return g_failures == 0 ? 0 : 1;
}
