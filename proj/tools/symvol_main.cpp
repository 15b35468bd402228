#include "symvol/bodies.hpp"
#include "symvol/exact.hpp"
#include "symvol/montecarlo.hpp"
#include "symvol/movements.hpp"
#include "symvol/quadrature.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
  }
}

struct BodyChoice {
  std::string path;
  std::string kind;

  std::pair<std::string, std::unique_ptr<symvol::Body>> resolve() const {
    if (path.empty() == kind.empty()) {
      throw UsageError("exactly one of --body and --kind is required");
    }
    if (!path.empty()) {
      return {std::filesystem::path(path).stem().string(), symvol::load_body(path)};
    }
    return {kind, symvol::make_kind(kind)};
  }

  symvol::SymmetricPolygon resolve_polygon() const {
    if (path.empty() == kind.empty()) {
      throw UsageError("exactly one of --body and --kind is required");
    }
    if (!path.empty()) return symvol::as_polygon(*symvol::load_body(path));
    return symvol::make_polygon_kind(kind);
  }
};

std::vector<double> parse_grid(const std::string& spec, double t_min, double t_max) {
  double lo = t_min, hi = t_max;
  int count = 0;
  const auto first = spec.find(':');
  if (first == std::string::npos) {
    count = std::stoi(spec);
  } else {
    const auto second = spec.find(':', first + 1);
    if (second == std::string::npos) throw UsageError("grid spec must be N or min:max:N");
    lo = std::stod(spec.substr(0, first));
    hi = std::stod(spec.substr(first + 1, second - first - 1));
    count = std::stoi(spec.substr(second + 1));
  }
  if (count < 3 || !(lo < hi)) throw UsageError("grid needs at least 3 points and min < max");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * i / (count - 1);
  return grid;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symvol: moments of the normalized volume of random symmetric polytopes"};
  app.require_subcommand(1);
  std::function<void()> action;

  // exact ------------------------------------------------------------------
  auto* exact_cmd = app.add_subcommand("exact", "closed-form E V for the extremal bodies");
  struct {
    std::string body;
    int num_points = 2;
    double tol = 1e-10;
    std::string out;
  } exact_opts;
  exact_cmd->add_option("--body", exact_opts.body, "parallelogram | ellipse | ellipsoid")
      ->required();
  exact_cmd->add_option("--N", exact_opts.num_points, "number of random points")->required();
  exact_cmd->add_option("--tol", exact_opts.tol, "quadrature tolerance (ellipse only)");
  exact_cmd->add_option("--out", exact_opts.out, "also write the JSON result here");
  exact_cmd->callback([&] {
    action = [&] {
      symvol::ExactResult result;
      result.num_points = exact_opts.num_points;
      if (exact_opts.body == "parallelogram") {
        if (exact_opts.num_points < 2) throw UsageError("parallelogram needs N >= 2");
        result.value_rational = symvol::ev_parallelogram(exact_opts.num_points);
        result.value_decimal = symvol::rational_to_double(*result.value_rational);
        result.formula = "parallelogram_harmonic";
      } else if (exact_opts.body == "ellipse") {
        if (exact_opts.num_points < 2) throw UsageError("ellipse needs N >= 2");
        symvol::QuadConfig cfg;
        cfg.abs_tol = cfg.rel_tol = exact_opts.tol;
        result.value_decimal = symvol::ev_ellipse(exact_opts.num_points, cfg);
        result.formula = "ellipse_reduction_integral";
      } else if (exact_opts.body == "ellipsoid") {
        if (exact_opts.num_points < 3) throw UsageError("ellipsoid needs N >= 3");
        result.value_rational = symvol::ev_ellipsoid(exact_opts.num_points);
        result.value_decimal = symvol::rational_to_double(*result.value_rational);
        result.formula = "ellipsoid_rational_integral";
      } else {
        throw UsageError("--body must be parallelogram, ellipse, or ellipsoid");
      }
      write_output(symvol::exact_result_json(result) + "\n", exact_opts.out);
    };
  });

  // mc ---------------------------------------------------------------------
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo moment estimate");
  struct {
    BodyChoice body;
    symvol::MomentSpec spec;
    symvol::MCConfig cfg;
    bool nonsymmetric = false;
    std::string out;
  } mc_opts;
  mc_cmd->add_option("--body", mc_opts.body.path, "body JSON file");
  mc_cmd->add_option("--kind", mc_opts.body.kind, "canonical body name");
  mc_cmd->add_option("--N", mc_opts.spec.num_points, "number of random points")->required();
  mc_cmd->add_option("--p", mc_opts.spec.power, "moment order (default 1)");
  mc_cmd->add_flag("--symmetric", "estimate E V (default)");
  mc_cmd->add_flag("--nonsymmetric", mc_opts.nonsymmetric, "estimate E U instead of E V");
  mc_cmd->add_option("--samples", mc_opts.cfg.samples, "number of replications");
  mc_cmd->add_option("--seed", mc_opts.cfg.seed, "RNG seed");
  mc_cmd->add_option("--batch", mc_opts.cfg.batch, "replications per RNG stream");
  mc_cmd->add_option("--workers", mc_opts.cfg.workers, "worker threads (does not affect results)");
  mc_cmd->add_option("--out", mc_opts.out, "JSON-lines output file (includes elapsed_seconds)");
  mc_cmd->callback([&] {
    action = [&] {
      mc_opts.spec.symmetric = !mc_opts.nonsymmetric;
      mc_opts.cfg.batch = std::min(mc_opts.cfg.batch, mc_opts.cfg.samples);
      auto [name, body] = mc_opts.body.resolve();
      const symvol::MomentEstimate estimate =
          symvol::estimate_moment(*body, mc_opts.spec, mc_opts.cfg);
      std::cout << symvol::estimate_json_line(name, estimate, false) << "\n";
      if (!mc_opts.out.empty()) {
        std::ofstream out(mc_opts.out);
        if (!out) throw std::runtime_error("cannot open output file: " + mc_opts.out);
        out << symvol::estimate_json_line(name, estimate, true) << "\n";
      }
    };
  });

  // quad -------------------------------------------------------------------
  auto* quad_cmd = app.add_subcommand("quad", "reduction-formula quadrature of E V");
  struct {
    BodyChoice body;
    int num_points = 2;
    double tol = 1e-10;
    std::string out;
  } quad_opts;
  quad_cmd->add_option("--body", quad_opts.body.path, "body JSON file");
  quad_cmd->add_option("--kind", quad_opts.body.kind, "canonical body name");
  quad_cmd->add_option("--N", quad_opts.num_points, "number of random points")->required();
  quad_cmd->add_option("--tol", quad_opts.tol, "quadrature tolerance");
  quad_cmd->add_option("--out", quad_opts.out, "also write the JSON result here");
  quad_cmd->callback([&] {
    action = [&] {
      symvol::QuadConfig cfg;
      cfg.abs_tol = cfg.rel_tol = quad_opts.tol;
      json doc;
      doc["N"] = quad_opts.num_points;
      if (!quad_opts.body.kind.empty() &&
          (quad_opts.body.kind == "ball" || quad_opts.body.kind == "disc")) {
        if (quad_opts.body.kind == "ball") {
          doc["body"] = "ball";
          doc["method"] = "spatial_reduction";
          doc["value"] = symvol::ev_symmetric_ball_3d(quad_opts.num_points, cfg);
        } else {
          doc["body"] = "disc";
          doc["method"] = "ellipse_reduction_integral";
          doc["value"] = symvol::ev_ellipse(quad_opts.num_points, cfg);
        }
      } else {
        auto [name, body] = quad_opts.body.resolve();
        if (body->dimension() == 3) {
          if (dynamic_cast<const symvol::Ellipsoid*>(body.get()) == nullptr) {
            throw UsageError("3-D quadrature supports ellipsoids only");
          }
          // E V is a linear invariant, so any ellipsoid has the ball's value.
          doc["body"] = name;
          doc["method"] = "spatial_reduction";
          doc["value"] = symvol::ev_symmetric_ball_3d(quad_opts.num_points, cfg);
        } else if (dynamic_cast<const symvol::Ellipsoid*>(body.get()) != nullptr) {
          doc["body"] = name;
          doc["method"] = "ellipse_reduction_integral";
          doc["value"] = symvol::ev_ellipse(quad_opts.num_points, cfg);
        } else {
          const symvol::SymmetricPolygon polygon = symvol::as_polygon(*body);
          doc["body"] = name;
          doc["method"] = "planar_reduction";
          doc["value"] = symvol::ev_symmetric_2d(polygon, quad_opts.num_points, cfg);
        }
      }
      write_output(doc.dump() + "\n", quad_opts.out);
    };
  });

  // density ----------------------------------------------------------------
  auto* density_cmd = app.add_subcommand("density", "closed-form densities of V_{K,2}");
  struct {
    std::string which;
    int points = 200;
    std::string out;
  } density_opts;
  density_cmd->add_option("--which", density_opts.which, "vp2 | ve2")->required();
  density_cmd->add_option("--points", density_opts.points, "number of grid rows");
  density_cmd->add_option("--out", density_opts.out, "CSV output file");
  density_cmd->callback([&] {
    action = [&] {
      if (density_opts.points < 2) throw UsageError("--points must be at least 2");
      double upper;
      std::function<double(double)> density;
      if (density_opts.which == "vp2") {
        upper = 1.0;
        density = symvol::density_vp2;
      } else if (density_opts.which == "ve2") {
        upper = 2.0 / std::numbers::pi;
        density = symvol::density_ve2;
      } else {
        throw UsageError("--which must be vp2 or ve2");
      }
      std::ostringstream csv;
      csv << "t,density\n";
      for (int i = 0; i < density_opts.points; ++i) {
        const double t = upper * i / (density_opts.points - 1);
        csv << format_double(t) << "," << format_double(density(t)) << "\n";
      }
      write_output(csv.str(), density_opts.out);
    };
  });

  // scan -------------------------------------------------------------------
  auto* scan_cmd = app.add_subcommand("scan", "convexity scan along a movement");
  struct {
    std::string movement = "vertex";
    BodyChoice body;
    int index = 0;
    std::string direction = "0,1";
    std::string grid = "21";
    std::string functional = "area";
    std::string speeds;
    symvol::MomentSpec spec;
    symvol::MCConfig cfg;
    std::string out;
  } scan_opts;
  scan_cmd->add_option("--movement", scan_opts.movement, "vertex | steiner | lps");
  scan_cmd->add_option("--body", scan_opts.body.path, "body JSON file (planar polytope)");
  scan_cmd->add_option("--kind", scan_opts.body.kind, "canonical planar body name");
  scan_cmd->add_option("--index", scan_opts.index, "half-vertex index for the vertex movement");
  scan_cmd->add_option("--direction", scan_opts.direction, "movement direction x,y");
  scan_cmd->add_option("--grid", scan_opts.grid, "N (over the validity interval) or min:max:N");
  scan_cmd->add_option("--functional", scan_opts.functional, "area | moment");
  scan_cmd->add_option("--speeds", scan_opts.speeds, "per-cycle-vertex speeds for --movement lps");
  scan_cmd->add_option("--N", scan_opts.spec.num_points, "random points for --functional moment");
  scan_cmd->add_option("--p", scan_opts.spec.power, "moment order");
  scan_cmd->add_option("--samples", scan_opts.cfg.samples, "replications per grid point");
  scan_cmd->add_option("--seed", scan_opts.cfg.seed, "common-random-number seed");
  scan_cmd->add_option("--batch", scan_opts.cfg.batch, "replications per RNG stream");
  scan_cmd->add_option("--workers", scan_opts.cfg.workers, "worker threads");
  scan_cmd->add_option("--out", scan_opts.out, "CSV output file");
  scan_cmd->callback([&] {
    action = [&] {
      scan_opts.cfg.batch = std::min(scan_opts.cfg.batch, scan_opts.cfg.samples);
      const symvol::SymmetricPolygon polygon = scan_opts.body.resolve_polygon();
      symvol::ScanReport report;
      if (scan_opts.movement == "lps") {
        if (scan_opts.functional != "area") {
          throw UsageError("linear parameter systems scan the area functional only");
        }
        const auto parts = split_list(scan_opts.direction);
        if (parts.size() != 2) throw UsageError("--direction must be x,y");
        symvol::LinearParameterSystem system{
            polygon, symvol::Vec2(std::stod(parts[0]), std::stod(parts[1])).normalized(), {}};
        for (const auto& s : split_list(scan_opts.speeds)) system.speeds.push_back(std::stod(s));
        if (system.speeds.size() != polygon.cycle().size()) {
          throw UsageError("--speeds needs one value per full-cycle vertex");
        }
        const auto grid = parse_grid(scan_opts.grid, -1.0, 1.0);
        report = symvol::convexity_scan_area(system, grid);
      } else {
        std::optional<symvol::SpeedFunction> speed;
        if (scan_opts.movement == "vertex") {
          speed = symvol::vertex_movement(polygon, scan_opts.index).speed;
        } else if (scan_opts.movement == "steiner") {
          const auto parts = split_list(scan_opts.direction);
          if (parts.size() != 2) throw UsageError("--direction must be x,y");
          speed = symvol::steiner_movement(
              polygon, symvol::Vec2(std::stod(parts[0]), std::stod(parts[1])));
        } else {
          throw UsageError("--movement must be vertex, steiner, or lps");
        }
        const auto grid = parse_grid(scan_opts.grid, speed->t_min(), speed->t_max());
        if (scan_opts.functional == "area") {
          report = symvol::convexity_scan_area(*speed, grid);
        } else if (scan_opts.functional == "moment") {
          report = symvol::convexity_scan_moment(*speed, grid, scan_opts.spec, scan_opts.cfg);
        } else {
          throw UsageError("--functional must be area or moment");
        }
      }
      write_output(symvol::scan_csv(report), scan_opts.out);
      if (report.convexity_violation) {
        std::cerr << "convexity violation detected beyond tolerance\n";
      }
    };
  });

  // compare ----------------------------------------------------------------
  auto* compare_cmd = app.add_subcommand("compare", "rank bodies by estimated moment");
  struct {
    std::string bodies;
    std::string kinds;
    symvol::MomentSpec spec;
    symvol::MCConfig cfg;
    bool nonsymmetric = false;
    std::string out;
  } compare_opts;
  compare_cmd->add_option("--bodies", compare_opts.bodies, "comma-separated body JSON files");
  compare_cmd->add_option("--kinds", compare_opts.kinds, "comma-separated canonical body names");
  compare_cmd->add_option("--N", compare_opts.spec.num_points, "number of random points")
      ->required();
  compare_cmd->add_option("--p", compare_opts.spec.power, "moment order");
  compare_cmd->add_flag("--symmetric", "estimate E V (default)");
  compare_cmd->add_flag("--nonsymmetric", compare_opts.nonsymmetric, "estimate E U");
  compare_cmd->add_option("--samples", compare_opts.cfg.samples, "replications per body");
  compare_cmd->add_option("--seed", compare_opts.cfg.seed, "common-random-number seed");
  compare_cmd->add_option("--batch", compare_opts.cfg.batch, "replications per RNG stream");
  compare_cmd->add_option("--workers", compare_opts.cfg.workers, "worker threads");
  compare_cmd->add_option("--out", compare_opts.out, "CSV output file");
  compare_cmd->callback([&] {
    action = [&] {
      compare_opts.spec.symmetric = !compare_opts.nonsymmetric;
      compare_opts.cfg.batch = std::min(compare_opts.cfg.batch, compare_opts.cfg.samples);
      std::vector<std::pair<std::string, std::unique_ptr<symvol::Body>>> owned;
      for (const auto& path : split_list(compare_opts.bodies)) {
        owned.emplace_back(std::filesystem::path(path).stem().string(), symvol::load_body(path));
      }
      for (const auto& kind : split_list(compare_opts.kinds)) {
        owned.emplace_back(kind, symvol::make_kind(kind));
      }
      if (owned.empty()) throw UsageError("need at least one body (--bodies or --kinds)");
      std::vector<std::pair<std::string, const symvol::Body*>> bodies;
      for (const auto& [name, body] : owned) bodies.emplace_back(name, body.get());
      const symvol::CompareReport report =
          symvol::compare_bodies(bodies, compare_opts.spec, compare_opts.cfg);
      std::ostringstream csv;
      csv << "rank,body,mean,std_error";
      for (std::size_t j = 0; j < report.rows.size(); ++j) {
        if (report.rows.size() > 1) csv << ",z_" << j;
      }
      csv << "\n";
      for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        csv << i << "," << row.name << "," << format_double(row.estimate.mean) << ","
            << format_double(row.estimate.std_error);
        for (std::size_t j = 0; j < report.rows.size(); ++j) {
          if (report.rows.size() > 1) csv << "," << format_double(report.z_scores(i, j));
        }
        csv << "\n";
      }
      write_output(csv.str(), compare_opts.out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    action();
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
