#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = std::string(SYMVOL_CLI_PATH) + ".test_stdout";
  const std::string command =
      std::string(SYMVOL_CLI_PATH) + " " + args + " > " + out_path + " 2> /dev/null";
  const int status = std::system(command.c_str());
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(status), buffer.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

const std::string kBodies = SYMVOL_BODIES_DIR;

}  // namespace

TEST_CASE("exact command prints the golden values") {
  const RunResult ellipsoid = run_cli("exact --body ellipsoid --N 3");
  CHECK(ellipsoid.exit_code == 0);
  CHECK(ellipsoid.out.find("27/512") != std::string::npos);

  const RunResult parallelogram = run_cli("exact --body parallelogram --N 2");
  CHECK(parallelogram.exit_code == 0);
  CHECK(parallelogram.out.find("5/27") != std::string::npos);

  const RunResult ellipse = run_cli("exact --body ellipse --N 2");
  CHECK(ellipse.exit_code == 0);
  CHECK(ellipse.out.find("0.1801") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("exact --body ellipsoid --N 2").exit_code == 2);
  CHECK(run_cli("exact --body torus --N 3").exit_code == 2);
  CHECK(run_cli("exact --body ellipse --N 2 --frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  const RunResult mc_help = run_cli("mc --help");
  CHECK(mc_help.exit_code == 0);
  for (const char* flag : {"--seed", "--samples", "--workers", "--body", "--kind", "--out"}) {
    CHECK(mc_help.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("runtime failures exit with code 1") {
  CHECK(run_cli("mc --body /nonexistent.json --N 2").exit_code == 1);
}

TEST_CASE("density output is a normalized CSV") {
  const RunResult result = run_cli("density --which vp2 --points 200");
  CHECK(result.exit_code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 201);  // header + 200 points
  CHECK(rows[0][0] == "t");
  double trapezoid = 0.0;
  double prev_t = 0.0, prev_f = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    const double f = std::stod(rows[i][1]);
    CHECK(f >= 0.0);
    if (i > 1) trapezoid += 0.5 * (f + prev_f) * (t - prev_t);
    prev_t = t;
    prev_f = f;
  }
  CHECK(trapezoid == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("mc runs are byte-identical for a fixed seed") {
  const std::string args = "mc --body " + kBodies +
                           "/disc.json --symmetric --N 2 --p 1 --samples 200000 --seed 7";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(!first.out.empty());
  CHECK(first.out == second.out);
  CHECK(first.out.find("elapsed") == std::string::npos);

  const RunResult other_seed = run_cli("mc --body " + kBodies +
                                       "/disc.json --symmetric --N 2 --p 1 --samples 200000 "
                                       "--seed 8");
  CHECK(other_seed.out != first.out);
}

TEST_CASE("scan emits convex second differences for the hexagon") {
  const RunResult result =
      run_cli("scan --movement vertex --body " + kBodies + "/hexagon.json --grid 21");
  CHECK(result.exit_code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 22);
  double scale = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) scale = std::max(scale, std::stod(rows[i][1]));
  for (std::size_t i = 2; i + 1 < rows.size(); ++i) {
    CHECK(std::stod(rows[i][3]) >= -1e-9 * scale);
  }
}

TEST_CASE("quad command matches the exact square value") {
  const RunResult result = run_cli("quad --kind square --N 2 --tol 1e-8");
  CHECK(result.exit_code == 0);
  const auto pos = result.out.find("\"value\":");
  REQUIRE(pos != std::string::npos);
  const double value = std::stod(result.out.substr(pos + 8));
  CHECK(value == doctest::Approx(5.0 / 27.0).epsilon(1e-6));
}

TEST_CASE("compare ranks disc below square") {
  const RunResult result =
      run_cli("compare --kinds disc,square --N 3 --p 1 --samples 100000 --seed 11");
  CHECK(result.exit_code == 0);
  const auto rows = parse_csv(result.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "disc");
  CHECK(rows[2][1] == "square");
}

TEST_CASE("outputs are written to --out files") {
  const std::string out_path = std::string(SYMVOL_CLI_PATH) + ".out_file";
  const RunResult result =
      run_cli("exact --body ellipsoid --N 4 --out " + out_path);
  CHECK(result.exit_code == 0);
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str().find("72/715") != std::string::npos);
  std::remove(out_path.c_str());
}
