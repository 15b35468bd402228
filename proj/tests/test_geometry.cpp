#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symvol/hull.hpp"
#include "symvol/predicates.hpp"
#include "symvol/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using symvol::RandomStream;
using symvol::Vec2;
using symvol::Vec3;

TEST_CASE("orientation predicates decide exactly") {
  CHECK(symvol::orient2d({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(symvol::orient2d({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(symvol::orient2d({0, 0}, {1, 1}, {2, 2}) == 0);
  // Antipodal triples whose determinant cancels only in exact arithmetic
  // (power-of-two multiples keep the points exactly collinear).
  const Vec2 x(0.1234567890123, 0.9876543210987);
  CHECK(symvol::orient2d(x, -x, 2.0 * x) == 0);

  CHECK(symvol::orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == 1);
  CHECK(symvol::orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, -1}) == -1);
  const Vec3 a(0.3217, -1.734, 0.551), b(1.77, 0.253, -0.97);
  CHECK(symvol::orient3d(a, -a, b, -b) == 0);
  CHECK(symvol::collinear3d(a, -a, 4.0 * a));
  CHECK(!symvol::collinear3d(a, -a, b));
}

TEST_CASE("hull areas match hand values") {
  std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
  CHECK(symvol::hull_volume_2d(tri) == doctest::Approx(0.5).epsilon(1e-14));
  std::vector<Vec2> line = {{0, 0}, {1, 1}, {2, 2}};
  CHECK(symvol::hull_volume_2d(line) == 0.0);
  std::vector<Vec2> rect = {{0, 0}, {2, 0}, {2, 1}, {0, 1}, {1, 0.5}};
  CHECK(symvol::hull_volume_2d(rect) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("hull volumes match hand values") {
  std::vector<Vec3> tetra = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(symvol::hull_volume_3d(tetra) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  std::vector<Vec3> cube;
  for (int mask = 0; mask < 8; ++mask) {
    cube.emplace_back(mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1);
  }
  CHECK(symvol::hull_volume_3d(cube) == doctest::Approx(8.0).epsilon(1e-14));

  std::vector<Vec3> octa = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  CHECK(symvol::hull_volume_3d(octa) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  std::vector<Vec3> flat = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK(symvol::hull_volume_3d(flat) == 0.0);
}

TEST_CASE("symmetric hull special values") {
  std::vector<Vec2> pair = {{1, 0}, {0, 1}};
  CHECK(symvol::symmetric_hull_volume_2d(pair) == doctest::Approx(2.0).epsilon(1e-14));
  std::vector<Vec2> repeated = {{0.3, -0.7}, {0.3, -0.7}};
  CHECK(symvol::symmetric_hull_volume_2d(repeated) == 0.0);
  std::vector<Vec3> basis = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(symvol::symmetric_hull_volume_3d(basis) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("symmetric pair area equals 2|x1 y2 - x2 y1|") {
  RandomStream rng(11, 0);
  for (int rep = 0; rep < 10000; ++rep) {
    const Vec2 x(rng.uniform_sym(), rng.uniform_sym());
    const Vec2 y(rng.uniform_sym(), rng.uniform_sym());
    const double expected = 2.0 * std::abs(x.x() * y.y() - x.y() * y.x());
    std::vector<Vec2> pts = {x, y};
    const double got = symvol::symmetric_hull_volume_2d(pts);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("hull is invariant under permutation and interior points") {
  RandomStream rng(12, 0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 12; ++i) pts.emplace_back(rng.uniform_sym(), rng.uniform_sym());
    const double base = symvol::hull_volume_2d(pts);

    std::vector<Vec2> shuffled = pts;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
    }
    CHECK(symvol::hull_volume_2d(shuffled) == doctest::Approx(base).epsilon(1e-13));

    // Midpoints of point pairs lie inside the hull.
    std::vector<Vec2> padded = pts;
    for (int i = 0; i + 1 < 12; i += 2) padded.push_back(0.5 * (pts[i] + pts[i + 1]));
    CHECK(symvol::hull_volume_2d(padded) == doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("hull volume scales by |det T| under linear maps") {
  RandomStream rng(13, 0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Vec2> pts2;
    for (int i = 0; i < 10; ++i) pts2.emplace_back(rng.uniform_sym(), rng.uniform_sym());
    Eigen::Matrix2d t2;
    t2 << rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym();
    if (std::abs(t2.determinant()) < 1e-3) continue;
    std::vector<Vec2> mapped2;
    for (const Vec2& p : pts2) mapped2.push_back(t2 * p);
    CHECK(symvol::hull_volume_2d(mapped2) ==
          doctest::Approx(std::abs(t2.determinant()) * symvol::hull_volume_2d(pts2))
              .epsilon(1e-9));

    std::vector<Vec3> pts3;
    for (int i = 0; i < 10; ++i) {
      pts3.emplace_back(rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym());
    }
    Eigen::Matrix3d t3;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) t3(r, c) = rng.uniform_sym();
    }
    if (std::abs(t3.determinant()) < 1e-3) continue;
    std::vector<Vec3> mapped3;
    for (const Vec3& p : pts3) mapped3.push_back(t3 * p);
    CHECK(symvol::hull_volume_3d(mapped3) ==
          doctest::Approx(std::abs(t3.determinant()) * symvol::hull_volume_3d(pts3))
              .epsilon(1e-9));
  }
}

TEST_CASE("fast symmetric 3-D path agrees with the generic hull") {
  RandomStream rng(14, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + static_cast<int>(rng.next_u64() % 6);
    std::vector<Vec3> half;
    for (int i = 0; i < n; ++i) {
      half.emplace_back(rng.uniform_sym(), rng.uniform_sym(), rng.uniform_sym());
    }
    std::vector<Vec3> doubled = half;
    for (const Vec3& p : half) doubled.push_back(-p);
    const double fast = symvol::symmetric_hull_volume_3d(half);
    const double generic = symvol::hull_volume_3d(doubled);
    CHECK(fast == doctest::Approx(generic).epsilon(1e-12));
  }
}
