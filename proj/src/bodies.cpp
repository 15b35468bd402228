#include "symvol/bodies.hpp"

#include "symvol/hull.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace symvol {

namespace {

using json = nlohmann::json;

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd to_vecn(Eigen::Ref<const Eigen::VectorXd> v) { return v; }

// Collects the vertices of K ∩ {|<x,u>| <= r} for a polytope given by
// vertices and edges, then measures them with the exact hull.
double polytope_slab_volume_3d(const std::vector<Vec3>& vertices,
                               const std::vector<std::pair<int, int>>& edges, double r,
                               const Vec3& u) {
  std::vector<Vec3> kept;
  kept.reserve(vertices.size() + 2 * edges.size());
  for (const Vec3& v : vertices) {
    if (std::abs(v.dot(u)) <= r) kept.push_back(v);
  }
  for (double plane : {r, -r}) {
    for (const auto& [i, j] : edges) {
      const double da = vertices[i].dot(u) - plane;
      const double db = vertices[j].dot(u) - plane;
      if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
        kept.push_back(vertices[i] + (da / (da - db)) * (vertices[j] - vertices[i]));
      }
    }
  }
  return hull_volume_3d(kept);
}

double polytope_section_area_3d(const std::vector<Vec3>& vertices,
                                const std::vector<std::pair<int, int>>& edges, double r,
                                const Vec3& u) {
  std::vector<Vec3> section;
  for (const Vec3& v : vertices) {
    if (v.dot(u) == r) section.push_back(v);
  }
  for (const auto& [i, j] : edges) {
    const double da = vertices[i].dot(u) - r;
    const double db = vertices[j].dot(u) - r;
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      section.push_back(vertices[i] + (da / (da - db)) * (vertices[j] - vertices[i]));
    }
  }
  if (section.size() < 3) return 0.0;
  // Orthonormal in-plane coordinates.
  Vec3 seed = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 b1 = (seed - seed.dot(u) * u).normalized();
  const Vec3 b2 = u.cross(b1);
  std::vector<Vec2> planar;
  planar.reserve(section.size());
  for (const Vec3& p : section) planar.emplace_back(p.dot(b1), p.dot(b2));
  return hull_volume_2d(planar);
}

void check_dimension(int dim) {
  if (dim != 2 && dim != 3) throw InvalidBodyError("supported dimensions are 2 and 3");
}

SymmetricPolygon polygon_from_generators_parallelotope(const Eigen::MatrixXd& g) {
  const Vec2 g0 = g.col(0), g1 = g.col(1);
  std::vector<Vec2> half = {g0 + g1, g1 - g0};
  if (g.determinant() < 0.0) half = {g0 - g1, -g0 - g1};
  return SymmetricPolygon(half);
}

SymmetricPolygon polygon_from_generators_crosspolytope(const Eigen::MatrixXd& g) {
  const Vec2 g0 = g.col(0), g1 = g.col(1);
  std::vector<Vec2> half = {g0, g1};
  if (g.determinant() < 0.0) half = {g1, g0};
  return SymmetricPolygon(half);
}

}  // namespace

double Body::chord(double, Eigen::Ref<const Eigen::VectorXd>) const {
  throw std::logic_error("chord is defined for planar bodies only");
}

double Body::section_area(double, Eigen::Ref<const Eigen::VectorXd>) const {
  throw std::logic_error("section_area is defined for 3-D bodies only");
}

Vec2 sample2(const Body& body, RandomStream& rng) {
  double buf[2];
  body.sample(rng, buf);
  return Vec2(buf[0], buf[1]);
}

Vec3 sample3(const Body& body, RandomStream& rng) {
  double buf[3];
  body.sample(rng, buf);
  return Vec3(buf[0], buf[1], buf[2]);
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(int dim, Eigen::MatrixXd shape) : dim_(dim), shape_(std::move(shape)) {
  check_dimension(dim_);
  if (shape_.rows() != dim_ || shape_.cols() != dim_) {
    throw InvalidBodyError("ellipsoid shape matrix has wrong size");
  }
  if (!shape_.allFinite()) throw InvalidBodyError("ellipsoid shape matrix is not finite");
  const double scale = shape_.cwiseAbs().maxCoeff();
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidBodyError("ellipsoid shape matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigens(shape_);
  if (eigens.eigenvalues().minCoeff() <= 0.0) {
    throw InvalidBodyError("ellipsoid shape matrix must be positive definite");
  }
  det_ = shape_.determinant();
  inv_transpose_ = shape_.inverse();
  volume_ = det_ * (dim_ == 2 ? kPi : 4.0 * kPi / 3.0);
}

void Ellipsoid::sample(RandomStream& rng, double* out) const {
  // Polar method: isotropic Gaussian direction, radius U^(1/n).
  double g[3] = {0.0, 0.0, 0.0};
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (int i = 0; i < dim_; ++i) {
      g[i] = rng.normal();
      norm_sq += g[i] * g[i];
    }
  } while (norm_sq < 1e-300);
  const double u = rng.uniform();
  const double radius = dim_ == 2 ? std::sqrt(u) : std::cbrt(u);
  const double factor = radius / std::sqrt(norm_sq);
  for (int i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += shape_(i, j) * g[j] * factor;
    out[i] = acc;
  }
}

double Ellipsoid::support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const {
  return (shape_.transpose() * to_vecn(direction)).norm();
}

double Ellipsoid::slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (r <= 0.0) return 0.0;
  const double h = support_radius(direction);
  const double d = r / h;
  if (d >= 1.0) return volume_;
  if (dim_ == 2) return det_ * 2.0 * (std::asin(d) + d * std::sqrt(1.0 - d * d));
  return det_ * 2.0 * kPi * (d - d * d * d / 3.0);
}

double Ellipsoid::chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (dim_ != 2) return Body::chord(r, direction);
  const Eigen::VectorXd w = shape_.transpose() * to_vecn(direction);
  const double h = w.norm();
  const double d = std::abs(r) / h;
  if (d >= 1.0) return 0.0;
  const Vec2 chord_dir(-w[1] / h, w[0] / h);
  return 2.0 * std::sqrt(1.0 - d * d) * (shape_ * chord_dir).norm();
}

double Ellipsoid::section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (dim_ != 3) return Body::section_area(r, direction);
  const Eigen::VectorXd w = shape_.transpose() * to_vecn(direction);
  const double h = w.norm();
  const double d = std::abs(r) / h;
  if (d >= 1.0) return 0.0;
  return kPi * (1.0 - d * d) * det_ * (inv_transpose_ * (w / h)).norm();
}

std::pair<double, double> section_and_slab_3d(const Ellipsoid& body, double r,
                                              const Vec3& direction) {
  if (!(r >= 0.0)) throw std::domain_error("section_and_slab_3d requires r >= 0");
  Eigen::Vector3d u = direction;
  return {body.section_area(r, u), body.slab_measure(r, u)};
}

// ---------------------------------------------------------------------------
// Parallelotope

Parallelotope::Parallelotope(int dim, Eigen::MatrixXd generators)
    : dim_(dim), gens_(std::move(generators)) {
  check_dimension(dim_);
  if (gens_.rows() != dim_ || gens_.cols() != dim_ || !gens_.allFinite()) {
    throw InvalidBodyError("parallelotope generator matrix has wrong size or is not finite");
  }
  const double det = gens_.determinant();
  if (det == 0.0) throw InvalidBodyError("parallelotope generators must be invertible");
  volume_ = std::pow(2.0, dim_) * std::abs(det);
  if (dim_ == 2) {
    polygon_.emplace(polygon_from_generators_parallelotope(gens_));
  } else {
    for (int mask = 0; mask < 8; ++mask) {
      Vec3 corner = Vec3::Zero();
      for (int k = 0; k < 3; ++k) corner += ((mask >> k) & 1 ? 1.0 : -1.0) * Vec3(gens_.col(k));
      vertices_.push_back(corner);
    }
    for (int a = 0; a < 8; ++a) {
      for (int k = 0; k < 3; ++k) {
        const int b = a ^ (1 << k);
        if (a < b) edges_.emplace_back(a, b);
      }
    }
  }
}

void Parallelotope::sample(RandomStream& rng, double* out) const {
  double y[3];
  for (int i = 0; i < dim_; ++i) y[i] = rng.uniform_sym();
  for (int i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += gens_(i, j) * y[j];
    out[i] = acc;
  }
}

double Parallelotope::support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const {
  double h = 0.0;
  for (int j = 0; j < dim_; ++j) h += std::abs(gens_.col(j).dot(to_vecn(direction)));
  return h;
}

double Parallelotope::slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (r <= 0.0) return 0.0;
  if (dim_ == 2) return polygon_->slab_measure(r, direction);
  return polytope_slab_volume_3d(vertices_, edges_, r, Vec3(to_vecn(direction)));
}

double Parallelotope::chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (dim_ != 2) return Body::chord(r, direction);
  return polygon_->chord(r, direction);
}

double Parallelotope::section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (dim_ != 3) return Body::section_area(r, direction);
  return polytope_section_area_3d(vertices_, edges_, r, Vec3(to_vecn(direction)));
}

// ---------------------------------------------------------------------------
// Crosspolytope

Crosspolytope::Crosspolytope(int dim, Eigen::MatrixXd generators)
    : dim_(dim), gens_(std::move(generators)) {
  check_dimension(dim_);
  if (gens_.rows() != dim_ || gens_.cols() != dim_ || !gens_.allFinite()) {
    throw InvalidBodyError("crosspolytope generator matrix has wrong size or is not finite");
  }
  const double det = gens_.determinant();
  if (det == 0.0) throw InvalidBodyError("crosspolytope generators must be invertible");
  double factorial = dim_ == 2 ? 2.0 : 6.0;
  volume_ = std::pow(2.0, dim_) * std::abs(det) / factorial;
  if (dim_ == 2) {
    polygon_.emplace(polygon_from_generators_crosspolytope(gens_));
  } else {
    for (int j = 0; j < 3; ++j) vertices_.push_back(Vec3(gens_.col(j)));
    for (int j = 0; j < 3; ++j) vertices_.push_back(Vec3(-gens_.col(j)));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        edges_.emplace_back(i, j + 3);
        if (i < j) edges_.emplace_back(i, j);
        if (i < j) edges_.emplace_back(i + 3, j + 3);
      }
    }
  }
}

void Crosspolytope::sample(RandomStream& rng, double* out) const {
  // Dirichlet-on-l1 method: n + 1 exponentials give a uniform point of the
  // standard simplex; random signs spread it over the l1 ball.
  double e[4];
  double total = 0.0;
  for (int i = 0; i <= dim_; ++i) {
    e[i] = rng.exponential();
    total += e[i];
  }
  const std::uint64_t sign_bits = rng.next_u64();
  double c[3];
  for (int i = 0; i < dim_; ++i) {
    c[i] = e[i] / total;
    if ((sign_bits >> i) & 1) c[i] = -c[i];
  }
  for (int i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += gens_(i, j) * c[j];
    out[i] = acc;
  }
}

double Crosspolytope::support_radius(Eigen::Ref<const Eigen::VectorXd> direction) const {
  double h = 0.0;
  for (int j = 0; j < dim_; ++j) {
    h = std::max(h, std::abs(gens_.col(j).dot(to_vecn(direction))));
  }
  return h;
}

double Crosspolytope::slab_measure(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (r <= 0.0) return 0.0;
  if (dim_ == 2) return polygon_->slab_measure(r, direction);
  return polytope_slab_volume_3d(vertices_, edges_, r, Vec3(to_vecn(direction)));
}

double Crosspolytope::chord(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (dim_ != 2) return Body::chord(r, direction);
  return polygon_->chord(r, direction);
}

double Crosspolytope::section_area(double r, Eigen::Ref<const Eigen::VectorXd> direction) const {
  if (dim_ != 3) return Body::section_area(r, direction);
  return polytope_section_area_3d(vertices_, edges_, r, Vec3(to_vecn(direction)));
}

// ---------------------------------------------------------------------------
// Free functions

double symmetric_hull_volume(std::span<const Vec2> points) {
  return symmetric_hull_volume_2d(points);
}

double symmetric_hull_volume(std::span<const Vec3> points) {
  return symmetric_hull_volume_3d(points);
}

Eigen::VectorXd sample_uniform(const Body& body, RandomStream& rng) {
  Eigen::VectorXd out(body.dimension());
  body.sample(rng, out.data());
  return out;
}

// ---------------------------------------------------------------------------
// JSON input

namespace {

Eigen::MatrixXd matrix_from_json(const json& rows, int dim) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw InvalidBodyError("body JSON: matrix must be a row-major " + std::to_string(dim) + "x" +
                           std::to_string(dim) + " array");
  }
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InvalidBodyError("body JSON: matrix row has wrong length");
    }
    for (int j = 0; j < dim; ++j) m(i, j) = row.at(j).get<double>();
  }
  return m;
}

std::unique_ptr<Body> body_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidBodyError("body JSON: expected an object");
  const std::string kind = doc.value("kind", "");
  const int dim = doc.value("dimension", 0);
  if (kind == "polygon") {
    if (dim != 2) throw InvalidBodyError("body JSON: polygon requires dimension 2");
    if (!doc.contains("half_vertices")) throw InvalidBodyError("body JSON: missing half_vertices");
    std::vector<Vec2> half;
    for (const auto& pt : doc.at("half_vertices")) {
      if (!pt.is_array() || pt.size() != 2) {
        throw InvalidBodyError("body JSON: half_vertices entries must be [x, y]");
      }
      half.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
    }
    return std::make_unique<SymmetricPolygon>(std::move(half));
  }
  if (!doc.contains("matrix")) throw InvalidBodyError("body JSON: missing matrix");
  Eigen::MatrixXd m = matrix_from_json(doc.at("matrix"), dim);
  if (kind == "ellipsoid") return std::make_unique<Ellipsoid>(dim, std::move(m));
  if (kind == "parallelotope") return std::make_unique<Parallelotope>(dim, std::move(m));
  if (kind == "crosspolytope") return std::make_unique<Crosspolytope>(dim, std::move(m));
  throw InvalidBodyError("body JSON: unknown kind '" + kind + "'");
}

}  // namespace

std::unique_ptr<Body> body_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InvalidBodyError(std::string("body JSON: ") + err.what());
  }
  return body_from_json(doc);
}

std::unique_ptr<Body> load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidBodyError("cannot open body file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return body_from_json_text(buffer.str());
}

SymmetricPolygon regular_polygon(int half_count) {
  if (half_count < 2) throw InvalidBodyError("regular polygon needs at least 2 half-vertices");
  std::vector<Vec2> half;
  half.reserve(half_count);
  for (int k = 0; k < half_count; ++k) {
    const double angle = kPi * k / half_count;
    half.emplace_back(std::cos(angle), std::sin(angle));
  }
  return SymmetricPolygon(std::move(half));
}

SymmetricPolygon make_polygon_kind(const std::string& name) {
  if (name == "square") return SymmetricPolygon({Vec2(1, 1), Vec2(-1, 1)});
  if (name == "diamond") return regular_polygon(2);
  if (name == "hexagon") return regular_polygon(3);
  if (name == "octagon") return regular_polygon(4);
  if (name.rfind("regular-", 0) == 0) return regular_polygon(std::stoi(name.substr(8)));
  throw InvalidBodyError("unknown planar polygon kind '" + name + "'");
}

SymmetricPolygon as_polygon(const Body& body) {
  if (body.dimension() != 2) throw InvalidBodyError("polygon view needs a planar body");
  if (const auto* polygon = dynamic_cast<const SymmetricPolygon*>(&body)) return *polygon;
  if (const auto* par = dynamic_cast<const Parallelotope*>(&body)) {
    return polygon_from_generators_parallelotope(par->generators());
  }
  if (const auto* cross = dynamic_cast<const Crosspolytope*>(&body)) {
    return polygon_from_generators_crosspolytope(cross->generators());
  }
  throw InvalidBodyError("body has no polygon view (kind '" + body.kind() + "')");
}

std::unique_ptr<Body> make_kind(const std::string& name) {
  if (name == "disc") return std::make_unique<Ellipsoid>(2, Eigen::MatrixXd::Identity(2, 2));
  if (name == "ball") return std::make_unique<Ellipsoid>(3, Eigen::MatrixXd::Identity(3, 3));
  if (name == "square") return std::make_unique<Parallelotope>(2, Eigen::MatrixXd::Identity(2, 2));
  if (name == "cube") return std::make_unique<Parallelotope>(3, Eigen::MatrixXd::Identity(3, 3));
  if (name == "diamond") {
    return std::make_unique<Crosspolytope>(2, Eigen::MatrixXd::Identity(2, 2));
  }
  if (name == "octahedron") {
    return std::make_unique<Crosspolytope>(3, Eigen::MatrixXd::Identity(3, 3));
  }
  return std::make_unique<SymmetricPolygon>(make_polygon_kind(name));
}

}  // namespace symvol
