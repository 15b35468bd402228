#include "symvol/exact.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace symvol {
namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr double kPi = std::numbers::pi;

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

// Half of one split piece of the V_{P,2} density integrand
// log|s| log|2t - s|, integrated from the endpoint e inward over a distance
// L. The substitution xi = L e^{-u} absorbs a logarithmic singularity at the
// endpoint into an exponentially decaying smooth integrand, and the factors
// are evaluated in the offset variable so that s - e never cancels. A piece
// endpoint is singular exactly when e == 0 (for log|s|) or 2t - e == 0 (for
// log|2t - s|); interior singularities cannot occur because the pieces are
// split at s = 0 and s = 2t.
double log_pair_half_piece(double t, double e, double direction, double length) {
  const double c = 2.0 * t - e;
  const auto integrand = [&](double u) {
    const double xi = length * std::exp(-u);
    const double f1 = e == 0.0 ? std::log(xi) : std::log(std::abs(e + direction * xi));
    const double f2 = c == 0.0 ? std::log(xi) : std::log(std::abs(c - direction * xi));
    return f1 * f2 * xi;
  };
  QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 600;
  return integrate_1d(integrand, 0.0, 55.0, cfg).value;
}

}  // namespace

std::string rational_to_string(const ExactRational& value) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(value) << "/"
      << boost::multiprecision::denominator(value);
  return out.str();
}

double rational_to_double(const ExactRational& value) { return value.convert_to<double>(); }

void MomentSpec::validate(int dimension) const {
  if (!(power >= 1.0)) throw std::domain_error("moment order p must be >= 1");
  const int min_points = symmetric ? dimension : dimension + 1;
  if (num_points < min_points) {
    throw std::domain_error("N must be >= " + std::to_string(min_points) + " for this moment");
  }
}

ExactRational harmonic_number(int n) {
  if (n < 0) throw std::domain_error("harmonic_number requires n >= 0");
  ExactRational h = 0;
  for (int k = 1; k <= n; ++k) h += ExactRational(1, k);
  return h;
}

ExactRational ev_parallelogram(int num_points) {
  if (num_points < 2) throw std::domain_error("ev_parallelogram requires N >= 2");
  const ExactRational h = harmonic_number(num_points + 1);
  return 1 - ExactRational(4, 3 * (num_points + 1)) * h;
}

double ev_ellipse(int num_points, const QuadConfig& cfg) {
  if (num_points < 2) throw std::domain_error("ev_ellipse requires N >= 2");
  QuadConfig tight = cfg;
  tight.abs_tol = std::min(cfg.abs_tol, 1e-12);
  tight.rel_tol = std::min(cfg.rel_tol, 1e-12);
  const int n = num_points;
  // (t + sin t)^{N-1} is divided through by pi^{N-1} to keep the integrand
  // O(1) for large N.
  const auto integrand = [n](double t) {
    const double one_plus_cos = 1.0 + std::cos(t);
    return std::pow((t + std::sin(t)) / kPi, n - 1) * one_plus_cos * one_plus_cos;
  };
  const double integral = integrate_1d(integrand, 0.0, kPi, tight).value;
  return 1.0 - (2.0 * n / (3.0 * kPi)) * integral;
}

ExactRational ev_ellipsoid(int num_points) {
  if (num_points < 3) throw std::domain_error("ev_ellipsoid requires N >= 3");
  const int n = num_points;
  const int m = n - 2;

  // (1 - t^2)^4 (3t - t^3)^m as integer coefficients over powers of t.
  std::vector<BigInt> coeffs(8 + 3 * m + 1, BigInt(0));
  for (int a = 0; a <= 4; ++a) {
    const BigInt c1 = ((a % 2 == 0) ? 1 : -1) * binomial(4, a);
    for (int b = 0; b <= m; ++b) {
      BigInt c2 = ((b % 2 == 0) ? 1 : -1) * binomial(m, b);
      BigInt pow3 = 1;
      for (int i = 0; i < m - b; ++i) pow3 *= 3;
      coeffs[2 * a + m + 2 * b] += c1 * c2 * pow3;
    }
  }

  ExactRational integral = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0) integral += ExactRational(coeffs[k], BigInt(k + 1));
  }

  BigInt two_pow = BigInt(1) << (n + 5);
  const ExactRational front(BigInt(105) * n * (n - 1), two_pow);
  return 1 - ExactRational(1, n + 1) - front * integral;
}

double density_vp2(double t) {
  if (!std::isfinite(t)) throw std::domain_error("density_vp2 requires finite t");
  if (t < 0.0 || t > 1.0) return 0.0;
  const double lo = 2.0 * t - 1.0;
  const double hi = 1.0;
  if (lo >= hi) return 0.0;

  // Split at the logarithmic singularities s = 0 and s = 2t when they fall
  // inside the interval; each piece then has singular endpoints only.
  std::vector<double> breaks = {lo, hi};
  for (double s : {0.0, 2.0 * t}) {
    if (s > lo && s < hi) breaks.push_back(s);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double mid = 0.5 * (breaks[k] + breaks[k + 1]);
    total += log_pair_half_piece(t, breaks[k], 1.0, mid - breaks[k]);
    total += log_pair_half_piece(t, breaks[k + 1], -1.0, breaks[k + 1] - mid);
  }
  return total;
}

double density_ve2(double t) {
  if (!std::isfinite(t)) throw std::domain_error("density_ve2 requires finite t");
  const double upper = 2.0 / kPi;
  if (t < 0.0 || t > upper) return 0.0;
  if (t == 0.0) return 4.0;  // the t -> 0 limit of the closed form
  const double a = std::min(kPi * t / 2.0, 1.0);
  // antiderivative of s^{-2} sqrt(1-s^2) is -sqrt(1-s^2)/s - asin(s)
  const double tail = std::sqrt(std::max(0.0, 1.0 - a * a)) / a + std::asin(a) - kPi / 2.0;
  return 2.0 * kPi * t * tail;
}

double isotropic_constant(double moment2, int dimension, bool symmetric) {
  if (!(moment2 > 0.0)) throw std::domain_error("isotropic_constant requires moment2 > 0");
  if (dimension < 2) throw std::domain_error("isotropic_constant requires n >= 2");
  double factorial = 1.0;
  for (int k = 2; k <= dimension; ++k) factorial *= k;
  double l_squared;
  if (symmetric) {
    l_squared = 0.25 * std::pow(factorial * moment2, 1.0 / dimension);
  } else {
    l_squared = std::pow(factorial * moment2 / (dimension + 1), 1.0 / dimension);
  }
  return std::sqrt(l_squared);
}

std::string exact_result_json(const ExactResult& result) {
  nlohmann::json doc;
  doc["value_decimal"] = result.value_decimal;
  doc["value_rational"] =
      result.value_rational ? nlohmann::json(rational_to_string(*result.value_rational))
                            : nlohmann::json(nullptr);
  doc["formula"] = result.formula;
  doc["N"] = result.num_points;
  return doc.dump();
}

}  // namespace symvol
