#include "symvol/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

namespace symvol {
namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Shewchuk-style static error bounds. epsilon here is the rounding unit
// 2^-53, half of numeric_limits::epsilon.
constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
const double kCcwBoundA = (3.0 + 16.0 * kEps) * kEps;
const double kO3dBoundA = (7.0 + 56.0 * kEps) * kEps;

// Exact dyadic rational equal to the double x.
BigRat exact(double x) {
  int exp2 = 0;
  double mantissa = std::frexp(x, &exp2);
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exp2 -= 53;
  BigRat value(scaled);
  if (exp2 >= 0) {
    value *= BigRat(BigInt(1) << exp2);
  } else {
    value /= BigRat(BigInt(1) << (-exp2));
  }
  return value;
}

int sign_of(const BigRat& value) {
  if (value > 0) return 1;
  if (value < 0) return -1;
  return 0;
}

int det3_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  BigRat adx = exact(a.x()) - exact(d.x());
  BigRat ady = exact(a.y()) - exact(d.y());
  BigRat adz = exact(a.z()) - exact(d.z());
  BigRat bdx = exact(b.x()) - exact(d.x());
  BigRat bdy = exact(b.y()) - exact(d.y());
  BigRat bdz = exact(b.z()) - exact(d.z());
  BigRat cdx = exact(c.x()) - exact(d.x());
  BigRat cdy = exact(c.y()) - exact(d.y());
  BigRat cdz = exact(c.z()) - exact(d.z());
  BigRat det = adz * (bdx * cdy - cdx * bdy) + bdz * (cdx * ady - adx * cdy) +
               cdz * (adx * bdy - bdx * ady);
  return sign_of(det);
}

// Sign of det[a-d; b-d; c-d], filtered with exact fallback.
int det3_sign(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  double adx = a.x() - d.x(), ady = a.y() - d.y(), adz = a.z() - d.z();
  double bdx = b.x() - d.x(), bdy = b.y() - d.y(), bdz = b.z() - d.z();
  double cdx = c.x() - d.x(), cdy = c.y() - d.y(), cdz = c.z() - d.z();

  double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  double cdxady = cdx * ady, adxcdy = adx * cdy;
  double adxbdy = adx * bdy, bdxady = bdx * ady;

  double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz) +
                     (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz) +
                     (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
  double errbound = kO3dBoundA * permanent;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return det3_exact(a, b, c, d);
}

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
  BigRat acx = exact(a.x()) - exact(c.x());
  BigRat acy = exact(a.y()) - exact(c.y());
  BigRat bcx = exact(b.x()) - exact(c.x());
  BigRat bcy = exact(b.y()) - exact(c.y());
  return sign_of(acx * bcy - acy * bcx);
}

}  // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  double detleft = (a.x() - c.x()) * (b.y() - c.y());
  double detright = (a.y() - c.y()) * (b.x() - c.x());
  double det = detleft - detright;

  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  }

  double errbound = kCcwBoundA * detsum;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return orient2d_exact(a, b, c);
}

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  // det[b-a; c-a; d-a] equals det[b-a'; c-a'; d-a'] with rows taken relative
  // to the last argument of det3_sign.
  return det3_sign(b, c, d, a);
}

bool collinear3d(const Vec3& a, const Vec3& b, const Vec3& c) {
  // Each cross-product component is an orient2d on a coordinate projection.
  Vec2 a_yz(a.y(), a.z()), b_yz(b.y(), b.z()), c_yz(c.y(), c.z());
  if (orient2d(a_yz, b_yz, c_yz) != 0) return false;
  Vec2 a_xz(a.x(), a.z()), b_xz(b.x(), b.z()), c_xz(c.x(), c.z());
  if (orient2d(a_xz, b_xz, c_xz) != 0) return false;
  Vec2 a_xy(a.x(), a.y()), b_xy(b.x(), b.y()), c_xy(c.x(), c.y());
  return orient2d(a_xy, b_xy, c_xy) == 0;
}

}  // namespace symvol
