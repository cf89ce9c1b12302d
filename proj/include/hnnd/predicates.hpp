#pragma once

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace hnnd::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

namespace detail {

using Exact = boost::multiprecision::cpp_rational;

inline int sign(const Exact& v) { return v.sign(); }

inline int orient2d_exact(Point2 a, Point2 b, Point2 c) {
  const Exact acx = Exact(a.x) - c.x, bcx = Exact(b.x) - c.x;
  const Exact acy = Exact(a.y) - c.y, bcy = Exact(b.y) - c.y;
  return sign(acx * bcy - acy * bcx);
}

inline int incircle_exact(Point2 a, Point2 b, Point2 c, Point2 d) {
  const Exact adx = Exact(a.x) - d.x, ady = Exact(a.y) - d.y;
  const Exact bdx = Exact(b.x) - d.x, bdy = Exact(b.y) - d.y;
  const Exact cdx = Exact(c.x) - d.x, cdy = Exact(c.y) - d.y;
  const Exact alift = adx * adx + ady * ady;
  const Exact blift = bdx * bdx + bdy * bdy;
  const Exact clift = cdx * cdx + cdy * cdy;
  return sign(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
              clift * (adx * bdy - bdx * ady));
}

}  // namespace detail

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1
/// clockwise, 0 collinear. Exact for all finite double inputs: a floating
/// estimate is trusted only outside its error bound, otherwise the
/// determinant is re-evaluated in rational arithmetic.
inline int orient2d(Point2 a, Point2 b, Point2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = 3.3306690738754716e-16 * (std::fabs(left) + std::fabs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::orient2d_exact(a, b, c);
}

/// +1 when d lies strictly inside the circle through counter-clockwise
/// (a, b, c), -1 strictly outside, 0 on it. Exact, filtered like orient2d.
inline int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  const double bound = 1.1102230246251577e-15 * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::incircle_exact(a, b, c, d);
}

}  // namespace hnnd::geometry
