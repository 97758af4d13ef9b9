#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace wgif {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Vectors share the point representation.
using Vec2 = Point2;

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
inline Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
inline Point2& operator+=(Point2& a, Point2 b) {
  a.x += b.x;
  a.y += b.y;
  return a;
}

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Exact sign of (b - a) x (c - a) by expansion arithmetic; the magnitude is approximate.
double orient2d_exact(Point2 a, Point2 b, Point2 c);

/// Twice the signed area of (a, b, c); positive for counterclockwise order. The sign is exact.
inline double orient2d(Point2 a, Point2 b, Point2 c) {
  const double left = (b.x - a.x) * (c.y - a.y);
  const double right = (b.y - a.y) * (c.x - a.x);
  const double det = left - right;
  // Floating-point error bound of the expression above.
  constexpr double kBound = 3.3306690738754716e-16;
  if (std::fabs(det) > kBound * (std::fabs(left) + std::fabs(right))) return det;
  return orient2d_exact(a, b, c);
}

/// Positive when d lies inside the circumcircle of the counterclockwise triangle (a, b, c).
/// `magnitude` receives the permanent of the determinant for relative tie detection.
inline double incircle(Point2 a, Point2 b, Point2 c, Point2 d, double* magnitude = nullptr) {
  const long double adx = a.x - d.x, ady = a.y - d.y;
  const long double bdx = b.x - d.x, bdy = b.y - d.y;
  const long double cdx = c.x - d.x, cdy = c.y - d.y;
  const long double alift = adx * adx + ady * ady;
  const long double blift = bdx * bdx + bdy * bdy;
  const long double clift = cdx * cdx + cdy * cdy;
  const long double bc = bdx * cdy - cdx * bdy;
  const long double ca = cdx * ady - adx * cdy;
  const long double ab = adx * bdy - bdx * ady;
  if (magnitude) {
    *magnitude = static_cast<double>(
        alift * (std::fabs(bdx * cdy) + std::fabs(cdx * bdy)) +
        blift * (std::fabs(cdx * ady) + std::fabs(adx * cdy)) +
        clift * (std::fabs(adx * bdy) + std::fabs(bdx * ady)));
  }
  return static_cast<double>(alift * bc + blift * ca + clift * ab);
}

inline Point2 circumcenter(Point2 a, Point2 b, Point2 c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return {a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

/// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
struct Rect {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  double diameter() const { return std::hypot(width(), height()); }
  bool contains(Point2 p, double tol = 0.0) const {
    return p.x >= xmin - tol && p.x <= xmax + tol && p.y >= ymin - tol && p.y <= ymax + tol;
  }
  bool on_boundary(Point2 p, double tol) const {
    return contains(p, tol) && (std::fabs(p.x - xmin) <= tol || std::fabs(p.x - xmax) <= tol ||
                                std::fabs(p.y - ymin) <= tol || std::fabs(p.y - ymax) <= tol);
  }
};

using ScalarField = std::function<double(Point2)>;
using VectorField = std::function<Vec2(Point2)>;

}  // namespace wgif
