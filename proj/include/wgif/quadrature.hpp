#pragma once

#include <array>
#include <vector>

#include "wgif/geometry.hpp"

namespace wgif {

/// Points in barycentric coordinates; weights sum to 1 and are scaled by the triangle area.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Points as fractions along a segment in [0, 1]; weights sum to 1 and are scaled by its length.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Symmetric 6-point rule, exact for polynomials of degree 4.
const QuadratureRule& triangle_rule_degree4();
/// Edge-midpoint rule, exact for polynomials of degree 2.
const QuadratureRule& triangle_rule_degree2();
/// 3-point Gauss-Legendre rule, exact for polynomials of degree 5.
const LineRule& gauss3();

inline Point2 barycentric_point(const std::array<Point2, 3>& c, const std::array<double, 3>& l) {
  return {l[0] * c[0].x + l[1] * c[1].x + l[2] * c[2].x, l[0] * c[0].y + l[1] * c[1].y + l[2] * c[2].y};
}

/// Integral of f over the triangle with the given rule.
template <class F>
auto integrate_triangle(const std::array<Point2, 3>& c, const F& f,
                        const QuadratureRule& rule = triangle_rule_degree4()) {
  const double area = 0.5 * std::fabs(orient2d(c[0], c[1], c[2]));
  decltype(f(c[0])) sum{};
  for (std::size_t q = 0; q < rule.weights.size(); ++q) sum += rule.weights[q] * f(barycentric_point(c, rule.points[q]));
  return area * sum;
}

/// Straight line n . x = offset.
struct Line2 {
  Vec2 normal;
  double offset = 0.0;
};

/// Integral of f over the triangle, applying the rule separately on each side of every line in
/// `breaks`. Integrands that jump across a line keep the rule's accuracy.
template <class F>
double integrate_triangle_split(const std::array<Point2, 3>& c, const F& f, const std::vector<Line2>& breaks,
                                std::size_t first = 0) {
  for (std::size_t k = first; k < breaks.size(); ++k) {
    const Line2& line = breaks[k];
    std::array<double, 3> s;
    for (int i = 0; i < 3; ++i) s[i] = dot(line.normal, c[i]) - line.offset;
    const bool pos = s[0] > 0 || s[1] > 0 || s[2] > 0, neg = s[0] < 0 || s[1] < 0 || s[2] < 0;
    if (!(pos && neg)) continue;
    // Vertex `lone` is alone on its side; the other two lie strictly or weakly opposite.
    int lone = 0;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, l = (i + 2) % 3;
      if ((s[i] > 0 && s[j] <= 0 && s[l] <= 0) || (s[i] < 0 && s[j] >= 0 && s[l] >= 0)) lone = i;
    }
    const Point2 a = c[lone], b = c[(lone + 1) % 3], d = c[(lone + 2) % 3];
    const double sa = s[lone], sb = s[(lone + 1) % 3], sd = s[(lone + 2) % 3];
    const Point2 pb = a + (sa / (sa - sb)) * (b - a);
    const Point2 pd = a + (sa / (sa - sd)) * (d - a);
    double sum = integrate_triangle_split<F>({a, pb, pd}, f, breaks, k + 1);
    if (sb != 0.0) sum += integrate_triangle_split<F>({pb, b, d}, f, breaks, k + 1);
    if (sd != 0.0) sum += integrate_triangle_split<F>({pb, d, pd}, f, breaks, k + 1);
    return sum;
  }
  return integrate_triangle(c, f);
}

/// Integral of f over the segment [a, b] with 3-point Gauss.
template <class F>
auto integrate_segment(Point2 a, Point2 b, const F& f) {
  const LineRule& rule = gauss3();
  decltype(f(a)) sum{};
  for (std::size_t q = 0; q < rule.weights.size(); ++q) sum += rule.weights[q] * f(a + rule.points[q] * (b - a));
  return distance(a, b) * sum;
}

}  // namespace wgif
