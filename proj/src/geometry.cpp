#include "wgif/geometry.hpp"

#include <array>
#include <cmath>

namespace wgif {

namespace {

// Appends x to the nonoverlapping expansion e[0..n) (increasing magnitude) without error.
int grow_expansion(double* e, int n, double x) {
  int m = 0;
  double q = x;
  for (int i = 0; i < n; ++i) {
    const double s = q + e[i];
    const double bv = s - q;
    const double err = (q - (s - bv)) + (e[i] - bv);
    if (err != 0.0) e[m++] = err;
    q = s;
  }
  if (q != 0.0 || m == 0) e[m++] = q;
  return m;
}

}  // namespace

double orient2d_exact(Point2 a, Point2 b, Point2 c) {
  // det = bx cy - bx ay - ax cy - by cx + by ax + ay cx, each product split exactly.
  const std::array<std::array<double, 2>, 6> terms{{{b.x, c.y}, {-b.x, a.y}, {-a.x, c.y},
                                                    {-b.y, c.x}, {b.y, a.x}, {a.y, c.x}}};
  std::array<double, 16> e{};
  int n = 0;
  for (const auto& t : terms) {
    const double p = t[0] * t[1];
    const double lo = std::fma(t[0], t[1], -p);
    n = grow_expansion(e.data(), n, lo);
    n = grow_expansion(e.data(), n, p);
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += e[i];
  return sum;
}

}  // namespace wgif
