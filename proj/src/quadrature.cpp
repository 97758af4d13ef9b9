#include "wgif/quadrature.hpp"

#include <cmath>

namespace wgif {

const QuadratureRule& triangle_rule_degree4() {
  static const QuadratureRule rule = [] {
    constexpr double a1 = 0.44594849091596488632, w1 = 0.22338158967801146570;
    constexpr double a2 = 0.09157621350977074346, w2 = 0.10995174365532186764;
    const double b1 = 1.0 - 2.0 * a1, b2 = 1.0 - 2.0 * a2;
    QuadratureRule r;
    r.points = {{b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1}, {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
    r.weights = {w1, w1, w1, w2, w2, w2};
    r.degree = 4;
    return r;
  }();
  return rule;
}

const QuadratureRule& triangle_rule_degree2() {
  static const QuadratureRule rule{{{0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 2};
  return rule;
}

const LineRule& gauss3() {
  static const LineRule rule = [] {
    const double s = 0.5 * std::sqrt(3.0 / 5.0);
    return LineRule{{0.5 - s, 0.5, 0.5 + s}, {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}, 5};
  }();
  return rule;
}

}  // namespace wgif
