#include "wgif/element.hpp"

#include "wgif/errors.hpp"
#include "wgif/quadrature.hpp"

namespace wgif {

RT0Basis::RT0Basis(const std::array<Point2, 3>& corners, long triangle) : p_(corners) {
  area_ = 0.5 * orient2d(p_[0], p_[1], p_[2]);
  if (!(area_ > 0.0)) throw ElementError("triangle is degenerate or clockwise", triangle);
  for (int i = 0; i < 3; ++i) {
    const Vec2 d = edge_end(i) - edge_start(i);
    length_[i] = norm(d);
    normal_[i] = Vec2{d.y, -d.x} / length_[i];
  }
}

Eigen::Matrix3d rt0_mass_matrix(const RT0Basis& basis, const ScalarField& coefficient) {
  const QuadratureRule& rule = triangle_rule_degree4();
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const Point2 x = barycentric_point(basis.corners(), rule.points[q]);
    const double w = rule.weights[q] * basis.area() * (coefficient ? coefficient(x) : 1.0);
    std::array<Vec2, 3> phi;
    for (int i = 0; i < 3; ++i) phi[i] = basis.value(i, x);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m(i, j) += w * dot(phi[i], phi[j]);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  Eigen::LLT<Eigen::Matrix3d> llt(m);
  if (llt.info() != Eigen::Success) throw ElementError("RT0 mass matrix is not positive definite");
  return m;
}

Eigen::Matrix3d rt0_mass_matrix(const RT0Basis& basis) { return rt0_mass_matrix(basis, ScalarField{}); }

Eigen::Matrix<double, 3, 4> weak_gradient_load() {
  Eigen::Matrix<double, 3, 4> b;
  b << -1, 1, 0, 0,
       -1, 0, 1, 0,
       -1, 0, 0, 1;
  return b;
}

RT0Field weak_gradient(const RT0Basis& basis, const LocalWG& w) {
  const Eigen::Vector3d rhs(w.wb[0] - w.w0, w.wb[1] - w.w0, w.wb[2] - w.w0);
  return rt0_mass_matrix(basis).llt().solve(rhs);
}

Eigen::Matrix4d local_stiffness(const RT0Basis& basis, const ScalarField& coefficient) {
  const Eigen::Matrix3d m1 = rt0_mass_matrix(basis);
  const Eigen::Matrix3d ma = rt0_mass_matrix(basis, coefficient);
  const Eigen::Matrix<double, 3, 4> g = m1.llt().solve(weak_gradient_load());
  Eigen::Matrix4d s = g.transpose() * ma * g;
  return 0.5 * (s + s.transpose());
}

double project_cell(const ScalarField& f, const std::array<Point2, 3>& corners) {
  const double area = 0.5 * std::fabs(orient2d(corners[0], corners[1], corners[2]));
  return integrate_triangle(corners, f) / area;
}

double project_edge(const ScalarField& g, Point2 a, Point2 b) {
  const LineRule& rule = gauss3();
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.weights.size(); ++q) sum += rule.weights[q] * g(a + rule.points[q] * (b - a));
  return sum;
}

RT0Field rt0_interpolate(const VectorField& q, const RT0Basis& basis) {
  RT0Field c;
  for (int i = 0; i < 3; ++i) {
    const Vec2 n = basis.normal(i);
    c[i] = integrate_segment(basis.edge_start(i), basis.edge_end(i), [&](Point2 x) { return dot(q(x), n); });
  }
  return c;
}

Vec2 eval_rt0(const RT0Field& field, const RT0Basis& basis, Point2 x) {
  Vec2 v{0.0, 0.0};
  for (int i = 0; i < 3; ++i) v += field[i] * basis.value(i, x);
  return v;
}

}  // namespace wgif
