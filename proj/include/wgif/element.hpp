#pragma once

#include <array>

#include <Eigen/Dense>

#include "wgif/geometry.hpp"

namespace wgif {

/// Lowest-order Raviart-Thomas basis on a counterclockwise triangle.
///
/// Local edge i is opposite vertex p_i and runs from p_{i+1} to p_{i+2}.
/// phi_i(x) = (x - p_i) / (2|K|) has unit outward flux through e_i, zero flux through the
/// other edges, and divergence 1/|K|.
class RT0Basis {
public:
  /// Throws ElementError for a degenerate or clockwise triangle.
  explicit RT0Basis(const std::array<Point2, 3>& corners, long triangle = -1);

  const std::array<Point2, 3>& corners() const { return p_; }
  double area() const { return area_; }
  double edge_length(int i) const { return length_[i]; }
  Vec2 normal(int i) const { return normal_[i]; }
  Point2 edge_start(int i) const { return p_[(i + 1) % 3]; }
  Point2 edge_end(int i) const { return p_[(i + 2) % 3]; }

  Vec2 value(int i, Point2 x) const { return (x - p_[i]) / (2.0 * area_); }
  double divergence(int) const { return 1.0 / area_; }

private:
  std::array<Point2, 3> p_;
  std::array<double, 3> length_{};
  std::array<Vec2, 3> normal_{};
  double area_ = 0.0;
};

/// Coefficients of an RT0 field in the basis above.
using RT0Field = Eigen::Vector3d;

/// Discrete function on one triangle: cell value and edge values by local edge index.
struct LocalWG {
  double w0 = 0.0;
  std::array<double, 3> wb{};
};

/// M_ij = integral of a phi_i . phi_j over K (degree-4 rule). Throws ElementError unless SPD.
Eigen::Matrix3d rt0_mass_matrix(const RT0Basis& basis, const ScalarField& coefficient);
/// Mass matrix for a == 1.
Eigen::Matrix3d rt0_mass_matrix(const RT0Basis& basis);

/// Weak gradient: solves M c = (wb_i - w0)_i with the unit-coefficient mass matrix.
RT0Field weak_gradient(const RT0Basis& basis, const LocalWG& w);

/// 3x4 map from (w0, wb_0, wb_1, wb_2) to the weak-gradient load vector.
Eigen::Matrix<double, 3, 4> weak_gradient_load();

/// Local stiffness S = B^T M^-1 M_a M^-1 B in the order (w0, wb_0, wb_1, wb_2).
Eigen::Matrix4d local_stiffness(const RT0Basis& basis, const ScalarField& coefficient);

/// Cell average (degree-4 rule).
double project_cell(const ScalarField& f, const std::array<Point2, 3>& corners);
/// Edge average (3-point Gauss).
double project_edge(const ScalarField& g, Point2 a, Point2 b);

/// Edge-flux interpolant: c_i = integral of q . n_i over e_i.
RT0Field rt0_interpolate(const VectorField& q, const RT0Basis& basis);

Vec2 eval_rt0(const RT0Field& field, const RT0Basis& basis, Point2 x);

}  // namespace wgif
