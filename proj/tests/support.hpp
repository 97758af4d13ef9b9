#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wgif/assembly.hpp"
#include "wgif/family.hpp"
#include "wgif/mesh_generation.hpp"
#include "wgif/problems.hpp"

namespace wgif::testing {

/// Linear field c0 + c1 x + c2 y.
struct Linear {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double operator()(Point2 p) const { return c0 + c1 * p.x + c2 * p.y; }
  Vec2 gradient() const { return {c1, c2}; }
};

enum class PatchGeometry { VerticalLine, Kink, Circle };

/// Piecewise-linear exact solution with constant coefficients a1, a2. Jump, flux-jump and
/// boundary data follow from the branches, so the scheme reproduces it exactly.
inline ProblemSpec linear_problem(PatchGeometry geometry, double a1, double a2, Linear u, Linear v) {
  ProblemSpec spec;
  spec.name = "piecewise linear";
  spec.domain = Rect{-1.0, 1.0, -1.0, 1.0};
  const double itol = 1e-9 * 4.0;
  switch (geometry) {
    case PatchGeometry::VerticalLine:
      spec.region = [](Point2 p) { return p.x < 0.0 ? RegionId::Region1 : RegionId::Region2; };
      spec.on_interface = [itol](Point2 p) { return std::fabs(p.x) <= itol; };
      spec.interface = {{[](double t) { return Point2{0.0, t}; }, -1.0, 1.0, false}};
      break;
    case PatchGeometry::Kink: {
      spec.domain = Rect{-1.0, 3.0, -1.0, 1.0};
      const auto g = [](double x) { return x > 0.0 ? 2.0 * x : -0.5 * x; };
      spec.region = [g](Point2 p) { return p.y > g(p.x) ? RegionId::Region1 : RegionId::Region2; };
      spec.on_interface = [g, itol](Point2 p) { return p.x >= -1.0 - itol && p.x <= 0.5 + itol && std::fabs(p.y - g(p.x)) <= itol; };
      spec.interface = {{[g](double t) { return Point2{t, g(t)}; }, -1.0, 0.0, false},
                        {[g](double t) { return Point2{t, g(t)}; }, 0.0, 0.5, false}};
      break;
    }
    case PatchGeometry::Circle:
      spec.region = [](Point2 p) { return std::hypot(p.x, p.y) > 0.5 ? RegionId::Region1 : RegionId::Region2; };
      spec.on_interface = [itol](Point2 p) { return std::fabs(std::hypot(p.x, p.y) - 0.5) <= itol; };
      spec.interface = {{[](double t) { return Point2{0.5 * std::cos(t), 0.5 * std::sin(t)}; }, 0.0,
                         2.0 * std::numbers::pi, true}};
      break;
  }
  const auto fill = [](RegionData& d, double a, Linear w) {
    d.coefficient = [a](Point2) { return a; };
    d.exact = w;
    d.exact_gradient = [w](Point2) { return w.gradient(); };
    d.forcing = [](Point2) { return 0.0; };
  };
  fill(spec.data[0], a1, u);
  fill(spec.data[1], a2, v);
  spec.family = {MeshFamily::Kind::Structured, 2.0, 0.0};
  return spec;
}

/// Mesh of a linear_problem: structured for the straight geometries, curved for the circle.
inline TriMesh patch_mesh(const ProblemSpec& spec, PatchGeometry geometry, double h) {
  if (geometry == PatchGeometry::Circle)
    return generate_curved_fitted(spec.domain, h, spec.interface.front(), spec.region, 16);
  return generate_structured_fitted(spec.domain, 1.0 / h, interface_polyline(spec, h), spec.region);
}

/// Vector of projected exact unknowns: Q0 u per cell, Qb u per edge side, A1 grad u . n1 per
/// interface edge.
inline Eigen::VectorXd projected_exact(const TriMesh& mesh, const ProblemSpec& spec, const DofMap& dofs) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.total_unknowns));
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const RegionId r = mesh.triangles()[t].region;
    x[dofs.cell[t]] = project_cell([&](Point2 p) { return exact_value(spec, r, p); }, mesh.corners(t));
  }
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const Point2 a = mesh.vertices()[edge.v[0]], b = mesh.vertices()[edge.v[1]];
    for (RegionId r : {RegionId::Region1, RegionId::Region2}) {
      const int k = dofs.edge[e][index_of(r)];
      if (k >= 0) x[k] = project_edge([&](Point2 p) { return exact_value(spec, r, p); }, a, b);
    }
    if (dofs.lambda[e] >= 0) {
      const Vec2 n1 = interface_normal(mesh, e);
      x[dofs.lambda[e]] = project_edge(
          [&](Point2 p) { return spec[RegionId::Region1].coefficient(p) * dot(exact_gradient(spec, RegionId::Region1, p), n1); },
          a, b);
    }
  }
  return x;
}

/// Single-region problem on [-1,1]^2 with A == a and the given exact solution.
inline ProblemSpec single_region(double a, const ScalarField& exact, const VectorField& gradient,
                                 const ScalarField& forcing) {
  ProblemSpec spec;
  spec.name = "single region";
  spec.domain = Rect{-1.0, 1.0, -1.0, 1.0};
  spec.region = [](Point2) { return RegionId::Region1; };
  spec.on_interface = [](Point2) { return false; };
  for (RegionData& d : spec.data) {
    d.coefficient = [a](Point2) { return a; };
    d.exact = exact;
    d.exact_gradient = gradient;
    d.forcing = forcing;
  }
  return spec;
}

}  // namespace wgif::testing
