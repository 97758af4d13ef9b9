#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "wgif/assembly.hpp"
#include "wgif/errors.hpp"
#include "wgif/family.hpp"
#include "wgif/solver.hpp"

using namespace wgif;
using namespace wgif::testing;

namespace {

TriMesh two_triangles() {
  return TriMesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}},
                        {RegionId::Region1, RegionId::Region1}, {false, false, false, false});
}

double max_asymmetry(const Eigen::SparseMatrix<double>& m) {
  const Eigen::SparseMatrix<double> d = m - Eigen::SparseMatrix<double>(m.transpose());
  double worst = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::fabs(it.value()));
  return worst;
}

double max_abs(const Eigen::SparseMatrix<double>& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::fabs(it.value()));
  return worst;
}

}  // namespace

TEST_CASE("dof map: two-triangle square has two cells and one interior edge") {
  const TriMesh m = two_triangles();
  const DofMap d = build_dof_map(m);
  CHECK(d.total_unknowns == 3);
  CHECK(d.n_cell == 2);
  CHECK(d.n_edge_unknowns == 1);
  CHECK(d.n_lambda == 0);
}

TEST_CASE("dof map: closed-form count and contiguous numbering on a split mesh") {
  const ProblemSpec spec = linear_problem(PatchGeometry::VerticalLine, 1, 1, {}, {});
  for (double h : {1.0, 0.5, 0.25}) {
    const TriMesh m = patch_mesh(spec, PatchGeometry::VerticalLine, h);
    const DofMap d = build_dof_map(m);
    std::size_t interior = 0;
    for (const Edge& e : m.edges()) interior += e.kind == EdgeKind::Interior;
    const std::size_t ni = m.n_interface_edges();
    CHECK(d.total_unknowns == m.n_triangles() + interior + 2 * ni + ni);
    std::vector<int> seen(d.total_unknowns, 0);
    for (int c : d.cell) ++seen[c];
    for (const auto& s : d.edge)
      for (int k : s)
        if (k >= 0) ++seen[k];
    for (int l : d.lambda)
      if (l >= 0) ++seen[l];
    for (int s : seen) CHECK(s == 1);
    for (std::size_t e = 0; e < m.n_edges(); ++e) {
      const Edge& edge = m.edges()[e];
      if (edge.kind == EdgeKind::Interface) {
        CHECK(d.edge[e][0] >= 0);
        CHECK(d.edge[e][1] >= 0);
        CHECK(d.lambda[e] >= 0);
      } else if (edge.kind == EdgeKind::DirichletBoundary) {
        CHECK(d.edge[e][index_of(edge.region)] == DofMap::kFixed);
      }
    }
  }
}

TEST_CASE("dof map: Region1 without Dirichlet edges is rejected") {
  const ProblemSpec spec = builtin_problem(1);
  // Swapping the labels puts Region1 inside the circle, away from the boundary.
  const RegionPredicate inside = [](Point2 p) {
    return std::hypot(p.x, p.y) > 0.5 ? RegionId::Region2 : RegionId::Region1;
  };
  const TriMesh m = generate_curved_fitted(spec.domain, 0.4, spec.interface.front(), inside, 16);
  CHECK_THROWS_AS(build_dof_map(m), WellPosednessError);
}

TEST_CASE("assembly: symmetric on the builtin problems, deterministic") {
  for (int id = 1; id <= 10; ++id) {
    const ProblemSpec spec = builtin_problem(id);
    const TriMesh m = level_mesh(spec, 1);
    const DofMap d = build_dof_map(m);
    const SparseSystem s = assemble(m, spec, d);
    CHECK(s.matrix.rows() == static_cast<Eigen::Index>(d.total_unknowns));
    CHECK(max_asymmetry(s.matrix) <= 1e-13 * max_abs(s.matrix));
    CHECK(s.rhs.allFinite());

    const SparseSystem again = assemble(m, spec, d);
    CHECK(again.matrix.nonZeros() == s.matrix.nonZeros());
    bool identical = again.rhs == s.rhs;
    for (Eigen::Index k = 0; k < s.matrix.nonZeros(); ++k) {
      identical = identical && s.matrix.valuePtr()[k] == again.matrix.valuePtr()[k] &&
                  s.matrix.innerIndexPtr()[k] == again.matrix.innerIndexPtr()[k];
    }
    CHECK(identical);
  }
}

TEST_CASE("assembly: zero data gives a zero right-hand side and solution") {
  const ProblemSpec spec = homogeneous(builtin_problem(1));
  const TriMesh m = level_mesh(spec, 1);
  const SparseSystem s = assemble(m, spec, build_dof_map(m));
  CHECK(s.rhs.cwiseAbs().maxCoeff() == 0.0);
  CHECK(solve(s).solution.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly: piecewise-linear patch test is solved exactly") {
  const Linear u{0.3, 1.5, -0.7}, v{-0.2, 0.4, 2.0};
  for (PatchGeometry g : {PatchGeometry::VerticalLine, PatchGeometry::Kink, PatchGeometry::Circle}) {
    for (auto [a1, a2] : {std::pair{1.0, 1.0}, std::pair{10.0, 2.0}, std::pair{1.0, 1000.0}}) {
      const ProblemSpec spec = linear_problem(g, a1, a2, u, v);
      const TriMesh m = patch_mesh(spec, g, 0.3);
      const DofMap d = build_dof_map(m);
      const SparseSystem s = assemble(m, spec, d);
      const Eigen::VectorXd exact = projected_exact(m, spec, d);
      const double scale = std::max(1.0, s.rhs.norm());
      CHECK((s.matrix * exact - s.rhs).norm() <= 1e-10 * scale * std::max(1.0, a2));
      const Eigen::VectorXd x = solve(s).solution;
      CHECK((x - exact).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, a1));
    }
  }
}

TEST_CASE("assembly: stiffness of one region annihilates constants away from the boundary") {
  const ProblemSpec spec = builtin_problem(1);
  const TriMesh m = level_mesh(spec, 1);
  const DofMap d = build_dof_map(m);
  const SparseSystem s = assemble(m, spec, d);
  for (RegionId r : {RegionId::Region1, RegionId::Region2}) {
    Eigen::VectorXd ones = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.total_unknowns));
    std::vector<bool> near_boundary(d.total_unknowns, false);
    for (std::size_t t = 0; t < m.n_triangles(); ++t) {
      if (m.triangles()[t].region != r) continue;
      const auto idx = local_dofs(m, d, t);
      bool touches = false;
      for (int k : idx) touches = touches || k == DofMap::kFixed;
      for (int k : idx)
        if (k >= 0) {
          ones[k] = 1.0;
          near_boundary[k] = near_boundary[k] || touches;
        }
    }
    const Eigen::VectorXd y = s.matrix * ones;
    double worst = 0.0;
    for (std::size_t k = 0; k < d.n_cell + d.n_edge_unknowns; ++k)
      if (ones[static_cast<Eigen::Index>(k)] == 1.0 && !near_boundary[k]) worst = std::max(worst, std::fabs(y[k]));
    CHECK(worst <= 1e-12 * max_abs(s.matrix));
  }
}

TEST_CASE("assembly: Helmholtz term shifts the cell diagonal by -k^2 |K|") {
  const ProblemSpec spec = builtin_problem(2, {.kappa = 2.0});
  ProblemSpec plain = spec;
  for (RegionData& r : plain.data) r.helmholtz_k = 0.0;
  const TriMesh m = level_mesh(spec, 1);
  const DofMap d = build_dof_map(m);
  const SparseSystem a = assemble(m, spec, d), b = assemble(m, plain, d);
  for (std::size_t t = 0; t < m.n_triangles(); ++t) {
    const double k = spec[m.triangles()[t].region].helmholtz_k;
    const int c = d.cell[t];
    CHECK(a.matrix.coeff(c, c) - b.matrix.coeff(c, c) == doctest::Approx(-k * k * m.area(t)).epsilon(1e-10));
  }
}

TEST_CASE("assembly: constants are reproduced on a single region") {
  const ProblemSpec spec = single_region(
      1.0, [](Point2) { return 2.5; }, [](Point2) { return Vec2{0.0, 0.0}; }, [](Point2) { return 0.0; });
  const TriMesh m = generate_structured_fitted(spec.domain, 3, {});
  const DofMap d = build_dof_map(m);
  const Eigen::VectorXd x = solve(assemble(m, spec, d)).solution;
  CHECK((x.array() - 2.5).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("dirichlet data: 3-point Gauss edge averages, not midpoint values") {
  const ProblemSpec spec = builtin_problem(3);
  // Region2 of Example 3 carries exp(x) cos(y); use it on the whole boundary.
  ProblemSpec probe = spec;
  probe.data[0] = spec.data[1];
  const TriMesh m = generate_structured_fitted(spec.domain, 2, {});
  const DofMap d = build_dof_map(m);
  const std::vector<double> g = apply_dirichlet(probe, m, d);
  double max_midpoint_gap = 0.0;
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    const Edge& edge = m.edges()[e];
    if (edge.kind != EdgeKind::DirichletBoundary) {
      CHECK(g[e] == 0.0);
      continue;
    }
    // Average of Re exp(z) along the straight segment za -> zb.
    const Point2 a = m.vertices()[edge.v[0]], b = m.vertices()[edge.v[1]];
    const std::complex<double> za(a.x, a.y), zb(b.x, b.y);
    const double exact = ((std::exp(zb) - std::exp(za)) / (zb - za)).real();
    CHECK(g[e] == doctest::Approx(exact).epsilon(1e-7));
    const Point2 mid = m.edge_midpoint(e);
    max_midpoint_gap = std::max(max_midpoint_gap, std::fabs(exact - std::exp(mid.x) * std::cos(mid.y)));
  }
  CHECK(max_midpoint_gap > 1e-3);
}

TEST_CASE("assembly: scaling A, f and psi by s scales lambda only") {
  const double s = 10.0;
  const ProblemSpec spec = builtin_problem(1);
  ProblemSpec scaled = spec;
  for (RegionData& r : scaled.data) {
    const ScalarField a = r.coefficient, f = r.forcing;
    r.coefficient = [a, s](Point2 p) { return s * a(p); };
    r.forcing = [f, s](Point2 p) { return s * f(p); };
  }
  const TriMesh m = level_mesh(spec, 1);
  const DofMap d = build_dof_map(m);
  const Eigen::VectorXd x = solve(assemble(m, spec, d)).solution;
  const Eigen::VectorXd y = solve(assemble(m, scaled, d)).solution;
  const std::size_t n_uv = d.n_cell + d.n_edge_unknowns;
  for (std::size_t k = 0; k < d.total_unknowns; ++k) {
    const Eigen::Index i = static_cast<Eigen::Index>(k);
    if (k < n_uv)
      CHECK(std::fabs(y[i] - x[i]) <= 1e-10 * std::max(1.0, std::fabs(x[i])));
    else
      CHECK(std::fabs(y[i] - s * x[i]) <= 1e-10 * std::max(1.0, std::fabs(s * x[i])));
  }
}

TEST_CASE("matrix market output: lower triangle, 1-based, round trip") {
  const ProblemSpec spec = builtin_problem(1);
  const TriMesh m = level_mesh(spec, 1);
  const SparseSystem s = assemble(m, spec, build_dof_map(m));
  std::ostringstream mo, ro;
  write_matrix_market(s, mo, ro);

  std::istringstream mi(mo.str());
  std::string line;
  std::getline(mi, line);
  CHECK(line == "%%MatrixMarket matrix coordinate real symmetric");
  long rows = 0, cols = 0, entries = 0;
  mi >> rows >> cols >> entries;
  CHECK(rows == s.matrix.rows());
  CHECK(cols == s.matrix.cols());
  Eigen::MatrixXd back = Eigen::MatrixXd::Zero(rows, cols);
  for (long k = 0; k < entries; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    mi >> i >> j >> v;
    REQUIRE(i >= j);
    REQUIRE(j >= 1);
    back(i - 1, j - 1) = v;
    back(j - 1, i - 1) = v;
  }
  CHECK((back - Eigen::MatrixXd(s.matrix)).cwiseAbs().maxCoeff() == 0.0);

  std::istringstream ri(ro.str());
  long n = 0;
  ri >> n;
  CHECK(n == s.rhs.size());
  for (long k = 0; k < n; ++k) {
    double v = 0.0;
    ri >> v;
    CHECK(v == s.rhs[k]);
  }
}
