#include "wgif/assembly.hpp"

#include <cstdio>
#include <ostream>

#include "wgif/errors.hpp"
#include "wgif/quadrature.hpp"

namespace wgif {

DofMap build_dof_map(const TriMesh& mesh) {
  DofMap d;
  d.n_cell = mesh.n_triangles();
  d.cell.resize(d.n_cell);
  int next = 0;
  for (std::size_t t = 0; t < d.n_cell; ++t) d.cell[t] = next++;

  bool region1_dirichlet = false;
  d.edge.assign(mesh.n_edges(), {DofMap::kNone, DofMap::kNone});
  d.lambda.assign(mesh.n_edges(), DofMap::kNone);
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    auto& slot = d.edge[e];
    switch (edge.kind) {
      case EdgeKind::Interior:
        slot[index_of(edge.region)] = next++;
        break;
      case EdgeKind::DirichletBoundary:
        slot[index_of(edge.region)] = DofMap::kFixed;
        region1_dirichlet = region1_dirichlet || edge.region == RegionId::Region1;
        break;
      case EdgeKind::Interface:
        slot[0] = next++;
        slot[1] = next++;
        break;
    }
  }
  d.n_edge_unknowns = static_cast<std::size_t>(next) - d.n_cell;
  for (std::size_t e = 0; e < mesh.n_edges(); ++e)
    if (mesh.edges()[e].kind == EdgeKind::Interface) d.lambda[e] = next++;
  d.n_lambda = mesh.n_interface_edges();
  d.total_unknowns = static_cast<std::size_t>(next);
  if (!region1_dirichlet)
    throw WellPosednessError("Region1 has no Dirichlet boundary edge; the discrete problem is not uniquely solvable");
  return d;
}

std::array<int, 4> local_dofs(const TriMesh& mesh, const DofMap& dofs, std::size_t t) {
  const int side = index_of(mesh.triangles()[t].region);
  const auto& te = mesh.triangle_edges(t);
  return {dofs.cell[t], dofs.edge[te[0]][side], dofs.edge[te[1]][side], dofs.edge[te[2]][side]};
}

LocalWG local_solution(const TriMesh& mesh, const DofMap& dofs, const std::vector<double>& dirichlet,
                       const Eigen::VectorXd& x, std::size_t t) {
  const auto idx = local_dofs(mesh, dofs, t);
  const auto& te = mesh.triangle_edges(t);
  LocalWG w;
  w.w0 = x[idx[0]];
  for (int i = 0; i < 3; ++i) w.wb[i] = idx[i + 1] >= 0 ? x[idx[i + 1]] : dirichlet[te[i]];
  return w;
}

Vec2 interface_normal(const TriMesh& mesh, std::size_t e) {
  return mesh.outward_normal(static_cast<std::size_t>(mesh.edges()[e].tri[0]), e);
}

std::vector<double> apply_dirichlet(const ProblemSpec& spec, const TriMesh& mesh, const DofMap& dofs) {
  std::vector<double> g(mesh.n_edges(), 0.0);
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (edge.kind != EdgeKind::DirichletBoundary) continue;
    if (dofs.edge[e][index_of(edge.region)] != DofMap::kFixed) continue;
    g[e] = project_edge([&](Point2 x) { return exact_value(spec, edge.region, x); },
                        mesh.vertices()[edge.v[0]], mesh.vertices()[edge.v[1]]);
  }
  return g;
}

SparseSystem assemble(const TriMesh& mesh, const ProblemSpec& spec, const DofMap& dofs) {
  SparseSystem sys;
  const auto n = static_cast<Eigen::Index>(dofs.total_unknowns);
  sys.rhs = Eigen::VectorXd::Zero(n);
  sys.dirichlet = apply_dirichlet(spec, mesh, dofs);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(16 * mesh.n_triangles() + 4 * dofs.n_lambda);
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const RegionId r = mesh.triangles()[t].region;
    const RegionData& data = spec[r];
    const RT0Basis basis(mesh.corners(t), static_cast<long>(t));
    Eigen::Matrix4d s = local_stiffness(basis, data.coefficient);
    s(0, 0) -= data.helmholtz_k * data.helmholtz_k * basis.area();

    const auto idx = local_dofs(mesh, dofs, t);
    const auto& te = mesh.triangle_edges(t);
    std::array<double, 4> fixed{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i)
      if (idx[i + 1] == DofMap::kFixed) fixed[i + 1] = sys.dirichlet[te[i]];

    sys.rhs[idx[0]] +=
        integrate_triangle_split(basis.corners(), [&](Point2 x) { return forcing(spec, r, x); }, spec.forcing_breaks);
    for (int i = 0; i < 4; ++i) {
      if (idx[i] < 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (idx[j] >= 0)
          triplets.emplace_back(idx[i], idx[j], s(i, j));
        else
          sys.rhs[idx[i]] -= s(i, j) * fixed[j];
      }
    }
  }

  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const int lam = dofs.lambda[e];
    if (lam < 0) continue;
    const int ub = dofs.edge[e][0], vb = dofs.edge[e][1];
    const double len = mesh.edge_length(e);
    triplets.emplace_back(ub, lam, -len);
    triplets.emplace_back(lam, ub, -len);
    triplets.emplace_back(vb, lam, len);
    triplets.emplace_back(lam, vb, len);
    const Vec2 n1 = interface_normal(mesh, e);
    const Point2 a = mesh.vertices()[mesh.edges()[e].v[0]], b = mesh.vertices()[mesh.edges()[e].v[1]];
    sys.rhs[vb] += integrate_segment(a, b, [&](Point2 x) { return jump_data(spec, x, n1).psi; });
    sys.rhs[lam] -= integrate_segment(a, b, [&](Point2 x) { return jump_data(spec, x, n1).phi; });
  }

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

void write_matrix_market(const SparseSystem& system, std::ostream& matrix, std::ostream& rhs) {
  const auto& a = system.matrix;
  std::size_t lower = 0;
  for (Eigen::Index c = 0; c < a.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it)
      if (it.row() >= it.col()) ++lower;
  matrix << "%%MatrixMarket matrix coordinate real symmetric\n";
  matrix << a.rows() << ' ' << a.cols() << ' ' << lower << '\n';
  char buf[64];
  for (Eigen::Index c = 0; c < a.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
      if (it.row() < it.col()) continue;
      std::snprintf(buf, sizeof buf, "%.17g", it.value());
      matrix << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buf << '\n';
    }
  rhs << system.rhs.size() << '\n';
  for (Eigen::Index i = 0; i < system.rhs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", system.rhs[i]);
    rhs << buf << '\n';
  }
}

}  // namespace wgif
