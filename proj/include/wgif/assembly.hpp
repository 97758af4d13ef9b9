#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Sparse>

#include "wgif/element.hpp"
#include "wgif/mesh.hpp"
#include "wgif/problems.hpp"

namespace wgif {

/// Global numbering: cell unknowns first (triangle order), then edge unknowns in edge order
/// (an interface edge contributes its Region1 then its Region2 side), then one multiplier per
/// interface edge in edge order.
struct DofMap {
  static constexpr int kFixed = -1;
  static constexpr int kNone = -2;

  std::vector<int> cell;
  /// edge[e][index_of(side)]: unknown index, kFixed for a Dirichlet edge on that side, kNone
  /// when the edge does not touch that side.
  std::vector<std::array<int, 2>> edge;
  /// Multiplier index per edge; kNone unless the edge lies on the interface.
  std::vector<int> lambda;
  std::size_t total_unknowns = 0;
  std::size_t n_cell = 0;
  std::size_t n_edge_unknowns = 0;
  std::size_t n_lambda = 0;
};

/// Throws WellPosednessError unless some Region1 triangle has a Dirichlet edge.
DofMap build_dof_map(const TriMesh& mesh);

struct SparseSystem {
  /// Full (both triangles stored) symmetric matrix.
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  /// Edge averages of the boundary data on Dirichlet edges; zero elsewhere.
  std::vector<double> dirichlet;
};

/// Edge averages of the region's exact solution on every Dirichlet edge (zero elsewhere).
std::vector<double> apply_dirichlet(const ProblemSpec& spec, const TriMesh& mesh, const DofMap& dofs);

/// Assembles the symmetric saddle-point system. Element errors carry the triangle index.
SparseSystem assemble(const TriMesh& mesh, const ProblemSpec& spec, const DofMap& dofs);

/// Local unknowns of triangle t in the order (w0, wb_0, wb_1, wb_2); kFixed entries for
/// Dirichlet edges.
std::array<int, 4> local_dofs(const TriMesh& mesh, const DofMap& dofs, std::size_t t);

/// Discrete function on triangle t from a solution vector and the Dirichlet values.
LocalWG local_solution(const TriMesh& mesh, const DofMap& dofs, const std::vector<double>& dirichlet,
                       const Eigen::VectorXd& x, std::size_t t);

/// Unit normal of interface edge e pointing out of Region1.
Vec2 interface_normal(const TriMesh& mesh, std::size_t e);

/// MatrixMarket "coordinate real symmetric" (lower triangle, 1-based) and a plain RHS listing.
void write_matrix_market(const SparseSystem& system, std::ostream& matrix, std::ostream& rhs);

}  // namespace wgif
