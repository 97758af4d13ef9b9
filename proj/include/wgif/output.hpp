#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wgif/assembly.hpp"
#include "wgif/mesh.hpp"

namespace wgif {

/// One row per unknown: `entity,index,side,value` with entity cell, edge or lambda, side 1 or 2
/// (empty for lambda). Dirichlet edges are listed with their fixed values. Values use 17
/// significant digits, so reruns are byte-identical.
std::string solution_csv(const TriMesh& mesh, const DofMap& dofs, const std::vector<double>& dirichlet,
                         const Eigen::VectorXd& solution);

/// `cx,cy,w0` per triangle for external plotting.
std::string cell_values_csv(const TriMesh& mesh, const DofMap& dofs, const Eigen::VectorXd& solution);

/// Triangles filled by w0 on a blue-to-red scale, `pixels` wide.
std::string svg_heatmap(const TriMesh& mesh, const DofMap& dofs, const Eigen::VectorXd& solution, int pixels = 600);

}  // namespace wgif
