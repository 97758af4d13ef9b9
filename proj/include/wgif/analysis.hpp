#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wgif/assembly.hpp"
#include "wgif/mesh.hpp"
#include "wgif/problems.hpp"

namespace wgif {

struct ErrorRecord {
  double h_max = 0.0;
  /// max over triangles of |w0 - exact(centroid)|, exact branch by the triangle's region.
  double linf_solution = 0.0;
  /// max over triangles of |weak gradient(centroid) - exact gradient(centroid)|.
  double linf_gradient = 0.0;
  double l2_solution = 0.0;
  /// L2 norm over the interface edges of lambda - A1 grad u . n1.
  double l2_lambda_flux = 0.0;
  /// Triangles skipped because their centroid is within 1e-12 of the singular point.
  std::size_t excluded = 0;
};

ErrorRecord error_norms(const TriMesh& mesh, const ProblemSpec& spec, const Eigen::VectorXd& solution,
                        const DofMap& dofs);

/// One refinement level: mesh, system and solve summary, errors.
struct LevelResult {
  int level = 0;
  MeshStats mesh;
  std::size_t unknowns = 0;
  double relative_residual = 0.0;
  double seconds = 0.0;
  ErrorRecord errors;
};

/// Assembles, solves and measures one mesh.
LevelResult solve_level(const ProblemSpec& spec, const TriMesh& mesh, int level = 1);

struct StudyReport {
  std::vector<LevelResult> levels;
  /// Per-level orders; empty for the first level.
  std::vector<std::optional<double>> order_solution, order_gradient, order_l2, order_lambda;

  /// Order between the first and the last level.
  double overall_solution() const;
  double overall_gradient() const;
  /// Order between levels `from` and `to` (0-based) of the lambda flux error.
  double lambda_order(std::size_t from, std::size_t to) const;
};

/// log(e_{l-1}/e_l) / log(h_{l-1}/h_l) for l >= 1; entry 0 is empty.
std::vector<std::optional<double>> convergence_orders(const std::vector<double>& h, const std::vector<double>& e);
double order_between(double h0, double e0, double h1, double e1);

/// Fills the order columns from the level errors. Throws StudyError for fewer than two
/// levels or non-decreasing h_max.
void compute_orders(StudyReport& report);

/// Solves every mesh and computes orders.
StudyReport convergence_study(const ProblemSpec& spec, const std::vector<TriMesh>& meshes);
/// Builtin family levels 1..levels.
StudyReport convergence_study(const ProblemSpec& spec, int levels);

enum class TableFormat { Csv, Markdown };

/// Scientific notation with 5 significant digits, orders with 4 decimals, blank orders on
/// the first level. The CSV header is
/// level,h_max,linf_u,order_u,linf_grad,order_grad,l2_u,l2_lambda.
std::string render_table(const StudyReport& report, TableFormat format, const std::string& caption = {});

/// Inverse of the CSV rendering: errors and orders, nothing else. Throws ParseError.
StudyReport parse_csv(const std::string& text);

}  // namespace wgif
