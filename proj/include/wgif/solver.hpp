#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Sparse>

#include "wgif/assembly.hpp"

namespace wgif {

struct FactorizationStats {
  std::size_t nnz_factor = 0;
  double wall_time = 0.0;
};

struct SolveReport {
  Eigen::VectorXd solution;
  /// ||A x - b||_2 / ||b||_2 with the assembled matrix; 0 when b == 0.
  double relative_residual = 0.0;
  FactorizationStats factorization_stats;
  std::string backend;
  bool refined = false;
};

/// Residual bound certified by solve().
inline constexpr double kResidualTolerance = 1e-10;

/// Sparse LU solve of the assembled system with one refinement step for residuals in
/// (1e-12, 1e-8]. Throws SolverError (singular factor, with the pivot column when known)
/// or AccuracyError (residual above kResidualTolerance).
SolveReport solve(const SparseSystem& system);

/// Name of the sparse factorization in use.
std::string solver_backend();

}  // namespace wgif
