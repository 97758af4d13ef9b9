#include "wgif/solver.hpp"

#include <chrono>
#include <vector>

#include <Eigen/SparseLU>

#include "wgif/errors.hpp"

namespace wgif {

namespace {

class EigenFactorization {
public:
  explicit EigenFactorization(const Eigen::SparseMatrix<double>& a) {
    lu_.analyzePattern(a);
    lu_.factorize(a);
    if (lu_.info() != Eigen::Success) throw SolverError("sparse LU failed: " + lu_.lastErrorMessage(), pivot());
  }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return lu_.solve(b); }
  std::size_t nnz() const { return static_cast<std::size_t>(lu_.nnzL() + lu_.nnzU()); }

private:
  // The message ends with the failing column index.
  long pivot() const {
    const std::string m = lu_.lastErrorMessage();
    const auto at = m.find_last_not_of("0123456789");
    if (at == std::string::npos || at + 1 >= m.size()) return -1;
    return std::stol(m.substr(at + 1));
  }
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace

std::string solver_backend() { return "eigen-sparselu"; }

SolveReport solve(const SparseSystem& system) {
  const auto& a = system.matrix;
  const auto& b = system.rhs;
  if (a.rows() != a.cols() || a.rows() != b.size()) throw SolverError("matrix and right-hand side sizes differ");
  if (!b.allFinite()) throw SolverError("right-hand side is not finite");

  SolveReport report;
  report.backend = solver_backend();
  const auto start = std::chrono::steady_clock::now();
  const EigenFactorization f(a);
  report.factorization_stats.nnz_factor = f.nnz();

  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    report.solution = Eigen::VectorXd::Zero(b.size());
  } else {
    report.solution = f.solve(b);
    Eigen::VectorXd r = b - a * report.solution;
    report.relative_residual = r.norm() / bnorm;
    if (report.relative_residual > 1e-12 && report.relative_residual <= 1e-8) {
      report.solution += f.solve(r);
      r = b - a * report.solution;
      report.relative_residual = r.norm() / bnorm;
      report.refined = true;
    }
  }
  report.factorization_stats.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!report.solution.allFinite()) throw SolverError("solution is not finite");
  if (!(report.relative_residual <= kResidualTolerance))
    throw AccuracyError("relative residual above tolerance", report.relative_residual);
  return report;
}

}  // namespace wgif
