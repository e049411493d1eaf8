#pragma once

#include <functional>
#include <vector>

#include "vhed/types.hpp"

namespace vhed {

struct GmresResult {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
  std::vector<double> history;  // relative residual after each iteration
};

// Restarted GMRES with modified Gram-Schmidt and Givens rotations, matrix
// free. x holds the warm start on entry and the solution on exit. The true
// residual is recomputed at every restart; convergence is declared on
// ||b - Ax|| / ||b|| <= tol.
GmresResult gmres(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                  const Eigen::VectorXd& b, Eigen::VectorXd& x, int restart, int max_iter,
                  double tol);

}  // namespace vhed
