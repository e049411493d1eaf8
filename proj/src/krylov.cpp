#include "vhed/krylov.hpp"

#include <cmath>

namespace vhed {

GmresResult gmres(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                  const Eigen::VectorXd& b, Eigen::VectorXd& x, int restart, int max_iter,
                  double tol) {
  GmresResult res;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero(b.size());
    res.converged = true;
    return res;
  }

  const Eigen::Index n = b.size();
  Eigen::VectorXd w(n), r(n);
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(static_cast<size_t>(restart) + 1);
  Eigen::MatrixXd H(restart + 1, restart);
  Eigen::VectorXd cs(restart), sn(restart), g(restart + 1);

  while (res.iterations < max_iter) {
    apply(x, w);
    r = b - w;
    double beta = r.norm();
    if (!std::isfinite(beta)) throw ComputeError("gmres: residual is not finite");
    res.rel_residual = beta / bnorm;
    if (res.rel_residual <= tol) {
      res.converged = true;
      return res;
    }

    basis.clear();
    basis.push_back(r / beta);
    g.setZero();
    g(0) = beta;
    H.setZero();

    int j = 0;
    for (; j < restart && res.iterations < max_iter; ++j) {
      ++res.iterations;
      apply(basis[static_cast<size_t>(j)], w);
      for (int i = 0; i <= j; ++i) {
        H(i, j) = w.dot(basis[static_cast<size_t>(i)]);
        w -= H(i, j) * basis[static_cast<size_t>(i)];
      }
      const double h_next = w.norm();
      H(j + 1, j) = h_next;
      if (h_next > 0.0) basis.push_back(w / h_next);

      for (int i = 0; i < j; ++i) {
        const double t = cs(i) * H(i, j) + sn(i) * H(i + 1, j);
        H(i + 1, j) = -sn(i) * H(i, j) + cs(i) * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      cs(j) = H(j, j) / denom;
      sn(j) = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g(j + 1) = -sn(j) * g(j);
      g(j) = cs(j) * g(j);

      res.rel_residual = std::abs(g(j + 1)) / bnorm;
      res.history.push_back(res.rel_residual);
      if (!std::isfinite(res.rel_residual)) throw ComputeError("gmres: breakdown (NaN)");
      if (res.rel_residual <= tol || h_next == 0.0) {
        ++j;
        break;
      }
    }

    // back-substitute y and update x
    Eigen::VectorXd y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g(i);
      for (int l = i + 1; l < j; ++l) s -= H(i, l) * y(l);
      y(i) = s / H(i, i);
    }
    for (int i = 0; i < j; ++i) x += y(i) * basis[static_cast<size_t>(i)];

    apply(x, w);
    res.rel_residual = (b - w).norm() / bnorm;
    if (res.rel_residual <= tol) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace vhed
