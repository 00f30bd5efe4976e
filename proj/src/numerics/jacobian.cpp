#include "fock/numerics.hpp"

namespace fock::numerics {

Eigen::MatrixXd finite_difference_jacobian(const VectorMap& map, const Eigen::VectorXd& point, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference_jacobian: h must be positive");
  const Eigen::Index n = point.size();
  Eigen::MatrixXd J;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd xp = point, xm = point;
    xp(j) += h;
    xm(j) -= h;
    const Eigen::VectorXd fp = map(xp);
    const Eigen::VectorXd fm = map(xm);
    if (j == 0) J.resize(fp.size(), n);
    J.col(j) = (fp - fm) / (2.0 * h);
  }
  return J;
}

}  // namespace fock::numerics
