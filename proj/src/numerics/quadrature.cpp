#include "fock/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace fock::numerics {

namespace {

struct JacobiEval {
  double p;   // P_n(x)
  double dp;  // P_n'(x)
  double pm1; // P_{n-1}(x)
};

// Three-term recurrence for the Jacobi polynomial P_n^{(a,b)} and its derivative.
JacobiEval jacobi_eval(int n, double a, double b, double x) {
  double p0 = 1.0;
  double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  if (n == 0) return {1.0, 0.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  const double s = 2.0 * n + a + b;
  const double dp = (n * ((a - b) - s * x) * p1 + 2.0 * (n + a) * (n + b) * p0) / (s * (1.0 - x * x));
  return {p1, dp, p0};
}

// Golub–Welsch eigenvalues of the Jacobi matrix, used as Newton starting points.
std::vector<double> jacobi_initial_nodes(int n, double a, double b) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const int m = k + 1;
      const double sm = 2.0 * m + a + b;
      double off2;
      if (m == 1) {
        off2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
      } else {
        off2 = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (sm * sm * (sm + 1.0) * (sm - 1.0));
      }
      J(k, k + 1) = J(k + 1, k) = std::sqrt(off2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw std::invalid_argument("gauss_jacobi: alpha, beta must exceed -1");

  std::vector<double> x = jacobi_initial_nodes(n, alpha, beta);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Normalisation constant of the Christoffel weights, in log form to avoid overflow.
  const double log_c = std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0) -
                       std::lgamma(n + alpha + beta + 1.0) - std::lgamma(n + 1.0) +
                       (alpha + beta + 1.0) * std::log(2.0);

  for (int i = 0; i < n; ++i) {
    double xi = x[i];
    for (int it = 0; it < 100; ++it) {
      const JacobiEval e = jacobi_eval(n, alpha, beta, xi);
      const double dx = e.p / e.dp;
      xi -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(xi))) break;
    }
    const JacobiEval e = jacobi_eval(n, alpha, beta, xi);
    rule.nodes[i] = xi;
    rule.weights[i] = std::exp(log_c) / ((1.0 - xi * xi) * e.dp * e.dp);
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on the Legendre recurrence from the classical cosine guesses; symmetric fill.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const QuadratureRule& gauss_legendre_cached(int n) {
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<QuadratureRule>(gauss_legendre(n));
  const QuadratureRule& ref = *rule;
  cache.emplace(n, std::move(rule));
  return ref;
}

}  // namespace fock::numerics
