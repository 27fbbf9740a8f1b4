#include "besov/gauss.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "besov/error.hpp"

namespace besov {

namespace {

Rule1D golub_welsch(std::size_t n, double a, double b) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 1);
  const double ab = a + b;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    if (i == 0) {
      diag(0) = (b - a) / (ab + 2.0);
    } else {
      diag(i) = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    }
    if (i + 1 < n) {
      const double j = k + 1.0;
      const double num = 4.0 * j * (j + a) * (j + b) * (j + ab);
      const double den = std::pow(2.0 * j + ab, 2) * (2.0 * j + ab + 1.0) * (2.0 * j + ab - 1.0);
      off(i) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off.head(n > 1 ? n - 1 : 0), Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

}  // namespace

Rule1D gauss_jacobi(std::size_t n, double alpha, double beta) {
  if (n == 0) throw DomainError("gauss_jacobi: n must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, double, double>, Rule1D> cache;
  const auto key = std::make_tuple(n, alpha, beta);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Rule1D r = golub_welsch(n, alpha, beta);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(r)).first->second;
}

Rule1D gauss_legendre(std::size_t n, double a, double b) {
  Rule1D r = gauss_jacobi(n, 0.0, 0.0);
  const double h = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes[i] = a + h * (r.nodes[i] + 1.0);
    r.weights[i] *= h;
  }
  return r;
}

Rule1D gauss_jacobi_left(std::size_t n, double beta, double L) {
  // u = L (1+x)/2, u^beta du = (L/2)^{beta+1} (1+x)^beta dx
  Rule1D r = gauss_jacobi(n, 0.0, beta);
  const double scale = std::pow(0.5 * L, beta + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes[i] = 0.5 * L * (r.nodes[i] + 1.0);
    r.weights[i] *= scale;
  }
  return r;
}

}  // namespace besov
