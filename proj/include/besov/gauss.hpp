#ifndef BESOV_GAUSS_HPP
#define BESOV_GAUSS_HPP

#include <cstddef>
#include <vector>

namespace besov {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

/**
 * Gauss-Jacobi rule for int_{-1}^{1} f(x) (1-x)^alpha (1+x)^beta dx, alpha, beta > -1,
 * via Golub-Welsch on the Jacobi matrix of the three-term recurrence.
 */
Rule1D gauss_jacobi(std::size_t n, double alpha, double beta);

/// Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(std::size_t n, double a, double b);

/// Rule for int_0^L g(u) u^beta du (singular weight at the left end).
Rule1D gauss_jacobi_left(std::size_t n, double beta, double L);

}  // namespace besov

#endif  // BESOV_GAUSS_HPP
