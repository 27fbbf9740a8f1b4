#ifndef BESOV_HANKEL_HPP
#define BESOV_HANKEL_HPP

#include <Eigen/Dense>
#include <iosfwd>

#include "besov/spaces.hpp"
#include "besov/taylor.hpp"
#include "besov/weights.hpp"

namespace besov {

/**
 * Truncated matrix of h_b^t in the monomial basis: input coefficient j of f maps to
 * the coefficient of conj(z)^n of h_b^t(f),
 *   A[n,j] = conj(b_{j+n}) omega_{j+n}(t) (1+t)_n / n!.
 */
struct HankelMatrix {
  double t = 0.0;
  std::size_t D = 0;
  Eigen::MatrixXcd A;
};

/// Requires b.degree_cap() >= 2D.
HankelMatrix hankel_matrix(const TaylorPoly& b, double t, std::size_t D);

/// Coefficients of conj(z)^n of h_b^t(f); deg f <= D.
TaylorPoly hankel_apply(const HankelMatrix& H, const TaylorPoly& f);

/// |<g, conj(h_b^t f)>_t - <fg, b>_t|.
double fubini_identity_check(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, double t);

struct HankelNormResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/**
 * ||h_b^t|| from B^2_s(mu_t) to the dual of B^2_{-s}(mu'_t) under <.,.>_t, truncated at degree D:
 * the top singular value of D_out^{1/2} A D_in^{-1/2} with D_in = ||z^m||^2_{B^2_s(mu_t)} and
 * D_out = omega_n(t)^2 / ||z^n||^2_{B^2_{-s}(mu'_t)}. Power iteration from the all-ones vector.
 * Radial theta only.
 */
HankelNormResult hankel_norm_p2_detail(const TaylorPoly& b, double s, double t, const Weight& theta, std::size_t D,
                                       double tol = 1e-12, int max_iter = 200000);
double hankel_norm_p2(const TaylorPoly& b, double s, double t, const Weight& theta, std::size_t D);

/// The scaled matrix D_out^{1/2} A D_in^{-1/2} used above.
Eigen::MatrixXcd hankel_scaled_matrix(const TaylorPoly& b, double s, double t, const Weight& theta, std::size_t D);

/// Rows "n,j,re,im" for every entry.
void write_csv(const HankelMatrix& H, std::ostream& os);

}  // namespace besov

#endif  // BESOV_HANKEL_HPP
