#include "besov/hankel.hpp"

#include <cmath>
#include <ostream>

#include "besov/error.hpp"

namespace besov {

namespace {

// (1+t)_n / n!
double rising_over_factorial(std::size_t n, double t) {
  const double nd = static_cast<double>(n);
  return std::exp(log_gamma(1.0 + t + nd) - log_gamma(1.0 + t) - log_gamma(nd + 1.0));
}

}  // namespace

HankelMatrix hankel_matrix(const TaylorPoly& b, double t, std::size_t D) {
  if (t < 0.0) throw DomainError("hankel_matrix: t must be >= 0");
  if (b.degree_cap() < 2 * D)
    throw DomainError("hankel_matrix: b must carry coefficients up to degree 2D = " + std::to_string(2 * D));
  HankelMatrix H;
  H.t = t;
  H.D = D;
  H.A.resize(static_cast<Eigen::Index>(D + 1), static_cast<Eigen::Index>(D + 1));
  const PairingWeightTable omega(t, 2 * D);
  for (std::size_t n = 0; n <= D; ++n) {
    const double c = t == 0.0 ? 1.0 : rising_over_factorial(n, t);
    for (std::size_t j = 0; j <= D; ++j)
      H.A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) =
          t == 0.0 ? std::conj(b[j + n]) : std::conj(b[j + n]) * omega[j + n] * c;
  }
  return H;
}

TaylorPoly hankel_apply(const HankelMatrix& H, const TaylorPoly& f) {
  if (f.degree() > H.D) throw DomainError("hankel_apply: deg f exceeds the matrix size");
  Eigen::VectorXcd x(static_cast<Eigen::Index>(H.D + 1));
  for (std::size_t j = 0; j <= H.D; ++j) x(static_cast<Eigen::Index>(j)) = f[j];
  const Eigen::VectorXcd y = H.A * x;
  return TaylorPoly(std::vector<cplx>(y.data(), y.data() + y.size()));
}

double fubini_identity_check(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, double t) {
  const std::size_t D = std::max(f.degree_cap(), g.degree_cap());
  const HankelMatrix H = hankel_matrix(b.with_cap(std::max(2 * D, b.degree_cap())), t, D);
  const TaylorPoly h = hankel_apply(H, f.with_cap(D));
  // conj(h) is holomorphic with coefficients conj(h_n)
  cplx lhs{0.0};
  for (std::size_t n = 0; n <= D; ++n) lhs += g[n] * h[n] * moment(n, t);
  const cplx rhs = pairing(multiply(f, g, f.degree_cap() + g.degree_cap()), b, t);
  return std::abs(lhs - rhs);
}

Eigen::MatrixXcd hankel_scaled_matrix(const TaylorPoly& b, double s, double t, const Weight& theta, std::size_t D) {
  if (!theta.radial())
    throw UnsupportedError("hankel_norm_p2: non-radial weights are not supported (monomials are not orthogonal)");
  const SpaceParams in{2.0, s, t, theta};
  in.validate();
  const SpaceParams out = in.conjugate(-s);
  const HankelMatrix H = hankel_matrix(b.with_cap(std::max(2 * D, b.degree_cap())), t, D);
  Eigen::MatrixXcd K = H.A;
  for (std::size_t n = 0; n <= D; ++n) {
    const double wo = moment(n, t) / std::sqrt(besov_monomial_power(n, out, out.k_s()));
    K.row(static_cast<Eigen::Index>(n)) *= wo;
  }
  for (std::size_t j = 0; j <= D; ++j)
    K.col(static_cast<Eigen::Index>(j)) /= std::sqrt(besov_monomial_power(j, in, in.k_s()));
  return K;
}

HankelNormResult hankel_norm_p2_detail(const TaylorPoly& b, double s, double t, const Weight& theta, std::size_t D,
                                       double tol, int max_iter) {
  HankelNormResult res;
  const Eigen::MatrixXcd K = hankel_scaled_matrix(b, s, t, theta, D);
  if (b.is_zero()) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(K.cols());
  v.normalize();
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXcd w = K.adjoint() * (K * v);
    const double nw = w.norm();
    res.iterations = it;
    if (nw == 0.0) break;
    const double next = std::real(v.dot(w));  // Rayleigh quotient
    v = w / nw;
    if (std::abs(next - lambda) <= tol * next) {
      lambda = next;
      res.converged = true;
      break;
    }
    lambda = next;
  }
  res.value = std::sqrt(std::max(lambda, 0.0));
  return res;
}

double hankel_norm_p2(const TaylorPoly& b, double s, double t, const Weight& theta, std::size_t D) {
  return hankel_norm_p2_detail(b, s, t, theta, D).value;
}

void write_csv(const HankelMatrix& H, std::ostream& os) {
  os << "n,j,re,im\n";
  os.precision(17);
  for (Eigen::Index n = 0; n < H.A.rows(); ++n)
    for (Eigen::Index j = 0; j < H.A.cols(); ++j)
      os << n << ',' << j << ',' << H.A(n, j).real() + 0.0 << ',' << H.A(n, j).imag() + 0.0 << '\n';  // + 0.0 drops the sign of zero
}

}  // namespace besov
