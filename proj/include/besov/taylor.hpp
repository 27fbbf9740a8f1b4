#ifndef BESOV_TAYLOR_HPP
#define BESOV_TAYLOR_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace besov {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultDegreeCap = 256;

/**
 * Truncated power series f(z) = sum_{m=0}^{D} coeffs[m] z^m.
 *
 * The degree cap D is the length of the coefficient vector minus one; trailing
 * zeros are allowed. All coefficients are finite.
 */
class TaylorPoly {
 public:
  TaylorPoly() : coeffs_(1, cplx{0.0}) {}
  explicit TaylorPoly(std::vector<cplx> coeffs);

  static TaylorPoly zero(std::size_t cap = 0);
  static TaylorPoly constant(cplx c, std::size_t cap = 0);
  static TaylorPoly monomial(std::size_t m, cplx c = 1.0, std::size_t cap = 0);

  std::size_t degree_cap() const noexcept { return coeffs_.size() - 1; }
  /// Highest index with a nonzero coefficient, or 0 for the zero polynomial.
  std::size_t degree() const noexcept;
  bool is_zero() const noexcept;

  cplx operator[](std::size_t m) const noexcept {
    return m < coeffs_.size() ? coeffs_[m] : cplx{0.0};
  }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Copy with the degree cap changed (zero padding or truncation).
  TaylorPoly with_cap(std::size_t cap) const;

  cplx operator()(cplx z) const noexcept;

  TaylorPoly& operator*=(cplx c);
  friend TaylorPoly operator*(cplx c, TaylorPoly f) { return f *= c; }
  friend TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b);
  friend TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b);

  /// Squared l2 norm of the coefficient vector.
  double coeff_norm2() const noexcept;

 private:
  std::vector<cplx> coeffs_;
};

/// Multiply coefficient m by mult(m).
template <class F>
TaylorPoly diagonal_map(const TaylorPoly& f, F&& mult) {
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t m = 0; m < c.size(); ++m) c[m] *= mult(m);
  return TaylorPoly(std::move(c));
}

// Gamma-ratio helpers (log-gamma differences, then exponentiated).

/// log Gamma(x) for x > 0.
double log_gamma(double x);
/// Gamma(a)/Gamma(b) for a, b > 0.
double gamma_ratio(double a, double b);

/**
 * omega_m(t) = int_D |z|^{2m} dnu_t = Gamma(t+1) m! / Gamma(m+1+t); omega_m(0) = 1.
 * Throws DomainError for t < 0.
 */
double moment(std::size_t m, double t);

/// Table omega_0(t) .. omega_{D}(t).
class PairingWeightTable {
 public:
  PairingWeightTable(double t, std::size_t max_index);
  double t() const noexcept { return t_; }
  double operator[](std::size_t m) const { return omega_.at(m); }
  std::span<const double> values() const noexcept { return omega_; }

 private:
  double t_;
  std::vector<double> omega_;
};

/// <f, g>_t = sum_m f_m conj(g_m) omega_m(t), exact for polynomials.
cplx pairing(const TaylorPoly& f, const TaylorPoly& g, double t);

/// (1+R)^tau: coefficient m scaled by (1+m)^tau.
TaylorPoly one_plus_R_pow(const TaylorPoly& f, double tau);

/// Multiplier of R^k_t on z^m, product form prod_{j<k} (1 + m/(t+j)).
double R_kt_multiplier(std::size_t m, int k, double t);
/// Same multiplier from Gamma(t+k+m)Gamma(t) / (Gamma(t+m)Gamma(t+k)).
double R_kt_multiplier_gamma(std::size_t m, int k, double t);
/// R^k_t f = (1 + R/(t+k-1)) ... (1 + R/t) f. Requires t > 0, k >= 1.
TaylorPoly R_kt(const TaylorPoly& f, int k, double t);

/**
 * Multiplier of the fractional operator R^s_{1+N} on z^m.
 *
 * For s >= 0 this is c_m(s,N) = Gamma(N+1)Gamma(N+1+s+m) / (Gamma(N+1+s)Gamma(N+1+m)),
 * the diagonal action of P^{N,N+s}. For s < 0 it is the action of the inverse
 * P^{N+|s|,N}, namely 1/c_m(|s|,N).
 */
double R_fractional_multiplier(std::size_t m, double s, double N);
TaylorPoly R_fractional(const TaylorPoly& f, double s, double N);

/// Cauchy product truncated at degree `cap`.
TaylorPoly multiply(const TaylorPoly& f, const TaylorPoly& g, std::size_t cap);

/// Taylor coefficients of (1 - conj(lambda) z)^{-a} up to degree `cap`.
TaylorPoly kernel_power(cplx lambda, double a, std::size_t cap);

}  // namespace besov

#endif  // BESOV_TAYLOR_HPP
