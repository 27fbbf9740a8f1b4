#include "besov/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "besov/error.hpp"

namespace besov {

TaylorPoly::TaylorPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.assign(1, cplx{0.0});
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    if (!std::isfinite(coeffs_[m].real()) || !std::isfinite(coeffs_[m].imag()))
      throw DomainError("TaylorPoly: non-finite coefficient at index " + std::to_string(m));
  }
}

TaylorPoly TaylorPoly::zero(std::size_t cap) { return TaylorPoly(std::vector<cplx>(cap + 1)); }

TaylorPoly TaylorPoly::constant(cplx c, std::size_t cap) {
  std::vector<cplx> v(cap + 1);
  v[0] = c;
  return TaylorPoly(std::move(v));
}

TaylorPoly TaylorPoly::monomial(std::size_t m, cplx c, std::size_t cap) {
  std::vector<cplx> v(std::max(cap, m) + 1);
  v[m] = c;
  return TaylorPoly(std::move(v));
}

std::size_t TaylorPoly::degree() const noexcept {
  for (std::size_t m = coeffs_.size(); m-- > 0;)
    if (coeffs_[m] != cplx{0.0}) return m;
  return 0;
}

bool TaylorPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{0.0}; });
}

TaylorPoly TaylorPoly::with_cap(std::size_t cap) const {
  std::vector<cplx> v(cap + 1);
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), cap + 1), v.begin());
  return TaylorPoly(std::move(v));
}

cplx TaylorPoly::operator()(cplx z) const noexcept {
  cplx acc{0.0};
  for (std::size_t m = coeffs_.size(); m-- > 0;) acc = acc * z + coeffs_[m];
  return acc;
}

TaylorPoly& TaylorPoly::operator*=(cplx c) {
  for (auto& a : coeffs_) a *= c;
  return *this;
}

TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b) {
  std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = a[m] + b[m];
  return TaylorPoly(std::move(v));
}

TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b) {
  std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = a[m] - b[m];
  return TaylorPoly(std::move(v));
}

double TaylorPoly::coeff_norm2() const noexcept {
  double s = 0.0;
  for (auto c : coeffs_) s += std::norm(c);
  return s;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return std::lgamma(x);
}

double gamma_ratio(double a, double b) { return std::exp(log_gamma(a) - log_gamma(b)); }

double moment(std::size_t m, double t) {
  if (t < 0.0) throw DomainError("moment: t must be >= 0");
  if (t == 0.0) return 1.0;
  const double md = static_cast<double>(m);
  return std::exp(std::lgamma(t + 1.0) + std::lgamma(md + 1.0) - std::lgamma(md + 1.0 + t));
}

PairingWeightTable::PairingWeightTable(double t, std::size_t max_index) : t_(t) {
  if (t < 0.0) throw DomainError("PairingWeightTable: t must be >= 0");
  omega_.resize(max_index + 1);
  for (std::size_t m = 0; m <= max_index; ++m) omega_[m] = moment(m, t);
}

cplx pairing(const TaylorPoly& f, const TaylorPoly& g, double t) {
  if (t < 0.0) throw DomainError("pairing: t must be >= 0");
  const std::size_t n = std::min(f.degree_cap(), g.degree_cap());
  cplx acc{0.0};
  for (std::size_t m = 0; m <= n; ++m) acc += f[m] * std::conj(g[m]) * moment(m, t);
  return acc;
}

TaylorPoly one_plus_R_pow(const TaylorPoly& f, double tau) {
  return diagonal_map(f, [tau](std::size_t m) { return std::pow(1.0 + static_cast<double>(m), tau); });
}

double R_kt_multiplier(std::size_t m, int k, double t) {
  double acc = 1.0;
  for (int j = 0; j < k; ++j) acc *= 1.0 + static_cast<double>(m) / (t + j);
  return acc;
}

double R_kt_multiplier_gamma(std::size_t m, int k, double t) {
  const double md = static_cast<double>(m);
  return std::exp(log_gamma(t + k + md) + log_gamma(t) - log_gamma(t + md) - log_gamma(t + k));
}

TaylorPoly R_kt(const TaylorPoly& f, int k, double t) {
  if (!(t > 0.0)) throw DomainError("R_kt: t must be > 0");
  if (k < 1) throw DomainError("R_kt: k must be >= 1");
  return diagonal_map(f, [k, t](std::size_t m) { return R_kt_multiplier(m, k, t); });
}

namespace {

double fractional_c(std::size_t m, double s, double N) {
  const double md = static_cast<double>(m);
  return std::exp(log_gamma(N + 1.0) + log_gamma(N + 1.0 + s + md) - log_gamma(N + 1.0 + s) -
                  log_gamma(N + 1.0 + md));
}

}  // namespace

double R_fractional_multiplier(std::size_t m, double s, double N) {
  if (!(N > 0.0)) throw DomainError("R_fractional: N must be > 0");
  if (s >= 0.0) return fractional_c(m, s, N);
  return 1.0 / fractional_c(m, -s, N);
}

TaylorPoly R_fractional(const TaylorPoly& f, double s, double N) {
  if (!(N > 0.0)) throw DomainError("R_fractional: N must be > 0");
  return diagonal_map(f, [s, N](std::size_t m) { return R_fractional_multiplier(m, s, N); });
}

TaylorPoly multiply(const TaylorPoly& f, const TaylorPoly& g, std::size_t cap) {
  // terms i and n-i are added in pairs, so swapping f and g gives bitwise the same result
  std::vector<cplx> v(cap + 1);
  const std::size_t top = std::min(cap, f.degree_cap() + g.degree_cap());
  for (std::size_t n = 0; n <= top; ++n) {
    cplx acc{0.0};
    for (std::size_t i = 0; 2 * i < n; ++i) acc += f[i] * g[n - i] + f[n - i] * g[i];
    if (n % 2 == 0) acc += f[n / 2] * g[n / 2];
    v[n] = acc;
  }
  return TaylorPoly(std::move(v));
}

TaylorPoly kernel_power(cplx lambda, double a, std::size_t cap) {
  // (1 - conj(lambda) z)^{-a} = sum (a)_m / m! conj(lambda)^m z^m
  std::vector<cplx> v(cap + 1);
  const cplx lb = std::conj(lambda);
  cplx c = 1.0;
  for (std::size_t m = 0; m <= cap; ++m) {
    v[m] = c;
    c *= lb * ((a + static_cast<double>(m)) / static_cast<double>(m + 1));
  }
  return TaylorPoly(std::move(v));
}

}  // namespace besov
