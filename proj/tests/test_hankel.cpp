#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "besov/error.hpp"
#include "besov/hankel.hpp"
#include "besov/quadrature.hpp"

using namespace besov;

namespace {

TaylorPoly random_poly(std::size_t deg, std::uint64_t seed, std::size_t cap = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> c(std::max(deg, cap) + 1, cplx{0.0});
  for (std::size_t m = 0; m <= deg; ++m) c[m] = {nd(rng), nd(rng)};
  return TaylorPoly(c);
}

double tau(std::size_t m, double s, double t, int k) {
  const double T = t + 2.0 * (k - s);
  return std::pow(1.0 + m, 2.0 * k) * (measure_factor(t) / T) * moment(m, T);
}

}  // namespace

TEST_CASE("entry of b = z^2 at t = 1") {
  const HankelMatrix H = hankel_matrix(TaylorPoly::monomial(2, 1.0, 8), 1.0, 4);
  CHECK(std::abs(H.A(1, 1) - 2.0 / 3.0) < 1e-15);
  const TaylorPoly out = hankel_apply(H, TaylorPoly::monomial(1));
  CHECK(std::abs(out[1] - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(out[0]) == 0.0);
  CHECK(hankel_matrix(TaylorPoly::zero(8), 1.0, 4).A.norm() == 0.0);
  CHECK_THROWS_AS(hankel_matrix(TaylorPoly::monomial(2, 1.0, 6), 1.0, 4), DomainError);
}

TEST_CASE("matrix against quadrature of the defining integral") {
  // h(f)(z) = int f(w) conj(b(w)) (1 - w conj z)^{-1-t} dnu_t(w)
  const double t = 1.0;
  const TaylorPoly b = TaylorPoly::monomial(2, 1.0, 12);
  const HankelMatrix H = hankel_matrix(b, t, 5);
  for (std::size_t j = 0; j <= 5; ++j) {
    const TaylorPoly out = hankel_apply(H, TaylorPoly::monomial(j));
    for (const cplx z : {cplx{0.3, 0.1}, cplx{-0.5, 0.4}}) {
      const auto phi = [&](cplx w) { return std::pow(w, static_cast<int>(j)) * std::conj(b(w)) * std::pow(1.0 - w * std::conj(z), -1.0 - t); };
      const cplx quad = disk_integral(phi, t, Weight::one()).value;
      cplx series{0.0};
      for (std::size_t n = 0; n <= 5; ++n) series += out[n] * std::pow(std::conj(z), static_cast<int>(n));
      CHECK(std::abs(quad - series) < 1e-8);
    }
  }
  // entries of a dense symbol from their moment integrals
  const TaylorPoly br = random_poly(10, 4, 12);
  const HankelMatrix Hr = hankel_matrix(br, 0.5, 5);
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::size_t j = 0; j <= 5; ++j) {
      const double c = std::exp(std::lgamma(1.5 + n) - std::lgamma(1.5) - std::lgamma(n + 1.0));
      const auto phi = [&](cplx w) {
        return std::pow(w, static_cast<int>(j + n)) * std::conj(br(w)) * c;
      };
      const cplx quad = disk_integral(phi, 0.5, Weight::one()).value;
      CHECK(std::abs(quad - Hr.A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j))) < 1e-8);
    }
}

TEST_CASE("t = 0 is the classical Hankel matrix") {
  const TaylorPoly b = random_poly(16, 7);
  const HankelMatrix H = hankel_matrix(b, 0.0, 8);
  for (Eigen::Index n = 0; n <= 8; ++n)
    for (Eigen::Index j = 0; j <= 8; ++j) CHECK(H.A(n, j) == std::conj(b[static_cast<std::size_t>(n + j)]));
  const TaylorPoly one = hankel_apply(hankel_matrix(TaylorPoly::monomial(1, 1.0, 2), 0.0, 1), TaylorPoly::constant(1.0));
  // f = 1 lands on conj(z) with coefficient conj(b_1)
  CHECK(one[0] == cplx{0.0});
  CHECK(one[1] == cplx{1.0});
}

TEST_CASE("Fubini identity") {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const TaylorPoly b = random_poly(32, 100 + k, 64);
    const TaylorPoly f = random_poly(16, 200 + k), g = random_poly(16, 300 + k);
    worst = std::max(worst, fubini_identity_check(b, f, g, 1.0));
  }
  CHECK(worst < 1e-10);
  CHECK(fubini_identity_check(TaylorPoly::monomial(1, 1.0, 2), TaylorPoly::constant(1.0), TaylorPoly::constant(1.0), 0.0) == 0.0);
}

TEST_CASE("p = 2 norm against a dense SVD") {
  const TaylorPoly b = random_poly(40, 11);
  const Eigen::MatrixXcd K = hankel_scaled_matrix(b, 0.5, 1.0, Weight::one(), 20);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K);
  const auto r = hankel_norm_p2_detail(b, 0.5, 1.0, Weight::one(), 20);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(svd.singularValues()(0)).epsilon(1e-8));
  CHECK(hankel_norm_p2(TaylorPoly::zero(40), 0.5, 1.0, Weight::one(), 20) == 0.0);
  CHECK_THROWS_AS(hankel_norm_p2(b, 0.5, 1.0, Weight::power_boundary(0.0, 0.5), 20), UnsupportedError);
}

TEST_CASE("single antidiagonal closed form") {
  // b = z^K: K has one nonzero per row, so the norm is the largest weighted entry
  const std::size_t K = 8;
  const double s = 0.5, t = 1.0;
  const TaylorPoly b = TaylorPoly::monomial(K, 1.0, 2 * 16);
  double want = 0.0;
  for (std::size_t n = 0; n <= K; ++n) {
    const std::size_t j = K - n;
    const double a = moment(K, t) * std::exp(std::lgamma(1 + t + n) - std::lgamma(1 + t) - std::lgamma(n + 1.0));
    // output weight omega_n^2 / ||z^n||^2 in B^2_{-s}(mu_t), input weight ||z^j||^2 in B^2_s(mu_t)
    const double dout = moment(n, t) * moment(n, t) / tau(n, -s, t, 0);
    want = std::max(want, a * std::sqrt(dout / tau(j, s, t, 1)));
  }
  CHECK(hankel_norm_p2(b, s, t, Weight::one(), 16) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("truncation monotonicity") {
  const TaylorPoly b = kernel_power(1.0, 0.3, 512);
  const double n64 = hankel_norm_p2(b, 0.5, 1.0, Weight::one(), 64);
  const double n128 = hankel_norm_p2(b, 0.5, 1.0, Weight::one(), 128);
  const double n256 = hankel_norm_p2(b, 0.5, 1.0, Weight::one(), 256);
  CHECK(n64 <= n128 * (1 + 1e-12));
  CHECK(n128 <= n256 * (1 + 1e-12));
  CHECK((n128 - n64) / n128 < 0.01);
  CHECK((n256 - n128) / n256 < 0.01);
}

TEST_CASE("CSV dump") {
  std::ostringstream os;
  write_csv(hankel_matrix(TaylorPoly::monomial(1, 1.0, 2), 0.0, 1), os);
  const std::string s = os.str();
  CHECK(s.find("n,j,re,im") == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
  CHECK(s.find("\n0,1,1,0\n") != std::string::npos);
}
