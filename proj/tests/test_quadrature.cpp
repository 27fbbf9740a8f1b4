#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "besov/error.hpp"
#include "besov/quadrature.hpp"
#include "besov/weights.hpp"

using namespace besov;

TEST_CASE("ladder rules integrate Jacobi densities") {
  for (double a : {0.5, 1.0, 2.0, 3.5}) {
    const LadderRule lr = ladder_rule(a, 1.0, 12, 16, 16);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < lr.u.size(); ++i) {
      CHECK(lr.w[i] > 0.0);
      s0 += lr.w[i];
      s1 += lr.w[i] * lr.u[i];
    }
    CHECK(s0 == doctest::Approx(1.0 / a).epsilon(1e-12));
    CHECK(s1 == doctest::Approx(1.0 / (a + 1.0)).epsilon(1e-12));
  }
  const LadderRule div = ladder_rule(-0.5, 1.0, 10, 8, 8);
  CHECK(div.truncated);
  double s = 0.0;
  for (double w : div.w) s += w;
  // int_{2^-10}^1 u^{-1.5} du = 2 (2^5 - 1)
  CHECK(s == doctest::Approx(2.0 * 31.0).epsilon(1e-10));
}

TEST_CASE("sqrt-top ladder handles sqrt(u_max - u)") {
  const LadderRule lr = ladder_rule(1.0, 1.0, 12, 16, 16, true);
  double s = 0.0;
  for (std::size_t i = 0; i < lr.u.size(); ++i) s += lr.w[i] * std::sqrt(1.0 - lr.u[i]);
  CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("disk integrals of constants, moments and odd functions") {
  const auto one = [](cplx) { return cplx{1.0}; };
  for (double t : {0.5, 1.0, 2.0}) {
    const auto r = disk_integral(one, t, Weight::one());
    CHECK(std::abs(r.value - 1.0) < 1e-10);
  }
  const auto m1 = disk_integral([](cplx z) { return cplx{std::norm(z)}; }, 1.0, Weight::one());
  CHECK(std::abs(m1.value - moment(1, 1.0)) < 1e-8);
  for (double t : {0.5, 2.0}) {
    const auto odd = disk_integral([](cplx z) { return z; }, t, Weight::power(0.5));
    CHECK(std::abs(odd.value) < 1e-10);
  }
  const auto circ = disk_integral([](cplx z) { return std::norm(z); }, 0.0, Weight::one());
  CHECK(std::abs(circ.value - 1.0) < 1e-14);
  CHECK_THROWS_AS(disk_integral(one, 0.0, Weight::power(0.5)), DomainError);
  CHECK_THROWS_AS(disk_integral([](cplx) { return cplx{std::nan("")}; }, 1.0, Weight::one()), EvaluationError);
}

TEST_CASE("weighted disk integral against the Beta function") {
  // int |z|^2 theta_alpha dnu_t = t B(2, t+alpha)
  const double t = 1.0, alpha = 0.5;
  const auto r = disk_integral([](cplx z) { return cplx{std::norm(z)}; }, t, Weight::power(alpha));
  const double exact = t * std::exp(std::lgamma(2.0) + std::lgamma(t + alpha) - std::lgamma(2.0 + t + alpha));
  CHECK(std::abs(r.value - exact) < 1e-10);
}

TEST_CASE("rotation invariance for radial weights") {
  const auto phi = [](cplx z) { return std::pow(std::abs(1.0 - 0.9 * z), -1.5) + z * z; };
  const cplx rot = std::polar(1.0, 0.7);
  const auto a = disk_integral(phi, 1.5, Weight::power(0.3));
  const auto b = disk_integral([&](cplx z) { return phi(rot * z); }, 1.5, Weight::power(0.3));
  CHECK(std::abs(a.value - b.value) < 1e-9);
}

TEST_CASE("tents") {
  const auto one = [](cplx) { return cplx{1.0}; };
  CHECK(Tent(0.0).is_whole_disk());
  const Tent tz(cplx{0.9, 0.0});
  CHECK(tz.contains(cplx{0.99, 0.0}));
  CHECK_FALSE(tz.contains(cplx{0.5, 0.0}));
  CHECK(tent_integral(one, 0.0, 1.0, Weight::one()).value.real() == doctest::Approx(1.0).epsilon(1e-10));

  // t = 1: nu_1 is normalised area, so nu_1(T_z) is an area computable by a disk-lens formula
  for (double r : {0.5, 0.9, 0.99}) {
    const double rho = 2.0 * (1.0 - r * r);
    const double v = tent_integral(one, r, 1.0, Weight::one()).value.real();
    // area of the intersection of the unit disk with the disk of radius rho centred at 1
    const double d = 1.0;
    const double a1 = std::acos((d * d + 1.0 - rho * rho) / (2.0 * d));
    const double a2 = std::acos((d * d + rho * rho - 1.0) / (2.0 * d * rho));
    const double lens = a1 + rho * rho * a2 -
                        0.5 * std::sqrt((-d + 1 + rho) * (d + 1 - rho) * (d - 1 + rho) * (d + 1 + rho));
    CHECK(v == doctest::Approx(lens / M_PI).epsilon(1e-9));
  }
  std::vector<double> ratios;
  for (double r : {0.9, 0.95, 0.99}) {
    const double v = tent_integral(one, r, 1.0, Weight::one()).value.real();
    ratios.push_back(v / std::pow(1.0 - r * r, 2.0));
    const double vi = tent_integral(one, cplx{0.0, r}, 1.0, Weight::one()).value.real();
    CHECK(vi == doctest::Approx(v).epsilon(1e-12));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo < 2.0);
}

TEST_CASE("P^{N,N} reproduces polynomials") {
  for (double N : {1.0, 2.0, 0.5})
    for (int m : {0, 1, 3, 7})
      for (cplx z : {cplx{0.0}, cplx{0.3, 0.4}, cplx{-0.9, 0.1}}) {
        const cplx v = apply_PNM([m](cplx w) { return std::pow(w, m); }, N, N, z, false);
        CHECK(std::abs(v - std::pow(z, m)) < 1e-8);
      }
  CHECK(std::abs(apply_PNM([](cplx) { return cplx{1.0}; }, 2.0, 3.5, 0.0, true) - 1.0) < 1e-12);
  const cplx z5 = apply_PNM([](cplx w) { return std::pow(w, 5); }, 1.0, 1.5, 0.3, false);
  const double c5 = R_fractional_multiplier(5, 0.5, 1.0);
  CHECK(std::abs(z5 - c5 * std::pow(0.3, 5)) < 1e-6 * c5 * std::pow(0.3, 5));
}

TEST_CASE("Cauchy-Pompeiu residuals") {
  const Resolution res;
  const auto phi1 = [](cplx w) { return cplx{1.0 - std::norm(w)}; };
  const auto d1 = [](cplx w) { return -w; };
  const auto phi2 = [](cplx w) { return (1.0 - std::norm(w)) * w; };
  const auto d2 = [](cplx w) { return -w * w; };
  CHECK(std::abs(apply_KN([](cplx) { return cplx{0.0}; }, 1.0, 0.2)) == 0.0);
  CHECK(cauchy_pompeiu_residual(phi1, d1, 1.0, 0.0, res) < 2e-3);
  CHECK(cauchy_pompeiu_residual(phi2, d2, 2.0, cplx{0.4, 0.1}, res) < 2e-3);
  // the opposite orientation 1/(w-z) fails
  const cplx k = apply_KN(d1, 1.0, 0.0, res);
  const cplx p = apply_PNM(phi1, 1.0, 1.0, 0.0, false, res);
  CHECK(std::abs(phi1(0.0) - p + k) > 0.1);
}

TEST_CASE("estP ratios") {
  const std::vector<cplx> zs{0.5, 0.9, 0.99};
  const auto r = estP_ratio(0.0, 1.0, 2.0, zs);
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  CHECK(*lo > 0.0);
  CHECK(*hi / *lo < 10.0);
  const std::vector<cplx> z0{0.0};
  const auto c = estP_ratio(1.0, 1.0, 0.5, z0);
  CHECK(std::isfinite(c[0]));
  CHECK(c[0] > 0.0);
  CHECK_THROWS_AS(estP_ratio(1.0, 2.0, 1.0, z0), DomainError);
}
