#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "besov/error.hpp"
#include "besov/quadrature.hpp"
#include "besov/spaces.hpp"

using namespace besov;

namespace {

// ||z^m||^2 for p = 2, theta = 1: (1+m)^{2k} (t/T) omega_m(T), T = t + 2(k-s)
double tau(std::size_t m, double s, double t, int k) {
  const double T = t + 2.0 * (k - s);
  return std::pow(1.0 + m, 2.0 * k) * (measure_factor(t) / T) * moment(m, T);
}

TaylorPoly random_poly(std::size_t deg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> c(deg + 1);
  for (auto& x : c) x = {nd(rng), nd(rng)};
  return TaylorPoly(c);
}

}  // namespace

TEST_CASE("k_plus") {
  CHECK(k_plus(-0.5) == 0);
  CHECK(k_plus(0.0) == 1);
  CHECK(k_plus(0.5) == 1);
  CHECK(k_plus(1.0) == 2);
  CHECK(k_plus(2.3) == 3);
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS((SpaceParams{1.0, 0.5, 1.0, Weight::one()}.validate()), DomainError);
  CHECK_NOTHROW((SpaceParams{1.0, 0.5, 1.0, Weight::one()}.validate(false)));
  CHECK_THROWS_AS((SpaceParams{2.0, 0.5, -1.0, Weight::one()}.validate()), DomainError);
  CHECK_THROWS_AS((SpaceParams{2.0, 0.5, 0.0, Weight::power(0.5)}.validate()), DomainError);
  const SpaceParams sp{3.0, 0.25, 1.0, Weight::power(0.5)};
  const SpaceParams d = sp.conjugate(-0.25);
  CHECK(d.p == doctest::Approx(1.5));
  CHECK(d.weight.radial_power() == doctest::Approx(-0.25));
}

TEST_CASE("monomial norms against the moment closed form") {
  for (const double s : {0.5, -0.5, 1.25})
    for (const double t : {0.5, 1.0, 2.0}) {
      const SpaceParams sp{2.0, s, t, Weight::one()};
      const int k = sp.k_s();
      const BesovEvaluator E(sp, 40);
      const auto pw = E.monomial_powers(40);
      for (std::size_t m : {0u, 1u, 7u, 40u}) {
        const double want = tau(m, s, t, k);
        CHECK(besov_monomial_power(m, sp, k) == doctest::Approx(want).epsilon(1e-8));
        CHECK(pw[m] == doctest::Approx(want).epsilon(1e-8));
        CHECK(E.power(TaylorPoly::monomial(m)) == doctest::Approx(want).epsilon(1e-8));
      }
    }
}

TEST_CASE("p = 2 norm is the diagonal sum") {
  const SpaceParams sp{2.0, 0.5, 1.0, Weight::one()};
  const TaylorPoly f = random_poly(24, 3);
  double want = 0.0;
  for (std::size_t m = 0; m <= 24; ++m) want += std::norm(f[m]) * tau(m, 0.5, 1.0, 1);
  const NormReport r = besov_norm(f, sp);
  CHECK(r.value == doctest::Approx(std::sqrt(want)).epsilon(1e-10));
  CHECK(r.quadrature_error_proxy < 1e-10 * r.value);
  CHECK(besov_norm(TaylorPoly::zero(8), sp).value == 0.0);
}

TEST_CASE("radial weight norm of a monomial") {
  // theta_a = (1-|z|^2)^a only shifts the Beta exponent
  const SpaceParams sp{3.0, 1.0 / 3.0, 1.0, Weight::power(0.5)};
  const BesovEvaluator E(sp, 16);
  for (std::size_t m : {0u, 3u, 16u}) {
    const double a = 1.0 + (1.0 - 1.0 / 3.0) * 3.0 + 0.5;
    const double x = 1.5 * m + 1.0;
    const double beta = std::exp(std::lgamma(x) + std::lgamma(a) - std::lgamma(x + a));
    CHECK(E.power(TaylorPoly::monomial(m)) == doctest::Approx(std::pow(1.0 + m, 3.0) * beta).epsilon(1e-9));
  }
}

TEST_CASE("Wirtinger gradient of the norm power") {
  const SpaceParams sp{3.0, 1.0 / 3.0, 1.0, Weight::one()};
  const BesovEvaluator E(sp, 12);
  const TaylorPoly f = random_poly(12, 5);
  std::vector<cplx> grad;
  E.power_and_gradient(f, 12, grad);
  const double h = 1e-6;
  for (std::size_t m : {0u, 4u, 12u}) {
    auto bumped = [&](cplx d) {
      std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
      c[m] += d;
      return E.power(TaylorPoly(c));
    };
    const double dx = (bumped(h) - bumped(-h)) / (2 * h);
    const double dy = (bumped(cplx{0, h}) - bumped(cplx{0, -h})) / (2 * h);
    // d/d conj(f) = (d/dx + i d/dy) / 2
    const cplx want = 0.5 * cplx{dx, dy};
    CHECK(std::abs(grad[m] - want) < 1e-6 * std::abs(want) + 1e-9);
  }
}

TEST_CASE("norm equivalence across derivative orders") {
  // for p = 2 the ratio of two orders lies between the extreme monomial ratios
  const SpaceParams sp{2.0, 0.5, 1.0, Weight::one()};
  const TaylorPoly f = random_poly(20, 9);
  double lo = 1e300, hi = 0.0;
  for (std::size_t m = 0; m <= 20; ++m) {
    const double r = std::sqrt(tau(m, 0.5, 1.0, 1) / tau(m, 0.5, 1.0, 3));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double probe = norm_equivalence_probe(f, sp, 1, 3);
  CHECK(probe >= lo * (1 - 1e-9));
  CHECK(probe <= hi * (1 + 1e-9));
}

TEST_CASE("index shift and embedding probes are bounded") {
  const SpaceParams sp{2.0, 0.5, 1.0, Weight::one()};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const TaylorPoly f = random_poly(16, seed);
    const double r = index_shift_probe(f, sp, 1.0);
    CHECK(r > 0.1);
    CHECK(r < 10.0);
    const double e = embed_B1_probe(f, sp);
    CHECK(e > 0.0);
    CHECK(e < 10.0);
  }
}

TEST_CASE("Holder probe on monomials") {
  const SpaceParams sp{2.0, 0.5, 1.0, Weight::one()};
  const double r = holder_duality_probe(TaylorPoly::monomial(5), TaylorPoly::monomial(5), sp);
  // <z^5, z^5>_1 / (||z^5||_{B_{1/2}} ||z^5||_{B_{-1/2}}), k = 1 and k = 0
  const double want = moment(5, 1.0) / std::sqrt(tau(5, 0.5, 1.0, 1) * tau(5, -0.5, 1.0, 0));
  CHECK(r == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("Bloch norm on the grid") {
  // sigma = -1: k = 0, sup (1-r^2) r = 2/(3 sqrt 3) at r = 1/sqrt 3
  const TaylorPoly z = TaylorPoly::monomial(1);
  double grid_max = 0.0;
  for (const double r : bloch_radii()) grid_max = std::max(grid_max, (1 - r * r) * r);
  CHECK(bloch_norm(z, -1.0) == doctest::Approx(grid_max).epsilon(1e-14));
  std::vector<double> fine;
  for (int i = 1; i < 2000; ++i) fine.push_back(i / 2000.0);
  CHECK(bloch_norm(z, -1.0, fine, 4) == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-6));
  // sigma = 0: k = 1, sup (1-r^2)(1+K) r^K
  const std::size_t K = 8;
  double want = 0.0;
  for (const double r : bloch_radii()) want = std::max(want, (1 - r * r) * (1.0 + K) * std::pow(r, K));
  CHECK(bloch_norm(TaylorPoly::monomial(K), 0.0) == doctest::Approx(want).epsilon(1e-13));
  CHECK(bloch_norm(TaylorPoly::zero(4), 0.5) == 0.0);
}

TEST_CASE("kernel threshold and test family") {
  CHECK(kernel_threshold(2.0, 1.0, 0.5, -0.5) == doctest::Approx(2.0 + 1.0));
  CHECK(kernel_threshold(3.0, 1.0, 1.0 / 3.0, -1.0 / 3.0) == doctest::Approx(2.0 * 2.0 + 0.5));
  CHECK(kernel_threshold(2.0, 1.0, 0.5, 0.5) == doctest::Approx(2.0));
  FamilyOptions fo;
  fo.J = 4;
  fo.angles = 4;
  fo.degree = 32;
  fo.random_count = 3;
  const SpaceParams sp{2.0, 0.5, 1.0, Weight::one()};
  const TestFamily k = test_family(sp, FamilyMode::kernels, fo);
  CHECK(k.size() == 17);
  const TestFamily mixed = test_family(sp, FamilyMode::mixed, fo);
  CHECK(mixed.size() == 20);
  // the apex z = 0 member is the constant 1
  CHECK(std::abs(k.members[0][0] - 1.0) < 1e-15);
  CHECK(k.members[0].degree() == 0);
  const TestFamily back = TestFamily::from_json(mixed.to_json());
  REQUIRE(back.size() == mixed.size());
  for (std::size_t i = 0; i < back.size(); ++i)
    for (std::size_t m = 0; m <= 32; ++m) CHECK(back.members[i][m] == mixed.members[i][m]);
  CHECK_THROWS_AS(parse_family_mode("all"), DomainError);
}

TEST_CASE("CB estimate of z") {
  const SpaceParams sp{2.0, 0.5, 1.0, Weight::one()};
  FamilyOptions fo;
  fo.J = 6;
  fo.degree = 64;
  const TestFamily fam = test_family(sp, FamilyMode::mixed, fo);
  const TaylorPoly z = TaylorPoly::monomial(1, 1.0, 64);
  const CBEstimate cb = cb_norm_estimate(z, sp, fam);
  CHECK(cb.order == 1);
  // member f = 1: ||(1+R) z||_{B^2_{-1/2}} / ||1||_{B^2_{1/2}} = 2 sqrt(tau_1(-1/2, k=0)) / sqrt(tau_0(1/2, k=1))
  const double want0 = 2.0 * std::sqrt(tau(1, -0.5, 1.0, 0) / tau(0, 0.5, 1.0, 1));
  CHECK(cb.ratios[0] == doctest::Approx(want0).epsilon(1e-9));
  CHECK(cb.value >= cb.ratios[0]);
  CHECK(carleson_constant(z, sp, fam) == doctest::Approx(cb.value).epsilon(1e-9));
  CHECK(cb_norm_estimate(TaylorPoly::zero(64), sp, fam).value == 0.0);
}
