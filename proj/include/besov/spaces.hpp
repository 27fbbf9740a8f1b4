#ifndef BESOV_SPACES_HPP
#define BESOV_SPACES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/disk_grid.hpp"
#include "besov/taylor.hpp"
#include "besov/weights.hpp"

namespace besov {

/// min{k nonnegative integer : k > s}.
int k_plus(double s);

/// Normalising factor of dnu_t; t = 0 stands for dnu / (1-|z|^2).
inline double measure_factor(double t) { return t > 0.0 ? t : 1.0; }

/// (p, s, t, theta) for B^p_s(mu_t), d mu_t = theta d nu_t.
struct SpaceParams {
  double p = 2.0;
  double s = 0.0;
  double t = 1.0;
  Weight weight;

  double p_conj() const;
  int k_s() const { return k_plus(s); }
  /// p >= 1 (p > 1 when `strict`), t >= 0, theta = 1 at t = 0.
  void validate(bool strict = true) const;
  /// B^{p'}_{s1}(mu'_t), mu'_t = theta^{-p'/p} nu_t.
  SpaceParams conjugate(double s1) const;
  /// Exponent a of (1-|z|^2)^{a-1} dnu in the norm integral with derivative order k.
  double density_exponent(int k) const;
  std::string describe() const;
};

struct NormReport {
  double value = 0.0;
  double quadrature_error_proxy = 0.0;
  SpaceParams params;
  int k = 0;
};

/// Closed form of ||z^m||^p_{B^p_s(mu_t)} for radial theta (order k).
double besov_monomial_power(std::size_t m, const SpaceParams& sp, int k);

/**
 * Quadrature of ||f||^p_{B^p_s(mu_t)} with derivative order k on a fixed ring grid,
 * plus its Wirtinger gradient with respect to conj(f_m).
 */
class BesovEvaluator {
 public:
  BesovEvaluator(const SpaceParams& sp, std::size_t max_degree, std::optional<int> k = std::nullopt,
                 const Resolution& res = Resolution::standard());

  const SpaceParams& params() const noexcept { return sp_; }
  int order() const noexcept { return k_; }
  const DiskGrid& grid() const noexcept { return grid_; }

  double power(const TaylorPoly& f) const;
  double norm(const TaylorPoly& f) const;
  /// Returns ||f||^p and fills grad[m] = d ||f||^p / d conj(f_m), m = 0..degree.
  double power_and_gradient(const TaylorPoly& f, std::size_t degree, std::vector<cplx>& grad) const;
  /// ||z^m||^p on this grid, m = 0..degree.
  std::vector<double> monomial_powers(std::size_t degree) const;

 private:
  SpaceParams sp_;
  int k_;
  DiskGrid grid_;
};

/// ||f||_{B^p_s(mu_t)}; default order k_s. Refined-grid value, base-grid distance as error proxy.
NormReport besov_norm(const TaylorPoly& f, const SpaceParams& sp, std::optional<int> k = std::nullopt,
                      const Resolution& res = Resolution::standard());

/// Default Bloch radii 1 - 2^-j, j = 0..12.
std::vector<double> bloch_radii(int jmax = 12);

/**
 * ||b||_{B^inf_sigma} = sup (1-|z|^2)^{k-sigma} |(1+R)^k b(z)|, k = k_plus(sigma), as a max over
 * `radii` x `angles` equally spaced arguments.
 */
double bloch_norm(const TaylorPoly& b, double sigma, const std::vector<double>& radii = bloch_radii(),
                  int angles = 16);

enum class FamilyMode { kernels, random, mixed };
FamilyMode parse_family_mode(const std::string& name);

struct FamilyOptions {
  int J = 10;                     // apex radii 1 - 2^-j, j = 1..J (plus z = 0)
  int angles = 8;
  std::size_t degree = 128;       // truncation degree of kernel members
  std::size_t random_count = 8;
  std::size_t random_degree = 16;
  std::uint64_t seed = 1;
  std::optional<double> s_dual;   // s1 in the kernel threshold; default -s
};

/// Explicit finite family of test functions; serialises as coefficient lists.
struct TestFamily {
  std::vector<TaylorPoly> members;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return members.size(); }
  void append(const TestFamily& other);
  nlohmann::json to_json() const;
  static TestFamily from_json(const nlohmann::json& j);
};

/// (1+t)(max(p,p')-1) + max(0, -s0 p, -s1 p').
double kernel_threshold(double p, double t, double s0, double s1);

/**
 * Kernel members f_z(w) = (1 - w conj(z))^{-(1+t+tau)/p}, tau = threshold + 1, over the apex grid;
 * random members are seeded complex Gaussian polynomials.
 */
TestFamily test_family(const SpaceParams& sp, FamilyMode mode, const FamilyOptions& opt = {});

struct CBEstimate {
  double value = 0.0;           // lower bound of the sup
  std::size_t best_index = 0;
  int order = 1;
  std::vector<double> ratios;
};

/**
 * sup over the family of ||f (1+R)^l b||_{B^p_{s-l}(mu_t)} / ||f||_{B^p_s(mu_t)}, default
 * l = max(1, k_s). Zero members are skipped.
 */
CBEstimate cb_norm_estimate(const TaylorPoly& b, const SpaceParams& sp, const TestFamily& family,
                            const Resolution& res = Resolution::standard(),
                            std::optional<int> order = std::nullopt);

/// Same supremum written as ||f||_{L^p(mu_b)} / ||f||_{B^p_s(mu_t)} with the density of mu_b tabulated first.
double carleson_constant(const TaylorPoly& b, const SpaceParams& sp, const TestFamily& family,
                         const Resolution& res = Resolution::standard(),
                         std::optional<int> order = std::nullopt);

double norm_equivalence_probe(const TaylorPoly& f, const SpaceParams& sp, int k1, int k2,
                              const Resolution& res = Resolution::standard());
/// ||f||_{B^p_s(mu_t)} / ||f||_{B^p_{s+t0/p}(mu_{t+t0})}.
double index_shift_probe(const TaylorPoly& f, const SpaceParams& sp, double t0,
                         const Resolution& res = Resolution::standard());
/// ||f||_{B^1_{s-t}} / ||f||_{B^p_s(mu_t)}.
double embed_B1_probe(const TaylorPoly& f, const SpaceParams& sp, const Resolution& res = Resolution::standard());
/// |<f,g>_t| / (||f||_{B^p_s(mu_t)} ||g||_{B^{p'}_{-s}(mu'_t)}).
double holder_duality_probe(const TaylorPoly& f, const TaylorPoly& g, const SpaceParams& sp,
                            const Resolution& res = Resolution::standard());

}  // namespace besov

#endif  // BESOV_SPACES_HPP
