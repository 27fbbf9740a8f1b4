#ifndef BESOV_ESTIMATORS_HPP
#define BESOV_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/spaces.hpp"
#include "besov/taylor.hpp"

namespace besov {

/**
 * Gamma(b, p, s0, s1, t) = sup |<fg, b>_{t_pair}| / (||f||_{B^p_{s0}(mu_t)} ||g||_{B^{p'}_{s1}(mu'_t)})
 * over polynomials f, g of degree <= `degree`. t_pair defaults to t.
 */
struct GammaParams {
  double p = 2.0;
  double s0 = 0.5;
  double s1 = -0.5;
  double t = 1.0;
  std::optional<double> t_pair;
  Weight weight;

  std::size_t degree = 128;
  int max_iter = 300;        // f/g sweeps per restart
  double tol = 1e-10;        // relative objective gain that ends a restart
  int restarts = 3;          // random seeds
  int kernel_seeds = 2;      // best kernel pairs refined by ascent
  std::uint64_t seed = 1;
  int apex_J = 10;
  int apex_angles = 8;
  Resolution res;

  double pairing_index() const { return t_pair.value_or(t); }
  SpaceParams f_space() const { return {p, s0, t, weight}; }
  SpaceParams g_space() const { return f_space().conjugate(s1); }
  void validate() const;
};

struct GammaEstimate {
  double value = 0.0;       // lower bound of the supremum
  TaylorPoly f, g;          // witnesses
  std::vector<double> trace;  // best value after each restart
  bool stalled = false;     // some restart hit max_iter
  std::string seed_label;   // seed that produced the best value

  nlohmann::json to_json() const;
};

/// Gamma_2 (s1 = -s0) and the general Gamma_3 share this estimator.
GammaEstimate gamma3(const TaylorPoly& b, const GammaParams& params);
GammaEstimate gamma2(const TaylorPoly& b, const GammaParams& params);

/// Gamma_1: numerator int |f g (1+R) b| dnu_{t+1}; requires s1 = -s0 and 0 < s0 < 1.
GammaEstimate gamma1(const TaylorPoly& b, const GammaParams& params);

/// Objectives evaluated on a fixed pair (same quadrature as the estimators).
double gamma_ratio(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, const GammaParams& params);
double gamma1_ratio(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, const GammaParams& params);

/// Largest finite relative gap between the analytic ascent direction and central differences.
double gradient_check(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, const GammaParams& params,
                      bool modulus, double h = 1e-6);

struct BlochLowerBound {
  double value = 0.0;
  cplx apex{0.0};
  int k = 0;
};

/**
 * sup over apexes of |<f_z g_z, b>_{t_pair}| / (||f_z|| ||g_z||) with f_z g_z = (1 - w conj(z))^{-(1+t+k)},
 * k = floor(threshold) + 1, both factors truncated at params.degree. The apex grid defaults to the
 * one seeding the Gamma estimators.
 */
BlochLowerBound bloch_lower_bound(const TaylorPoly& b, const GammaParams& params,
                                  const std::vector<cplx>& apexes = {});

enum class Regime { BF, predualBinf, BFG };
Regime parse_regime(const std::string& name);
std::string regime_name(Regime r);

struct NamedSymbol {
  std::string name;
  TaylorPoly b;
};

struct EquivalenceRow {
  std::string symbol;
  std::vector<double> values;  // one per value column
  std::vector<double> ratios;  // one per ratio column, NaN when skipped
  bool ordering_ok = true;     // regime-specific one-sided check
};

struct EquivalenceReport {
  Regime regime = Regime::BF;
  double band = 10.0;
  std::vector<std::string> value_columns;
  std::vector<std::string> ratio_columns;
  std::vector<EquivalenceRow> rows;
  std::vector<double> spreads;  // max/min per ratio column
  bool pass = true;

  std::string to_table() const;
  std::string to_csv() const;
};

struct EquivalenceOptions {
  double band = 10.0;
  double ordering_tol = 0.05;   // Gamma_2 <= Gamma_1 (1 + tol) and lower bound <= Gamma_3 (1 + tol)
  FamilyOptions family;         // CB test family
  std::optional<double> t1;     // BFG pairing index; default params.pairing_index()
};

/**
 * BF: CB, Gamma_1, Gamma_2 with ratios Gamma_2/CB, Gamma_1/CB, Gamma_2/Gamma_1.
 * predualBinf: Gamma_3, Bloch norm of order -s0-s1, kernel lower bound; ratio Gamma_3/Bloch.
 * BFG: CB of R^{t-t1}_{1+t1} b in CB^p_s(mu_t), s = s0/p' - s1/p, t = t0 - s0 - s1, and Gamma_3
 * with norms at t0 = params.t and pairing index t1.
 */
EquivalenceReport equivalence_report(const std::vector<NamedSymbol>& symbols, const GammaParams& params, Regime regime,
                                     const EquivalenceOptions& opt = {});

struct HolderCheck {
  double ratio = 0.0;
  double cb = 0.0;
  bool pass = true;
};

/// |<fg,b>_t| / (CB(b) ||f|| ||g||), CB a family lower bound; pass iff ratio <= 1 + slack.
HolderCheck holder_direction_check(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g,
                                   const GammaParams& params, double slack = 10.0, const FamilyOptions& family = {});

}  // namespace besov

#endif  // BESOV_ESTIMATORS_HPP
