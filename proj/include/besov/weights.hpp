#ifndef BESOV_WEIGHTS_HPP
#define BESOV_WEIGHTS_HPP

#include <complex>
#include <string>
#include <vector>

#include "besov/quadrature.hpp"

namespace besov {

/**
 * theta(z) = (1-|z|^2)^alpha |1-z|^beta.
 *
 * The catalog is closed under powers, which keeps the dual weight theta^{-p'/p} in the same
 * family and lets every rule fold the radial power into its Jacobi exponent.
 */
class Weight {
 public:
  Weight() = default;
  static Weight one() { return {}; }
  static Weight power(double alpha);
  static Weight power_boundary(double alpha, double beta);
  /// "one", "power:<alpha>", "power_boundary:<alpha>,<beta>".
  static Weight parse(const std::string& spec);
  /// Label plus a parameter list, as in the CLI config.
  static Weight from_catalog(const std::string& label, const std::vector<double>& params);

  double eval(cplx z) const;
  /// Factor left after removing (1-|z|^2)^alpha.
  double remainder(cplx z) const;
  double radial_power() const noexcept { return alpha_; }
  double boundary_power() const noexcept { return beta_; }
  bool radial() const noexcept { return beta_ == 0.0; }
  bool is_one() const noexcept { return alpha_ == 0.0 && beta_ == 0.0; }
  const std::string& label() const noexcept { return label_; }
  std::string spec() const;

  Weight pow(double e) const;
  /// theta^{-p'/p}.
  Weight dual(double p) const;

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::string label_ = "one";
};

struct ApexValue {
  cplx apex;
  double mu_ratio;        // mu_t(T_z)/nu_t(T_z)
  double mu_dual_ratio;   // mu'_t(T_z)/nu_t(T_z)
  double value;           // mu_ratio^{1/p} mu_dual_ratio^{1/p'}
};

struct BekolleEstimate {
  double p = 2.0;
  double t = 1.0;
  int depth = 10;
  double constant_estimate = 0.0;
  std::vector<ApexValue> per_apex;
};

/// Apex grid: z = 0 and radii 1-2^-j, j = 1..J, at `angles` equally spaced arguments.
std::vector<cplx> apex_grid(int J, int angles = 8);

/**
 * Grid estimate of B_{p,t}(theta). Tent integrals resolve the boundary layer to
 * 2^-max(2J, shell_depth), so a non-integrable dual weight shows up as growth in J.
 */
BekolleEstimate bekolle_constant(const Weight& theta, double p, double t, int J = 10,
                                 const Resolution& res = Resolution::standard(), int angles = 8);

struct DoublingRow {
  double r1, r2;
  double ratio;           // mu_t(T_{r1 zeta}) / mu_t(T_{r2 zeta})
  double bound;           // B^p (nu_t(T_{r1 zeta})/nu_t(T_{r2 zeta}))^p
  double model_bound;     // B^p ((1-r1)/(1-r2))^{(1+t)p}
  bool violated;
};

std::vector<DoublingRow> doubling_check(const Weight& theta, double p, double t, cplx zeta,
                                        const std::vector<std::pair<double, double>>& r_pairs,
                                        double bekolle_B, double tolerance = 0.05,
                                        const Resolution& res = Resolution::standard());

/// sup over samples of (1-|z|^2)^M (P^{+t,t+M} theta)^{1/p} (P^{+t,t+M} theta^{-p'/p})^{1/p'}.
double kernel_condition(const Weight& theta, double p, double t, double M,
                        const std::vector<cplx>& z_samples,
                        const Resolution& res = Resolution::standard());

/**
 * Lower bound for the norm of P^{+t} on L^p(mu_t) from radial boundary-layer test functions
 * phi_eps = theta^{-p'/p} bump(u/eps), u = 1-|w|^2, supported in eps <= u <= 2 eps.
 * Returns the ratio per eps (in the given order). Radial theta only.
 */
std::vector<double> projection_bound_probe(const Weight& theta, double p, double t,
                                           const std::vector<double>& layer_widths,
                                           const Resolution& res = Resolution::standard());

/// ||P^{+t} 1||_{L^p(mu_t)} / ||1||_{L^p(mu_t)}, radial theta only.
double projection_ratio_constant(const Weight& theta, double p, double t,
                                 const Resolution& res = Resolution::standard());

}  // namespace besov

#endif  // BESOV_WEIGHTS_HPP
