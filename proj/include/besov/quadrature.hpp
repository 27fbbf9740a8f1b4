#ifndef BESOV_QUADRATURE_HPP
#define BESOV_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "besov/gauss.hpp"
#include "besov/taylor.hpp"

namespace besov {

class Weight;

/// Knobs shared by every rule in this module.
struct Resolution {
  int shell_depth = 12;   // dyadic shells of the boundary layer, u = 1-|w|^2 down to 2^-depth
  int shell_points = 16;  // Gauss-Legendre points per shell
  int end_points = 16;    // Gauss-Jacobi points on the innermost interval
  int angular_min = 64;   // minimal trapezoid count on circles
  int ray_scale = 8;      // centered rule: rays = ray_scale * 2pi / sqrt(dist to boundary)
  int arc_points = 24;    // Gauss-Legendre points along tent arcs

  static Resolution low();
  static Resolution standard() { return {}; }
  static Resolution high();
  static Resolution from_name(const std::string& name);

  /// Twice the points in every direction and two extra shells.
  Resolution refined() const;
};

/**
 * Rule for int_0^{u_max} g(u) u^{a-1} du on dyadic shells [u_max 2^-(j+1), u_max 2^-j],
 * continuing while the shell stays above 2^-depth, plus a Gauss-Jacobi end interval.
 * When a <= 0 the integral diverges; the end interval is dropped and `truncated` is set,
 * so the rule integrates over u >= 2^-depth only.
 */
struct LadderRule {
  std::vector<double> u;
  std::vector<double> w;  // includes u^{a-1}
  bool truncated = false;
};
LadderRule ladder_rule(double a, double u_max, int depth, int shell_points, int end_points,
                       bool sqrt_top = false);

/// Rings for int_D phi (1-|w|^2)^{a-1} dnu: radii from the ladder in u = 1-r^2, uniform angles.
struct RingRule {
  std::vector<double> radius;
  std::vector<double> radial_weight;  // d(r^2) weights with (1-r^2)^{a-1} folded in, times 1/1 (angle mean separate)
  std::size_t angular = 0;
  bool truncated = false;
};
RingRule ring_rule(double a, const Resolution& res, std::size_t angular);

struct QuadResult {
  cplx value{0.0};
  double error_proxy = 0.0;
};

using PointFn = std::function<cplx(cplx)>;

/// Trapezoid mean of phi over the unit circle.
cplx circle_mean(const PointFn& phi, std::size_t n);

/**
 * int_D phi theta dnu_t (t > 0), or the circle mean of phi (t = 0, theta must be 1).
 * The value is the refined estimate; error_proxy is its distance to the base estimate.
 */
QuadResult disk_integral(const PointFn& phi, double t, const Weight& theta,
                         const Resolution& res = Resolution::standard(), std::size_t angular = 0);
QuadResult circle_integral(const PointFn& phi, const Resolution& res = Resolution::standard(),
                           std::size_t n = 0);

/// T_z = {w in D : |1 - w conj(z)/|z|| < 2(1-|z|^2)}, T_0 = D.
class Tent {
 public:
  explicit Tent(cplx apex);
  cplx apex() const noexcept { return apex_; }
  bool contains(cplx w) const noexcept;
  /// Radius 2(1-|z|^2) of the boundary disk cutting out the tent.
  double reach() const noexcept { return reach_; }
  bool is_whole_disk() const noexcept { return whole_; }

 private:
  cplx apex_;
  double reach_;
  bool whole_;
};

/// int_{T_z} phi theta dnu_t; membership is exact (arcs per radius).
QuadResult tent_integral(const PointFn& phi, cplx z, double t, const Weight& theta,
                         const Resolution& res = Resolution::standard());
/// Variant with an explicit ladder depth (used when the boundary layer resolution must track an apex grid).
double tent_integral_depth(const PointFn& phi, cplx z, double t, const Weight& theta,
                           const Resolution& res, int depth);

/**
 * Polar rule centred at z for int_D F(w) (1-|w|^2)^{a-1} |w-z|^{-q} dnu(w).
 * The inner disk |w-z| < dist(z, boundary)/2 carries a Gauss-Jacobi radial rule that absorbs
 * the |w-z|^{1-q} factor; outer rays are graded toward z and toward the boundary.
 */
class CenteredRule {
 public:
  CenteredRule(cplx z, double a, double q, const Resolution& res = Resolution::standard());
  cplx integrate(const PointFn& F) const;
  double integrate_real(const std::function<double(cplx)>& F) const;
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const cplx> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<cplx> nodes_;
  std::vector<double> weights_;
};

/**
 * P^{N,M}(phi)(z) = int phi(w) N (1-|w|^2)^{N-1} / (1 - z conj(w))^{1+M} dnu(w), or the
 * absolute-kernel version P^{+N,M} when `absolute` is set. N = 0 is the circle variant.
 */
cplx apply_PNM(const PointFn& phi, double N, double M, cplx z, bool absolute,
               const Resolution& res = Resolution::standard());

/// P^{N,M} applied to a weight (radial power folded into the rule), absolute kernel.
double apply_PNM_weight(const Weight& theta, double N, double M, cplx z,
                        const Resolution& res = Resolution::standard());

/**
 * K^N(psi)(z) = int psi(w) (1-|w|^2)^N / (1 - z conj(w))^N * 1/(z - w) dnu(w).
 * With this orientation phi = P^N(phi) + K^N(dbar phi) for phi in C^1 of the closed disk.
 */
cplx apply_KN(const PointFn& psi, double N, cplx z, const Resolution& res = Resolution::standard());

/// |phi(z) - P^N(phi)(z) - K^N(dbar phi)(z)|.
double cauchy_pompeiu_residual(const PointFn& phi, const PointFn& dbar_phi, double N, cplx z,
                               const Resolution& res = Resolution::standard());

/// int P^{+N,M}(w,z) / |w-z|^q dnu(w) divided by 1 + (1-|z|^2)^{N-M-q}, per sample.
std::vector<double> estP_ratio(double q, double N, double M, std::span<const cplx> z_samples,
                               const Resolution& res = Resolution::standard());

}  // namespace besov

#endif  // BESOV_QUADRATURE_HPP
