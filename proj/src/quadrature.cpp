#include "besov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "besov/error.hpp"
#include "besov/weights.hpp"

namespace besov {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(cplx v, cplx node) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvaluationError("non-finite integrand value", node);
}

}  // namespace

Resolution Resolution::low() {
  Resolution r;
  r.shell_depth = 10;
  r.shell_points = 10;
  r.end_points = 10;
  r.angular_min = 32;
  r.ray_scale = 5;
  r.arc_points = 16;
  return r;
}

Resolution Resolution::high() {
  Resolution r;
  r.shell_depth = 14;
  r.shell_points = 24;
  r.end_points = 24;
  r.angular_min = 128;
  r.ray_scale = 12;
  r.arc_points = 32;
  return r;
}

Resolution Resolution::from_name(const std::string& name) {
  if (name == "low") return low();
  if (name == "default" || name == "standard") return standard();
  if (name == "high") return high();
  throw DomainError("unknown resolution '" + name + "' (expected low, default or high)");
}

Resolution Resolution::refined() const {
  Resolution r = *this;
  r.shell_depth += 2;
  r.shell_points *= 2;
  r.end_points *= 2;
  r.angular_min *= 2;
  r.ray_scale *= 2;
  r.arc_points *= 2;
  return r;
}

LadderRule ladder_rule(double a, double u_max, int depth, int shell_points, int end_points,
                       bool sqrt_top) {
  LadderRule rule;
  const double floor_u = std::ldexp(1.0, -depth);
  const auto sp = static_cast<std::size_t>(shell_points);
  const auto ep = static_cast<std::size_t>(end_points);
  auto push = [&](double u, double w) {
    rule.u.push_back(u);
    rule.w.push_back(w);
  };
  double hi = u_max;
  bool first = true;
  while (hi * 0.5 >= floor_u) {
    const double lo = hi * 0.5;
    if (first && sqrt_top) {
      // u = hi - (hi-lo) y^2 makes a sqrt(hi - u) factor smooth in y
      const Rule1D gl = gauss_legendre(sp, 0.0, 1.0);
      for (std::size_t i = 0; i < gl.size(); ++i) {
        const double y = gl.nodes[i];
        const double u = hi - (hi - lo) * y * y;
        push(u, gl.weights[i] * 2.0 * (hi - lo) * y * std::pow(u, a - 1.0));
      }
    } else {
      const Rule1D gl = gauss_legendre(sp, lo, hi);
      for (std::size_t i = 0; i < gl.size(); ++i)
        push(gl.nodes[i], gl.weights[i] * std::pow(gl.nodes[i], a - 1.0));
    }
    first = false;
    hi = lo;
  }
  if (a <= 0.0) {
    rule.truncated = true;
    return rule;
  }
  if (first && sqrt_top) {
    // single interval carrying both end behaviours
    const Rule1D gj = gauss_jacobi(ep, 0.5, a - 1.0);
    const double h = 0.5 * hi;
    const double scale = std::pow(h, a - 1.0) * std::sqrt(h) * h;
    for (std::size_t i = 0; i < gj.size(); ++i) {
      const double u = h * (gj.nodes[i] + 1.0);
      push(u, gj.weights[i] * scale / std::sqrt(hi - u));
    }
    return rule;
  }
  const Rule1D gj = gauss_jacobi_left(ep, a - 1.0, hi);
  for (std::size_t i = 0; i < gj.size(); ++i) push(gj.nodes[i], gj.weights[i]);
  return rule;
}

RingRule ring_rule(double a, const Resolution& res, std::size_t angular) {
  const LadderRule lr = ladder_rule(a, 1.0, res.shell_depth, res.shell_points, res.end_points);
  RingRule rr;
  rr.truncated = lr.truncated;
  rr.angular = angular;
  rr.radius.reserve(lr.u.size());
  for (std::size_t i = 0; i < lr.u.size(); ++i) {
    rr.radius.push_back(std::sqrt(1.0 - lr.u[i]));
    rr.radial_weight.push_back(lr.w[i]);
  }
  return rr;
}

cplx circle_mean(const PointFn& phi, std::size_t n) {
  cplx acc{0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const cplx w = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
    const cplx v = phi(w);
    check_finite(v, w);
    acc += v;
  }
  return acc / static_cast<double>(n);
}

QuadResult circle_integral(const PointFn& phi, const Resolution& res, std::size_t n) {
  if (n == 0) n = 4 * static_cast<std::size_t>(res.angular_min);
  const cplx base = circle_mean(phi, n);
  const cplx fine = circle_mean(phi, 2 * n);
  return {fine, std::abs(fine - base)};
}

namespace {

cplx disk_integral_once(const PointFn& phi, double t, const Weight& theta, const Resolution& res,
                        std::size_t angular) {
  const double a = t + theta.radial_power();
  const RingRule rr = ring_rule(a, res, angular);
  cplx acc{0.0};
  for (std::size_t i = 0; i < rr.radius.size(); ++i) {
    cplx ring{0.0};
    for (std::size_t j = 0; j < angular; ++j) {
      const cplx w = std::polar(rr.radius[i], 2.0 * kPi * static_cast<double>(j) / static_cast<double>(angular));
      const cplx v = phi(w) * theta.remainder(w);
      check_finite(v, w);
      ring += v;
    }
    acc += rr.radial_weight[i] * ring / static_cast<double>(angular);
  }
  return t * acc;
}

}  // namespace

QuadResult disk_integral(const PointFn& phi, double t, const Weight& theta, const Resolution& res,
                         std::size_t angular) {
  if (t < 0.0) throw DomainError("disk_integral: t must be >= 0");
  if (t == 0.0) {
    if (!theta.is_one()) throw DomainError("disk_integral: t = 0 requires theta = 1");
    return circle_integral(phi, res, angular);
  }
  if (!(t + theta.radial_power() > 0.0))
    throw DomainError("disk_integral: theta dnu_t is not integrable (t + alpha <= 0)");
  if (angular == 0) angular = 4 * static_cast<std::size_t>(res.angular_min);
  const cplx base = disk_integral_once(phi, t, theta, res, angular);
  const cplx fine = disk_integral_once(phi, t, theta, res.refined(), 2 * angular);
  return {fine, std::abs(fine - base)};
}

Tent::Tent(cplx apex) : apex_(apex) {
  const double r = std::abs(apex);
  if (!(r < 1.0)) throw DomainError("Tent: apex must lie in the open disk");
  whole_ = (r == 0.0);
  reach_ = 2.0 * (1.0 - r * r);
}

bool Tent::contains(cplx w) const noexcept {
  if (!(std::abs(w) < 1.0)) return false;
  if (whole_) return true;
  const cplx zeta = apex_ / std::abs(apex_);
  return std::abs(1.0 - w * std::conj(zeta)) < reach_;
}

double tent_integral_depth(const PointFn& phi, cplx z, double t, const Weight& theta,
                           const Resolution& res, int depth) {
  if (!(t > 0.0)) throw DomainError("tent_integral: t must be > 0");
  const Tent tent(z);
  const double a = t + theta.radial_power();
  const auto angular = 4 * static_cast<std::size_t>(res.angular_min);

  auto ring_mean = [&](double r) {
    cplx acc{0.0};
    for (std::size_t j = 0; j < angular; ++j) {
      const cplx w = std::polar(r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(angular));
      const cplx v = phi(w) * theta.remainder(w);
      check_finite(v, w);
      acc += v;
    }
    return acc / static_cast<double>(angular);
  };

  if (tent.is_whole_disk()) {
    const LadderRule lr = ladder_rule(a, 1.0, depth, res.shell_points, res.end_points);
    cplx acc{0.0};
    for (std::size_t i = 0; i < lr.u.size(); ++i) acc += lr.w[i] * ring_mean(std::sqrt(1.0 - lr.u[i]));
    return t * acc.real();
  }

  const double rho = tent.reach();
  const double arg0 = std::arg(z);
  const double r_lo = std::max(0.0, 1.0 - rho);
  const double r_c = rho - 1.0;  // full circles for r <= r_c
  double total = 0.0;

  if (r_c > 0.0) {
    // full-circle core, x = r^2 in [0, r_c^2], density (1-x)^{a-1}
    const Rule1D gl = gauss_legendre(2 * static_cast<std::size_t>(res.shell_points), 0.0, r_c * r_c);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double x = gl.nodes[i];
      total += gl.weights[i] * std::pow(1.0 - x, a - 1.0) * ring_mean(std::sqrt(x)).real();
    }
  }

  const double r_b = std::max(r_lo, std::max(r_c, 0.0));
  const double u_max = 1.0 - r_b * r_b;
  const LadderRule lr = ladder_rule(a, u_max, depth, res.shell_points, res.end_points, true);
  const Rule1D arc = gauss_legendre(static_cast<std::size_t>(res.arc_points), -1.0, 1.0);
  for (std::size_t i = 0; i < lr.u.size(); ++i) {
    const double r = std::sqrt(1.0 - lr.u[i]);
    const double c = std::clamp((1.0 + r * r - rho * rho) / (2.0 * r), -1.0, 1.0);
    const double h = std::acos(c);
    double acc = 0.0;
    for (std::size_t k = 0; k < arc.size(); ++k) {
      const cplx w = std::polar(r, arg0 + h * arc.nodes[k]);
      const cplx v = phi(w) * theta.remainder(w);
      check_finite(v, w);
      acc += arc.weights[k] * v.real();
    }
    total += lr.w[i] * acc * h / (2.0 * kPi);
  }
  return t * total;
}

QuadResult tent_integral(const PointFn& phi, cplx z, double t, const Weight& theta, const Resolution& res) {
  const double base = tent_integral_depth(phi, z, t, theta, res, res.shell_depth);
  const Resolution fine_res = res.refined();
  const double fine = tent_integral_depth(phi, z, t, theta, fine_res, fine_res.shell_depth);
  return {fine, std::abs(fine - base)};
}

CenteredRule::CenteredRule(cplx z, double a, double q, const Resolution& res) {
  if (!(a > 0.0)) throw DomainError("CenteredRule: boundary exponent a must be > 0");
  if (!(q < 2.0)) throw DomainError("CenteredRule: singularity order q must be < 2");
  const double r0 = std::abs(z);
  if (!(r0 < 1.0)) throw DomainError("CenteredRule: centre must lie in the open disk");
  const double d = 1.0 - r0;
  const double rho_in = 0.5 * d;
  const auto rays = static_cast<std::size_t>(std::clamp(
      static_cast<double>(res.ray_scale) * std::ceil(2.0 * kPi / std::sqrt(d)),
      static_cast<double>(res.angular_min), 16384.0));
  const auto sp = static_cast<std::size_t>(res.shell_points);
  const auto ep = static_cast<std::size_t>(res.end_points);
  const int boundary_shells = std::max(4, res.shell_depth - 4);
  const double ray_w = 2.0 / static_cast<double>(rays);

  const Rule1D inner = gauss_jacobi_left(ep, 1.0 - q, rho_in);
  const Rule1D gl01 = gauss_legendre(sp, 0.0, 1.0);

  for (std::size_t k = 0; k < rays; ++k) {
    const double psi = 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(rays);
    const cplx e = std::polar(1.0, psi);
    const double b = (std::conj(z) * e).real();
    const double disc = std::sqrt(b * b + 1.0 - r0 * r0);
    const double rho_p = -b + disc;
    const double rho_m = -b - disc;
    // 1 - |z + rho e|^2 = (rho_p - rho)(rho - rho_m)
    auto bw = [&](double rho) { return std::pow((rho_p - rho) * (rho - rho_m), a - 1.0); };
    auto push = [&](double rho, double w) {
      nodes_.push_back(z + rho * e);
      weights_.push_back(ray_w * w);
    };
    for (std::size_t i = 0; i < inner.size(); ++i) push(inner.nodes[i], inner.weights[i] * bw(inner.nodes[i]));

    const double mid = 0.5 * (rho_in + rho_p);
    for (double lo = rho_in; lo < mid;) {
      const double hi = std::min(2.0 * lo, mid);
      for (std::size_t i = 0; i < gl01.size(); ++i) {
        const double rho = lo + (hi - lo) * gl01.nodes[i];
        push(rho, (hi - lo) * gl01.weights[i] * std::pow(rho, 1.0 - q) * bw(rho));
      }
      lo = hi;
    }
    const double L = rho_p - mid;
    double vhi = L;
    for (int s = 0; s < boundary_shells; ++s) {
      const double vlo = 0.5 * vhi;
      for (std::size_t i = 0; i < gl01.size(); ++i) {
        const double v = vlo + (vhi - vlo) * gl01.nodes[i];
        const double rho = rho_p - v;
        push(rho, (vhi - vlo) * gl01.weights[i] * std::pow(rho, 1.0 - q) *
                      std::pow(v * (rho - rho_m), a - 1.0));
      }
      vhi = vlo;
    }
    const Rule1D end = gauss_jacobi_left(ep, a - 1.0, vhi);
    for (std::size_t i = 0; i < end.size(); ++i) {
      const double rho = rho_p - end.nodes[i];
      push(rho, end.weights[i] * std::pow(rho, 1.0 - q) * std::pow(rho - rho_m, a - 1.0));
    }
  }
}

cplx CenteredRule::integrate(const PointFn& F) const {
  cplx acc{0.0};
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const cplx v = F(nodes_[i]);
    check_finite(v, nodes_[i]);
    acc += weights_[i] * v;
  }
  return acc;
}

double CenteredRule::integrate_real(const std::function<double(cplx)>& F) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double v = F(nodes_[i]);
    if (!std::isfinite(v)) throw EvaluationError("non-finite integrand value", nodes_[i]);
    acc += weights_[i] * v;
  }
  return acc;
}

namespace {

std::size_t circle_count_for(cplx z, const Resolution& res) {
  const double d = 1.0 - std::abs(z);
  return static_cast<std::size_t>(
      std::max(4.0 * res.angular_min, std::ceil(static_cast<double>(res.ray_scale) * 8.0 / d)));
}

}  // namespace

cplx apply_PNM(const PointFn& phi, double N, double M, cplx z, bool absolute, const Resolution& res) {
  if (N < 0.0 || M < 0.0) throw DomainError("apply_PNM: N and M must be >= 0");
  if (!(std::abs(z) < 1.0)) throw DomainError("apply_PNM: |z| must be < 1");
  auto kernel = [=](cplx w) -> cplx {
    const cplx k = std::pow(1.0 - z * std::conj(w), -(1.0 + M));
    return absolute ? cplx{std::abs(k)} : k;
  };
  if (N == 0.0) {
    return circle_mean([&](cplx w) { return phi(w) * kernel(w); }, circle_count_for(z, res));
  }
  const CenteredRule rule(z, N, 0.0, res);
  return N * rule.integrate([&](cplx w) { return phi(w) * kernel(w); });
}

double apply_PNM_weight(const Weight& theta, double N, double M, cplx z, const Resolution& res) {
  if (!(N > 0.0)) throw DomainError("apply_PNM_weight: N must be > 0");
  const double a = N + theta.radial_power();
  if (!(a > 0.0)) throw DomainError("apply_PNM_weight: weight not integrable against (1-|w|^2)^{N-1}");
  const CenteredRule rule(z, a, 0.0, res);
  return N * rule.integrate_real([&](cplx w) {
    return theta.remainder(w) * std::pow(std::abs(1.0 - z * std::conj(w)), -(1.0 + M));
  });
}

cplx apply_KN(const PointFn& psi, double N, cplx z, const Resolution& res) {
  if (N < 0.0) throw DomainError("apply_KN: N must be >= 0");
  const CenteredRule rule(z, N + 1.0, 1.0, res);
  return rule.integrate([&](cplx w) {
    const cplx diff = z - w;
    return psi(w) * std::pow(1.0 - z * std::conj(w), -N) * (std::abs(diff) / diff);
  });
}

double cauchy_pompeiu_residual(const PointFn& phi, const PointFn& dbar_phi, double N, cplx z,
                               const Resolution& res) {
  const cplx p = apply_PNM(phi, N, N, z, false, res);
  const cplx k = apply_KN(dbar_phi, N, z, res);
  return std::abs(phi(z) - p - k);
}

std::vector<double> estP_ratio(double q, double N, double M, std::span<const cplx> z_samples,
                               const Resolution& res) {
  if (!(N > 0.0)) throw DomainError("estP_ratio: N must be > 0");
  if (!(q < 2.0)) throw DomainError("estP_ratio: q must be < 2");
  if (M == N - q) throw DomainError("estP_ratio: M must differ from N - q");
  std::vector<double> out;
  out.reserve(z_samples.size());
  for (const cplx z : z_samples) {
    const CenteredRule rule(z, N, q, res);
    const double num = N * rule.integrate_real([&](cplx w) {
      return std::pow(std::abs(1.0 - z * std::conj(w)), -(1.0 + M));
    });
    const double u = 1.0 - std::norm(z);
    out.push_back(num / (1.0 + std::pow(u, N - M - q)));
  }
  return out;
}

}  // namespace besov
