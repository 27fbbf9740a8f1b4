#include "besov/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

#include "besov/error.hpp"

namespace besov {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_num(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw DomainError("weight '" + ctx + "': bad number '" + s + "'");
  return v;
}

double conj_exponent(double p) {
  if (!(p > 1.0)) throw DomainError("p must be > 1");
  return p / (p - 1.0);
}

// (1/pi) int_0^pi (1 - 2 rho cos a + rho^2)^{-e/2} da, graded toward a = 0.
double angular_abs_kernel_mean(double rho, double e) {
  static const Rule1D gl = gauss_legendre(12, 0.0, 1.0);
  const double delta = std::max(1.0 - rho, 1e-14);
  auto integrate = [&](double lo, double hi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double a = lo + (hi - lo) * gl.nodes[i];
      const double q = (1.0 - rho) * (1.0 - rho) + 2.0 * rho * (1.0 - std::cos(a));
      acc += gl.weights[i] * std::pow(q, -0.5 * e);
    }
    return acc * (hi - lo);
  };
  double total = 0.0;
  double lo = 0.0;
  double hi = std::min(delta, kPi);
  while (true) {
    total += integrate(lo, hi);
    if (hi >= kPi) break;
    lo = hi;
    hi = std::min(2.0 * hi, kPi);
  }
  return total / kPi;
}

}  // namespace

Weight Weight::power(double alpha) { return power_boundary(alpha, 0.0); }

Weight Weight::power_boundary(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw DomainError("weight exponents must be finite");
  Weight w;
  w.alpha_ = alpha;
  w.beta_ = beta;
  if (alpha == 0.0 && beta == 0.0)
    w.label_ = "one";
  else if (beta == 0.0)
    w.label_ = "power:" + num(alpha);
  else
    w.label_ = "power_boundary:" + num(alpha) + "," + num(beta);
  return w;
}

Weight Weight::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t start = 0;
    while (true) {
      const auto comma = rest.find(',', start);
      params.push_back(parse_num(rest.substr(start, comma - start), spec));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return from_catalog(head, params);
}

Weight Weight::from_catalog(const std::string& label, const std::vector<double>& params) {
  if (label == "one") {
    if (!params.empty()) throw DomainError("weight 'one' takes no parameters");
    return one();
  }
  if (label == "power") {
    if (params.size() != 1) throw DomainError("weight 'power' takes one parameter (alpha)");
    return power(params[0]);
  }
  if (label == "power_boundary") {
    if (params.size() != 2) throw DomainError("weight 'power_boundary' takes two parameters (alpha, beta)");
    return power_boundary(params[0], params[1]);
  }
  throw DomainError("unknown weight '" + label + "' (expected one, power, power_boundary)");
}

double Weight::eval(cplx z) const {
  const double u = 1.0 - std::norm(z);
  return (alpha_ == 0.0 ? 1.0 : std::pow(u, alpha_)) * remainder(z);
}

double Weight::remainder(cplx z) const {
  return beta_ == 0.0 ? 1.0 : std::pow(std::abs(1.0 - z), beta_);
}

std::string Weight::spec() const { return label_; }

Weight Weight::pow(double e) const { return power_boundary(alpha_ * e, beta_ * e); }

Weight Weight::dual(double p) const { return pow(-conj_exponent(p) / p); }

std::vector<cplx> apex_grid(int J, int angles) {
  std::vector<cplx> out{cplx{0.0}};
  for (int j = 1; j <= J; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    for (int k = 0; k < angles; ++k) out.push_back(std::polar(r, 2.0 * kPi * k / angles));
  }
  return out;
}

BekolleEstimate bekolle_constant(const Weight& theta, double p, double t, int J, const Resolution& res,
                                 int angles) {
  const double pp = conj_exponent(p);
  if (t < 0.0) throw DomainError("bekolle_constant: t must be >= 0");
  if (J < 0 || angles < 1) throw DomainError("bekolle_constant: J >= 0 and angles >= 1 required");
  BekolleEstimate est;
  est.p = p;
  est.t = t;
  est.depth = std::max(2 * J, res.shell_depth);
  if (t == 0.0) {
    if (!theta.is_one()) throw DomainError("bekolle_constant: only theta = 1 is admitted at t = 0");
    est.constant_estimate = 1.0;
    est.per_apex.push_back({cplx{0.0}, 1.0, 1.0, 1.0});
    return est;
  }
  const Weight dual = theta.dual(p);
  const PointFn one = [](cplx) { return cplx{1.0}; };
  // for radial weights every angle at a given radius gives the same value
  std::map<double, ApexValue> by_radius;
  for (const cplx z : apex_grid(J, angles)) {
    const double r = std::abs(z);
    if (theta.radial()) {
      if (auto it = by_radius.find(r); it != by_radius.end()) {
        ApexValue v = it->second;
        v.apex = z;
        est.per_apex.push_back(v);
        continue;
      }
    }
    const double nu = tent_integral_depth(one, z, t, Weight::one(), res, est.depth);
    const double mu = tent_integral_depth(one, z, t, theta, res, est.depth);
    const double mud = tent_integral_depth(one, z, t, dual, res, est.depth);
    ApexValue v{z, mu / nu, mud / nu, 0.0};
    v.value = std::pow(v.mu_ratio, 1.0 / p) * std::pow(v.mu_dual_ratio, 1.0 / pp);
    if (theta.radial()) by_radius.emplace(r, v);
    est.per_apex.push_back(v);
  }
  for (const auto& v : est.per_apex) est.constant_estimate = std::max(est.constant_estimate, v.value);
  return est;
}

std::vector<DoublingRow> doubling_check(const Weight& theta, double p, double t, cplx zeta,
                                        const std::vector<std::pair<double, double>>& r_pairs,
                                        double bekolle_B, double tolerance, const Resolution& res) {
  conj_exponent(p);
  if (!(t > 0.0)) throw DomainError("doubling_check: t must be > 0");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw DomainError("doubling_check: zeta must be unimodular");
  const PointFn one = [](cplx) { return cplx{1.0}; };
  const int depth = std::max(res.shell_depth, 20);
  std::vector<DoublingRow> rows;
  for (const auto& [r1, r2] : r_pairs) {
    if (!(0.0 < r1 && r1 <= r2 && r2 < 1.0)) throw DomainError("doubling_check: need 0 < r1 <= r2 < 1");
    const double mu1 = tent_integral_depth(one, r1 * zeta, t, theta, res, depth);
    const double mu2 = tent_integral_depth(one, r2 * zeta, t, theta, res, depth);
    const double nu1 = tent_integral_depth(one, r1 * zeta, t, Weight::one(), res, depth);
    const double nu2 = tent_integral_depth(one, r2 * zeta, t, Weight::one(), res, depth);
    DoublingRow row{};
    row.r1 = r1;
    row.r2 = r2;
    row.ratio = mu1 / mu2;
    const double Bp = std::pow(bekolle_B, p);
    row.bound = Bp * std::pow(nu1 / nu2, p);
    row.model_bound = Bp * std::pow((1.0 - r1) / (1.0 - r2), (1.0 + t) * p);
    row.violated = row.ratio > row.bound * (1.0 + tolerance);
    rows.push_back(row);
  }
  return rows;
}

double kernel_condition(const Weight& theta, double p, double t, double M, const std::vector<cplx>& z_samples,
                        const Resolution& res) {
  const double pp = conj_exponent(p);
  if (!(t > 0.0)) throw DomainError("kernel_condition: t must be > 0");
  const double lambda = (1.0 + t) * (std::max(p, pp) - 1.0);
  if (!(M > lambda))
    throw DomainError("kernel_condition: M must exceed (1+t)(max(p,p')-1) = " + num(lambda));
  if (z_samples.empty()) throw DomainError("kernel_condition: no samples");
  const Weight dual = theta.dual(p);
  double best = 0.0;
  for (const cplx z : z_samples) {
    const double a = apply_PNM_weight(theta, t, t + M, z, res);
    const double b = apply_PNM_weight(dual, t, t + M, z, res);
    const double v = std::pow(1.0 - std::norm(z), M) * std::pow(a, 1.0 / p) * std::pow(b, 1.0 / pp);
    best = std::max(best, v);
  }
  return best;
}

namespace {

void require_radial(const Weight& theta, const char* who) {
  if (!theta.radial()) throw UnsupportedError(std::string(who) + ": only radial weights are supported");
}

// ||F||_{L^p(theta dnu_t)} for radial F given as a function of r.
template <class F>
double radial_lp_norm(F&& Fr, const Weight& theta, double p, double t, const Resolution& res) {
  const double a = t + theta.radial_power();
  if (!(a > 0.0)) throw DomainError("theta dnu_t is not a finite measure");
  const LadderRule lr = ladder_rule(a, 1.0, res.shell_depth, res.shell_points, res.end_points);
  double acc = 0.0;
  for (std::size_t i = 0; i < lr.u.size(); ++i) acc += lr.w[i] * std::pow(std::abs(Fr(std::sqrt(1.0 - lr.u[i]))), p);
  return std::pow(t * acc, 1.0 / p);
}

}  // namespace

std::vector<double> projection_bound_probe(const Weight& theta, double p, double t,
                                           const std::vector<double>& layer_widths, const Resolution& res) {
  require_radial(theta, "projection_bound_probe");
  conj_exponent(p);
  if (!(t > 0.0)) throw DomainError("projection_bound_probe: t must be > 0");
  const double alpha_dual = theta.dual(p).radial_power();
  const Rule1D layer = gauss_legendre(static_cast<std::size_t>(2 * res.shell_points), 0.0, 1.0);
  std::vector<double> out;
  for (const double eps : layer_widths) {
    if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("projection_bound_probe: layer widths must lie in (0, 1/2]");
    // phi = u^{alpha'} on eps <= u <= 2 eps
    double phi_norm_p = 0.0;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const double u = eps * (1.0 + layer.nodes[i]);
      phi_norm_p += eps * layer.weights[i] * t * std::pow(u, t + alpha_dual - 1.0);
    }
    const double phi_norm = std::pow(phi_norm_p, 1.0 / p);
    auto Pplus = [&](double r) {
      double acc = 0.0;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        const double u = eps * (1.0 + layer.nodes[i]);
        acc += eps * layer.weights[i] * std::pow(u, alpha_dual) * t * std::pow(u, t - 1.0) *
               angular_abs_kernel_mean(r * std::sqrt(1.0 - u), 1.0 + t);
      }
      return acc;
    };
    out.push_back(radial_lp_norm(Pplus, theta, p, t, res) / phi_norm);
  }
  return out;
}

double projection_ratio_constant(const Weight& theta, double p, double t, const Resolution& res) {
  require_radial(theta, "projection_ratio_constant");
  conj_exponent(p);
  if (!(t > 0.0)) throw DomainError("projection_ratio_constant: t must be > 0");
  const LadderRule inner = ladder_rule(t, 1.0, res.shell_depth, res.shell_points, res.end_points);
  auto Pplus = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < inner.u.size(); ++i)
      acc += inner.w[i] * t * angular_abs_kernel_mean(r * std::sqrt(1.0 - inner.u[i]), 1.0 + t);
    return acc;
  };
  const double one_norm = radial_lp_norm([](double) { return 1.0; }, theta, p, t, res);
  return radial_lp_norm(Pplus, theta, p, t, res) / one_norm;
}

}  // namespace besov
