#include "besov/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "besov/error.hpp"

namespace besov {

int k_plus(double s) {
  if (!std::isfinite(s)) throw DomainError("k_plus: s must be finite");
  if (s < 0.0) return 0;
  return static_cast<int>(std::floor(s)) + 1;
}

double SpaceParams::p_conj() const {
  if (!(p > 1.0)) throw DomainError("conjugate exponent needs p > 1");
  return p / (p - 1.0);
}

void SpaceParams::validate(bool strict) const {
  if (!std::isfinite(p) || (strict ? !(p > 1.0) : !(p >= 1.0)))
    throw DomainError(strict ? "p must satisfy 1 < p < inf" : "p must satisfy 1 <= p < inf");
  if (!std::isfinite(s)) throw DomainError("s must be finite");
  if (!std::isfinite(t) || t < 0.0) throw DomainError("t must be >= 0");
  if (t == 0.0 && !weight.is_one()) throw DomainError("t = 0 admits only theta = 1");
}

SpaceParams SpaceParams::conjugate(double s1) const {
  return SpaceParams{p_conj(), s1, t, weight.dual(p)};
}

double SpaceParams::density_exponent(int k) const {
  return t + (static_cast<double>(k) - s) * p + weight.radial_power();
}

std::string SpaceParams::describe() const {
  std::ostringstream os;
  os << "B^" << p << "_" << s << "(mu_" << t << ", " << weight.label() << ")";
  return os.str();
}

double besov_monomial_power(std::size_t m, const SpaceParams& sp, int k) {
  sp.validate(false);
  if (!sp.weight.radial()) throw UnsupportedError("besov_monomial_power: radial weights only");
  const double a = sp.density_exponent(k);
  if (!(a > 0.0)) throw DomainError("besov_monomial_power: norm integral diverges");
  const double md = static_cast<double>(m);
  // c int r^{mp} (1-r^2)^{a-1} dnu = c B(mp/2 + 1, a)
  const double x = 0.5 * md * sp.p + 1.0;
  const double beta = std::exp(log_gamma(x) + log_gamma(a) - log_gamma(x + a));
  return std::pow(1.0 + md, static_cast<double>(k) * sp.p) * measure_factor(sp.t) * beta;
}

namespace {

int checked_order(const SpaceParams& sp, std::optional<int> k) {
  const int order = k.value_or(sp.k_s());
  if (order < 0 || !(static_cast<double>(order) > sp.s))
    throw DomainError("derivative order k must be a nonnegative integer > s");
  return order;
}

}  // namespace

BesovEvaluator::BesovEvaluator(const SpaceParams& sp, std::size_t max_degree, std::optional<int> k,
                               const Resolution& res)
    : sp_((sp.validate(false), sp)),
      k_(checked_order(sp, k)),
      grid_(sp.density_exponent(k_), measure_factor(sp.t), sp.weight, max_degree, res) {}

double BesovEvaluator::power(const TaylorPoly& f) const {
  const auto vals = grid_.evaluate(one_plus_R_pow(f, k_));
  const auto w = grid_.node_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) acc += w[i] * std::pow(std::abs(vals[i]), sp_.p);
  return acc;
}

double BesovEvaluator::norm(const TaylorPoly& f) const { return std::pow(power(f), 1.0 / sp_.p); }

double BesovEvaluator::power_and_gradient(const TaylorPoly& f, std::size_t degree, std::vector<cplx>& grad) const {
  auto vals = grid_.evaluate(one_plus_R_pow(f, k_));
  const auto w = grid_.node_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double a = std::abs(vals[i]);
    const double ap = std::pow(a, sp_.p);
    acc += w[i] * ap;
    vals[i] = a > 0.0 ? w[i] * (ap / (a * a)) * vals[i] : cplx{0.0};
  }
  grad = grid_.adjoint(vals, degree);
  for (std::size_t m = 0; m <= degree; ++m)
    grad[m] *= 0.5 * sp_.p * std::pow(1.0 + static_cast<double>(m), k_);
  return acc;
}

std::vector<double> BesovEvaluator::monomial_powers(std::size_t degree) const {
  auto mom = grid_.monomial_moments(sp_.p, degree);
  for (std::size_t m = 0; m <= degree; ++m) mom[m] *= std::pow(1.0 + static_cast<double>(m), k_ * sp_.p);
  return mom;
}

NormReport besov_norm(const TaylorPoly& f, const SpaceParams& sp, std::optional<int> k, const Resolution& res) {
  NormReport rep;
  rep.params = sp;
  rep.k = checked_order(sp, k);
  sp.validate(false);
  if (f.is_zero()) return rep;
  const BesovEvaluator base(sp, f.degree(), rep.k, res);
  const BesovEvaluator fine(sp, f.degree(), rep.k, res.refined());
  const double v0 = base.norm(f);
  rep.value = fine.norm(f);
  rep.quadrature_error_proxy = std::abs(rep.value - v0);
  if (!std::isfinite(rep.value)) throw EvaluationError("besov_norm: non-finite value", cplx{0.0});
  return rep;
}

std::vector<double> bloch_radii(int jmax) {
  std::vector<double> r;
  for (int j = 0; j <= jmax; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
  return r;
}

double bloch_norm(const TaylorPoly& b, double sigma, const std::vector<double>& radii, int angles) {
  if (angles < 1) throw DomainError("bloch_norm: angles must be >= 1");
  const int k = k_plus(sigma);
  const TaylorPoly d = one_plus_R_pow(b, k);
  double best = 0.0;
  for (const double r : radii) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("bloch_norm: radii must lie in [0, 1)");
    const double w = std::pow(1.0 - r * r, static_cast<double>(k) - sigma);
    for (int j = 0; j < angles; ++j) {
      const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / angles);
      best = std::max(best, w * std::abs(d(z)));
    }
  }
  return best;
}

FamilyMode parse_family_mode(const std::string& name) {
  if (name == "kernels") return FamilyMode::kernels;
  if (name == "random" || name == "random-polys") return FamilyMode::random;
  if (name == "mixed") return FamilyMode::mixed;
  throw DomainError("unknown family mode '" + name + "' (expected kernels, random-polys or mixed)");
}

void TestFamily::append(const TestFamily& other) {
  members.insert(members.end(), other.members.begin(), other.members.end());
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

nlohmann::json TestFamily::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < members.size(); ++i) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const cplx c : members[i].coeffs()) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    arr.push_back({{"label", labels[i]}, {"re", re}, {"im", im}});
  }
  return arr;
}

TestFamily TestFamily::from_json(const nlohmann::json& j) {
  TestFamily fam;
  for (const auto& e : j) {
    const auto re = e.at("re").get<std::vector<double>>();
    const auto im = e.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw DomainError("TestFamily: re/im length mismatch");
    std::vector<cplx> c(re.size());
    for (std::size_t m = 0; m < c.size(); ++m) c[m] = {re[m], im[m]};
    fam.members.emplace_back(std::move(c));
    fam.labels.push_back(e.value("label", std::string{}));
  }
  return fam;
}

double kernel_threshold(double p, double t, double s0, double s1) {
  const double pp = p / (p - 1.0);
  return (1.0 + t) * (std::max(p, pp) - 1.0) + std::max({0.0, -s0 * p, -s1 * pp});
}

TestFamily test_family(const SpaceParams& sp, FamilyMode mode, const FamilyOptions& opt) {
  sp.validate();
  TestFamily fam;
  if (mode != FamilyMode::random) {
    const double tau = kernel_threshold(sp.p, sp.t, sp.s, opt.s_dual.value_or(-sp.s)) + 1.0;
    const double e = (1.0 + sp.t + tau) / sp.p;
    for (const cplx z : apex_grid(opt.J, opt.angles)) {
      fam.members.push_back(kernel_power(z, e, opt.degree));
      std::ostringstream os;
      os << "kernel(" << z.real() << "," << z.imag() << ")";
      fam.labels.push_back(os.str());
    }
  }
  if (mode != FamilyMode::kernels) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    for (std::size_t i = 0; i < opt.random_count; ++i) {
      std::vector<cplx> c(opt.random_degree + 1);
      for (auto& x : c) x = {nd(rng), nd(rng)};
      fam.members.emplace_back(std::move(c));
      fam.labels.push_back("random#" + std::to_string(i));
    }
  }
  return fam;
}

namespace {

std::size_t family_degree(const TestFamily& family) {
  std::size_t d = 0;
  for (const auto& f : family.members) d = std::max(d, f.degree());
  return d;
}

struct CBSetup {
  int order;
  BesovEvaluator denom;
  DiskGrid num;
  std::vector<cplx> bvals;
};

CBSetup make_cb(const TaylorPoly& b, const SpaceParams& sp, const TestFamily& family, const Resolution& res,
                std::optional<int> order) {
  sp.validate();
  if (family.members.empty()) throw DomainError("cb_norm_estimate: empty test family");
  const int l = order.value_or(std::max(1, sp.k_s()));
  if (l < 1 || !(static_cast<double>(l) > sp.s)) throw DomainError("cb_norm_estimate: order must be >= 1 and > s");
  const std::size_t fd = family_degree(family);
  const std::size_t deg = std::max(fd, b.degree());
  BesovEvaluator denom(sp, deg, std::nullopt, res);
  DiskGrid num(sp.density_exponent(l), measure_factor(sp.t), sp.weight, deg, res);
  auto bvals = num.evaluate(one_plus_R_pow(b, l));
  return CBSetup{l, std::move(denom), std::move(num), std::move(bvals)};
}

}  // namespace

CBEstimate cb_norm_estimate(const TaylorPoly& b, const SpaceParams& sp, const TestFamily& family,
                            const Resolution& res, std::optional<int> order) {
  const CBSetup cb = make_cb(b, sp, family, res, order);
  CBEstimate est;
  est.order = cb.order;
  const auto w = cb.num.node_weights();
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const TaylorPoly& f = family.members[i];
    if (f.is_zero()) {
      est.ratios.push_back(0.0);
      continue;
    }
    const auto fv = cb.num.evaluate(f);
    double acc = 0.0;
    for (std::size_t n = 0; n < fv.size(); ++n) acc += w[n] * std::pow(std::abs(fv[n] * cb.bvals[n]), sp.p);
    const double r = std::pow(acc, 1.0 / sp.p) / cb.denom.norm(f);
    est.ratios.push_back(r);
    if (r > est.value) {
      est.value = r;
      est.best_index = i;
    }
  }
  return est;
}

double carleson_constant(const TaylorPoly& b, const SpaceParams& sp, const TestFamily& family, const Resolution& res,
                         std::optional<int> order) {
  const CBSetup cb = make_cb(b, sp, family, res, order);
  const auto w = cb.num.node_weights();
  std::vector<double> density(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) density[n] = w[n] * std::pow(std::abs(cb.bvals[n]), sp.p);
  double best = 0.0;
  for (const auto& f : family.members) {
    if (f.is_zero()) continue;
    const auto fv = cb.num.evaluate(f);
    double acc = 0.0;
    for (std::size_t n = 0; n < fv.size(); ++n) acc += density[n] * std::pow(std::abs(fv[n]), sp.p);
    best = std::max(best, std::pow(acc, 1.0 / sp.p) / cb.denom.norm(f));
  }
  return best;
}

double norm_equivalence_probe(const TaylorPoly& f, const SpaceParams& sp, int k1, int k2, const Resolution& res) {
  const double a = besov_norm(f, sp, k1, res).value;
  const double b = besov_norm(f, sp, k2, res).value;
  if (!(b > 0.0)) throw DomainError("norm_equivalence_probe: zero norm");
  return a / b;
}

double index_shift_probe(const TaylorPoly& f, const SpaceParams& sp, double t0, const Resolution& res) {
  if (!(t0 > 0.0)) throw DomainError("index_shift_probe: t0 must be > 0");
  SpaceParams shifted = sp;
  shifted.s = sp.s + t0 / sp.p;
  shifted.t = sp.t + t0;
  const double a = besov_norm(f, sp, std::nullopt, res).value;
  const double b = besov_norm(f, shifted, std::nullopt, res).value;
  if (!(b > 0.0)) throw DomainError("index_shift_probe: zero norm");
  return a / b;
}

double embed_B1_probe(const TaylorPoly& f, const SpaceParams& sp, const Resolution& res) {
  const SpaceParams b1{1.0, sp.s - sp.t, 0.0, Weight::one()};
  const double a = besov_norm(f, b1, std::nullopt, res).value;
  const double b = besov_norm(f, sp, std::nullopt, res).value;
  if (!(b > 0.0)) throw DomainError("embed_B1_probe: zero norm");
  return a / b;
}

double holder_duality_probe(const TaylorPoly& f, const TaylorPoly& g, const SpaceParams& sp, const Resolution& res) {
  const double nf = besov_norm(f, sp, std::nullopt, res).value;
  const double ng = besov_norm(g, sp.conjugate(-sp.s), std::nullopt, res).value;
  if (!(nf > 0.0) || !(ng > 0.0)) throw DomainError("holder_duality_probe: zero norm");
  return std::abs(pairing(f, g, sp.t)) / (nf * ng);
}

}  // namespace besov
