#include "besov/estimators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "besov/error.hpp"

namespace besov {

void GammaParams::validate() const {
  f_space().validate();
  if (pairing_index() < 0.0) throw DomainError("pairing index must be >= 0");
  if (degree < 1) throw DomainError("degree must be >= 1");
  if (max_iter < 1 || restarts < 0 || kernel_seeds < 0) throw DomainError("optimizer settings out of range");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

nlohmann::json coeffs_json(const TaylorPoly& f) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (const cplx c : f.coeffs()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"re", re}, {"im", im}};
}

/// Log-ratio objective J = log num(f,g) - (1/p) log ||f||^p - (1/p') log ||g||^{p'} and its ascent steps.
class Engine {
 public:
  Engine(const TaylorPoly& b, const GammaParams& P, bool modulus)
      : P_(P),
        modulus_(modulus),
        D_(P.degree),
        p_(P.p),
        pp_(P.f_space().p_conj()),
        Ef_(P.f_space(), P.degree, std::nullopt, P.res),
        Eg_(P.g_space(), P.degree, std::nullopt, P.res) {
    P.validate();
    for (const double v : Ef_.monomial_powers(D_)) Pf_.push_back(std::pow(v, -2.0 / p_));
    for (const double v : Eg_.monomial_powers(D_)) Pg_.push_back(std::pow(v, -2.0 / pp_));
    if (modulus_) {
      const double t1 = P.t + 1.0;
      grid_.emplace(t1, t1, Weight::one(), std::max(D_, b.degree()), P.res);
      const auto vals = grid_->evaluate(one_plus_R_pow(b, 1));
      hb_.resize(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i) hb_[i] = std::abs(vals[i]);
    } else {
      const PairingWeightTable omega(P.pairing_index(), 2 * D_);
      B_.resize(static_cast<Eigen::Index>(D_ + 1), static_cast<Eigen::Index>(D_ + 1));
      for (std::size_t i = 0; i <= D_; ++i)
        for (std::size_t j = 0; j <= D_; ++j)
          B_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::conj(b[i + j]) * omega[i + j];
    }
  }

  std::size_t degree() const { return D_; }
  const std::vector<double>& precond_f() const { return Pf_; }
  const std::vector<double>& precond_g() const { return Pg_; }

  /// num(f,g); optionally 2 d log num / d conj(f) and / d conj(g).
  double numerator(const TaylorPoly& f, const TaylorPoly& g, std::vector<cplx>* gf, std::vector<cplx>* gg) const {
    if (!modulus_) {
      const Eigen::VectorXcd fv = vec(f), gv = vec(g);
      const Eigen::VectorXcd Bg = B_ * gv;
      const cplx lam = fv.transpose() * Bg;
      const double a = std::abs(lam);
      if (a > 0.0) {
        if (gf) {
          gf->resize(D_ + 1);
          for (std::size_t i = 0; i <= D_; ++i) (*gf)[i] = std::conj(Bg(static_cast<Eigen::Index>(i)) / lam);
        }
        if (gg) {
          const Eigen::VectorXcd Btf = B_.transpose() * fv;
          gg->resize(D_ + 1);
          for (std::size_t i = 0; i <= D_; ++i) (*gg)[i] = std::conj(Btf(static_cast<Eigen::Index>(i)) / lam);
        }
      }
      return a;
    }
    const auto F = grid_->evaluate(f);
    const auto G = grid_->evaluate(g);
    const auto w = grid_->node_weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) acc += w[i] * std::abs(F[i]) * std::abs(G[i]) * hb_[i];
    if (acc > 0.0) {
      auto grad = [&](const std::vector<cplx>& X, const std::vector<cplx>& Y, std::vector<cplx>* out) {
        std::vector<cplx> v(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) {
          const double ax = std::abs(X[i]);
          v[i] = ax > 0.0 ? w[i] * std::abs(Y[i]) * hb_[i] * X[i] / ax : cplx{0.0};
        }
        *out = grid_->adjoint(v, D_);
        for (auto& c : *out) c /= acc;
      };
      if (gf) grad(F, G, gf);
      if (gg) grad(G, F, gg);
    }
    return acc;
  }

  double ratio(const TaylorPoly& f, const TaylorPoly& g) const {
    const double nf = Ef_.norm(f), ng = Eg_.norm(g);
    if (!(nf > 0.0) || !(ng > 0.0)) return 0.0;
    return numerator(f, g, nullptr, nullptr) / (nf * ng);
  }

  double objective(const TaylorPoly& f, const TaylorPoly& g) const {
    const double r = ratio(f, g);
    return r > 0.0 ? std::log(r) : kNegInf;
  }

  /// 2 dJ/d conj(f) (or g when `second`).
  std::vector<cplx> ascent_gradient(const TaylorPoly& f, const TaylorPoly& g, bool second) const {
    std::vector<cplx> gn, gq;
    if (!second) {
      numerator(f, g, &gn, nullptr);
      const double Q = Ef_.power_and_gradient(f, D_, gq);
      for (std::size_t m = 0; m <= D_; ++m) gn[m] -= (2.0 / p_) * gq[m] / Q;
    } else {
      numerator(f, g, nullptr, &gn);
      const double Q = Eg_.power_and_gradient(g, D_, gq);
      for (std::size_t m = 0; m <= D_; ++m) gn[m] -= (2.0 / pp_) * gq[m] / Q;
    }
    return gn;
  }

  /// One preconditioned ascent step on f (or g); returns the new objective.
  double step(TaylorPoly& f, TaylorPoly& g, double J, bool second) const {
    TaylorPoly& x = second ? g : f;
    const BesovEvaluator& E = second ? Eg_ : Ef_;
    const auto& Pc = second ? Pg_ : Pf_;
    const auto grad = ascent_gradient(f, g, second);
    if (grad.empty()) return J;
    std::vector<cplx> d(D_ + 1);
    double slope = 0.0;
    for (std::size_t m = 0; m <= D_; ++m) {
      d[m] = Pc[m] * grad[m];
      slope += Pc[m] * std::norm(grad[m]);
    }
    if (!(slope > 0.0) || !std::isfinite(slope)) return J;
    // step scale |x|^2 = 1: exact maximiser for p = 2. Both factors are kept at norm 1.
    double eta = 1.0;
    const TaylorPoly x0 = x;
    for (int bt = 0; bt < 40; ++bt, eta *= 0.5) {
      std::vector<cplx> c(D_ + 1);
      for (std::size_t m = 0; m <= D_; ++m) c[m] = x0[m] + eta * d[m];
      TaylorPoly trial(std::move(c));
      const double nrm = E.norm(trial);
      const double num = second ? numerator(f, trial, nullptr, nullptr) : numerator(trial, g, nullptr, nullptr);
      const double Jt = (num > 0.0 && nrm > 0.0) ? std::log(num / nrm) : kNegInf;
      if (Jt >= J + 1e-4 * eta * slope || (Jt > J && bt > 20)) {
        x = (1.0 / nrm) * trial;
        return Jt;
      }
    }
    x = x0;
    return J;
  }

  void normalize(TaylorPoly& f, TaylorPoly& g) const {
    const double nf = Ef_.norm(f), ng = Eg_.norm(g);
    if (nf > 0.0) f = (1.0 / nf) * f;
    if (ng > 0.0) g = (1.0 / ng) * g;
  }

  std::vector<std::pair<std::string, std::pair<TaylorPoly, TaylorPoly>>> kernel_pairs(
      const std::vector<cplx>& apexes, int& k_out) const {
    const double lambda = kernel_threshold(p_, P_.t, P_.s0, P_.s1);
    const int k = static_cast<int>(std::floor(lambda)) + 1;
    k_out = k;
    std::vector<std::pair<std::string, std::pair<TaylorPoly, TaylorPoly>>> out;
    for (const cplx z : apexes) {
      std::ostringstream os;
      os << "kernel(" << z.real() << "," << z.imag() << ")";
      out.push_back({os.str(),
                     {kernel_power(z, (1.0 + P_.t + k) / p_, D_), kernel_power(z, (1.0 + P_.t + k) / pp_, D_)}});
    }
    return out;
  }

  TaylorPoly random_seed(std::mt19937_64& rng, const std::vector<double>& Pc) const {
    std::normal_distribution<double> nd;
    std::vector<cplx> c(D_ + 1);
    for (std::size_t m = 0; m <= D_; ++m) c[m] = std::sqrt(Pc[m]) * cplx{nd(rng), nd(rng)};
    return TaylorPoly(std::move(c));
  }

 private:
  Eigen::VectorXcd vec(const TaylorPoly& f) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(D_ + 1));
    for (std::size_t i = 0; i <= D_; ++i) v(static_cast<Eigen::Index>(i)) = f[i];
    return v;
  }

  GammaParams P_;
  bool modulus_;
  std::size_t D_;
  double p_, pp_;
  BesovEvaluator Ef_, Eg_;
  std::vector<double> Pf_, Pg_;
  Eigen::MatrixXcd B_;
  std::optional<DiskGrid> grid_;
  std::vector<double> hb_;
};

GammaEstimate run_gamma(const TaylorPoly& b, const GammaParams& P, bool modulus) {
  P.validate();
  GammaEstimate est;
  est.f = TaylorPoly::constant(1.0, P.degree);
  est.g = TaylorPoly::constant(1.0, P.degree);
  if (b.is_zero()) return est;
  const Engine E(b, P, modulus);

  struct Seed {
    std::string label;
    TaylorPoly f, g;
    double J;
  };
  std::vector<Seed> kernels;
  int k = 0;
  for (auto& [label, fg] : E.kernel_pairs(apex_grid(P.apex_J, P.apex_angles), k)) {
    const double J = E.objective(fg.first, fg.second);
    kernels.push_back({label, fg.first, fg.second, J});
  }
  std::stable_sort(kernels.begin(), kernels.end(), [](const Seed& a, const Seed& c) { return a.J > c.J; });

  std::vector<Seed> starts;
  for (int i = 0; i < P.kernel_seeds && i < static_cast<int>(kernels.size()); ++i)
    if (std::isfinite(kernels[static_cast<std::size_t>(i)].J)) starts.push_back(kernels[static_cast<std::size_t>(i)]);
  for (int r = 0; r < P.restarts; ++r) {
    std::mt19937_64 rng(P.seed * 1000003ULL + static_cast<std::uint64_t>(r));
    TaylorPoly f = E.random_seed(rng, E.precond_f());
    TaylorPoly g = E.random_seed(rng, E.precond_g());
    starts.push_back({"random#" + std::to_string(r), f, g, E.objective(f, g)});
  }

  double bestJ = kernels.empty() ? kNegInf : kernels.front().J;
  if (!kernels.empty() && std::isfinite(bestJ)) {
    est.f = kernels.front().f;
    est.g = kernels.front().g;
    est.seed_label = kernels.front().label;
  }
  // |F||G| is not smooth where F or G vanish; ascent there creeps, so stop earlier
  const double tol = modulus ? std::max(P.tol, 1e-6) : P.tol;
  for (auto& s : starts) {
    TaylorPoly f = s.f, g = s.g;
    E.normalize(f, g);
    double J = s.J;
    if (!std::isfinite(J)) {
      est.trace.push_back(std::exp(bestJ));
      continue;
    }
    bool converged = false;
    for (int it = 0; it < P.max_iter; ++it) {
      const double J0 = J;
      J = E.step(f, g, J, false);
      J = E.step(f, g, J, true);
      if (J - J0 <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) est.stalled = true;
    if (J > bestJ) {
      bestJ = J;
      est.f = f;
      est.g = g;
      est.seed_label = s.label;
    }
    est.trace.push_back(std::exp(bestJ));
  }
  est.value = E.ratio(est.f, est.g);
  return est;
}

}  // namespace

nlohmann::json GammaEstimate::to_json() const {
  return {{"value", value},      {"stalled", stalled}, {"seed", seed_label},
          {"trace", trace},      {"f", coeffs_json(f)}, {"g", coeffs_json(g)}};
}

GammaEstimate gamma3(const TaylorPoly& b, const GammaParams& params) { return run_gamma(b, params, false); }

GammaEstimate gamma2(const TaylorPoly& b, const GammaParams& params) {
  if (params.s1 != -params.s0) throw DomainError("gamma2: requires s1 = -s0");
  return run_gamma(b, params, false);
}

GammaEstimate gamma1(const TaylorPoly& b, const GammaParams& params) {
  if (params.s1 != -params.s0) throw DomainError("gamma1: requires s1 = -s0");
  if (!(params.s0 > 0.0 && params.s0 < 1.0)) throw DomainError("gamma1: requires 0 < s < 1");
  return run_gamma(b, params, true);
}

double gamma_ratio(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, const GammaParams& params) {
  if (b.is_zero()) return 0.0;
  return Engine(b, params, false).ratio(f, g);
}

double gamma1_ratio(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, const GammaParams& params) {
  if (b.is_zero()) return 0.0;
  return Engine(b, params, true).ratio(f, g);
}

double gradient_check(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g, const GammaParams& params,
                      bool modulus, double h) {
  const Engine E(b, params, modulus);
  const TaylorPoly F = f.with_cap(E.degree()), G = g.with_cap(E.degree());
  double worst = 0.0;
  for (const bool second : {false, true}) {
    const auto grad = E.ascent_gradient(F, G, second);
    double scale = 0.0;
    for (const cplx c : grad) scale = std::max(scale, std::abs(c));
    const TaylorPoly& x = second ? G : F;
    for (std::size_t m = 0; m <= std::min<std::size_t>(E.degree(), 6); ++m) {
      cplx fd{0.0};
      for (const cplx dir : {cplx{1.0}, cplx{0.0, 1.0}}) {
        std::vector<cplx> cp(x.coeffs().begin(), x.coeffs().end()), cm = cp;
        cp[m] += h * dir;
        cm[m] -= h * dir;
        const TaylorPoly xp(cp), xm(cm);
        const double d = second ? (E.objective(F, xp) - E.objective(F, xm)) / (2.0 * h)
                                : (E.objective(xp, G) - E.objective(xm, G)) / (2.0 * h);
        fd += d * dir;
      }
      worst = std::max(worst, std::abs(fd - grad[m]) / scale);
    }
  }
  return worst;
}

BlochLowerBound bloch_lower_bound(const TaylorPoly& b, const GammaParams& params, const std::vector<cplx>& apexes) {
  params.validate();
  BlochLowerBound lb;
  const double lambda = kernel_threshold(params.p, params.t, params.s0, params.s1);
  lb.k = static_cast<int>(std::floor(lambda)) + 1;
  if (b.is_zero()) return lb;
  const Engine E(b, params, false);
  int k = 0;
  const auto grid = apexes.empty() ? apex_grid(params.apex_J, params.apex_angles) : apexes;
  std::size_t idx = 0;
  for (auto& [label, fg] : E.kernel_pairs(grid, k)) {
    const double r = E.ratio(fg.first, fg.second);
    if (r > lb.value) {
      lb.value = r;
      lb.apex = grid[idx];
    }
    ++idx;
  }
  return lb;
}

Regime parse_regime(const std::string& name) {
  if (name == "BF") return Regime::BF;
  if (name == "predualBinf") return Regime::predualBinf;
  if (name == "BFG") return Regime::BFG;
  throw DomainError("unknown regime '" + name + "' (expected BF, predualBinf or BFG)");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::BF: return "BF";
    case Regime::predualBinf: return "predualBinf";
    case Regime::BFG: return "BFG";
  }
  return "?";
}

namespace {

double safe_ratio(double a, double b) {
  return (a > 0.0 && b > 0.0) ? a / b : std::numeric_limits<double>::quiet_NaN();
}

void finish(EquivalenceReport& rep) {
  rep.pass = true;
  rep.spreads.assign(rep.ratio_columns.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t c = 0; c < rep.ratio_columns.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& row : rep.rows) {
      const double r = row.ratios[c];
      if (!std::isfinite(r)) continue;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi > 0.0) {
      rep.spreads[c] = hi / lo;
      if (rep.spreads[c] > rep.band) rep.pass = false;
    }
  }
  for (const auto& row : rep.rows)
    if (!row.ordering_ok) rep.pass = false;
}

}  // namespace

EquivalenceReport equivalence_report(const std::vector<NamedSymbol>& symbols, const GammaParams& params, Regime regime,
                                     const EquivalenceOptions& opt) {
  params.validate();
  EquivalenceReport rep;
  rep.regime = regime;
  rep.band = opt.band;
  const double p = params.p, pp = params.f_space().p_conj();
  FamilyOptions fam_opt = opt.family;
  fam_opt.degree = params.degree;

  if (regime == Regime::BF) {
    if (params.s1 != -params.s0) throw ConfigError("regime", "BF requires s1 = -s0");
    if (!(params.s0 > 0.0 && params.s0 < 1.0)) throw ConfigError("regime", "BF requires 0 < s < 1");
    rep.value_columns = {"CB", "Gamma1", "Gamma2"};
    rep.ratio_columns = {"Gamma2/CB", "Gamma1/CB", "Gamma2/Gamma1"};
    const SpaceParams sp = params.f_space();
    const TestFamily fam = test_family(sp, FamilyMode::mixed, fam_opt);
    for (const auto& sym : symbols) {
      EquivalenceRow row;
      row.symbol = sym.name;
      const double cb = cb_norm_estimate(sym.b, sp, fam, params.res).value;
      const GammaEstimate g1 = gamma1(sym.b, params);
      const GammaEstimate g2 = gamma2(sym.b, params);
      row.values = {cb, g1.value, g2.value};
      row.ratios = {safe_ratio(g2.value, cb), safe_ratio(g1.value, cb), safe_ratio(g2.value, g1.value)};
      if (!sym.b.is_zero()) {
        // Gamma_2 objective <= Gamma_1 objective on both witness pairs
        for (const auto* w : {&g1, &g2}) {
          const double r2 = gamma_ratio(sym.b, w->f, w->g, params);
          const double r1 = gamma1_ratio(sym.b, w->f, w->g, params);
          if (r2 > r1 * (1.0 + opt.ordering_tol)) row.ordering_ok = false;
        }
      }
      rep.rows.push_back(row);
    }
  } else if (regime == Regime::predualBinf) {
    if (!(params.s0 < 0.0 && params.s1 < 0.0)) throw ConfigError("regime", "predualBinf requires s0 < 0 and s1 < 0");
    const double sigma = -params.s0 - params.s1;
    rep.value_columns = {"Gamma3", "Bloch", "KernelLB"};
    rep.ratio_columns = {"Gamma3/Bloch"};
    for (const auto& sym : symbols) {
      EquivalenceRow row;
      row.symbol = sym.name;
      const GammaEstimate g3 = gamma3(sym.b, params);
      const double bl = bloch_norm(sym.b, sigma);
      const double lb = bloch_lower_bound(sym.b, params).value;
      row.values = {g3.value, bl, lb};
      row.ratios = {safe_ratio(g3.value, bl)};
      row.ordering_ok = lb <= g3.value * (1.0 + opt.ordering_tol);
      rep.rows.push_back(row);
    }
  } else {
    const double s = params.s0 / pp - params.s1 / p;
    if (!(params.s0 + params.s1 < 0.0)) throw ConfigError("regime", "BFG requires s0 + s1 < 0");
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("regime", "BFG requires 0 < s0/p' - s1/p < 1");
    const double t0 = params.t;
    const double t = t0 - params.s0 - params.s1;
    const double t1 = opt.t1.value_or(params.pairing_index());
    if (!(t1 > 0.0)) throw ConfigError("regime", "BFG requires t1 > 0");
    GammaParams gp = params;
    gp.t_pair = t1;
    const SpaceParams sp{p, s, t, params.weight};
    rep.value_columns = {"CB(shifted)", "Gamma3"};
    rep.ratio_columns = {"Gamma3/CB(shifted)"};
    const TestFamily fam = test_family(sp, FamilyMode::mixed, fam_opt);
    for (const auto& sym : symbols) {
      EquivalenceRow row;
      row.symbol = sym.name;
      const TaylorPoly shifted = (t - t1 == 0.0) ? sym.b : R_fractional(sym.b, t - t1, t1);
      const double cb = cb_norm_estimate(shifted, sp, fam, params.res).value;
      const GammaEstimate g3 = gamma3(sym.b, gp);
      row.values = {cb, g3.value};
      row.ratios = {safe_ratio(g3.value, cb)};
      rep.rows.push_back(row);
    }
  }
  finish(rep);
  return rep;
}

std::string EquivalenceReport::to_table() const {
  std::ostringstream os;
  os << "regime " << regime_name(regime) << ", band " << band << "\n";
  os << std::left << std::setw(16) << "symbol";
  for (const auto& c : value_columns) os << std::right << std::setw(14) << c;
  for (const auto& c : ratio_columns) os << std::right << std::setw(20) << c;
  os << std::right << std::setw(10) << "order" << "\n";
  os << std::setprecision(6);
  for (const auto& r : rows) {
    os << std::left << std::setw(16) << r.symbol;
    for (const double v : r.values) os << std::right << std::setw(14) << v;
    for (const double v : r.ratios) os << std::right << std::setw(20) << v;
    os << std::right << std::setw(10) << (r.ordering_ok ? "ok" : "VIOLATED") << "\n";
  }
  os << std::left << std::setw(16) << "max/min";
  for (std::size_t i = 0; i < value_columns.size(); ++i) os << std::setw(14) << "";
  for (const double s : spreads) os << std::right << std::setw(20) << s;
  os << "\nverdict " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string EquivalenceReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17) << "symbol";
  for (const auto& c : value_columns) os << ',' << c;
  for (const auto& c : ratio_columns) os << ',' << c;
  os << ",ordering_ok\n";
  for (const auto& r : rows) {
    os << r.symbol;
    for (const double v : r.values) os << ',' << v;
    for (const double v : r.ratios) os << ',' << v;
    os << ',' << (r.ordering_ok ? 1 : 0) << '\n';
  }
  return os.str();
}

HolderCheck holder_direction_check(const TaylorPoly& b, const TaylorPoly& f, const TaylorPoly& g,
                                   const GammaParams& params, double slack, const FamilyOptions& family) {
  params.validate();
  if (!(params.s0 > 0.0 && params.s0 < 1.0) || params.s1 != -params.s0)
    throw DomainError("holder_direction_check: requires 0 < s < 1 and s1 = -s");
  HolderCheck hc;
  const cplx lam = pairing(multiply(f, g, f.degree_cap() + g.degree_cap()), b, params.pairing_index());
  if (std::abs(lam) == 0.0) return hc;
  FamilyOptions fo = family;
  fo.degree = params.degree;
  const SpaceParams sp = params.f_space();
  hc.cb = cb_norm_estimate(b, sp, test_family(sp, FamilyMode::mixed, fo), params.res).value;
  const double nf = besov_norm(f, sp, std::nullopt, params.res).value;
  const double ng = besov_norm(g, params.g_space(), std::nullopt, params.res).value;
  const double den = hc.cb * nf * ng;
  if (!(den > 0.0)) throw DomainError("holder_direction_check: zero denominator");
  hc.ratio = std::abs(lam) / den;
  hc.pass = hc.ratio <= 1.0 + slack;
  return hc;
}

}  // namespace besov
