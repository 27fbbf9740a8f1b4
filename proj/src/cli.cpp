#include "besov/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "besov/error.hpp"
#include "besov/estimators.hpp"
#include "besov/hankel.hpp"
#include "besov/quadrature.hpp"
#include "besov/spaces.hpp"
#include "besov/symbols.hpp"
#include "besov/weights.hpp"

namespace besov {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& cli_commands() {
  static const std::vector<std::string> cmds = {"bekolle-constant", "besov-norm", "cb-norm",   "bloch-norm", "hankel-norm",
                                                "gamma",            "equiv-report", "cp-check", "estp-check"};
  return cmds;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

/// Reads one JSON object, remembers which keys were consumed and rejects the rest.
class Section {
 public:
  Section(const json* j, std::string path) : path_(std::move(path)) {
    static const json empty = json::object();
    if (j && !j->is_object()) throw ConfigError(path_, "expected an object");
    j_ = j ? j : &empty;
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_->contains(key); }

  const json* raw(const std::string& key) {
    used_.insert(key);
    auto it = j_->find(key);
    return it == j_->end() ? nullptr : &*it;
  }

  std::optional<double> opt_number(const std::string& key) {
    const json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(at(key), "expected a finite number");
    return d;
  }
  double number(const std::string& key, double def) { return opt_number(key).value_or(def); }
  double required_number(const std::string& key) {
    auto v = opt_number(key);
    if (!v) throw ConfigError(at(key), "required");
    return *v;
  }
  long long integer(const std::string& key, long long def, long long lo = 0) {
    const json* v = raw(key);
    if (!v) return def;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    const long long i = v->get<long long>();
    if (i < lo) throw ConfigError(at(key), "must be >= " + std::to_string(lo));
    return i;
  }
  std::string string(const std::string& key, const std::string& def) {
    const json* v = raw(key);
    if (!v) return def;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }
  bool boolean(const std::string& key, bool def) {
    const json* v = raw(key);
    if (!v) return def;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v->get<bool>();
  }
  std::vector<double> numbers(const std::string& key, const std::vector<double>& def) {
    const json* v = raw(key);
    if (!v) return def;
    if (!v->is_array() || v->empty()) throw ConfigError(at(key), "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) throw ConfigError(at(key), "expected a non-empty array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  Section sub(const std::string& key) { return Section(raw(key), at(key)); }

  void finish() const {
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (!used_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
  }

 private:
  const json* j_;
  std::string path_;
  std::set<std::string> used_;
};

template <class F>
auto as_config(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

Weight read_weight(Section& s, const std::string& key = "weight") {
  const json* v = s.raw(key);
  if (!v) return Weight::one();
  const std::string path = s.at(key);
  if (v->is_string()) return as_config(path, [&] { return Weight::parse(v->get<std::string>()); });
  Section w(v, path);
  const std::string label = w.string("label", "one");
  const auto params = w.numbers("params", {0.0});
  const bool has_params = w.has("params");
  w.finish();
  return as_config(path, [&] { return Weight::from_catalog(label, has_params ? params : std::vector<double>{}); });
}

SpaceParams read_space(Section s) {
  SpaceParams sp;
  sp.p = s.number("p", 2.0);
  sp.s = s.number("s", 0.5);
  sp.t = s.number("t", 1.0);
  sp.weight = read_weight(s);
  s.finish();
  as_config(s.path(), [&] {
    sp.validate();
    return 0;
  });
  return sp;
}

struct Common {
  std::uint64_t seed = 1;
  std::string resolution_name = "default";
  Resolution res;
  std::size_t cap = kDefaultDegreeCap;
};

GammaParams read_gamma(Section s, const Common& c, std::string* variant) {
  GammaParams gp;
  gp.p = s.number("p", gp.p);
  gp.s0 = s.number("s0", gp.s0);
  gp.s1 = s.number("s1", gp.s1);
  gp.t = s.number("t", gp.t);
  gp.t_pair = s.opt_number("t_pair");
  gp.weight = read_weight(s);
  gp.degree = static_cast<std::size_t>(s.integer("degree", 128, 1));
  gp.max_iter = static_cast<int>(s.integer("max_iter", gp.max_iter, 1));
  gp.tol = s.number("tol", gp.tol);
  gp.restarts = static_cast<int>(s.integer("restarts", gp.restarts));
  gp.kernel_seeds = static_cast<int>(s.integer("kernel_seeds", gp.kernel_seeds));
  gp.apex_J = static_cast<int>(s.integer("apex_J", gp.apex_J));
  gp.apex_angles = static_cast<int>(s.integer("apex_angles", gp.apex_angles, 1));
  const std::string v = s.string("variant", "gamma3");
  if (variant) *variant = v;
  if (v != "gamma1" && v != "gamma2" && v != "gamma3")
    throw ConfigError(s.at("variant"), "expected gamma1, gamma2 or gamma3");
  s.finish();
  gp.seed = c.seed;
  gp.res = c.res;
  as_config(s.path(), [&] {
    gp.validate();
    return 0;
  });
  if (2 * gp.degree > c.cap) throw ConfigError(s.at("degree"), "2 * degree must not exceed degree_cap");
  return gp;
}

FamilyOptions read_family(Section s, const Common& c, std::size_t degree, FamilyMode* mode) {
  FamilyOptions fo;
  const std::string m = s.string("mode", "mixed");
  *mode = as_config(s.at("mode"), [&] { return parse_family_mode(m); });
  fo.J = static_cast<int>(s.integer("J", fo.J));
  fo.angles = static_cast<int>(s.integer("angles", fo.angles, 1));
  fo.random_count = static_cast<std::size_t>(s.integer("random_count", static_cast<long long>(fo.random_count)));
  fo.random_degree = static_cast<std::size_t>(s.integer("random_degree", static_cast<long long>(fo.random_degree)));
  fo.s_dual = s.opt_number("s_dual");
  fo.degree = static_cast<std::size_t>(s.integer("degree", static_cast<long long>(degree), 1));
  s.finish();
  fo.seed = c.seed;
  return fo;
}

std::string short_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<NamedSymbol> read_symbols(const json* list, const Common& c, const fs::path& base) {
  if (!list) return default_symbol_family(c.cap);
  if (!list->is_array() || list->empty()) throw ConfigError("symbols", "expected a non-empty array");
  std::vector<NamedSymbol> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < list->size(); ++i) {
    Section s(&(*list)[i], "symbols[" + std::to_string(i) + "]");
    const std::string kind = s.string("kind", "");
    NamedSymbol sym;
    std::string name;
    as_config(s.path(), [&] {
      if (kind == "monomial") {
        const auto K = s.integer("K", 1);
        sym.b = monomial_symbol(static_cast<std::size_t>(K), c.cap);
        name = K == 1 ? "z" : "z^" + std::to_string(K);
      } else if (kind == "lacunary") {
        const auto d = s.integer("depth", 8);
        sym.b = lacunary_symbol(static_cast<int>(d), c.cap);
        name = "lacunary" + std::to_string(d);
      } else if (kind == "branch_cut") {
        const double g = s.required_number("gamma");
        sym.b = branch_cut_symbol(g, c.cap);
        name = "branch" + short_num(g);
      } else if (kind == "kernel") {
        const auto z = s.numbers("z", {0.0, 0.0});
        if (z.size() != 2) throw ConfigError(s.at("z"), "expected [re, im]");
        const double a = s.required_number("a");
        sym.b = point_kernel_symbol({z[0], z[1]}, a, c.cap);
        name = "kernel(" + short_num(z[0]) + "," + short_num(z[1]) + ";" + short_num(a) + ")";
      } else if (kind == "file") {
        const std::string p = s.string("path", "");
        if (p.empty()) throw ConfigError(s.at("path"), "required");
        const fs::path fp = fs::path(p).is_absolute() ? fs::path(p) : base / p;
        sym.b = read_coefficient_file(fp, c.cap);
        name = fs::path(p).stem().string();
      } else if (kind == "zero") {
        sym.b = TaylorPoly::zero(c.cap);
        name = "zero";
      } else {
        throw ConfigError(s.at("kind"), "expected monomial, lacunary, branch_cut, kernel, file or zero");
      }
      return 0;
    });
    sym.name = s.string("name", name);
    s.finish();
    if (!names.insert(sym.name).second) throw ConfigError(s.at("name"), "duplicate symbol name '" + sym.name + "'");
    out.push_back(std::move(sym));
  }
  return out;
}

std::string file_safe(const std::string& s) {
  std::string o;
  for (const char ch : s) o += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-') ? ch : '_';
  return o;
}

/// Default 20-point grid: radii 0.1..0.9 by 0.2, four arguments each, staggered.
std::vector<cplx> cp_grid() {
  std::vector<cplx> z;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 4; ++k) z.push_back(std::polar(0.1 + 0.2 * i, M_PI * (0.5 * k + 0.1 * i)));
  return z;
}

struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
};

/// Every branch reads its whole config first and calls `parsed()` before computing anything.
Report dispatch(const std::string& command, Section& root, const Common& c, const fs::path& base, Artifacts& art) {
  Report rep;
  rep.command = command;
  auto symbols_if = [&]() { return read_symbols(root.raw("symbols"), c, base); };

  if (command == "bekolle-constant") {
    Section s = root.sub("bekolle");
    const double p = s.number("p", 2.0), t = s.number("t", 1.0);
    const Weight theta = read_weight(s);
    const int J = static_cast<int>(s.integer("J", 10, 2));
    const int angles = static_cast<int>(s.integer("angles", 8, 1));
    const double tol = s.number("stability_tol", 0.05);
    s.finish();
    if (!(p > 1.0)) throw ConfigError(s.at("p"), "p must be > 1");
    root.finish();
    const auto lo = bekolle_constant(theta, p, t, J - 2, c.res, angles);
    const auto hi = bekolle_constant(theta, p, t, J, c.res, angles);
    const double change = std::abs(hi.constant_estimate - lo.constant_estimate) / lo.constant_estimate;
    rep.columns = {"weight", "J", "estimate"};
    rep.rows = {{theta.spec(), std::to_string(J - 2), fmt(lo.constant_estimate)},
                {theta.spec(), std::to_string(J), fmt(hi.constant_estimate)}};
    rep.notes.push_back("relative change J-2 -> J: " + fmt(change) + " (stability tolerance " + fmt(tol) + ")");
    rep.pass = std::isfinite(hi.constant_estimate) && change <= tol;
    std::ostringstream csv;
    csv << "re,im,mu_ratio,mu_dual_ratio,value\n" << std::setprecision(17);
    for (const auto& a : hi.per_apex)
      csv << a.apex.real() << ',' << a.apex.imag() << ',' << a.mu_ratio << ',' << a.mu_dual_ratio << ',' << a.value << '\n';
    art.files.push_back({"apex_values.csv", csv.str()});
    return rep;
  }

  if (command == "besov-norm") {
    const SpaceParams sp = read_space(root.sub("space"));
    Section s = root.sub("norm");
    const auto k = s.raw("k") ? std::optional<int>(static_cast<int>(s.integer("k", 0))) : std::nullopt;
    const double tol = s.number("rel_tol", 1e-6);
    s.finish();
    const auto syms = symbols_if();
    root.finish();
    rep.columns = {"symbol", "norm", "error_proxy", "k"};
    for (const auto& sym : syms) {
      const NormReport nr = besov_norm(sym.b, sp, k, c.res);
      rep.rows.push_back({sym.name, fmt(nr.value), fmt(nr.quadrature_error_proxy), std::to_string(nr.k)});
      if (!std::isfinite(nr.value) || nr.quadrature_error_proxy > tol * std::max(nr.value, 1e-300)) rep.pass = false;
    }
    rep.notes.push_back("space " + sp.describe() + ", relative error tolerance " + fmt(tol));
    return rep;
  }

  if (command == "cb-norm") {
    const SpaceParams sp = read_space(root.sub("space"));
    Section s = root.sub("cb");
    const auto order = s.raw("order") ? std::optional<int>(static_cast<int>(s.integer("order", 1, 1))) : std::nullopt;
    const double tol = s.number("rel_tol", 1e-8);
    s.finish();
    FamilyMode mode;
    const FamilyOptions fo = read_family(root.sub("family"), c, 128, &mode);
    const auto syms = symbols_if();
    root.finish();
    const TestFamily fam = test_family(sp, mode, fo);
    rep.columns = {"symbol", "cb_estimate", "carleson_constant", "best_member", "order"};
    for (const auto& sym : syms) {
      const CBEstimate cb = cb_norm_estimate(sym.b, sp, fam, c.res, order);
      const double car = carleson_constant(sym.b, sp, fam, c.res, order);
      rep.rows.push_back({sym.name, fmt(cb.value), fmt(car), fam.labels.at(cb.best_index), std::to_string(cb.order)});
      if (!std::isfinite(cb.value) || std::abs(cb.value - car) > tol * std::max(cb.value, 1e-300)) rep.pass = false;
    }
    rep.notes.push_back("space " + sp.describe() + ", family size " + std::to_string(fam.size()) +
                        ", multiplier and Carleson forms agree to " + fmt(tol));
    art.files.push_back({"family.json", fam.to_json().dump()});
    return rep;
  }

  if (command == "bloch-norm") {
    Section s = root.sub("bloch");
    const double sigma = s.number("sigma", 0.0);
    const int jmax = static_cast<int>(s.integer("jmax", 12));
    const int angles = static_cast<int>(s.integer("angles", 16, 1));
    s.finish();
    const auto syms = symbols_if();
    root.finish();
    rep.columns = {"symbol", "bloch_norm", "sigma", "k"};
    for (const auto& sym : syms) {
      const double v = bloch_norm(sym.b, sigma, bloch_radii(jmax), angles);
      rep.rows.push_back({sym.name, fmt(v), fmt(sigma), std::to_string(k_plus(sigma))});
      if (!std::isfinite(v)) rep.pass = false;
    }
    return rep;
  }

  if (command == "hankel-norm") {
    const SpaceParams sp = read_space(root.sub("space"));
    Section s = root.sub("hankel");
    const auto D = static_cast<std::size_t>(s.integer("degree", 128, 1));
    const double tol = s.number("tol", 1e-12);
    const bool write_matrix = s.boolean("write_matrix", true);
    s.finish();
    if (sp.p != 2.0) throw ConfigError("space.p", "hankel-norm requires p = 2");
    if (2 * D > c.cap) throw ConfigError("hankel.degree", "2 * degree must not exceed degree_cap");
    const auto syms = symbols_if();
    root.finish();
    rep.columns = {"symbol", "hankel_norm", "iterations", "converged"};
    for (const auto& sym : syms) {
      const auto r = hankel_norm_p2_detail(sym.b, sp.s, sp.t, sp.weight, D, tol);
      rep.rows.push_back({sym.name, fmt(r.value), std::to_string(r.iterations), r.converged ? "yes" : "no"});
      if (!r.converged) rep.pass = false;
      if (write_matrix) {
        std::ostringstream os;
        write_csv(hankel_matrix(sym.b, sp.t, D), os);
        art.files.push_back({"hankel_" + file_safe(sym.name) + ".csv", os.str()});
      }
    }
    return rep;
  }

  if (command == "gamma") {
    std::string variant;
    const GammaParams gp = read_gamma(root.sub("gamma"), c, &variant);
    const auto syms = symbols_if();
    root.finish();
    rep.columns = {"symbol", variant, "seed", "stalled"};
    for (const auto& sym : syms) {
      const GammaEstimate g = variant == "gamma1"   ? gamma1(sym.b, gp)
                              : variant == "gamma2" ? gamma2(sym.b, gp)
                                                    : gamma3(sym.b, gp);
      rep.rows.push_back({sym.name, fmt(g.value), g.seed_label.empty() ? "-" : g.seed_label, g.stalled ? "yes" : "no"});
      if (!std::isfinite(g.value)) rep.pass = false;
      art.files.push_back({"witness_" + file_safe(sym.name) + ".json", g.to_json().dump()});
    }
    return rep;
  }

  if (command == "equiv-report") {
    const GammaParams gp = read_gamma(root.sub("gamma"), c, nullptr);
    Section s = root.sub("report");
    EquivalenceOptions eo;
    const std::string regime_s = s.string("regime", "BF");
    const Regime regime = as_config(s.at("regime"), [&] { return parse_regime(regime_s); });
    eo.band = s.number("band", eo.band);
    eo.ordering_tol = s.number("ordering_tol", eo.ordering_tol);
    eo.t1 = s.opt_number("t1");
    s.finish();
    FamilyMode mode;
    eo.family = read_family(root.sub("family"), c, gp.degree, &mode);
    const auto syms = symbols_if();
    root.finish();
    const EquivalenceReport er = equivalence_report(syms, gp, regime, eo);
    rep.columns = {"symbol"};
    for (const auto& col : er.value_columns) rep.columns.push_back(col);
    for (const auto& col : er.ratio_columns) rep.columns.push_back(col);
    rep.columns.push_back("ordering");
    for (const auto& row : er.rows) {
      std::vector<std::string> r{row.symbol};
      for (const double v : row.values) r.push_back(fmt(v));
      for (const double v : row.ratios) r.push_back(std::isfinite(v) ? fmt(v) : "skipped");
      r.push_back(row.ordering_ok ? "ok" : "violated");
      rep.rows.push_back(std::move(r));
    }
    std::string spreads = "max/min per ratio column:";
    for (std::size_t i = 0; i < er.spreads.size(); ++i) spreads += " " + er.ratio_columns[i] + "=" + fmt(er.spreads[i]);
    rep.notes.push_back("regime " + regime_name(regime) + ", band " + fmt(er.band));
    rep.notes.push_back(spreads);
    rep.pass = er.pass;
    return rep;
  }

  if (command == "cp-check") {
    Section s = root.sub("cp");
    const auto Ns = s.numbers("N", {1.0, 2.0});
    const double tol = s.number("tol", 2e-3);
    const std::string fn = s.string("function", "both");
    s.finish();
    struct Fn {
      std::string name;
      PointFn phi, dbar;
    };
    std::vector<Fn> fns;
    // C^1 on the closed disk and zero on the circle, u = 1 - |w|^2
    if (fn == "both" || fn == "pole")
      fns.push_back({"u^1.5/(1.2-conj w)", [](cplx w) { return std::pow(1.0 - std::norm(w), 1.5) / (1.2 - std::conj(w)); },
                     [](cplx w) {
                       const double u = 1.0 - std::norm(w);
                       const cplx q = 1.2 - std::conj(w);
                       return -1.5 * w * std::sqrt(u) / q + std::pow(u, 1.5) / (q * q);
                     }});
    if (fn == "both" || fn == "pole_w")
      fns.push_back({"u^1.5 w/(1.2+conj w)",
                     [](cplx w) { return std::pow(1.0 - std::norm(w), 1.5) * w / (1.2 + std::conj(w)); },
                     [](cplx w) {
                       const double u = 1.0 - std::norm(w);
                       const cplx q = 1.2 + std::conj(w);
                       return -1.5 * w * w * std::sqrt(u) / q - std::pow(u, 1.5) * w / (q * q);
                     }});
    if (fns.empty()) throw ConfigError("cp.function", "expected pole, pole_w or both");
    root.finish();
    rep.columns = {"function", "N", "max_residual"};
    for (const auto& f : fns)
      for (const double N : Ns) {
        double worst = 0.0;
        for (const cplx z : cp_grid()) worst = std::max(worst, cauchy_pompeiu_residual(f.phi, f.dbar, N, z, c.res));
        rep.rows.push_back({f.name, fmt(N), fmt(worst)});
        if (!(worst <= tol)) rep.pass = false;
      }
    rep.notes.push_back("20-point grid, tolerance " + fmt(tol));
    return rep;
  }

  if (command == "estp-check") {
    Section s = root.sub("estp");
    const double q = s.number("q", 0.0), N = s.number("N", 1.0), M = s.number("M", 2.0);
    const auto radii = s.numbers("radii", {0.5, 0.9, 0.99});
    const double band = s.number("band", 10.0);
    s.finish();
    std::vector<cplx> zs;
    for (const double r : radii) {
      if (!(r >= 0.0 && r < 1.0)) throw ConfigError("estp.radii", "radii must lie in [0, 1)");
      zs.push_back(r);
    }
    root.finish();
    const auto ratios = estP_ratio(q, N, M, zs, c.res);
    rep.columns = {"radius", "ratio"};
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      rep.rows.push_back({fmt(radii[i]), fmt(ratios[i])});
      lo = std::min(lo, ratios[i]);
      hi = std::max(hi, ratios[i]);
    }
    rep.notes.push_back("max/min " + fmt(hi / lo) + " (band " + fmt(band) + ")");
    rep.pass = lo > 0.0 && hi / lo <= band;
    return rep;
  }

  throw ConfigError("command", "unknown command '" + command + "'");
}

}  // namespace

std::string Report::to_table() const {
  std::vector<std::size_t> w(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) w[i] = columns[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  std::ostringstream os;
  os << command << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << columns[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << r[i];
    os << "\n";
  }
  for (const auto& n : notes) os << n << "\n";
  os << "runtime " << std::fixed << std::setprecision(2) << runtime_seconds << " s\n";
  os << "verdict " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string Report::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const bool quote = r[i].find_first_of(",\"") != std::string::npos;
      std::string cell = r[i];
      if (quote) {
        std::string q = "\"";
        for (const char ch : cell) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        cell = q + "\"";
      }
      os << (i ? "," : "") << cell;
    }
    os << "\n";
  }
  return os.str();
}

Report run_experiment(const std::string& command, const json& config, const CliOverrides& ov, const fs::path& base) {
  const auto start = std::chrono::steady_clock::now();
  Section root(&config, "");
  const std::string cfg_cmd = root.string("command", command);
  if (!command.empty() && cfg_cmd != command)
    throw ConfigError("command", "config says '" + cfg_cmd + "' but '" + command + "' was requested");
  const std::string cmd = command.empty() ? cfg_cmd : command;
  if (std::find(cli_commands().begin(), cli_commands().end(), cmd) == cli_commands().end())
    throw ConfigError("command", "unknown command '" + cmd + "'");

  Common c;
  c.seed = static_cast<std::uint64_t>(root.integer("seed", 1));
  if (ov.seed) c.seed = *ov.seed;
  c.resolution_name = root.string("resolution", "default");
  if (ov.resolution) c.resolution_name = *ov.resolution;
  c.res = as_config("resolution", [&] { return Resolution::from_name(c.resolution_name); });
  c.cap = static_cast<std::size_t>(root.integer("degree_cap", static_cast<long long>(kDefaultDegreeCap), 1));
  std::optional<fs::path> out;
  if (root.has("out")) out = base / root.string("out", "");
  if (ov.out) out = *ov.out;

  Artifacts art;
  Report rep = dispatch(cmd, root, c, base, art);

  json echo = config;
  echo["command"] = cmd;
  echo["seed"] = c.seed;
  echo["resolution"] = c.resolution_name;
  echo["degree_cap"] = c.cap;
  if (out) echo["out"] = out->string();
  rep.config = echo;
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (out) {
    fs::create_directories(*out);
    auto write = [&](const std::string& name, const std::string& body) {
      std::ofstream f(*out / name, std::ios::binary);
      if (!f) throw DomainError("cannot write " + (*out / name).string());
      f << body;
    };
    write("report.txt", rep.to_table());
    write("report.csv", rep.to_csv());
    write("config.json", echo.dump(2) + "\n");
    for (const auto& [name, body] : art.files) write(name, body);
  }
  return rep;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for weighted holomorphic Besov spaces on the disk"};
  app.require_subcommand(1);
  std::string config_path, out_dir, resolution;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "directory for report.txt, report.csv, config.json and artifacts");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--resolution", resolution, "quadrature preset")->check(CLI::IsMember({"low", "default", "high"}));
  static const char* help[] = {"Bekolle constant of a weight on the apex grid", "Besov norms of symbols",
                               "CB norm lower bounds over a test family", "Bloch norms of symbols",
                               "p = 2 Hankel operator norms", "bilinear form norm estimates",
                               "ratio-band report for one regime", "Cauchy-Pompeiu residuals",
                               "kernel estimate ratios near the boundary"};
  for (std::size_t i = 0; i < cli_commands().size(); ++i) app.add_subcommand(cli_commands()[i], help[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  CliOverrides ov;
  if (*seed_opt) ov.seed = seed;
  if (!resolution.empty()) ov.resolution = resolution;
  if (!out_dir.empty()) ov.out = out_dir;

  try {
    json config = json::object();
    fs::path base = ".";
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        config = json::parse(in, nullptr, true, true);
      } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
      }
      base = fs::path(config_path).parent_path();
      if (base.empty()) base = ".";
    }
    const Report rep = run_experiment(command, config, ov, base);
    out << rep.to_table();
    return rep.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return 1;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << " at z = " << e.node() << "\n";
    return 1;
  }
}

}  // namespace besov
