#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "besov/cli.hpp"
#include "besov/error.hpp"
#include "besov/symbols.hpp"

using namespace besov;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("besovlab_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "besovlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("symbol catalog") {
  const TaylorPoly lac = lacunary_symbol(3, 16);
  for (std::size_t m = 0; m <= 16; ++m) CHECK(lac[m] == cplx{(m == 1 || m == 2 || m == 4 || m == 8) ? 1.0 : 0.0});
  CHECK_THROWS_AS(lacunary_symbol(5, 16), DomainError);
  const TaylorPoly bc = branch_cut_symbol(0.3, 8);
  // (1-z)^{-g}: c_m = (g)_m / m!
  CHECK(std::abs(bc[2] - 0.3 * 1.3 / 2.0) < 1e-15);
  CHECK_THROWS_AS(branch_cut_symbol(-0.1), DomainError);
  CHECK_THROWS_AS(point_kernel_symbol(1.0, 2.0), DomainError);
  CHECK(default_symbol_family().size() == 4);

  const fs::path d = scratch_dir("coeffs");
  const TaylorPoly f = kernel_power(cplx{0.3, 0.2}, 1.7, 20);
  write_coefficient_file(f, d / "f.csv");
  const TaylorPoly back = read_coefficient_file(d / "f.csv", 20);
  for (std::size_t m = 0; m <= 20; ++m) CHECK(back[m] == f[m]);
  std::ofstream(d / "bad.csv") << "0,1\n";
  CHECK_THROWS_AS(read_coefficient_file(d / "bad.csv"), DomainError);
  std::ofstream(d / "far.csv") << "300,1,0\n";
  CHECK_THROWS_AS(read_coefficient_file(d / "far.csv", 256), DomainError);
}

TEST_CASE("good config passes and writes artifacts") {
  const fs::path d = scratch_dir("good");
  const auto cfg = write_config(d, "bloch.json", R"({
    "command": "bloch-norm",
    "bloch": {"sigma": 0},
    "symbols": [{"kind": "lacunary", "depth": 6}, {"kind": "monomial", "K": 8}, {"kind": "zero"}]
  })");
  const Run r = run_cli({"bloch-norm", "--config", cfg.string(), "--out", (d / "out").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict PASS") != std::string::npos);
  CHECK(fs::exists(d / "out" / "report.csv"));
  CHECK(fs::exists(d / "out" / "report.txt"));
  const json echo = json::parse(slurp(d / "out" / "config.json"));
  CHECK(echo["seed"] == 1);
  CHECK(echo["resolution"] == "default");
  CHECK(slurp(d / "out" / "report.csv").find("symbol,bloch_norm,sigma,k\nlacunary6,") == 0);
}

TEST_CASE("trivial weight has Bekolle constant one") {
  const Report rep = run_experiment("bekolle-constant", json::parse(R"({"bekolle": {"J": 4, "weight": "one"}})"));
  CHECK(rep.pass);
  CHECK(std::stod(rep.rows[1][2]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("failing config exits 1") {
  const fs::path d = scratch_dir("fail");
  const auto cfg = write_config(d, "estp.json", R"({"estp": {"q": 0, "N": 1, "M": 2, "band": 1.2}})");
  const Run r = run_cli({"estp-check", "--config", cfg.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("verdict FAIL") != std::string::npos);
  // numerical domain errors also exit 1
  const auto dom = write_config(d, "dom.json", R"({"estp": {"q": 3}})");
  CHECK(run_cli({"estp-check", "--config", dom.string()}).code == 1);
}

TEST_CASE("malformed configs exit 2 and name the path") {
  const fs::path d = scratch_dir("bad");
  const auto unknown = write_config(d, "u.json", R"({"bloch": {"sigma": 0, "sigmaa": 1}})");
  Run r = run_cli({"bloch-norm", "--config", unknown.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("bloch.sigmaa") != std::string::npos);

  const auto type = write_config(d, "t.json", R"({"symbols": [{"kind": "monomial", "K": "eight"}]})");
  r = run_cli({"bloch-norm", "--config", type.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("symbols[0].K") != std::string::npos);

  const auto syntax = write_config(d, "s.json", "{\"bloch\": ");
  CHECK(run_cli({"bloch-norm", "--config", syntax.string()}).code == 2);

  const auto weight = write_config(d, "w.json", R"({"space": {"weight": "gaussian:1"}})");
  r = run_cli({"besov-norm", "--config", weight.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("space.weight") != std::string::npos);

  const auto regime = write_config(d, "r.json", R"({"gamma": {"s0": 1.5, "s1": -1.5, "degree": 8}, "report": {"regime": "BF"}})");
  r = run_cli({"equiv-report", "--config", regime.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("0 < s < 1") != std::string::npos);

  const auto other = write_config(d, "o.json", R"({"command": "gamma"})");
  CHECK(run_cli({"bloch-norm", "--config", other.string()}).code == 2);
  CHECK(run_cli({"bloch-norm", "--resolution", "ultra"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("gamma of the zero symbol is zero and reruns are bitwise identical") {
  const fs::path d = scratch_dir("gamma");
  const auto cfg = write_config(d, "g.json", R"({
    "gamma": {"p": 3, "s0": -0.5, "s1": -0.5, "degree": 16, "apex_J": 4, "restarts": 1},
    "symbols": [{"kind": "zero"}, {"kind": "branch_cut", "gamma": 0.3}]
  })");
  Run r = run_cli({"gamma", "--config", cfg.string(), "--out", (d / "a").string(), "--seed", "7"});
  CHECK(r.code == 0);
  r = run_cli({"gamma", "--config", cfg.string(), "--out", (d / "b").string(), "--seed", "7"});
  CHECK(r.code == 0);
  const std::string csv = slurp(d / "a" / "report.csv");
  CHECK(csv.find("\nzero,0,") != std::string::npos);
  CHECK(csv == slurp(d / "b" / "report.csv"));
  CHECK(slurp(d / "a" / "witness_branch0.3.json") == slurp(d / "b" / "witness_branch0.3.json"));
  CHECK(json::parse(slurp(d / "a" / "config.json"))["seed"] == 7);
}
