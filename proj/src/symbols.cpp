#include "besov/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "besov/error.hpp"

namespace besov {

TaylorPoly monomial_symbol(std::size_t K, std::size_t cap) {
  if (K > cap) throw DomainError("monomial degree exceeds the degree cap");
  return TaylorPoly::monomial(K, 1.0, cap);
}

TaylorPoly lacunary_symbol(int depth, std::size_t cap) {
  if (depth < 0 || depth > 62 || (std::size_t{1} << depth) > cap)
    throw DomainError("lacunary depth needs 2^depth <= degree cap");
  std::vector<cplx> c(cap + 1, cplx{0.0});
  for (int k = 0; k <= depth; ++k) c[std::size_t{1} << k] = 1.0;
  return TaylorPoly(std::move(c));
}

TaylorPoly branch_cut_symbol(double gamma, std::size_t cap) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("branch cut exponent must be > 0");
  return kernel_power(1.0, gamma, cap);
}

TaylorPoly point_kernel_symbol(cplx z, double a, std::size_t cap) {
  if (!(std::abs(z) < 1.0)) throw DomainError("kernel apex must lie in the open disk");
  if (!std::isfinite(a)) throw DomainError("kernel exponent must be finite");
  return kernel_power(z, a, cap);
}

TaylorPoly read_coefficient_file(const std::filesystem::path& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open coefficient file " + path.string());
  std::vector<cplx> c(cap + 1, cplx{0.0});
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long m = -1;
    double re = 0.0, im = 0.0;
    std::string rest;
    if (!(ls >> m >> re >> im) || (ls >> rest) || m < 0 || !std::isfinite(re) || !std::isfinite(im))
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected 'm,re,im'");
    if (static_cast<std::size_t>(m) > cap)
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": index beyond degree cap");
    c[static_cast<std::size_t>(m)] = {re, im};
  }
  return TaylorPoly(std::move(c));
}

void write_coefficient_file(const TaylorPoly& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << "# m,re,im\n" << std::setprecision(17);
  for (std::size_t m = 0; m <= f.degree_cap(); ++m)
    if (f[m] != cplx{0.0}) out << m << ',' << f[m].real() << ',' << f[m].imag() << '\n';
}

std::vector<NamedSymbol> default_symbol_family(std::size_t cap) {
  return {{"z", monomial_symbol(1, cap)},
          {"z^8", monomial_symbol(8, cap)},
          {"lacunary8", lacunary_symbol(8, cap)},
          {"branch0.3", branch_cut_symbol(0.3, cap)}};
}

}  // namespace besov
