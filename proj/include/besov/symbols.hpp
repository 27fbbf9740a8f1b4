#ifndef BESOV_SYMBOLS_HPP
#define BESOV_SYMBOLS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "besov/estimators.hpp"
#include "besov/taylor.hpp"

namespace besov {

TaylorPoly monomial_symbol(std::size_t K, std::size_t cap = kDefaultDegreeCap);
/// sum_{k=0}^{depth} z^{2^k}; requires 2^depth <= cap.
TaylorPoly lacunary_symbol(int depth, std::size_t cap = kDefaultDegreeCap);
/// (1-z)^{-gamma}, gamma > 0.
TaylorPoly branch_cut_symbol(double gamma, std::size_t cap = kDefaultDegreeCap);
/// Point-mass kernel (1 - w conj(z))^{-a}, |z| < 1.
TaylorPoly point_kernel_symbol(cplx z, double a, std::size_t cap = kDefaultDegreeCap);

/**
 * Coefficients from a text file, one "m,re,im" line per nonzero coefficient.
 * Blank lines and lines starting with '#' are skipped; m > cap is an error.
 */
TaylorPoly read_coefficient_file(const std::filesystem::path& path, std::size_t cap = kDefaultDegreeCap);
void write_coefficient_file(const TaylorPoly& f, const std::filesystem::path& path);

/// z, z^8, lacunary depth 8, (1-z)^{-0.3}.
std::vector<NamedSymbol> default_symbol_family(std::size_t cap = kDefaultDegreeCap);

}  // namespace besov

#endif  // BESOV_SYMBOLS_HPP
