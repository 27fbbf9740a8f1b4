#ifndef BESOV_DISK_GRID_HPP
#define BESOV_DISK_GRID_HPP

#include <memory>
#include <span>
#include <vector>

#include "besov/quadrature.hpp"
#include "besov/weights.hpp"

namespace besov {

/**
 * Ring grid for int_D F(z) c (1-|z|^2)^{a-1} theta_rem(z) dnu(z), where theta_rem is the
 * non-radial factor of a catalog weight. Polynomials are evaluated on each ring by an FFT,
 * so a grid built for degree D evaluates any polynomial of degree below angles() exactly.
 */
class DiskGrid {
 public:
  DiskGrid(double a, double mass_factor, const Weight& theta, std::size_t max_degree,
           const Resolution& res = Resolution::standard());
  ~DiskGrid();
  DiskGrid(DiskGrid&&) noexcept;
  DiskGrid& operator=(DiskGrid&&) noexcept;

  std::size_t rings() const noexcept { return radius_.size(); }
  std::size_t angles() const noexcept { return n_; }
  std::size_t size() const noexcept { return radius_.size() * n_; }
  bool truncated() const noexcept { return truncated_; }
  double radius(std::size_t ring) const { return radius_[ring]; }
  /// Ring weight; node weights are ring_weight / angles() times the remainder factor.
  double ring_weight(std::size_t ring) const { return ring_w_[ring]; }
  std::span<const double> node_weights() const noexcept { return node_w_; }
  cplx node(std::size_t idx) const;

  /// Values of f at all nodes, ring-major.
  std::vector<cplx> evaluate(const TaylorPoly& f) const;
  /// c_m = sum_idx v_idx conj(z_idx)^m, m = 0..degree.
  std::vector<cplx> adjoint(std::span<const cplx> values, std::size_t degree) const;
  /// sum_idx w_idx v_idx.
  double integrate(std::span<const double> values) const;
  /// int |z^m|^q theta_rem, m = 0..degree.
  std::vector<double> monomial_moments(double q, std::size_t degree) const;

 private:
  struct Fft;
  std::size_t n_ = 0;
  bool truncated_ = false;
  std::vector<double> radius_, ring_w_, node_w_, ring_rem_mean_;
  std::unique_ptr<Fft> fft_;
};

}  // namespace besov

#endif  // BESOV_DISK_GRID_HPP
