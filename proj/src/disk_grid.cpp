#include "besov/disk_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "besov/error.hpp"

namespace besov {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// smallest 2^a 3^b >= n
std::size_t smooth_size(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t p3 = 3; p3 < 2 * n; p3 *= 3)
    for (std::size_t v = p3; v < best; v *= 2)
      if (v >= n) best = std::min(best, v);
  return best;
}

}  // namespace

struct DiskGrid::Fft {
  explicit Fft(std::size_t n) : n(n) {
    buf = fftw_alloc_complex(n);
    std::lock_guard lock(planner_mutex());
    backward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    forward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(backward);
    fftw_destroy_plan(forward);
    fftw_free(buf);
  }
  cplx* data() { return reinterpret_cast<cplx*>(buf); }

  std::size_t n;
  fftw_complex* buf;
  fftw_plan backward, forward;
  std::mutex mu;
};

DiskGrid::DiskGrid(double a, double mass_factor, const Weight& theta, std::size_t max_degree,
                   const Resolution& res) {
  if (!(a > 0.0)) throw DomainError("DiskGrid: density exponent must be > 0 (measure not finite)");
  n_ = smooth_size(std::max<std::size_t>(4 * max_degree + 16, static_cast<std::size_t>(res.angular_min)));
  const LadderRule lr = ladder_rule(a, 1.0, res.shell_depth, res.shell_points, res.end_points);
  truncated_ = lr.truncated;
  for (std::size_t i = 0; i < lr.u.size(); ++i) {
    radius_.push_back(std::sqrt(1.0 - lr.u[i]));
    ring_w_.push_back(mass_factor * lr.w[i]);
  }
  node_w_.resize(size());
  ring_rem_mean_.resize(rings());
  for (std::size_t i = 0; i < rings(); ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double rem = theta.radial() ? 1.0 : theta.remainder(node(i * n_ + j));
      node_w_[i * n_ + j] = ring_w_[i] * rem / static_cast<double>(n_);
      mean += rem;
    }
    ring_rem_mean_[i] = mean / static_cast<double>(n_);
  }
  fft_ = std::make_unique<Fft>(n_);
}

DiskGrid::~DiskGrid() = default;
DiskGrid::DiskGrid(DiskGrid&&) noexcept = default;
DiskGrid& DiskGrid::operator=(DiskGrid&&) noexcept = default;

cplx DiskGrid::node(std::size_t idx) const {
  const std::size_t i = idx / n_, j = idx % n_;
  return std::polar(radius_[i], 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_));
}

std::vector<cplx> DiskGrid::evaluate(const TaylorPoly& f) const {
  const std::size_t deg = f.degree();
  if (deg >= n_) throw DomainError("DiskGrid: polynomial degree exceeds the angular resolution");
  std::vector<cplx> out(size());
  std::lock_guard lock(fft_->mu);
  cplx* buf = fft_->data();
  for (std::size_t i = 0; i < rings(); ++i) {
    std::fill(buf, buf + n_, cplx{0.0});
    const double r = radius_[i];
    double rm = 1.0;
    for (std::size_t m = 0; m <= deg; ++m, rm *= r) buf[m] = f[m] * rm;
    fftw_execute(fft_->backward);
    std::copy(buf, buf + n_, out.begin() + static_cast<std::ptrdiff_t>(i * n_));
  }
  return out;
}

std::vector<cplx> DiskGrid::adjoint(std::span<const cplx> values, std::size_t degree) const {
  if (values.size() != size()) throw DomainError("DiskGrid::adjoint: size mismatch");
  if (degree >= n_) throw DomainError("DiskGrid::adjoint: degree exceeds the angular resolution");
  std::vector<cplx> c(degree + 1);
  std::lock_guard lock(fft_->mu);
  cplx* buf = fft_->data();
  for (std::size_t i = 0; i < rings(); ++i) {
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(i * n_),
              values.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_), buf);
    fftw_execute(fft_->forward);
    const double r = radius_[i];
    double rm = 1.0;
    for (std::size_t m = 0; m <= degree; ++m, rm *= r) c[m] += buf[m] * rm;
  }
  return c;
}

double DiskGrid::integrate(std::span<const double> values) const {
  if (values.size() != size()) throw DomainError("DiskGrid::integrate: size mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) acc += node_w_[k] * values[k];
  return acc;
}

std::vector<double> DiskGrid::monomial_moments(double q, std::size_t degree) const {
  std::vector<double> out(degree + 1, 0.0);
  for (std::size_t i = 0; i < rings(); ++i) {
    const double w = ring_w_[i] * ring_rem_mean_[i];
    const double rq = std::pow(radius_[i], q);
    double rm = 1.0;
    for (std::size_t m = 0; m <= degree; ++m, rm *= rq) out[m] += w * rm;
  }
  return out;
}

}  // namespace besov
