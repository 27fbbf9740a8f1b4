#ifndef BESOV_ERROR_HPP
#define BESOV_ERROR_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace besov {

/// Argument outside the mathematical domain of an operation (t < 0, N <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite integrand value at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::complex<double> node)
      : std::runtime_error(what), node_(node) {}
  std::complex<double> node() const noexcept { return node_; }

 private:
  std::complex<double> node_;
};

/// Valid input that the implementation deliberately does not handle (e.g. non-radial p=2 norms).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration; `path` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace besov

#endif  // BESOV_ERROR_HPP
