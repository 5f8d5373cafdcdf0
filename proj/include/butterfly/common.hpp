#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace butterfly {

using cdouble = std::complex<double>;

// Bad inputs / config; the CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Runtime numerical failures (non-convergence, singular systems); exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace butterfly
