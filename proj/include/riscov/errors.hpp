#ifndef RISCOV_ERRORS_HPP
#define RISCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace riscov {

// Invalid parameters or configuration. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature non-convergence or out-of-range numeric result. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace riscov

#endif
