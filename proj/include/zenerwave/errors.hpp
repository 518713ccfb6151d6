#ifndef ZENERWAVE_ERRORS_HPP
#define ZENERWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zenerwave {

/// Numeric failure during quadrature or transform evaluation (exit code 3 in the CLI).
/// Carries a human-readable context string identifying the offending point.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zenerwave

#endif
