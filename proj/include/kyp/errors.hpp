#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace kyp {

/// Compact "%.6g" rendering of a number for error messages.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Block sizes or subspace dimensions that do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operator that was required to be nonnegative is not, beyond psd_tol.
class NotPsdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operator that was required to be a contraction has norm > 1 + psd_tol.
class NotContractiveError : public std::domain_error {
 public:
  NotContractiveError(const std::string& what, double norm)
      : std::domain_error(what), norm_(norm) {}
  double norm() const { return norm_; }

 private:
  double norm_;
};

/// A resolvent or Moebius denominator is numerically singular.
class SingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two routes that must agree by theorem did not. Signals a bug or a
/// tolerance breach, never bad user input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kyp
