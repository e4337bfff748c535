#pragma once

#include <cmath>

#include "qsis/errors.hpp"

namespace qsis {

/// Dual of a Lebesgue exponent. p' = p/(p-1) is infinite exactly when p = 1,
/// and that case is carried as an explicit flag instead of an IEEE inf so
/// callers are forced to branch on it.
struct dual_exponent {
  bool finite;
  double value;  // meaningful only when finite
};

/// Lebesgue exponent p in [1, inf).
class exponent {
 public:
  explicit exponent(double p) : p_(p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw exponent_out_of_range("exponent p must be finite and >= 1");
    }
  }

  double p() const { return p_; }

  dual_exponent dual() const {
    if (p_ == 1.0) return {false, 0.0};
    return {true, p_ / (p_ - 1.0)};
  }

  /// True when p is (numerically) an integer; several quadrature paths are
  /// exact only in that case.
  bool is_integer() const {
    return std::abs(p_ - std::round(p_)) < 1e-12;
  }

  bool operator==(const exponent& o) const { return p_ == o.p_; }

 private:
  double p_;
};

}  // namespace qsis
