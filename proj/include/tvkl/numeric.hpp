#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace tvkl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Neumaier's variant of Kahan summation. Terms are consumed in call order,
/// so results are reproducible for a fixed input ordering.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc += x;
  return acc.value();
}

/// ln(a / b) for a, b > 0. Close ratios go through log1p of the exact
/// difference, other normal inputs through a difference of logarithms, and
/// subnormal inputs through the ratio.
inline double log_ratio(double a, double b) noexcept {
  constexpr double kMinNormal = std::numeric_limits<double>::min();
  if (a >= kMinNormal && b >= kMinNormal) {
    if (a <= 2.0 * b && b <= 2.0 * a) return std::log1p((a - b) / b);
    return std::log(a) - std::log(b);
  }
  return std::log(a / b);
}

/// 1 - e^{-x} without cancellation; x = +inf gives 1.
inline double one_minus_exp_neg(double x) noexcept {
  if (std::isinf(x)) return 1.0;
  return -std::expm1(-x);
}

/// Finds t in [lo, hi] with f(t) = target for nondecreasing f, by bisection.
/// Iterates until the bracket is narrower than tol or can no longer be split
/// in floating point. Returns an endpoint when target lies outside
/// [f(lo), f(hi)].
template <typename F>
double bisect_increasing(F&& f, double target, double lo, double hi, double tol) {
  if (!(f(lo) < target)) return lo;
  if (!(f(hi) > target)) return hi;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace tvkl
