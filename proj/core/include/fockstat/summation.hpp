#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace fockstat {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
/// when an addend is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  explicit constexpr CompensatedSum(double initial) : sum_(initial) {}

  constexpr CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  constexpr double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (const double v : values) acc += v;
  return acc.value();
}

/// ln(sum_i exp(log_terms[i])) for non-negative terms. -inf entries are
/// zero terms; an all-zero input returns -inf.
inline double log_sum_exp(std::span<const double> log_terms) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const double l : log_terms) peak = std::max(peak, l);
  if (!std::isfinite(peak)) return peak;
  CompensatedSum acc;
  for (const double l : log_terms) acc += std::exp(l - peak);
  return peak + std::log(acc.value());
}

}  // namespace fockstat
