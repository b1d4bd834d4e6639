#include "fockstat/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <fmt/core.h>

#include "fockstat/errors.hpp"
#include "fockstat/summation.hpp"

namespace fockstat {

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

LogFactorialTable::LogFactorialTable(std::size_t capacity) : capacity_(capacity) {
  values_.reserve(std::min<std::size_t>(capacity_ + 1, 1024));
  values_.push_back(0.0);  // 0!
  if (capacity_ >= 1) values_.push_back(0.0);  // 1!
}

void LogFactorialTable::extend_to(std::size_t n) {
  if (n > capacity_) {
    throw CapacityError(fmt::format("log-factorial index {} exceeds table capacity {}", n, capacity_));
  }
  if (n < values_.size()) return;
  values_.reserve(n + 1);
  for (std::size_t i = values_.size(); i <= n; ++i) {
    // Neumaier step on the running sum of ln(i).
    const double term = std::log(static_cast<double>(i));
    const double t = running_ + term;
    if (std::abs(running_) >= term) {
      carry_ += (running_ - t) + term;
    } else {
      carry_ += (term - t) + running_;
    }
    running_ = t;
    values_.push_back(running_ + carry_);
  }
}

double LogFactorialTable::operator()(std::size_t n) {
  extend_to(n);
  return values_[n];
}

double LogFactorialTable::at(std::size_t n) const {
  if (n >= values_.size()) {
    throw CapacityError(fmt::format("log-factorial index {} not built (built up to {})", n, values_.size() - 1));
  }
  return values_[n];
}

const LogFactorialTable& shared_log_factorials() {
  static const LogFactorialTable table = [] {
    LogFactorialTable t;
    t.extend_to(t.capacity());
    return t;
  }();
  return table;
}

double log_factorial(std::size_t n) { return shared_log_factorials().at(n); }

double log_factorial_ratio(std::size_t n, std::size_t m) {
  if (n < m) {
    throw DomainError(fmt::format("log_factorial_ratio requires n >= m (got n={}, m={})", n, m));
  }
  constexpr std::size_t kProductRange = 64;
  if (n - m > kProductRange) return log_factorial(n) - log_factorial(m);
  // Explicit product (m+1)(m+2)...n, flushed to the log before it can overflow.
  double log_sum = 0.0;
  double product = 1.0;
  for (std::size_t i = m + 1; i <= n; ++i) {
    product *= static_cast<double>(i);
    if (product > 1e250) {
      log_sum += std::log(product);
      product = 1.0;
    }
  }
  return log_sum + std::log(product);
}

double log_binomial(std::size_t n, std::size_t r) {
  if (r > n) throw DomainError(fmt::format("log_binomial requires r <= n (got n={}, r={})", n, r));
  const std::size_t small = std::min(r, n - r);
  if (small == 0) return 0.0;
  return log_factorial_ratio(n, n - small) - log_factorial(small);
}

namespace {

std::optional<long long> as_nonpositive_integer(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) > kIntegerSnapTolerance || r > 0.0) return std::nullopt;
  return static_cast<long long>(r);
}

struct ScaledTerm {
  double mantissa;
  long long exponent;
};

}  // namespace

SignedLog hyp2f1_terminating_log(const Hyp2F1Args& args) {
  const auto a = as_nonpositive_integer(args.a);
  const auto b = as_nonpositive_integer(args.b);
  if (!a || !b) {
    throw DomainError(fmt::format(
        "2F1 parameters a={} and b={} must both be non-positive integers for a terminating series", args.a,
        args.b));
  }
  const long long terms = std::min(-*a, -*b);
  if (const auto c = as_nonpositive_integer(args.c); c && -*c < terms) {
    throw DomainError(fmt::format("2F1 lower parameter c={} hits a pole before the series terminates at degree {}",
                                  args.c, terms));
  }
  if (!std::isfinite(args.x)) throw DomainError("2F1 argument x must be finite");

  const double ad = static_cast<double>(*a);
  const double bd = static_cast<double>(*b);
  std::vector<ScaledTerm> series;
  series.reserve(static_cast<std::size_t>(terms) + 1);
  double mantissa = 1.0;
  long long exponent = 0;
  series.push_back({mantissa, exponent});
  for (long long j = 0; j < terms; ++j) {
    const double jd = static_cast<double>(j);
    const double factor = ((ad + jd) * (bd + jd) * args.x) / ((args.c + jd) * (jd + 1.0));
    if (factor == 0.0) break;
    int shift = 0;
    mantissa = std::frexp(mantissa * factor, &shift);
    exponent += shift;
    series.push_back({mantissa, exponent});
  }

  long long peak = std::numeric_limits<long long>::min();
  for (const auto& t : series) peak = std::max(peak, t.exponent);
  CompensatedSum acc;
  for (const auto& t : series) {
    acc += std::ldexp(t.mantissa, static_cast<int>(std::max<long long>(t.exponent - peak, -2000)));
  }
  const double total = acc.value();
  if (total == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(total)) + static_cast<double>(peak) * std::numbers::ln2, total > 0.0 ? 1 : -1};
}

double hyp2f1_terminating(const Hyp2F1Args& args) { return hyp2f1_terminating_log(args).value(); }

}  // namespace fockstat
