#include "fockstat/reference_states.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "fockstat/errors.hpp"
#include "fockstat/series_tail.hpp"
#include "fockstat/special_functions.hpp"
#include "fockstat/summation.hpp"

namespace fockstat {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError(fmt::format("coherent amplitude alpha must be finite and >= 0 (got {})", alpha));
  }
}

}  // namespace

FockExpansion coherent_expansion(double alpha, double tail_tolerance) {
  check_alpha(alpha);
  if (alpha == 0.0) return fock_state(0);
  const double alpha2 = alpha * alpha;
  const double log_alpha = std::log(alpha);
  // Poisson weights exp(-alpha^2) alpha^{2n} / n!.
  const auto series = truncate_positive_series(
      [&](std::size_t n) { return -alpha2 + 2.0 * static_cast<double>(n) * log_alpha - log_factorial(n); },
      [&](std::size_t n) { return alpha2 / static_cast<double>(n + 1); }, tail_tolerance);
  FockExpansion out;
  for (const double lt : series.log_terms) out.coefficients.push_back(std::exp(0.5 * lt));
  out.truncation_tail_bound = series.relative_tail_bound * std::exp(series.log_sum);
  return out;
}

FockExpansion ecs_expansion(unsigned k, double alpha, double tail_tolerance) {
  check_alpha(alpha);
  if (k == 0) return coherent_expansion(alpha, tail_tolerance);
  if (alpha == 0.0) return fock_state(k);
  const double alpha2 = alpha * alpha;
  const double log_alpha = std::log(alpha);
  // |a^{dagger k} alpha>: weight of |n+k> is alpha^{2n}/n! * (n+k)!/n! up to exp(-alpha^2).
  const auto series = truncate_positive_series(
      [&](std::size_t n) {
        return 2.0 * static_cast<double>(n) * log_alpha - log_factorial(n) + log_factorial_ratio(n + k, n);
      },
      [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return alpha2 * (nd + k + 1.0) / ((nd + 1.0) * (nd + 1.0));
      },
      tail_tolerance);
  FockExpansion out;
  out.offset = k;
  for (const double lt : series.log_terms) out.coefficients.push_back(std::exp(0.5 * (lt - series.log_sum)));
  const double retained = out.norm_squared();
  for (double& c : out.coefficients) c /= std::sqrt(retained);
  out.truncation_tail_bound = series.relative_tail_bound;
  return out;
}

double limit_distance(const FockExpansion& a, const FockExpansion& b) {
  const std::size_t lo = std::min(a.offset, b.offset);
  const std::size_t hi = std::max(a.top(), b.top());
  double worst = 0.0;
  for (std::size_t n = lo; n <= hi; ++n) worst = std::max(worst, std::abs(a.amplitude(n) - b.amplitude(n)));
  return worst;
}

}  // namespace fockstat
