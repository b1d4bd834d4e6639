#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fockstat/errors.hpp"

namespace fockstat {

/// Retained part of a positive series together with a bound on what was cut.
struct TruncatedLogSeries {
  std::vector<double> log_terms;  // ln t_n for n = 0..N
  double log_sum = -std::numeric_limits<double>::infinity();
  /// Upper bound on sum_{n>N} t_n divided by the retained sum.
  double relative_tail_bound = 0.0;

  std::size_t terms_used() const { return log_terms.size(); }
};

inline constexpr std::size_t kMaxSeriesTerms = 50'000'000;

/// Sums t_0 + t_1 + ... in the log domain and stops at the first N where
/// r_N = t_{N+1}/t_N < 1 and t_N r_N / (1 - r_N) < tolerance * partial sum.
///
/// The geometric tail estimate is a rigorous bound only when the ratio
/// sequence is non-increasing from N on; every series in this library has
/// that property. `log_term(n)` returns ln t_n and `ratio(n)` returns r_n.
template <typename LogTerm, typename Ratio>
TruncatedLogSeries truncate_positive_series(LogTerm&& log_term, Ratio&& ratio, double tolerance,
                                            std::size_t max_terms = kMaxSeriesTerms) {
  TruncatedLogSeries out;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double lt = log_term(n);
    out.log_terms.push_back(lt);
    if (lt > out.log_sum) {
      out.log_sum = lt + std::log1p(std::exp(out.log_sum - lt));
    } else if (std::isfinite(lt)) {
      out.log_sum += std::log1p(std::exp(lt - out.log_sum));
    }
    const double r = ratio(n);
    if (r == 0.0) {
      out.relative_tail_bound = 0.0;
      return out;
    }
    if (r < 1.0) {
      const double bound = std::exp(lt - out.log_sum) * r / (1.0 - r);
      if (bound < tolerance) {
        out.relative_tail_bound = bound;
        return out;
      }
    }
  }
  throw DomainError("series did not reach tail tolerance " + std::to_string(tolerance) + " within " +
                    std::to_string(max_terms) + " terms");
}

}  // namespace fockstat
