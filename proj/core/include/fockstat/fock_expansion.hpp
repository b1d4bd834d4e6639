#pragma once

#include <cstddef>
#include <vector>

namespace fockstat {

/// Real amplitudes D_n of a single-mode pure state over Fock indices
/// offset .. offset + coefficients.size() - 1. Indices outside that range
/// carry zero amplitude.
struct FockExpansion {
  std::size_t offset = 0;
  std::vector<double> coefficients;
  /// Bound on the squared-amplitude mass beyond top(); 0 for finite states.
  double truncation_tail_bound = 0.0;

  std::size_t top() const { return offset + coefficients.size() - 1; }
  double amplitude(std::size_t n) const;
  /// Highest index with a nonzero amplitude.
  std::size_t top_occupied() const;
  /// Compensated sum of squared amplitudes.
  double norm_squared() const;
  /// Amplitudes laid out on 0..dimension-1; entries past top() are dropped.
  std::vector<double> dense(std::size_t dimension) const;
};

/// Single Fock state |n>.
FockExpansion fock_state(std::size_t n);

}  // namespace fockstat
