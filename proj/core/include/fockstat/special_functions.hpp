#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fockstat {

/// Default relative accuracy target for the terminating 2F1 evaluation.
inline constexpr double kHyp2F1RelativeTolerance = 1e-12;
/// How close a real parameter must be to an integer to be treated as one.
inline constexpr double kIntegerSnapTolerance = 1e-12;

/// A real number stored as sign and natural log of its magnitude, so that
/// values far outside the double range can be carried through products.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;  // -1, 0 or +1; when 0, log_abs is -inf

  double value() const;
};

/// Table of ln(n!) for n = 0..built()-1, extended on demand up to capacity().
///
/// Entries are accumulated with compensated summation of ln(n), so each
/// stored value is within a couple of ulps of the exact log-factorial.
/// Extension mutates the table; concurrent readers need the table fully
/// built first (see shared_log_factorials()).
class LogFactorialTable {
 public:
  static constexpr std::size_t kDefaultCapacity = 200000;

  explicit LogFactorialTable(std::size_t capacity = kDefaultCapacity);

  /// ln(n!), extending the table when needed. Throws CapacityError when
  /// n exceeds capacity().
  double operator()(std::size_t n);

  /// ln(n!) without extension. Throws CapacityError when n >= built().
  double at(std::size_t n) const;

  /// Builds all entries up to and including n.
  void extend_to(std::size_t n);

  std::size_t capacity() const { return capacity_; }
  std::size_t built() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t capacity_;
  std::vector<double> values_;
  double running_ = 0.0;
  double carry_ = 0.0;
};

/// Process-wide table, fully built to the default capacity on first use.
/// Safe for concurrent reads.
const LogFactorialTable& shared_log_factorials();

double log_factorial(std::size_t n);

/// ln(n! / m!) for n >= m. Short ranges are evaluated as the log of an
/// explicit product, which keeps full relative accuracy even when n! alone
/// is enormous.
double log_factorial_ratio(std::size_t n, std::size_t m);

/// ln C(n, r). Exactly 0 for r == 0 or r == n, and exactly symmetric in
/// r <-> n - r.
double log_binomial(std::size_t n, std::size_t r);

struct Hyp2F1Args {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;
};

/// Gauss 2F1(a, b; c; x) for non-positive integer a and b, where the series
/// is a polynomial of degree min(-a, -b). Terms follow the ratio recursion
/// t_{j+1} = t_j (a+j)(b+j) x / ((c+j)(j+1)) and are carried as
/// mantissa/binary-exponent pairs so no intermediate overflows; the final sum
/// is compensated.
///
/// Throws DomainError when a or b is not a non-positive integer, or when
/// (c)_j vanishes before the series terminates.
SignedLog hyp2f1_terminating_log(const Hyp2F1Args& args);

/// Same as hyp2f1_terminating_log, converted to double (may overflow to inf).
double hyp2f1_terminating(const Hyp2F1Args& args);

}  // namespace fockstat
