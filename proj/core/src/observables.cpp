#include "fockstat/observables.hpp"

#include <cmath>

#include "fockstat/summation.hpp"

namespace fockstat {

NumberMoments number_moments_from_normalization(Family family, unsigned k, double eta, unsigned M) {
  const auto b0 = normalization(family, k, eta, M);
  const auto b1 = normalization(family, k + 1, eta, M);
  const auto b2 = normalization(family, k + 2, eta, M);
  // Plain ratios when every value is representable, log differences otherwise.
  const auto ratio = [&](const NormalizationValue& b) {
    const bool finite = std::isnormal(b0.value) && std::isnormal(b.value);
    return finite ? b.value / b0.value : std::exp(b.log_value - b0.log_value);
  };
  const double r1 = ratio(b1);
  const double r2 = ratio(b2);
  return {r1 - 1.0, r2 - 3.0 * r1 + 1.0};
}

NumberMoments number_moments(const FockExpansion& expansion) {
  CompensatedSum n1;
  CompensatedSum n2;
  for (std::size_t i = 0; i < expansion.coefficients.size(); ++i) {
    const double p = expansion.coefficients[i] * expansion.coefficients[i];
    const double n = static_cast<double>(expansion.offset + i);
    n1 += n * p;
    n2 += n * n * p;
  }
  return {n1.value(), n2.value()};
}

std::optional<double> mandel_q(double mean_n, double mean_n2) {
  if (mean_n < kMandelMeanFloor) return std::nullopt;
  return (mean_n2 - mean_n * mean_n) / mean_n - 1.0;
}

std::optional<double> mandel_q_from_normalization(double b0, double b1, double b2) {
  const double denominator = b1 * b0 - b0 * b0;
  if (!(std::abs(denominator) >= kMandelMeanFloor * b0 * b0)) return std::nullopt;
  return (b2 * b0 - b1 * b0 - b1 * b1) / denominator - 1.0;
}

AmplitudeMoments amplitude_moments(const FockExpansion& expansion) {
  const auto& d = expansion.coefficients;
  CompensatedSum a1;
  CompensatedSum a2;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double n = static_cast<double>(expansion.offset + i);
    a1 += std::sqrt(n + 1.0) * d[i] * d[i + 1];
    if (i + 2 < d.size()) a2 += std::sqrt((n + 1.0) * (n + 2.0)) * d[i] * d[i + 2];
  }
  AmplitudeMoments out{a1.value(), a2.value(), 0.0};
  if (expansion.truncation_tail_bound > 0.0) {
    out.truncation_bound = std::sqrt(expansion.truncation_tail_bound * expansion.norm_squared());
  }
  return out;
}

MomentSet moments(const FockExpansion& expansion) {
  const auto number = number_moments(expansion);
  const auto amplitude = amplitude_moments(expansion);
  return {amplitude.mean_a, amplitude.mean_a2, number.mean_n, number.mean_n2};
}

QuadratureVariances quadrature_variances(const MomentSet& m) {
  return {kVacuumVariance + 0.5 * (m.mean_n + m.mean_a2 - 2.0 * m.mean_a * m.mean_a),
          kVacuumVariance + 0.5 * (m.mean_n - m.mean_a2)};
}

StatisticsReport statistics(const MomentSet& m) {
  const auto v = quadrature_variances(m);
  return {m.mean_n, mandel_q(m.mean_n, m.mean_n2), v.var_x, v.var_p, v.var_x < kVacuumVariance,
          v.var_p < kVacuumVariance};
}

}  // namespace fockstat
