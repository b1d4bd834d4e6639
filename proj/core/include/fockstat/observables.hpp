#pragma once

#include <optional>

#include "fockstat/fock_expansion.hpp"
#include "fockstat/states.hpp"

namespace fockstat {

/// Vacuum quadrature variance in the x = (a^dagger + a)/2 convention.
inline constexpr double kVacuumVariance = 0.25;
/// Below this mean photon number Mandel's Q is reported as undefined.
inline constexpr double kMandelMeanFloor = 1e-300;
/// Ceiling on the Cauchy-Schwarz bound for the neglected part of <a>, <a^2>.
inline constexpr double kAmplitudeTailLimit = 1e-10;

/// Tail tolerance used when an expansion feeds the moment computations: the
/// neglected part of <a> is bounded by sqrt(tail * retained), so the tail
/// mass has to sit below kAmplitudeTailLimit^2.
constexpr double moment_tail_tolerance(double tail_tolerance) {
  return tail_tolerance < kAmplitudeTailLimit * kAmplitudeTailLimit ? tail_tolerance
                                                                    : kAmplitudeTailLimit * kAmplitudeTailLimit;
}

struct NumberMoments {
  double mean_n = 0.0;   // <a^dagger a>
  double mean_n2 = 0.0;  // <(a^dagger a)^2>
};

struct AmplitudeMoments {
  double mean_a = 0.0;   // <a>
  double mean_a2 = 0.0;  // <a^2>
  /// sqrt(tail mass * retained mass); nonzero only for truncated expansions.
  double truncation_bound = 0.0;
};

struct MomentSet {
  double mean_a = 0.0;
  double mean_a2 = 0.0;
  double mean_n = 0.0;
  double mean_n2 = 0.0;
};

struct QuadratureVariances {
  double var_x = kVacuumVariance;
  double var_p = kVacuumVariance;
};

struct StatisticsReport {
  double mean_photon = 0.0;
  std::optional<double> mandel_q;  // empty for the vacuum
  double var_x = kVacuumVariance;
  double var_p = kVacuumVariance;
  bool x_squeezed = false;
  bool p_squeezed = false;
};

/// <n> and <n^2> from ratios of normalization constants:
///   <n>   = B(k+1)/B(k) - 1
///   <n^2> = B(k+2)/B(k) - 3 B(k+1)/B(k) + 1
/// using B for the binomial families and B^- for the negative binomial ones.
NumberMoments number_moments_from_normalization(Family family, unsigned k, double eta, unsigned M);

/// <n> and <n^2> as compensated sums over the squared amplitudes.
NumberMoments number_moments(const FockExpansion& expansion);

/// Q = (<n^2> - <n>^2)/<n> - 1; empty when <n> < kMandelMeanFloor.
std::optional<double> mandel_q(double mean_n, double mean_n2);

/// Q written directly in the normalization constants B(k), B(k+1), B(k+2):
///   [B2 B0 - B1 B0 - B1^2] / [B1 B0 - B0^2] - 1.
std::optional<double> mandel_q_from_normalization(double b0, double b1, double b2);

/// <a> = sum sqrt(n+1) D_n D_{n+1},  <a^2> = sum sqrt((n+1)(n+2)) D_n D_{n+2}.
AmplitudeMoments amplitude_moments(const FockExpansion& expansion);

MomentSet moments(const FockExpansion& expansion);

/// Var(x) = 1/4 + (<n> + <a^2> - 2<a>^2)/2,  Var(p) = 1/4 + (<n> - <a^2>)/2
/// for real <a> and <a^2>.
QuadratureVariances quadrature_variances(const MomentSet& m);

StatisticsReport statistics(const MomentSet& m);

}  // namespace fockstat
