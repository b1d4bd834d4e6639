#pragma once

#include <cstddef>
#include <string_view>

#include "fockstat/fock_expansion.hpp"

namespace fockstat {

/// Binomial, negative binomial, and their k-photon-added (excited) forms.
enum class Family { bs, nbs, ebs, enbs };

std::string_view to_string(Family family);
/// Accepts "BS", "NBS", "EBS", "ENBS" (case-insensitive). Throws UsageError.
Family parse_family(std::string_view text);

/// True for the families built on the negative binomial distribution.
constexpr bool is_negative_binomial(Family f) { return f == Family::nbs || f == Family::enbs; }
constexpr bool is_excited(Family f) { return f == Family::ebs || f == Family::enbs; }

/// Default relative tail tolerance for truncated (negative binomial) series.
inline constexpr double kDefaultTailTolerance = 1e-14;

struct StateParams {
  Family family = Family::bs;
  unsigned k = 0;  // photons added; must be 0 for BS and NBS
  double eta = 0.0;
  unsigned M = 1;

  /// Throws DomainError: eta must lie in [0, 1] (BS/EBS) or [0, 1)
  /// (NBS/ENBS), M >= 1, and k == 0 for the unexcited families.
  void validate() const;
};

enum class NormalizationRoute { direct_sum, finite_sum, hypergeometric };

std::string_view to_string(NormalizationRoute route);

/// B(k, eta, M) = <eta,M| a^k a^{dagger k} |eta,M> on the base state, i.e. the
/// squared norm of a^{dagger k} applied to it. The excited state is
/// a^{dagger k}|eta,M> / sqrt(B).
struct NormalizationValue {
  double value = 1.0;
  double log_value = 0.0;
  NormalizationRoute route = NormalizationRoute::direct_sum;
  std::size_t terms_used = 0;
  /// Relative bound on the neglected tail (truncated route only).
  double relative_tail_bound = 0.0;
};

/// Binomial-state amplitudes C_n = C(M,n)^{1/2} eta^n (1-eta^2)^{(M-n)/2},
/// n = 0..M.
FockExpansion bs_coefficients(const StateParams& params);

/// Negative-binomial amplitudes C_n = C(M+n-1,n)^{1/2} eta^n (1-eta^2)^{M/2},
/// cut once the geometric tail bound drops below tail_tolerance.
/// Requires 0 < tail_tolerance <= 1e-8.
FockExpansion nbs_coefficients(const StateParams& params, double tail_tolerance = kDefaultTailTolerance);

/// B(k, eta, M) for the binomial state.
///   direct_sum:     finite sum over n = 0..M, switching to the
///                   eta^{2M}-prefactored reindexed form when eta^2 > 1/2.
///   hypergeometric: eta^{2M} (M+k)!/M! 2F1(-M,-M;-M-k;(eta^2-1)/eta^2).
/// eta = 0 with the hypergeometric route throws RouteError.
NormalizationValue normalization_ebs(unsigned k, double eta, unsigned M, NormalizationRoute route);

/// B^-(k, eta, M) for the negative binomial state.
///   direct_sum:     infinite sum over n, truncated with a ratio-test bound.
///   finite_sum:     (k+1)-term sum from the normal-ordered expansion of
///                   a^k a^{dagger k}.
///   hypergeometric: (eta^2/(1-eta^2))^k (M+k-1)!/(M-1)! 2F1(-k,-k;-M-k+1;(eta^2-1)/eta^2).
NormalizationValue normalization_enbs(unsigned k, double eta, unsigned M, NormalizationRoute route,
                                      double tail_tolerance = kDefaultTailTolerance);

/// Normalization of the family's base state under the route that is valid
/// everywhere (direct_sum for binomial, finite_sum for negative binomial).
NormalizationValue normalization(Family family, unsigned k, double eta, unsigned M);

/// Normalized amplitudes of any family. Excited families start at offset k;
/// BS/NBS are returned unchanged from their coefficient builders.
FockExpansion state_expansion(const StateParams& params, double tail_tolerance = kDefaultTailTolerance);

/// Excited-state amplitudes D_n = C_{n-k} sqrt(n!/(n-k)!) / sqrt(B), n >= k.
/// Fock states below k carry zero amplitude.
FockExpansion excited_expansion(const StateParams& params, double tail_tolerance = kDefaultTailTolerance);

/// a^k |eta,M>^- = scale * |eta,M+k>^-.
struct LadderLowering {
  double scale = 1.0;
  StateParams result;
};

LadderLowering nbs_ladder_lowering(unsigned k, double eta, unsigned M);

/// <eta,M|^- a^{dagger k} a^k |eta,M>^- = (eta^2/(1-eta^2))^k (M+k-1)!/(M-1)!.
double nbs_normal_ordered_moment(unsigned k, double eta, unsigned M);

}  // namespace fockstat
