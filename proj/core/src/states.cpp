#include "fockstat/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "fockstat/errors.hpp"
#include "fockstat/series_tail.hpp"
#include "fockstat/special_functions.hpp"
#include "fockstat/summation.hpp"

namespace fockstat {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::bs: return "BS";
    case Family::nbs: return "NBS";
    case Family::ebs: return "EBS";
    case Family::enbs: return "ENBS";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "BS") return Family::bs;
  if (upper == "NBS") return Family::nbs;
  if (upper == "EBS") return Family::ebs;
  if (upper == "ENBS") return Family::enbs;
  throw UsageError(fmt::format("unknown family '{}' (expected BS, NBS, EBS or ENBS)", text));
}

std::string_view to_string(NormalizationRoute route) {
  switch (route) {
    case NormalizationRoute::direct_sum: return "direct_sum";
    case NormalizationRoute::finite_sum: return "finite_sum";
    case NormalizationRoute::hypergeometric: return "hypergeometric";
  }
  return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_binomial_domain(double eta, unsigned M) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError(fmt::format("binomial family requires 0 <= eta <= 1 (got eta={})", eta));
  }
  if (M < 1) throw DomainError("M must be at least 1");
}

void check_negative_binomial_domain(double eta, unsigned M) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw DomainError(fmt::format("negative binomial family requires 0 <= eta < 1 (got eta={})", eta));
  }
  if (M < 1) throw DomainError("M must be at least 1");
}

void check_tail_tolerance(double tail_tolerance) {
  if (!(tail_tolerance > 0.0 && tail_tolerance <= 1e-8)) {
    throw DomainError(fmt::format("tail tolerance must lie in (0, 1e-8] (got {})", tail_tolerance));
  }
}

// ln(1 - eta^2); (1-eta)(1+eta) keeps relative accuracy as eta -> 1.
double log_one_minus_eta2(double eta) { return std::log((1.0 - eta) * (1.0 + eta)); }

// n!/m! as a double. Short ranges use the same product order as
// log_factorial_ratio so that value and log agree bit-for-bit.
double factorial_ratio_value(std::size_t n, std::size_t m) {
  if (n - m <= 64) {
    double product = 1.0;
    for (std::size_t i = m + 1; i <= n; ++i) product *= static_cast<double>(i);
    if (std::isfinite(product)) return product;
  }
  return std::exp(log_factorial_ratio(n, m));
}

// Sums whose log stays below this are safe to accumulate as plain doubles.
constexpr double kDirectRecurrenceLogLimit = 700.0;

NormalizationValue exact_value(double value, NormalizationRoute route, std::size_t terms = 1) {
  return {value, std::log(value), route, terms, 0.0};
}

NormalizationValue from_log(double log_value, NormalizationRoute route, std::size_t terms, double tail = 0.0) {
  return {std::exp(log_value), log_value, route, terms, tail};
}

// Binomial amplitudes for (eta, M) without the family check.
std::vector<double> binomial_amplitudes(double eta, unsigned M) {
  std::vector<double> c(M + 1, 0.0);
  if (eta == 0.0) {
    c.front() = 1.0;
    return c;
  }
  if (eta == 1.0) {
    c.back() = 1.0;
    return c;
  }
  const double log_eta = std::log(eta);
  const double log_q = log_one_minus_eta2(eta);
  for (unsigned n = 0; n <= M; ++n) {
    c[n] = std::exp(0.5 * (log_binomial(M, n) + 2.0 * n * log_eta + (M - n) * log_q));
  }
  // The squared amplitudes sum to one identically; fold the rounding
  // residue of the log-domain evaluation back in.
  CompensatedSum norm;
  for (const double v : c) norm += v * v;
  const double scale = 1.0 / std::sqrt(norm.value());
  for (double& v : c) v *= scale;
  return c;
}

double nbs_log_weight(std::size_t n, double log_eta, double log_q, unsigned M) {
  return log_binomial(M + n - 1, n) + 2.0 * static_cast<double>(n) * log_eta + M * log_q;
}

}  // namespace

void StateParams::validate() const {
  if (is_negative_binomial(family)) {
    check_negative_binomial_domain(eta, M);
  } else {
    check_binomial_domain(eta, M);
  }
  if (!is_excited(family) && k != 0) {
    throw DomainError(fmt::format("{} has no excitation; k must be 0 (got k={})", to_string(family), k));
  }
}

FockExpansion bs_coefficients(const StateParams& params) {
  if (params.family != Family::bs) throw DomainError("bs_coefficients requires family BS");
  params.validate();
  return FockExpansion{0, binomial_amplitudes(params.eta, params.M), 0.0};
}

FockExpansion nbs_coefficients(const StateParams& params, double tail_tolerance) {
  if (params.family != Family::nbs) throw DomainError("nbs_coefficients requires family NBS");
  params.validate();
  check_tail_tolerance(tail_tolerance);
  if (params.eta == 0.0) return fock_state(0);

  const double eta2 = params.eta * params.eta;
  const double log_eta = std::log(params.eta);
  const double log_q = log_one_minus_eta2(params.eta);
  const unsigned M = params.M;
  const auto series = truncate_positive_series(
      [&](std::size_t n) { return nbs_log_weight(n, log_eta, log_q, M); },
      [&](std::size_t n) { return eta2 * static_cast<double>(M + n) / static_cast<double>(n + 1); },
      tail_tolerance);

  FockExpansion out;
  out.coefficients.reserve(series.terms_used());
  for (const double lt : series.log_terms) out.coefficients.push_back(std::exp(0.5 * lt));
  out.truncation_tail_bound = series.relative_tail_bound * std::exp(series.log_sum);
  return out;
}

NormalizationValue normalization_ebs(unsigned k, double eta, unsigned M, NormalizationRoute route) {
  check_binomial_domain(eta, M);
  if (route == NormalizationRoute::finite_sum) {
    throw RouteError("finite_sum route is only defined for the negative binomial family");
  }
  if (route == NormalizationRoute::hypergeometric) {
    if (eta == 0.0) throw RouteError("hypergeometric route is singular at eta = 0 (argument (eta^2-1)/eta^2)");
    const double eta2 = eta * eta;
    const double x = -((1.0 - eta) * (1.0 + eta)) / eta2;
    const double m = static_cast<double>(M);
    const SignedLog f = hyp2f1_terminating_log({-m, -m, -m - static_cast<double>(k), x});
    if (f.sign <= 0) throw DomainError("hypergeometric route produced a non-positive value");
    return from_log(2.0 * m * std::log(eta) + log_factorial_ratio(M + k, M) + f.log_abs, route, M + 1);
  }

  if (k == 0) return exact_value(1.0, route, M + 1);
  if (eta == 0.0) return exact_value(factorial_ratio_value(k, 0), route);
  if (eta == 1.0) return exact_value(factorial_ratio_value(M + k, M), route);

  const double log_eta = std::log(eta);
  const double log_q = log_one_minus_eta2(eta);
  std::vector<double> log_terms(M + 1);
  if (eta * eta <= 0.5) {
    // M!(1-eta^2)^M sum_n (n+k)!/(n! n! (M-n)!) (eta^2/(1-eta^2))^n
    const double log_rho = 2.0 * log_eta - log_q;
    for (unsigned n = 0; n <= M; ++n) {
      log_terms[n] = log_binomial(M, n) + log_factorial_ratio(n + k, n) + M * log_q + n * log_rho;
    }
  } else {
    // M! eta^{2M} sum_n (M+k-n)!/(n! (M-n)! (M-n)!) ((1-eta^2)/eta^2)^n
    const double log_inv_rho = log_q - 2.0 * log_eta;
    for (unsigned n = 0; n <= M; ++n) {
      log_terms[n] = log_binomial(M, n) + log_factorial_ratio(M - n + k, M - n) + 2.0 * M * log_eta + n * log_inv_rho;
    }
  }
  return from_log(log_sum_exp(log_terms), route, M + 1);
}

NormalizationValue normalization_enbs(unsigned k, double eta, unsigned M, NormalizationRoute route,
                                      double tail_tolerance) {
  check_negative_binomial_domain(eta, M);
  if (eta == 0.0) {
    if (route == NormalizationRoute::hypergeometric) {
      throw RouteError("hypergeometric route is singular at eta = 0 (argument (eta^2-1)/eta^2)");
    }
    return exact_value(factorial_ratio_value(k, 0), route);
  }

  const double eta2 = eta * eta;
  const double log_eta = std::log(eta);
  const double log_q = log_one_minus_eta2(eta);
  const double log_rho = 2.0 * log_eta - log_q;

  switch (route) {
    case NormalizationRoute::direct_sum: {
      check_tail_tolerance(tail_tolerance);
      const auto series = truncate_positive_series(
          [&](std::size_t n) { return nbs_log_weight(n, log_eta, log_q, M) + log_factorial_ratio(n + k, n); },
          [&](std::size_t n) {
            const double nd = static_cast<double>(n);
            return eta2 * (M + nd) * (nd + k + 1.0) / ((nd + 1.0) * (nd + 1.0));
          },
          tail_tolerance);
      return from_log(series.log_sum, route, series.terms_used(), series.relative_tail_bound);
    }
    case NormalizationRoute::finite_sum: {
      // sum_{j=0}^{k} C(k,j) k!/j! (M-1+j)!/(M-1)! rho^j, with j = k - l.
      std::vector<double> log_terms(k + 1);
      for (unsigned j = 0; j <= k; ++j) {
        log_terms[j] = log_binomial(k, j) + log_factorial_ratio(k, j) + log_factorial_ratio(M - 1 + j, M - 1) + j * log_rho;
      }
      const double log_sum = log_sum_exp(log_terms);
      if (log_sum > kDirectRecurrenceLogLimit) return from_log(log_sum, route, k + 1);
      // In range: t_j / t_{j-1} = (k-j+1)(M-1+j) rho / j^2, starting from t_0 = k!.
      const double rho = eta2 / ((1.0 - eta) * (1.0 + eta));
      double term = factorial_ratio_value(k, 0);
      CompensatedSum sum;
      sum += term;
      for (unsigned j = 1; j <= k; ++j) {
        const double jd = static_cast<double>(j);
        term *= (static_cast<double>(k - j + 1) * static_cast<double>(M - 1 + j) / (jd * jd)) * rho;
        sum += term;
      }
      return exact_value(sum.value(), route, k + 1);
    }
    case NormalizationRoute::hypergeometric: {
      const double x = -((1.0 - eta) * (1.0 + eta)) / eta2;
      const double kd = static_cast<double>(k);
      const SignedLog f = hyp2f1_terminating_log({-kd, -kd, -static_cast<double>(M) - kd + 1.0, x});
      if (f.sign <= 0) throw DomainError("hypergeometric route produced a non-positive value");
      return from_log(k * log_rho + log_factorial_ratio(M + k - 1, M - 1) + f.log_abs, route, k + 1);
    }
  }
  throw RouteError("unknown normalization route");
}

NormalizationValue normalization(Family family, unsigned k, double eta, unsigned M) {
  if (is_negative_binomial(family)) return normalization_enbs(k, eta, M, NormalizationRoute::finite_sum);
  return normalization_ebs(k, eta, M, NormalizationRoute::direct_sum);
}

FockExpansion excited_expansion(const StateParams& params, double tail_tolerance) {
  if (!is_excited(params.family)) throw DomainError("excited_expansion requires family EBS or ENBS");
  params.validate();
  const unsigned k = params.k;
  const unsigned M = params.M;
  const double eta = params.eta;

  if (params.family == Family::ebs) {
    const auto base = binomial_amplitudes(eta, M);
    if (k == 0) return FockExpansion{0, base, 0.0};
    const double log_b = normalization_ebs(k, eta, M, NormalizationRoute::direct_sum).log_value;
    FockExpansion out{k, std::vector<double>(M + 1, 0.0), 0.0};
    for (unsigned j = 0; j <= M; ++j) {
      if (base[j] == 0.0) continue;
      out.coefficients[j] = base[j] * std::exp(0.5 * (log_factorial_ratio(j + k, j) - log_b));
    }
    return out;
  }

  check_tail_tolerance(tail_tolerance);
  if (k == 0) return nbs_coefficients({Family::nbs, 0, eta, M}, tail_tolerance);
  if (eta == 0.0) return fock_state(k);

  const double eta2 = eta * eta;
  const double log_eta = std::log(eta);
  const double log_q = log_one_minus_eta2(eta);
  const double log_b = normalization_enbs(k, eta, M, NormalizationRoute::finite_sum).log_value;
  // Squared amplitudes up to 1/B; their successive ratio is non-increasing.
  const auto series = truncate_positive_series(
      [&](std::size_t j) { return nbs_log_weight(j, log_eta, log_q, M) + log_factorial_ratio(j + k, j); },
      [&](std::size_t j) {
        const double jd = static_cast<double>(j);
        return eta2 * (M + jd) * (jd + k + 1.0) / ((jd + 1.0) * (jd + 1.0));
      },
      tail_tolerance);
  FockExpansion out;
  out.offset = k;
  out.coefficients.reserve(series.terms_used());
  for (const double lt : series.log_terms) out.coefficients.push_back(std::exp(0.5 * (lt - log_b)));
  out.truncation_tail_bound = series.relative_tail_bound * std::exp(series.log_sum - log_b);
  return out;
}

FockExpansion state_expansion(const StateParams& params, double tail_tolerance) {
  switch (params.family) {
    case Family::bs: return bs_coefficients(params);
    case Family::nbs: return nbs_coefficients(params, tail_tolerance);
    case Family::ebs:
    case Family::enbs: return excited_expansion(params, tail_tolerance);
  }
  throw DomainError("unknown family");
}

LadderLowering nbs_ladder_lowering(unsigned k, double eta, unsigned M) {
  check_negative_binomial_domain(eta, M);
  LadderLowering out{1.0, {Family::nbs, 0, eta, M + k}};
  if (k == 0) return out;
  if (eta == 0.0) {
    out.scale = 0.0;
    return out;
  }
  out.scale = std::exp(k * (std::log(eta) - 0.5 * log_one_minus_eta2(eta)) + 0.5 * log_factorial_ratio(M + k - 1, M - 1));
  return out;
}

double nbs_normal_ordered_moment(unsigned k, double eta, unsigned M) {
  check_negative_binomial_domain(eta, M);
  if (k == 0) return 1.0;
  if (eta == 0.0) return 0.0;
  const double log_rho = 2.0 * std::log(eta) - log_one_minus_eta2(eta);
  return std::exp(k * log_rho + log_factorial_ratio(M + k - 1, M - 1));
}

}  // namespace fockstat
