#include "fockstat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>

#include <fmt/core.h>

#include "fockstat/fock_oracle.hpp"
#include "fockstat/observables.hpp"
#include "fockstat/reference_states.hpp"
#include "fockstat/special_functions.hpp"
#include "fockstat/states.hpp"
#include "fockstat/sweep.hpp"

namespace fockstat {

bool VerifySummary::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

constexpr double kMomentTolerance = moment_tail_tolerance(kDefaultTailTolerance);
// Tight enough that truncated vectors agree to well below 1e-12 componentwise.
constexpr double kOracleCompareTolerance = 1e-30;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

bool agrees(double a, double b, double rel, double abs) {
  return std::abs(a - b) <= abs || relative_difference(a, b) <= rel;
}

// Tracks the worst discrepancy seen and where it happened.
struct Worst {
  double value = 0.0;
  std::string where;

  void update(double v, const std::string& at) {
    if (v > value || where.empty()) {
      value = std::max(value, v);
      where = at;
    }
  }
};

std::vector<double> eta_grid(bool dense) {
  std::vector<double> out;
  if (dense) {
    for (int i = 1; i <= 19; ++i) out.push_back(0.05 * i);
  } else {
    for (int i = 1; i <= 9; ++i) out.push_back(0.1 * i);
  }
  return out;
}

Outcome check_route_agreement(bool dense) {
  constexpr double kTol = 1e-10;
  Worst worst;
  for (const unsigned M : {1u, 2u, 5u, 10u, 50u}) {
    for (unsigned k = 0; k <= 5; ++k) {
      for (const double eta : eta_grid(dense)) {
        const auto where = fmt::format("k={} eta={} M={}", k, eta, M);
        const double d = normalization_ebs(k, eta, M, NormalizationRoute::direct_sum).value;
        const double h = normalization_ebs(k, eta, M, NormalizationRoute::hypergeometric).value;
        worst.update(relative_difference(d, h), "EBS " + where);
        const double nd = normalization_enbs(k, eta, M, NormalizationRoute::direct_sum).value;
        const double nf = normalization_enbs(k, eta, M, NormalizationRoute::finite_sum).value;
        const double nh = normalization_enbs(k, eta, M, NormalizationRoute::hypergeometric).value;
        worst.update(std::max({relative_difference(nd, nf), relative_difference(nd, nh), relative_difference(nf, nh)}),
                     "ENBS " + where);
      }
    }
  }
  return {worst.value <= kTol, fmt::format("worst relative difference {:.2e} at {}", worst.value, worst.where)};
}

Outcome check_closed_form_q() {
  Worst bs;
  Worst nbs;
  for (const unsigned M : {2u, 5u, 10u, 50u}) {
    for (const double eta : eta_grid(false)) {
      const auto where = fmt::format("eta={} M={}", eta, M);
      const auto q_bs = statistics(moments(bs_coefficients({Family::bs, 0, eta, M}))).mandel_q;
      bs.update(q_bs ? std::abs(*q_bs + eta * eta) : INFINITY, where);
      const auto q_nbs = statistics(moments(nbs_coefficients({Family::nbs, 0, eta, M}, kMomentTolerance))).mandel_q;
      nbs.update(q_nbs ? relative_difference(*q_nbs, eta * eta / (1.0 - eta * eta)) : INFINITY, where);
    }
  }
  return {bs.value <= 1e-10 && nbs.value <= 1e-9,
          fmt::format("BS |Q + eta^2| <= {:.2e} ({}); NBS rel. error <= {:.2e} ({})", bs.value, bs.where, nbs.value,
                      nbs.where)};
}

Outcome check_oracle_equivalence(bool dense) {
  constexpr std::size_t kMaxDimension = 300;
  std::size_t compared = 0;
  std::size_t skipped = 0;
  Worst moment_gap;
  Worst ratio_gap;
  Worst q_gap;
  const unsigned max_k = dense ? 5 : 3;
  const std::vector<unsigned> ms = dense ? std::vector<unsigned>{1, 2, 5, 10, 50} : std::vector<unsigned>{1, 2, 5, 10};
  bool ok = true;
  for (const Family family : {Family::ebs, Family::enbs}) {
    for (const unsigned M : ms) {
      for (unsigned k = 0; k <= max_k; ++k) {
        for (const double eta : eta_grid(dense)) {
          const StateParams params{family, k, eta, M};
          const auto where = fmt::format("{} k={} eta={} M={}", to_string(family), k, eta, M);
          const auto expansion = state_expansion(params, kMomentTolerance);
          if (safe_dimension(expansion, 4) > kMaxDimension) {
            ++skipped;
            continue;
          }
          ++compared;
          const auto formula = moments(expansion);
          const auto oracle = oracle_moments(expansion);
          const double pairs[4][2] = {{formula.mean_a, oracle.mean_a},
                                      {formula.mean_a2, oracle.mean_a2},
                                      {formula.mean_n, oracle.mean_n},
                                      {formula.mean_n2, oracle.mean_n2}};
          for (const auto& p : pairs) {
            if (!agrees(p[0], p[1], 1e-10, 1e-12)) ok = false;
            moment_gap.update(relative_difference(p[0], p[1]), where);
          }
          const auto ratio = number_moments_from_normalization(family, k, eta, M);
          for (const auto& p : {std::pair{ratio.mean_n, formula.mean_n}, std::pair{ratio.mean_n2, formula.mean_n2}}) {
            if (!agrees(p.first, p.second, 1e-10, 1e-12)) ok = false;
            ratio_gap.update(relative_difference(p.first, p.second), where);
          }
          if (formula.mean_n > 1e-6) {
            const double b0 = normalization(family, k, eta, M).value;
            const double b1 = normalization(family, k + 1, eta, M).value;
            const double b2 = normalization(family, k + 2, eta, M).value;
            const auto q_ratio = mandel_q_from_normalization(b0, b1, b2);
            const auto q_moment = mandel_q(formula.mean_n, formula.mean_n2);
            const double gap = std::abs(*q_ratio - *q_moment) / std::max(1.0, std::abs(*q_moment));
            if (!(gap <= 1e-9)) ok = false;
            q_gap.update(gap, where);
          }
        }
      }
    }
  }
  return {ok, fmt::format("{} states compared ({} skipped above dimension {}); worst moment gap {:.2e} ({}), "
                          "ratio-path gap {:.2e}, Q-form gap {:.2e}",
                          compared, skipped, kMaxDimension, moment_gap.value, moment_gap.where, ratio_gap.value,
                          q_gap.value)};
}

Outcome check_operator_identities() {
  bool ok = true;
  std::string detail;

  // a^k a^{dagger k} = sum_l [k!k!/(l!(k-l)!(k-l)!)] a^{dagger(k-l)} a^{k-l}
  const TruncatedFockSpace space(40);
  double normal_order_gap = 0.0;
  for (unsigned k = 0; k <= 5; ++k) {
    const auto lhs = space.word_matrix(antinormal_word(k, k));
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(40, 40);
    for (unsigned l = 0; l <= k; ++l) {
      const double coefficient = std::exp(log_binomial(k, l) + log_factorial_ratio(k, k - l));
      OperatorWord word(k - l, Ladder::adag);
      word.insert(word.end(), k - l, Ladder::a);
      rhs += std::round(coefficient) * space.word_matrix(word);
    }
    const auto block = static_cast<Eigen::Index>(40 - k);
    for (Eigen::Index i = 0; i < block; ++i) {
      for (Eigen::Index j = 0; j < block; ++j) {
        const double gap = std::abs(lhs(i, j) - rhs(i, j)) / std::max(1.0, std::abs(lhs(i, j)));
        normal_order_gap = std::max(normal_order_gap, gap);
      }
    }
  }
  ok = ok && normal_order_gap <= 1e-10;
  detail += fmt::format("normal ordering gap {:.2e}", normal_order_gap);

  // a^{dagger k} on the base state, renormalized, is the excited state.
  double construction_gap = 0.0;
  double recurrence_gap = 0.0;
  for (const double eta : {0.3, 0.6, 0.9}) {
    for (const unsigned M : {1u, 3u, 8u}) {
      for (unsigned k = 0; k <= 4; ++k) {
        for (const Family family : {Family::ebs, Family::enbs}) {
          const Family base_family = family == Family::ebs ? Family::bs : Family::nbs;
          const auto base = state_expansion({base_family, 0, eta, M}, kOracleCompareTolerance);
          const auto excited = excited_expansion({family, k, eta, M}, kOracleCompareTolerance);
          const TruncatedFockSpace s(safe_dimension(base, k));
          Eigen::VectorXd image = s.apply_word(s.embed(base), antinormal_word(0, k));
          image /= image.norm();
          for (std::size_t n = 0; n < s.dimension(); ++n) {
            construction_gap = std::max(construction_gap, std::abs(image[static_cast<Eigen::Index>(n)] - excited.amplitude(n)));
          }
          if (family == Family::ebs) {
            const double b = normalization_ebs(k + 1, eta, M, NormalizationRoute::direct_sum).value;
            recurrence_gap = std::max(recurrence_gap, relative_difference(b, oracle_excitation_norm(base, k + 1)));
          }
        }
      }
    }
  }
  ok = ok && construction_gap <= 1e-12 && recurrence_gap <= 1e-10;
  detail += fmt::format("; excitation construction gap {:.2e}; B(k+1) vs oracle {:.2e}", construction_gap, recurrence_gap);

  // a^k |eta,M>^- = scale |eta,M+k>^-, and <a^{dagger k} a^k> in closed form.
  double ladder_gap = 0.0;
  double moment_gap = 0.0;
  for (const double eta : {0.3, 0.5, 0.7}) {
    for (const unsigned M : {1u, 3u}) {
      for (unsigned k = 0; k <= 3; ++k) {
        const auto base = nbs_coefficients({Family::nbs, 0, eta, M}, kOracleCompareTolerance);
        const auto lowering = nbs_ladder_lowering(k, eta, M);
        const auto target = nbs_coefficients(lowering.result, kOracleCompareTolerance);
        const TruncatedFockSpace s(safe_dimension(base, k));
        OperatorWord word(k, Ladder::a);
        const Eigen::VectorXd image = s.apply_word(s.embed(base), word);
        for (std::size_t n = 0; n + k <= base.top(); ++n) {
          ladder_gap = std::max(ladder_gap, std::abs(image[static_cast<Eigen::Index>(n)] - lowering.scale * target.amplitude(n)));
        }
        moment_gap = std::max(moment_gap, relative_difference(image.squaredNorm(), nbs_normal_ordered_moment(k, eta, M)));
      }
    }
  }
  ok = ok && ladder_gap <= 1e-10 && moment_gap <= 1e-10;
  detail += fmt::format("; NBS lowering gap {:.2e}; normal-ordered moment gap {:.2e}", ladder_gap, moment_gap);
  return {ok, detail};
}

Outcome check_endpoint_limits() {
  constexpr double kTol = 1e-3;
  double worst = 0.0;
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& [family, eta] : {std::pair{Family::ebs, 1e-4}, std::pair{Family::ebs, 1.0 - 1e-4},
                                      std::pair{Family::enbs, 1e-4}}) {
      const auto q = statistics(moments(state_expansion({family, k, eta, 10}, kMomentTolerance))).mandel_q;
      worst = std::max(worst, q ? std::abs(*q + 1.0) : INFINITY);
    }
  }
  return {worst <= kTol, fmt::format("max |Q + 1| = {:.2e} at the endpoints", worst)};
}

Outcome check_record_invariants() {
  std::size_t records = 0;
  std::vector<std::string> failures;
  auto sweep = [&](SweepSpec spec) {
    spec.observables = {Observable::mean_n, Observable::mandel_q, Observable::var_x, Observable::var_p};
    for (const auto& r : run_sweep(spec).records) {
      ++records;
      if (!r.ok() && failures.size() < 3) {
        failures.push_back(fmt::format("{} k={} eta={}: {}", to_string(r.family), r.k, r.eta, r.error));
      }
    }
  };
  for (const auto name : preset_names()) sweep(preset_spec(name));
  for (const unsigned M : {1u, 2u, 5u, 50u}) {
    SweepSpec spec;
    spec.M = M;
    spec.k_values = {0, 1, 2, 3, 4, 5};
    spec.eta_grid = {0.0, 1.0, 21};
    sweep(spec);
    spec.family = Family::enbs;
    spec.eta_grid = {0.0, 0.95, 20};
    sweep(spec);
  }
  std::string detail = fmt::format("{} records checked (normalization, Heisenberg bound, Q >= -1)", records);
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

struct Interval {
  double first = 0.0;
  double last = 0.0;
  std::size_t points = 0;
  bool contiguous = true;
};

// Grid points of one k whose chosen observable falls below the threshold.
Interval interval_below(const Dataset& data, unsigned k, const std::function<double(const StatisticsReport&)>& get,
                        double threshold) {
  Interval out;
  std::optional<std::size_t> previous;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const auto& r = data.records[i];
    if (r.k != k || !r.stats) continue;
    if (!(get(*r.stats) < threshold)) continue;
    if (out.points == 0) out.first = r.eta;
    if (previous && *previous + 1 != i) out.contiguous = false;
    out.last = r.eta;
    previous = i;
    ++out.points;
  }
  return out;
}

Outcome check_qualitative_claims() {
  bool ok = true;
  std::string detail;
  const auto fig1 = run_sweep(preset_spec("fig1"));
  double max_q = -INFINITY;
  for (const auto& r : fig1.records) {
    if (r.stats && r.stats->mandel_q) max_q = std::max(max_q, *r.stats->mandel_q);
  }
  bool monotone = true;
  for (const double eta : {0.3, 0.5, 0.7}) {
    double previous = INFINITY;
    for (unsigned k = 0; k <= 3; ++k) {
      const double q = *statistics(moments(state_expansion({Family::ebs, k, eta, 10}))).mandel_q;
      monotone = monotone && q < previous;
      previous = q;
    }
  }
  ok = ok && max_q <= 1e-12 && monotone;
  detail += fmt::format("EBS max Q {:.3g}, Q decreasing in k: {}", max_q, monotone ? "yes" : "no");

  const auto fig2 = run_sweep(preset_spec("fig2"));
  for (unsigned k = 1; k <= 3; ++k) {
    const auto sub = interval_below(fig2, k, [](const StatisticsReport& s) { return s.mandel_q.value_or(0.0); }, 0.0);
    ok = ok && sub.points > 0;
    detail += fmt::format("; ENBS k={} Q<0 on {} pts", k, sub.points);
  }

  const auto fig3 = run_sweep(preset_spec("fig3"));
  double previous_length = INFINITY;
  for (unsigned k = 0; k <= 3; ++k) {
    const auto sq = interval_below(fig3, k, [](const StatisticsReport& s) { return s.var_x; }, kVacuumVariance);
    const double length = sq.last - sq.first;
    ok = ok && sq.points > 0 && sq.contiguous && length < previous_length;
    previous_length = length;
    detail += fmt::format("; EBS k={} Var(x)<1/4 on [{:.3f},{:.3f}]", k, sq.first, sq.last);
  }

  const auto fig4 = run_sweep(preset_spec("fig4"));
  for (unsigned k = 0; k <= 3; ++k) {
    const auto sq = interval_below(fig4, k, [](const StatisticsReport& s) { return s.var_p; }, kVacuumVariance);
    ok = ok && sq.points > 0;
    detail += fmt::format("; ENBS k={} Var(p)<1/4 on [{:.3f},{:.3f}]", k, sq.first, sq.last);
  }
  return {ok, detail};
}

Outcome check_coherent_limit() {
  constexpr double kFinalThreshold = 1e-3;
  bool ok = true;
  std::string detail;
  for (const unsigned k : {1u, 2u}) {
    for (const double alpha : {0.5, 1.0}) {
      const auto ecs = ecs_expansion(k, alpha);
      for (const Family family : {Family::ebs, Family::enbs}) {
        double previous = INFINITY;
        double last = 0.0;
        for (const unsigned M : {100u, 1000u, 10000u}) {
          const double eta = alpha / std::sqrt(static_cast<double>(M));
          last = limit_distance(state_expansion({family, k, eta, M}), ecs);
          ok = ok && last < previous;
          previous = last;
        }
        ok = ok && last < kFinalThreshold;
        detail += fmt::format("{}{} k={} alpha={}: {:.2e}", detail.empty() ? "" : "; ", to_string(family), k, alpha, last);
      }
    }
  }
  return {ok, "distance to ECS at M=10^4: " + detail};
}

CheckResult timed(std::string name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult result{std::move(name), false, {}, 0.0};
  try {
    const auto outcome = body();
    result.passed = outcome.passed;
    result.detail = outcome.detail;
  } catch (const std::exception& e) {
    result.detail = fmt::format("threw: {}", e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

VerifySummary verify_suite(VerifyLevel level) {
  const bool full = level == VerifyLevel::full;
  VerifySummary summary;
  summary.checks.push_back(timed("route_agreement", [&] { return check_route_agreement(full); }));
  summary.checks.push_back(timed("closed_form_q", check_closed_form_q));
  summary.checks.push_back(timed("oracle_equivalence", [&] { return check_oracle_equivalence(full); }));
  summary.checks.push_back(timed("operator_identities", check_operator_identities));
  summary.checks.push_back(timed("endpoint_limits", check_endpoint_limits));
  summary.checks.push_back(timed("record_invariants", check_record_invariants));
  summary.checks.push_back(timed("qualitative_claims", check_qualitative_claims));
  if (full) summary.checks.push_back(timed("coherent_limit_chain", check_coherent_limit));
  return summary;
}

std::string render_summary(const VerifySummary& summary) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& c : summary.checks) {
    out += fmt::format("[{}] {:<22} {:7.3f}s  {}\n", c.passed ? "PASS" : "FAIL", c.name, c.seconds, c.detail);
    passed += c.passed ? 1 : 0;
  }
  out += fmt::format("{}/{} checks passed\n", passed, summary.checks.size());
  return out;
}

}  // namespace fockstat
