// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exact_rational.hpp"
#include "fockstat/fock_oracle.hpp"
#include "fockstat/observables.hpp"
#include "fockstat/reference_states.hpp"
#include "fockstat/states.hpp"
#include "fockstat/sweep.hpp"
#include "fockstat/verify.hpp"

namespace {

using namespace fockstat;

struct Verdict {
  bool passed = false;
  std::string detail;
};

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::vector<double> nine_point_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 9; ++i) out.push_back(0.1 * i);
  return out;
}

constexpr double kMomentTail = moment_tail_tolerance(kDefaultTailTolerance);

Verdict bs_q_closed_form() {
  double worst = 0.0;
  for (const unsigned M : {2u, 5u, 10u, 50u}) {
    for (const double eta : nine_point_grid()) {
      const auto q = statistics(moments(state_expansion({Family::bs, 0, eta, M}))).mandel_q;
      worst = std::max(worst, q ? std::abs(*q + eta * eta) : INFINITY);
    }
  }
  return {worst <= 1e-10, "max |Q + eta^2| = " + sci(worst)};
}

Verdict nbs_q_closed_form() {
  double worst = 0.0;
  for (const unsigned M : {2u, 5u, 10u, 50u}) {
    for (const double eta : nine_point_grid()) {
      const auto q = statistics(moments(state_expansion({Family::nbs, 0, eta, M}, kMomentTail))).mandel_q;
      worst = std::max(worst, q ? rel(*q, eta * eta / (1 - eta * eta)) : INFINITY);
    }
  }
  return {worst <= 1e-9, "max relative error " + sci(worst)};
}

Verdict route_agreement() {
  double worst = 0.0;
  for (const unsigned M : {1u, 2u, 5u, 10u, 50u}) {
    for (unsigned k = 0; k <= 5; ++k) {
      for (const double eta : nine_point_grid()) {
        const double d = normalization_ebs(k, eta, M, NormalizationRoute::direct_sum).value;
        const double h = normalization_ebs(k, eta, M, NormalizationRoute::hypergeometric).value;
        const double nd = normalization_enbs(k, eta, M, NormalizationRoute::direct_sum).value;
        const double nf = normalization_enbs(k, eta, M, NormalizationRoute::finite_sum).value;
        const double nh = normalization_enbs(k, eta, M, NormalizationRoute::hypergeometric).value;
        worst = std::max({worst, rel(d, h), rel(nd, nf), rel(nd, nh), rel(nf, nh)});
      }
    }
  }
  return {worst <= 1e-10, "max pairwise relative difference " + sci(worst)};
}

Verdict oracle_equivalence() {
  std::size_t compared = 0;
  std::size_t skipped = 0;
  double worst = 0.0;
  bool ok = true;
  for (const Family family : {Family::ebs, Family::enbs}) {
    for (const unsigned M : {1u, 2u, 5u, 10u, 50u}) {
      for (unsigned k = 0; k <= 5; ++k) {
        for (const double eta : nine_point_grid()) {
          const auto e = state_expansion({family, k, eta, M}, kMomentTail);
          if (safe_dimension(e, 4) > 300) {
            ++skipped;
            continue;
          }
          ++compared;
          const auto f = moments(e);
          const auto o = oracle_moments(e);
          for (const auto& [x, y] : {std::pair{f.mean_a, o.mean_a}, std::pair{f.mean_a2, o.mean_a2},
                                     std::pair{f.mean_n, o.mean_n}, std::pair{f.mean_n2, o.mean_n2}}) {
            const bool near = std::abs(x - y) <= 1e-12 || rel(x, y) <= 1e-10;
            ok = ok && near;
            if (std::abs(x - y) > 1e-12) worst = std::max(worst, rel(x, y));
          }
        }
      }
    }
  }
  return {ok && compared > 0, std::to_string(compared) + " states, " + std::to_string(skipped) +
                                  " above dimension 300, worst relative gap " + sci(worst)};
}

Verdict endpoint_limits() {
  double worst = 0.0;
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& [family, eta] : {std::pair{Family::ebs, 1e-4}, std::pair{Family::ebs, 1 - 1e-4},
                                      std::pair{Family::enbs, 1e-4}}) {
      const auto q = statistics(moments(state_expansion({family, k, eta, 10}, kMomentTail))).mandel_q;
      worst = std::max(worst, q ? std::abs(*q + 1) : INFINITY);
    }
  }
  return {worst <= 1e-3, "max |Q + 1| = " + sci(worst)};
}

Verdict coherent_limit_chain() {
  bool ok = true;
  double worst_final = 0.0;
  for (const unsigned k : {1u, 2u}) {
    for (const double alpha : {0.5, 1.0}) {
      const auto ecs = ecs_expansion(k, alpha);
      for (const Family family : {Family::ebs, Family::enbs}) {
        double previous = INFINITY;
        for (const unsigned M : {100u, 1000u, 10000u}) {
          const double eta = alpha / std::sqrt(static_cast<double>(M));
          const double d = limit_distance(state_expansion({family, k, eta, M}), ecs);
          ok = ok && d < previous;
          previous = d;
        }
        worst_final = std::max(worst_final, previous);
      }
    }
  }
  ok = ok && worst_final < 1e-3;
  return {ok, "strictly decreasing in M; max distance at M=10^4 " + sci(worst_final)};
}

struct Interval {
  std::size_t points = 0;
  double first = 0.0;
  double last = 0.0;
};

Interval below(const Dataset& data, unsigned k, const std::function<std::optional<double>(const StatisticsReport&)>& get,
               double threshold) {
  Interval out;
  for (const auto& r : data.records) {
    if (r.k != k || !r.stats) continue;
    const auto v = get(*r.stats);
    if (!v || !(*v < threshold)) continue;
    if (out.points++ == 0) out.first = r.eta;
    out.last = r.eta;
  }
  return out;
}

Verdict qualitative_claims() {
  bool ok = true;
  std::string detail;

  const auto fig1 = run_sweep(preset_spec("fig1"));
  double max_q = -INFINITY;
  for (const auto& r : fig1.records) {
    ok = ok && r.ok();
    if (r.stats && r.stats->mandel_q) max_q = std::max(max_q, *r.stats->mandel_q);
  }
  bool decreasing = true;
  for (const double eta : {0.3, 0.5, 0.7}) {
    double previous = INFINITY;
    for (unsigned k = 0; k <= 3; ++k) {
      const auto q = *statistics(moments(state_expansion({Family::ebs, k, eta, 10}))).mandel_q;
      decreasing = decreasing && q < previous;
      previous = q;
    }
  }
  ok = ok && max_q <= 0.0 && decreasing;
  detail += "(a) max Q(EBS) " + sci(max_q) + (decreasing ? ", decreasing in k" : ", NOT decreasing in k");

  const auto fig2 = run_sweep(preset_spec("fig2"));
  for (unsigned k = 1; k <= 3; ++k) {
    const auto sub = below(fig2, k, [](const StatisticsReport& s) { return s.mandel_q; }, 0.0);
    ok = ok && sub.points > 0;
    if (k == 1) detail += "; (b) ENBS Q<0 points k=1..3:";
    detail += " " + std::to_string(sub.points);
  }

  const auto fig3 = run_sweep(preset_spec("fig3"));
  double previous_length = INFINITY;
  detail += "; (c) Var(x)<1/4 lengths:";
  for (unsigned k = 0; k <= 3; ++k) {
    const auto sq = below(fig3, k, [](const StatisticsReport& s) { return std::optional(s.var_x); }, 0.25);
    const double length = sq.last - sq.first;
    ok = ok && sq.points > 0 && length < previous_length;
    previous_length = length;
    char buf[24];
    std::snprintf(buf, sizeof buf, " %.3f", length);
    detail += buf;
  }

  const auto fig4 = run_sweep(preset_spec("fig4"));
  detail += "; (d) Var(p)<1/4 points:";
  for (unsigned k = 0; k <= 3; ++k) {
    const auto sq = below(fig4, k, [](const StatisticsReport& s) { return std::optional(s.var_p); }, 0.25);
    ok = ok && sq.points > 0;
    detail += " " + std::to_string(sq.points);
  }
  return {ok, detail};
}

Verdict universal_invariants() {
  const auto summary = verify_suite(VerifyLevel::fast);
  const auto it = std::find_if(summary.checks.begin(), summary.checks.end(),
                               [](const CheckResult& c) { return c.name == "record_invariants"; });
  if (it == summary.checks.end()) return {false, "verify fast has no record_invariants check"};

  // Independent re-check of every preset record.
  std::size_t records = 0;
  std::size_t bad = 0;
  for (const auto name : preset_names()) {
    for (const auto& r : run_sweep(preset_spec(name)).records) {
      ++records;
      const bool good = r.ok() && r.stats && std::abs(r.norm_squared - 1) <= 1e-12 &&
                        r.stats->var_x * r.stats->var_p >= 1.0 / 16 - 1e-12 &&
                        (!r.stats->mandel_q || *r.stats->mandel_q >= -1);
      bad += good ? 0 : 1;
    }
  }
  return {it->passed && summary.passed() && bad == 0,
          "verify fast " + std::string(summary.passed() ? "passed" : "FAILED") + " (" + it->detail + "); " +
              std::to_string(records - bad) + "/" + std::to_string(records) + " preset records re-checked"};
}

Verdict exact_rational_spot_checks() {
  using oracle::Rational;
  const double expected = oracle::to_double(oracle::enbs_finite_sum(1, oracle::parse_rational("1/4"), 1));
  bool ok = expected == 4.0 / 3.0;
  double worst_four_thirds = 0.0;
  for (const auto route : {NormalizationRoute::direct_sum, NormalizationRoute::finite_sum,
                           NormalizationRoute::hypergeometric}) {
    worst_four_thirds = std::max(worst_four_thirds, rel(normalization_enbs(1, 0.5, 1, route).value, expected));
  }
  ok = ok && normalization_enbs(1, 0.5, 1, NormalizationRoute::finite_sum).value == expected &&
       worst_four_thirds <= 1e-13;

  double worst_endpoint = 0.0;
  for (unsigned k = 0; k <= 5; ++k) {
    for (unsigned M = 1; M <= 10; ++M) {
      const double k_factorial = oracle::to_double(Rational(oracle::factorial(k)));
      const double top = oracle::to_double(Rational(oracle::factorial(M + k), oracle::factorial(M)));
      // The exact direct sum at eta^2 = 0 and 1 must reproduce the same factorials.
      ok = ok && oracle::ebs_normalization(k, 0, M) == Rational(oracle::factorial(k)) &&
           oracle::ebs_normalization(k, 1, M) == Rational(oracle::factorial(M + k), oracle::factorial(M));
      worst_endpoint = std::max(
          {worst_endpoint, rel(normalization_ebs(k, 0.0, M, NormalizationRoute::direct_sum).value, k_factorial),
           rel(normalization_ebs(k, 1.0, M, NormalizationRoute::direct_sum).value, top),
           rel(normalization_ebs(k, 1.0, M, NormalizationRoute::hypergeometric).value, top)});
    }
  }
  ok = ok && worst_endpoint <= 1e-13;
  return {ok, "4/3 worst relative error " + sci(worst_four_thirds) + ", endpoint factorials worst " +
                  sci(worst_endpoint)};
}

struct Criterion {
  int number;
  const char* name;
  double time_limit;
  std::function<Verdict()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "BS Mandel Q equals -eta^2", 1.0, bs_q_closed_form},
      {2, "NBS Mandel Q equals eta^2/(1-eta^2)", 1.0, nbs_q_closed_form},
      {3, "normalization routes agree", 5.0, route_agreement},
      {4, "moments match the matrix oracle", 30.0, oracle_equivalence},
      {5, "endpoint Q tends to -1", 1.0, endpoint_limits},
      {6, "coherent / ECS limit chain", 60.0, coherent_limit_chain},
      {7, "qualitative claims on preset grids", 10.0, qualitative_claims},
      {8, "universal record invariants", 10.0, universal_invariants},
      {9, "exact-rational spot checks", 1.0, exact_rational_spot_checks},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit;
    const bool passed = v.passed && in_time;
    failures += passed ? 0 : 1;
    std::printf("%s criterion %d: %s [%.3fs / limit %.0fs%s] %s\n", passed ? "PASS" : "FAIL", c.number, c.name,
                seconds, c.time_limit, in_time ? "" : ", TOO SLOW", v.detail.c_str());
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
