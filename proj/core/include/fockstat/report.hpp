#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fockstat/observables.hpp"
#include "fockstat/states.hpp"

namespace fockstat {

struct RouteEvaluation {
  NormalizationRoute route = NormalizationRoute::direct_sum;
  std::optional<NormalizationValue> value;
  std::string error;  // set when the route is singular at these parameters
};

/// Everything known about one state: normalization by every applicable
/// route, moments by both the normalization-ratio and amplitude-sum paths,
/// and the derived statistics.
struct PointReport {
  StateParams params;
  double tail_tolerance = kDefaultTailTolerance;
  std::vector<RouteEvaluation> routes;
  /// Largest pairwise relative difference among the routes that succeeded.
  double max_route_discrepancy = 0.0;
  NumberMoments ratio_moments;
  std::optional<double> ratio_mandel_q;
  MomentSet moments;
  StatisticsReport stats;
  double norm_squared = 0.0;
  double truncation_tail_bound = 0.0;
  std::size_t top_index = 0;
};

/// Throws DomainError for invalid parameters.
PointReport report_point(const StateParams& params, double tail_tolerance = kDefaultTailTolerance);

std::string render_text(const PointReport& report);
std::string render_json(const PointReport& report);

}  // namespace fockstat
