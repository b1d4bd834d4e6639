#include "fockstat/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "json.hpp"

#include "fockstat/errors.hpp"

namespace fockstat {

using json = nlohmann::ordered_json;

PointReport report_point(const StateParams& params, double tail_tolerance) {
  params.validate();
  PointReport out;
  out.params = params;
  out.tail_tolerance = tail_tolerance;

  const bool negative = is_negative_binomial(params.family);
  const std::vector<NormalizationRoute> routes =
      negative ? std::vector{NormalizationRoute::direct_sum, NormalizationRoute::finite_sum,
                             NormalizationRoute::hypergeometric}
               : std::vector{NormalizationRoute::direct_sum, NormalizationRoute::hypergeometric};
  for (const auto route : routes) {
    RouteEvaluation ev{route, std::nullopt, {}};
    try {
      ev.value = negative ? normalization_enbs(params.k, params.eta, params.M, route, tail_tolerance)
                          : normalization_ebs(params.k, params.eta, params.M, route);
    } catch (const RouteError& e) {
      ev.error = e.what();
    }
    out.routes.push_back(std::move(ev));
  }
  for (std::size_t i = 0; i < out.routes.size(); ++i) {
    for (std::size_t j = i + 1; j < out.routes.size(); ++j) {
      if (!out.routes[i].value || !out.routes[j].value) continue;
      const double a = out.routes[i].value->value;
      const double b = out.routes[j].value->value;
      out.max_route_discrepancy = std::max(out.max_route_discrepancy, std::abs(a - b) / std::max(a, b));
    }
  }

  out.ratio_moments = number_moments_from_normalization(params.family, params.k, params.eta, params.M);
  out.ratio_mandel_q = mandel_q(out.ratio_moments.mean_n, out.ratio_moments.mean_n2);

  const auto expansion = state_expansion(params, moment_tail_tolerance(tail_tolerance));
  out.moments = moments(expansion);
  out.stats = statistics(out.moments);
  out.norm_squared = expansion.norm_squared();
  out.truncation_tail_bound = expansion.truncation_tail_bound;
  out.top_index = expansion.top();
  return out;
}

namespace {

std::string optional_number(const std::optional<double>& v) {
  return v ? fmt::format("{:.17g}", *v) : std::string("undefined");
}

}  // namespace

std::string render_text(const PointReport& r) {
  std::string out = fmt::format("state        {} k={} eta={:.17g} M={}\n", to_string(r.params.family), r.params.k,
                                r.params.eta, r.params.M);
  out += "normalization\n";
  for (const auto& route : r.routes) {
    if (route.value) {
      out += fmt::format("  {:<15} {:.17g}  (terms {})\n", to_string(route.route), route.value->value,
                         route.value->terms_used);
    } else {
      out += fmt::format("  {:<15} unavailable: {}\n", to_string(route.route), route.error);
    }
  }
  out += fmt::format("  max route discrepancy {:.3e}\n", r.max_route_discrepancy);
  out += fmt::format("expansion    top index {}  sum |D_n|^2 = {:.17g}  tail bound {:.3e}\n", r.top_index,
                     r.norm_squared, r.truncation_tail_bound);
  out += "moments\n";
  out += fmt::format("  <a>          {:.17g}\n", r.moments.mean_a);
  out += fmt::format("  <a^2>        {:.17g}\n", r.moments.mean_a2);
  out += fmt::format("  <n>          {:.17g}  (normalization ratio {:.17g})\n", r.moments.mean_n,
                     r.ratio_moments.mean_n);
  out += fmt::format("  <n^2>        {:.17g}  (normalization ratio {:.17g})\n", r.moments.mean_n2,
                     r.ratio_moments.mean_n2);
  out += "statistics\n";
  out += fmt::format("  mean photon  {:.17g}\n", r.stats.mean_photon);
  out += fmt::format("  Mandel Q     {}\n", optional_number(r.stats.mandel_q));
  out += fmt::format("  Var(x)       {:.17g}{}\n", r.stats.var_x, r.stats.x_squeezed ? "  squeezed" : "");
  out += fmt::format("  Var(p)       {:.17g}{}\n", r.stats.var_p, r.stats.p_squeezed ? "  squeezed" : "");
  return out;
}

std::string render_json(const PointReport& r) {
  json routes = json::array();
  for (const auto& route : r.routes) {
    json entry{{"route", std::string(to_string(route.route))}};
    if (route.value) {
      entry["value"] = route.value->value;
      entry["terms_used"] = route.value->terms_used;
      entry["relative_tail_bound"] = route.value->relative_tail_bound;
    } else {
      entry["value"] = nullptr;
      entry["error"] = route.error;
    }
    routes.push_back(std::move(entry));
  }
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j{
      {"family", std::string(to_string(r.params.family))},
      {"k", r.params.k},
      {"eta", r.params.eta},
      {"M", r.params.M},
      {"tail_tolerance", r.tail_tolerance},
      {"normalization", {{"routes", routes}, {"max_route_discrepancy", r.max_route_discrepancy}}},
      {"expansion",
       {{"offset", r.params.k}, {"top", r.top_index}, {"norm_squared", r.norm_squared},
        {"truncation_tail_bound", r.truncation_tail_bound}}},
      {"moments",
       {{"mean_a", r.moments.mean_a}, {"mean_a2", r.moments.mean_a2}, {"mean_n", r.moments.mean_n},
        {"mean_n2", r.moments.mean_n2}}},
      {"ratio_moments",
       {{"mean_n", r.ratio_moments.mean_n}, {"mean_n2", r.ratio_moments.mean_n2},
        {"mandel_q", opt(r.ratio_mandel_q)}}},
      {"statistics",
       {{"mean_photon", r.stats.mean_photon}, {"mandel_q", opt(r.stats.mandel_q)}, {"var_x", r.stats.var_x},
        {"var_p", r.stats.var_p}, {"x_squeezed", r.stats.x_squeezed}, {"p_squeezed", r.stats.p_squeezed}}}};
  return j.dump(2) + "\n";
}

}  // namespace fockstat
