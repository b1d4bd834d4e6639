#include "fockstat/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include <fmt/core.h>

#include "json.hpp"

#include "fockstat/errors.hpp"

namespace fockstat {

using json = nlohmann::ordered_json;

std::string_view to_string(Observable observable) {
  switch (observable) {
    case Observable::mean_n: return "mean_n";
    case Observable::mandel_q: return "mandel_q";
    case Observable::var_x: return "var_x";
    case Observable::var_p: return "var_p";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

Observable parse_observable(std::string_view text) {
  for (const auto o : {Observable::mean_n, Observable::mandel_q, Observable::var_x, Observable::var_p}) {
    if (to_string(o) == text) return o;
  }
  throw UsageError(fmt::format("unknown observable '{}' (expected mean_n, mandel_q, var_x or var_p)", text));
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw UsageError(fmt::format("unknown output format '{}' (expected csv or json)", text));
}

namespace {

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) throw UsageError(fmt::format("empty entry in list '{}'", text));
    out.push_back(item);
  }
  return out;
}

}  // namespace

std::vector<unsigned> parse_k_list(std::string_view text) {
  std::vector<unsigned> out;
  for (const auto& item : split_commas(text)) {
    if (!std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw UsageError(fmt::format("k value '{}' is not a non-negative integer", item));
    }
    try {
      out.push_back(static_cast<unsigned>(std::stoul(item)));
    } catch (const std::exception&) {
      throw UsageError(fmt::format("k value '{}' is out of range", item));
    }
  }
  return out;
}

std::vector<Observable> parse_observable_list(std::string_view text) {
  std::vector<Observable> out;
  for (const auto& item : split_commas(text)) out.push_back(parse_observable(item));
  return out;
}

std::vector<double> EtaGrid::points() const {
  std::vector<double> out(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  if (count > 0) out.back() = stop;
  return out;
}

void SweepSpec::validate() const {
  if (k_values.empty()) throw UsageError("k_values must be non-empty");
  if (!is_excited(family) && std::any_of(k_values.begin(), k_values.end(), [](unsigned k) { return k != 0; })) {
    throw UsageError(fmt::format("family {} requires k_values = [0]", to_string(family)));
  }
  if (M < 1) throw UsageError("M must be at least 1");
  if (eta_grid.count < 2) throw UsageError("eta_grid.count must be at least 2");
  if (!(eta_grid.start >= 0.0 && eta_grid.start < eta_grid.stop && eta_grid.stop <= 1.0)) {
    throw UsageError(fmt::format("eta_grid requires 0 <= start < stop <= 1 (got start={}, stop={})", eta_grid.start,
                                 eta_grid.stop));
  }
  if (is_negative_binomial(family) && !(eta_grid.stop < 1.0)) {
    throw UsageError(fmt::format("eta_grid.stop must be < 1 for family {}", to_string(family)));
  }
  if (observables.empty()) throw UsageError("observables must be non-empty");
  if (!(tail_tolerance > 0.0 && tail_tolerance <= 1e-8)) {
    throw UsageError(fmt::format("tail_tolerance must lie in (0, 1e-8] (got {})", tail_tolerance));
  }
}

namespace {

SweepRecord evaluate_point(const SweepSpec& spec, unsigned k, double eta) {
  SweepRecord record{spec.family, k, eta, spec.M, std::nullopt, 0.0, 0.0, {}};
  try {
    const StateParams params{spec.family, k, eta, spec.M};
    const auto expansion = state_expansion(params, moment_tail_tolerance(spec.tail_tolerance));
    const auto amplitude = amplitude_moments(expansion);
    const auto number = number_moments(expansion);
    const MomentSet m{amplitude.mean_a, amplitude.mean_a2, number.mean_n, number.mean_n2};
    const auto stats = statistics(m);
    record.norm_squared = expansion.norm_squared();
    record.truncation_tail_bound = expansion.truncation_tail_bound;

    std::vector<std::string> violations;
    const double mass = record.norm_squared + record.truncation_tail_bound;
    if (!(record.norm_squared <= 1.0 + kRecordNormTolerance && mass >= 1.0 - kRecordNormTolerance)) {
      violations.push_back(fmt::format("normalization {:.17g} outside 1 +/- {}", record.norm_squared,
                                       kRecordNormTolerance));
    }
    if (!(stats.var_x * stats.var_p >= 1.0 / 16.0 - kRecordHeisenbergSlack)) {
      violations.push_back(fmt::format("Heisenberg bound violated: var_x*var_p = {:.17g}", stats.var_x * stats.var_p));
    }
    if (stats.mandel_q && !(*stats.mandel_q >= -1.0 - kRecordHeisenbergSlack)) {
      violations.push_back(fmt::format("Mandel Q = {:.17g} below -1", *stats.mandel_q));
    }
    if (!(amplitude.truncation_bound < kAmplitudeTailLimit)) {
      violations.push_back(fmt::format("amplitude-moment tail bound {:.3g} exceeds {}", amplitude.truncation_bound,
                                       kAmplitudeTailLimit));
    }
    if (!violations.empty()) {
      record.error = violations.front();
      for (std::size_t i = 1; i < violations.size(); ++i) record.error += "; " + violations[i];
      return record;
    }
    record.stats = stats;
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  return record;
}

std::optional<double> observable_value(const StatisticsReport& s, Observable o) {
  switch (o) {
    case Observable::mean_n: return s.mean_photon;
    case Observable::mandel_q: return s.mandel_q;
    case Observable::var_x: return s.var_x;
    case Observable::var_p: return s.var_p;
  }
  return std::nullopt;
}

json spec_json(const SweepSpec& spec) {
  json obs = json::array();
  for (const auto o : spec.observables) obs.push_back(std::string(to_string(o)));
  return json{{"family", std::string(to_string(spec.family))},
              {"k_values", spec.k_values},
              {"M", spec.M},
              {"eta_grid", {{"start", spec.eta_grid.start}, {"stop", spec.eta_grid.stop}, {"count", spec.eta_grid.count}}},
              {"observables", obs},
              {"tail_tolerance", spec.tail_tolerance},
              {"output_format", std::string(to_string(spec.output_format))}};
}

}  // namespace

Dataset run_sweep(const SweepSpec& spec) {
  spec.validate();
  Dataset out{spec, {}};
  const auto etas = spec.eta_grid.points();
  out.records.reserve(spec.k_values.size() * etas.size());
  for (const unsigned k : spec.k_values) {
    for (double eta : etas) {
      if (is_negative_binomial(spec.family)) eta = std::min(eta, kEnbsEtaCeiling);
      out.records.push_back(evaluate_point(spec, k, eta));
    }
  }
  return out;
}

std::string render_csv(const Dataset& dataset) {
  std::string out = "family,k,eta,M";
  for (const auto o : dataset.spec.observables) {
    out += ',';
    out += to_string(o);
  }
  out += '\n';
  for (const auto& r : dataset.records) {
    out += fmt::format("{},{},{:.17g},{}", to_string(r.family), r.k, r.eta, r.M);
    for (const auto o : dataset.spec.observables) {
      out += ',';
      if (!r.stats) continue;
      if (const auto v = observable_value(*r.stats, o)) out += fmt::format("{:.17g}", *v);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Dataset& dataset) {
  json records = json::array();
  for (const auto& r : dataset.records) {
    json rec{{"family", std::string(to_string(r.family))}, {"k", r.k}, {"eta", r.eta}, {"M", r.M}};
    for (const auto o : dataset.spec.observables) {
      const auto v = r.stats ? observable_value(*r.stats, o) : std::nullopt;
      rec[std::string(to_string(o))] = v ? json(*v) : json(nullptr);
    }
    if (!r.ok()) rec["error"] = r.error;
    records.push_back(std::move(rec));
  }
  return json{{"spec", spec_json(dataset.spec)}, {"records", records}}.dump(2) + "\n";
}

std::string render(const Dataset& dataset) {
  return dataset.spec.output_format == OutputFormat::csv ? render_csv(dataset) : render_json(dataset);
}

std::vector<std::string_view> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

SweepSpec preset_spec(std::string_view name) {
  SweepSpec spec;
  spec.k_values = {0, 1, 2, 3};
  spec.M = 10;
  spec.eta_grid = {0.0, 1.0, 201};
  if (name == "fig1") {
    spec.family = Family::ebs;
    spec.observables = {Observable::mandel_q};
  } else if (name == "fig2") {
    spec.family = Family::enbs;
    spec.eta_grid.stop = 0.95;
    spec.observables = {Observable::mandel_q};
  } else if (name == "fig3") {
    spec.family = Family::ebs;
    spec.observables = {Observable::var_x};
  } else if (name == "fig4") {
    spec.family = Family::enbs;
    spec.eta_grid.stop = 0.95;
    spec.observables = {Observable::var_p};
  } else {
    throw UsageError(fmt::format("unknown preset '{}' (expected fig1, fig2, fig3 or fig4)", name));
  }
  return spec;
}

namespace {

unsigned unsigned_field(const json& value, std::string_view name) {
  if (!value.is_number_unsigned()) {
    throw UsageError(fmt::format("config field {} must be a non-negative integer (got {})", name, value.dump()));
  }
  return value.get<unsigned>();
}

}  // namespace

SweepSpec parse_sweep_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  SweepSpec spec;
  try {
    if (j.contains("family")) spec.family = parse_family(j.at("family").get<std::string>());
    if (j.contains("k_values")) {
      spec.k_values.clear();
      for (const auto& k : j.at("k_values")) spec.k_values.push_back(unsigned_field(k, "k_values"));
    }
    if (j.contains("M")) spec.M = unsigned_field(j.at("M"), "M");
    if (j.contains("eta_grid")) {
      const auto& g = j.at("eta_grid");
      if (g.contains("start")) spec.eta_grid.start = g.at("start").get<double>();
      if (g.contains("stop")) spec.eta_grid.stop = g.at("stop").get<double>();
      if (g.contains("count")) spec.eta_grid.count = unsigned_field(g.at("count"), "eta_grid.count");
    }
    if (j.contains("observables")) {
      spec.observables.clear();
      for (const auto& o : j.at("observables")) spec.observables.push_back(parse_observable(o.get<std::string>()));
    }
    if (j.contains("tail_tolerance")) spec.tail_tolerance = j.at("tail_tolerance").get<double>();
    if (j.contains("output_format")) spec.output_format = parse_output_format(j.at("output_format").get<std::string>());
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config field has the wrong type: {}", e.what()));
  }
  return spec;
}

std::string sweep_spec_to_json(const SweepSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

}  // namespace fockstat
