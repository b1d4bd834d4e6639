#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockstat/observables.hpp"
#include "fockstat/states.hpp"

namespace fockstat {

enum class Observable { mean_n, mandel_q, var_x, var_p };
enum class OutputFormat { csv, json };

std::string_view to_string(Observable observable);
std::string_view to_string(OutputFormat format);
Observable parse_observable(std::string_view text);
OutputFormat parse_output_format(std::string_view text);

/// Comma-separated lists, e.g. "0,1,2" and "mandel_q,var_x". Throw UsageError.
std::vector<unsigned> parse_k_list(std::string_view text);
std::vector<Observable> parse_observable_list(std::string_view text);

/// Uniform grid including both endpoints.
struct EtaGrid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 11;

  std::vector<double> points() const;
};

/// Negative binomial grid points are pulled below this.
inline constexpr double kEnbsEtaCeiling = 1.0 - 1e-6;
/// Slack allowed on the per-record invariants checked at emission.
inline constexpr double kRecordNormTolerance = 1e-12;
inline constexpr double kRecordHeisenbergSlack = 1e-12;

struct SweepSpec {
  Family family = Family::ebs;
  std::vector<unsigned> k_values{0};
  unsigned M = 10;
  EtaGrid eta_grid;
  std::vector<Observable> observables{Observable::mean_n, Observable::mandel_q, Observable::var_x, Observable::var_p};
  double tail_tolerance = kDefaultTailTolerance;
  OutputFormat output_format = OutputFormat::csv;

  /// Throws UsageError naming the violated constraint.
  void validate() const;
};

struct SweepRecord {
  Family family = Family::ebs;
  unsigned k = 0;
  double eta = 0.0;
  unsigned M = 1;
  std::optional<StatisticsReport> stats;
  double norm_squared = 0.0;
  double truncation_tail_bound = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct Dataset {
  SweepSpec spec;
  std::vector<SweepRecord> records;  // k-major, then eta in grid order
};

/// Evaluates every (k, eta) grid point. A failing point becomes an error
/// record; the rest of the sweep continues.
Dataset run_sweep(const SweepSpec& spec);

/// Header `family,k,eta,M,<observables...>`; 17 significant digits; an
/// undefined Q (and every observable of an error record) is an empty field.
std::string render_csv(const Dataset& dataset);
/// {"spec": {...}, "records": [...]}; undefined Q is null and error records
/// carry an "error" string.
std::string render_json(const Dataset& dataset);
std::string render(const Dataset& dataset);

std::vector<std::string_view> preset_names();
/// fig1: EBS Q; fig2: ENBS Q; fig3: EBS Var(x); fig4: ENBS Var(p). k in
/// {0,1,2,3}, M = 10, 201 eta points. Throws UsageError for unknown names.
SweepSpec preset_spec(std::string_view name);

/// JSON object with the SweepSpec field names; missing fields keep their
/// defaults. Throws UsageError on malformed input.
SweepSpec parse_sweep_config(std::string_view json_text);
std::string sweep_spec_to_json(const SweepSpec& spec);

}  // namespace fockstat
