// fockstat: sweeps, single-state reports and self-verification for excited
// binomial and negative binomial states.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fockstat/errors.hpp"
#include "fockstat/report.hpp"
#include "fockstat/sweep.hpp"
#include "fockstat/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct SweepOptions {
  std::string config;
  std::string family;
  std::string k;
  unsigned M = 0;
  double eta_start = 0.0;
  double eta_stop = 0.0;
  std::size_t eta_count = 0;
  std::string observables;
  double tail_tol = 0.0;
  std::string format;
  std::string out;
};

void add_output_flags(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--format", o.format, "Output format: csv or json");
  cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw fockstat::UsageError("cannot open output file '" + path + "'");
  file << text;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw fockstat::UsageError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

fockstat::SweepSpec build_sweep_spec(const CLI::App& cmd, const SweepOptions& o) {
  fockstat::SweepSpec spec;
  if (!o.config.empty()) spec = fockstat::parse_sweep_config(read_file(o.config));
  // Explicit flags override the config file.
  if (cmd.count("--family")) spec.family = fockstat::parse_family(o.family);
  if (cmd.count("--k")) spec.k_values = fockstat::parse_k_list(o.k);
  if (cmd.count("--M")) spec.M = o.M;
  if (cmd.count("--eta-start")) spec.eta_grid.start = o.eta_start;
  if (cmd.count("--eta-stop")) spec.eta_grid.stop = o.eta_stop;
  if (cmd.count("--eta-count")) spec.eta_grid.count = o.eta_count;
  if (cmd.count("--observables")) spec.observables = fockstat::parse_observable_list(o.observables);
  if (cmd.count("--tail-tol")) spec.tail_tolerance = o.tail_tol;
  if (cmd.count("--format")) spec.output_format = fockstat::parse_output_format(o.format);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon statistics of excited binomial and negative binomial states"};
  app.require_subcommand(1);

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Evaluate observables over a (k, eta) grid");
  sweep->add_option("--config", sweep_opts.config, "JSON sweep specification");
  sweep->add_option("--family", sweep_opts.family, "BS, NBS, EBS or ENBS");
  sweep->add_option("--k", sweep_opts.k, "Comma-separated excitation orders");
  sweep->add_option("--M", sweep_opts.M, "Index M (>= 1)");
  sweep->add_option("--eta-start", sweep_opts.eta_start, "First eta grid point");
  sweep->add_option("--eta-stop", sweep_opts.eta_stop, "Last eta grid point");
  sweep->add_option("--eta-count", sweep_opts.eta_count, "Number of eta grid points (>= 2)");
  sweep->add_option("--observables", sweep_opts.observables, "Comma list of mean_n, mandel_q, var_x, var_p");
  sweep->add_option("--tail-tol", sweep_opts.tail_tol, "Relative tail tolerance for truncated series");
  add_output_flags(sweep, sweep_opts);

  std::string report_family = "EBS";
  unsigned report_k = 0;
  double report_eta = 0.0;
  unsigned report_M = 1;
  double report_tail = fockstat::kDefaultTailTolerance;
  std::string report_format = "text";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Full report for a single state");
  report->add_option("--family", report_family, "BS, NBS, EBS or ENBS")->required();
  report->add_option("--k", report_k, "Excitation order");
  report->add_option("--eta", report_eta, "State parameter eta")->required();
  report->add_option("--M", report_M, "Index M (>= 1)")->required();
  report->add_option("--tail-tol", report_tail, "Relative tail tolerance for truncated series");
  report->add_option("--format", report_format, "text or json");
  report->add_option("--out", report_out, "Write output to this file instead of stdout");

  std::string verify_level = "fast";
  auto* verify = app.add_subcommand("verify", "Run the self-verification suite");
  verify->add_option("--level", verify_level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  std::string preset_name;
  SweepOptions preset_opts;
  auto* preset = app.add_subcommand("preset", "Run a named figure-reproduction sweep");
  preset->add_option("name", preset_name, "fig1, fig2, fig3 or fig4")->required();
  add_output_flags(preset, preset_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      const auto spec = build_sweep_spec(*sweep, sweep_opts);
      write_output(fockstat::render(fockstat::run_sweep(spec)), sweep_opts.out);
    } else if (preset->parsed()) {
      auto spec = fockstat::preset_spec(preset_name);
      if (preset->count("--format")) spec.output_format = fockstat::parse_output_format(preset_opts.format);
      write_output(fockstat::render(fockstat::run_sweep(spec)), preset_opts.out);
    } else if (report->parsed()) {
      if (report_format != "text" && report_format != "json") {
        throw fockstat::UsageError("report --format must be text or json");
      }
      const fockstat::StateParams params{fockstat::parse_family(report_family), report_k, report_eta, report_M};
      fockstat::PointReport r;
      try {
        r = fockstat::report_point(params, report_tail);
      } catch (const fockstat::DomainError& e) {
        std::cerr << "error: " << e.what() << " [family=" << report_family << " k=" << report_k
                  << " eta=" << report_eta << " M=" << report_M << "]\n";
        return kExitUsage;
      }
      write_output(report_format == "json" ? fockstat::render_json(r) : fockstat::render_text(r), report_out);
    } else if (verify->parsed()) {
      const auto summary =
          fockstat::verify_suite(verify_level == "full" ? fockstat::VerifyLevel::full : fockstat::VerifyLevel::fast);
      std::cout << fockstat::render_summary(summary);
      return summary.passed() ? kExitOk : kExitVerification;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
