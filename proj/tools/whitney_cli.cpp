// whitney_cli: Whitney extension and trace functionals from the command line.
//
//   extend      --input data.csv -m 2 -p 2 [--samples N] [--pad R] [--out F.csv] [--report r.json] [--oracle]
//   functionals --input data.csv -m 2 -p inf [--report r.json] [--oracle]
//   constants   -m 5 [--json c.json]
//   selftest    [--seed S] [--second-seed S2] [--only K] [--report r.json] [--perturb-gap]
//
// Exit codes: 0 ok, 1 selftest criterion failed, 2 parse, 3 insufficient
// data, 4 invalid config, 5 numerical failure. WHITNEY_TOLERANCES may name
// a JSON file of tolerance overrides.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_io.hpp"

namespace {

using namespace whitney;
using namespace whitney::cli;

struct RunConfig {
  int m = 2;
  std::string p_text = "2";
  std::string input;
  std::size_t samples = 201;
  double pad = 0.25;
  std::string out;
  std::string report;
  bool oracle = false;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os << text;
}

ReportOptions report_options(const RunConfig& c, const Tolerances& tol, bool build_extension) {
  ReportOptions o;
  o.build_extension = build_extension;
  o.run_oracle = c.oracle;
  o.tolerances = tol;
  return o;
}

int cmd_extend(const RunConfig& c) {
  const double p = parse_exponent(c.p_text);
  const Tolerances tol = tolerances_from_env();
  const SampledFunction f = to_sampled(read_data(c.input), tol);
  if (f.size() < static_cast<std::size_t>(c.m))
    throw InsufficientData("extend needs at least m = " + std::to_string(c.m) + " points, have " +
                           std::to_string(f.size()));
  const ExtensionResult ext = whitney_extend(f, c.m, {}, tol);
  if (!c.out.empty()) write_text(c.out, samples_csv(ext.F, c.m, sample_grid(f, c.samples, c.pad)));
  const std::string json = f.size() > static_cast<std::size_t>(c.m)
                               ? report_json(build_trace_report(f, c.m, p, report_options(c, tol, true)))
                               : polynomial_trace_report_json(c.m, p, f.size(), tol);
  write_text(c.report, json);
  return kOk;
}

int cmd_functionals(const RunConfig& c) {
  const double p = parse_exponent(c.p_text);
  const Tolerances tol = tolerances_from_env();
  const SampledFunction f = to_sampled(read_data(c.input), tol);
  if (f.size() < static_cast<std::size_t>(c.m) + 1)
    throw InsufficientData("functionals need at least m + 1 = " + std::to_string(c.m + 1) + " points, have " +
                           std::to_string(f.size()));
  write_text(c.report, report_json(build_trace_report(f, c.m, p, report_options(c, tol, false))));
  return kOk;
}

void print_constants(const ConstantsTable& t) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string("-"); };
  std::printf("m                      %d\n", t.m);
  std::printf("theta_m                %s\n", fmt17(t.theta).c_str());
  std::printf("theta_m exact          %s\n", opt(t.theta_exact).c_str());
  std::printf("C_mm                   %s\n", fmt17(t.c_mm).c_str());
  std::printf("gamma# lower bound     %s%s\n", fmt17(t.gamma_lower).c_str(), t.bounds_apply ? "" : "  (bound stated for m > 2)");
  std::printf("gamma# upper bound     %s%s\n", fmt17(t.gamma_upper).c_str(), t.bounds_apply ? "" : "  (bound stated for m > 2)");
  std::printf("gamma# exact           %s\n", opt(t.gamma_sharp_exact).c_str());
  std::printf("K(m) exact             %s\n", opt(t.k_exact).c_str());
  std::printf("theta_m 2^m            %s\n", fmt17(t.euler_spline_norm).c_str());
}

int cmd_constants(int m, const std::string& json_path) {
  const ConstantsTable t = constants_table(m, tolerances_from_env());
  print_constants(t);
  if (!json_path.empty()) write_text(json_path, constants_json(t));
  return kOk;
}

int cmd_selftest(const testing::CriteriaOptions& opt, int only, const std::string& report) {
  std::vector<testing::CriterionResult> results;
  bool all = true;
  const auto criteria = testing::all_criteria();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    testing::CriterionResult r = criteria[i](opt);
    std::printf("[%s] %2d %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    all = all && r.pass;
    results.push_back(std::move(r));
  }
  std::printf("\nconstants\n");
  for (int m = 1; m <= 5; ++m) {
    const ConstantsTable t = constants_table(m);
    std::printf("  m=%d theta=%s C_mm=%s gamma#=[%s, %s]\n", m, fmt17(t.theta).c_str(), fmt17(t.c_mm).c_str(),
                fmt17(t.gamma_lower).c_str(), fmt17(t.gamma_upper).c_str());
  }
  std::printf("\n%s\n", all ? "selftest passed" : "selftest FAILED");
  if (!report.empty()) write_text(report, criteria_json(results, opt.seed, opt.second_seed));
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitney extension and trace functionals for finite sets on the line"};
  app.require_subcommand(1);

  RunConfig ext_cfg, fun_cfg;
  auto add_run_options = [](CLI::App* sub, RunConfig& c) {
    sub->add_option("--input,-i", c.input, "CSV (x,f) or JSON {\"points\",\"values\"}")->required();
    sub->add_option("-m", c.m, "order m")->check(CLI::Range(1, 8))->default_val(2);
    sub->add_option("-p", c.p_text, "exponent p > 1 or inf")->default_val("2");
    sub->add_option("--report", c.report, "JSON report path (default stdout)");
    sub->add_flag("--oracle", c.oracle, "also solve the p = 2 natural spline");
  };

  CLI::App* extend = app.add_subcommand("extend", "build F, write samples and a trace report");
  add_run_options(extend, ext_cfg);
  extend->add_option("--samples", ext_cfg.samples, "equispaced sample count")->check(CLI::Range(1, 10000000));
  extend->add_option("--pad", ext_cfg.pad, "sample padding, multiple of span")->check(CLI::NonNegativeNumber);
  extend->add_option("--out", ext_cfg.out, "sample CSV path (x,F,F1..Fm)");

  CLI::App* functionals = app.add_subcommand("functionals", "trace functionals without building F");
  add_run_options(functionals, fun_cfg);

  int const_m = 2;
  std::string const_json;
  CLI::App* constants = app.add_subcommand("constants", "print the constants table for m");
  constants->add_option("-m", const_m, "order m")->check(CLI::Range(1, 8))->default_val(2);
  constants->add_option("--json", const_json, "also write the table as JSON");

  testing::CriteriaOptions st;
  int only = 0;
  std::string st_report;
  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--seed", st.seed, "suite seed");
  selftest->add_option("--second-seed", st.second_seed, "independent seed for the stability checks");
  selftest->add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 10));
  selftest->add_option("--report", st_report, "JSON summary path");
  selftest->add_flag("--perturb-gap", st.perturb_gap_polynomial, "negative control: bump one gap polynomial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "whitney_cli: " << e.what() << "\n";
    return kInvalidConfig;
  }

  try {
    if (*extend) return cmd_extend(ext_cfg);
    if (*functionals) return cmd_functionals(fun_cfg);
    if (*constants) return cmd_constants(const_m, const_json);
    if (*selftest) return cmd_selftest(st, only, st_report);
  } catch (const ParseError& e) {
    std::cerr << "whitney_cli: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InsufficientData& e) {
    std::cerr << "whitney_cli: insufficient data: " << e.what() << "\n";
    return kInsufficientData;
  } catch (const ConfigError& e) {
    std::cerr << "whitney_cli: invalid config: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const NumericalFailure& e) {
    std::cerr << "whitney_cli: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvalidArgument& e) {
    std::cerr << "whitney_cli: invalid argument: " << e.what() << "\n";
    return kInvalidConfig;
  }
  return kInvalidConfig;
}
