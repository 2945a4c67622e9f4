#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "subexp/fuzz.hpp"
#include "subexp/report.hpp"

namespace {

using namespace subexp;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open scenario file " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail_input("cannot write output file " + out_path);
  out << text;
}

// Filtered run over a scenario file; missing checks of the selected kinds are
// synthesized from the scenario's variables and sequences.
int run_filtered(const std::string& scenario_path, const std::string& out_path,
                 const std::string& csv_dir, const std::vector<std::string>& types,
                 bool synthesize) {
  Scenario scenario = parse_scenario(read_file(scenario_path));
  bool any_selected = false;
  for (const auto& c : scenario.checks)
    if (std::find(types.begin(), types.end(), c.type) != types.end()) any_selected = true;
  if (!any_selected && synthesize) {
    if (std::find(types.begin(), types.end(), "eval") != types.end()) {
      CheckSpec ax;
      ax.type = "axioms";
      scenario.checks.push_back(ax);
      for (const auto& [name, x] : scenario.variables) {
        CheckSpec c;
        c.type = "eval";
        c.variable = name;
        scenario.checks.push_back(c);
      }
    }
    if (std::find(types.begin(), types.end(), "implication") != types.end()) {
      for (const auto& [name, s] : scenario.sequences) {
        CheckSpec c;
        c.type = "implication";
        c.sequence = name;
        scenario.checks.push_back(c);
      }
    }
    if (std::find(types.begin(), types.end(), "portmanteau") != types.end()) {
      for (const auto& [name, s] : scenario.sequences) {
        CheckSpec c;
        c.type = "portmanteau";
        c.sequence = name;
        scenario.checks.push_back(c);
        CheckSpec df;
        df.type = "df-convergence";
        df.sequence = name;
        scenario.checks.push_back(df);
      }
    }
  }

  RunOptions options;
  options.select_types = types;
  if (!csv_dir.empty()) options.csv_dir = csv_dir;
  const RunResult result = run_report(scenario, options);
  emit(result.report_json, out_path);
  return result.exit_code;
}

int run_fuzz(std::uint64_t base_seed, std::uint64_t count, const std::string& out_path) {
  std::size_t violations = 0, errors = 0;
  std::ostringstream summary;
  summary << "{\n  \"tool_version\": \"" << kToolVersion << "\",\n  \"seeds\": " << count
          << ",\n  \"base_seed\": " << base_seed << ",\n  \"runs\": [\n";
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t seed = base_seed + i;
    const Scenario scenario = generate_random_scenario(seed);
    RunOptions options;
    options.seed = seed;
    options.include_timing = false;
    const RunResult result = run_report(scenario, options);
    violations += result.violations;
    errors += result.errors;
    summary << "    {\"seed\": " << seed << ", \"checks\": " << result.checks_run
            << ", \"violations\": " << result.violations << ", \"errors\": " << result.errors
            << "}";
    if (i + 1 < count) summary << ",";
    summary << "\n";
  }
  summary << "  ],\n  \"violations\": " << violations << ",\n  \"errors\": " << errors << "\n}\n";
  emit(summary.str(), out_path);
  if (violations > 0) return 2;
  return errors > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subexp: sublinear-expectation convergence auditor"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, csv_dir;
  std::uint64_t seed = 1, seeds = 100;

  auto add_common = [&](CLI::App* cmd, bool need_scenario) {
    if (need_scenario)
      cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", out_path, "write the report here instead of stdout");
    cmd->add_option("--csv", csv_dir, "directory for distribution-pair CSV files");
    cmd->add_option("--seed", seed, "seed recorded in the report");
  };

  CLI::App* eval = app.add_subcommand("eval", "expectations, capacities, distribution pairs");
  add_common(eval, true);
  CLI::App* conv = app.add_subcommand("converge", "six convergence modes and the implication diagram");
  add_common(conv, true);
  CLI::App* port = app.add_subcommand("portmanteau", "distributional convergence audits");
  add_common(port, true);
  CLI::App* dct = app.add_subcommand("certify-dct", "dominated convergence certificates");
  add_common(dct, true);
  CLI::App* fuzz = app.add_subcommand("fuzz", "seeded random scenario audits");
  fuzz->add_option("--seeds", seeds, "number of seeds to run");
  fuzz->add_option("--seed", seed, "base seed");
  fuzz->add_option("--out", out_path, "write the summary here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed())
      return run_filtered(scenario_path, out_path, csv_dir,
                          {"eval", "axioms", "capacity", "markov", "borel-cantelli",
                           "lb-membership", "uniform-integrability", "monotone-convergence",
                           "two-monotone", "pair-properties", "distribution-capacity"},
                          true);
    if (conv->parsed())
      return run_filtered(scenario_path, out_path, csv_dir,
                          {"converge", "implication", "subsequence", "continuous-mapping"}, true);
    if (port->parsed())
      return run_filtered(scenario_path, out_path, csv_dir,
                          {"portmanteau", "df-convergence", "constant-limit"}, true);
    if (dct->parsed())
      return run_filtered(scenario_path, out_path, csv_dir, {"certify-dct"}, false);
    if (fuzz->parsed()) return run_fuzz(seed, seeds, out_path);
  } catch (const subexp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
