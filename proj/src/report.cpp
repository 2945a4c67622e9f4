#include "subexp/report.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "subexp/axioms.hpp"
#include "subexp/distribution.hpp"
#include "subexp/spaces.hpp"

namespace subexp {

using Json = nlohmann::ordered_json;

namespace {

Json value_json(const Rational& q) {
  return Json{{"exact", fraction_string(q)}, {"decimal", decimal_string(q)}};
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["outcome"] = outcome_name(v.outcome);
  if (v.witness) {
    Json w;
    w["what"] = v.witness->what;
    for (const auto& [k, val] : v.witness->data) w[k] = val;
    j["witness"] = w;
  }
  if (v.n_checked) j["n_checked"] = v.n_checked->get_str();
  if (v.residual) j["residual"] = fraction_string(*v.residual);
  if (!v.notes.empty()) {
    Json notes;
    for (const auto& [k, val] : v.notes) notes[k] = val;
    j["notes"] = notes;
  }
  return j;
}

std::vector<RandomVariable> scenario_samples(const Scenario& scenario) {
  std::vector<RandomVariable> out;
  for (const auto& [name, x] : scenario.variables) out.push_back(x);
  return out;
}

Json run_check(const Scenario& scenario, const CheckSpec& check, const RunOptions& options,
               std::size_t& violations) {
  const CredalModel& model = scenario.model;
  Json j;
  j["check"] = check.type;
  if (!check.variable.empty()) j["variable"] = check.variable;
  if (!check.sequence.empty()) j["sequence"] = check.sequence;

  if (check.type == "axioms") {
    ExpectationFn functional = nullptr;
    if (scenario.doctor_offset) {
      const Rational offset = *scenario.doctor_offset;
      functional = [&model, offset](const RandomVariable& x) {
        return upper_expectation(model, x) + offset;
      };
      j["doctored"] = true;
    }
    const Verdict v =
        verify_axioms(model, default_axiom_input(model, scenario_samples(scenario)), functional);
    j["verdict"] = verdict_json(v);
    if (v.fails()) ++violations;
  } else if (check.type == "eval") {
    const RandomVariable& x = scenario.variable(check.variable);
    j["upper_expectation"] = value_json(upper_expectation(model, x));
    j["lower_expectation"] = value_json(lower_expectation(model, x));
    for (long p : {1L, 2L}) {
      const SeminormReport s = lp_seminorm(model, x, Rational(p));
      Json sem;
      sem["p"] = std::to_string(p);
      if (s.power_exact) sem["power"] = value_json(*s.power_exact);
      sem["root_decimal"] = s.root_decimal;
      j["seminorm_p" + std::to_string(p)] = sem;
    }
    Json atoms = Json::array();
    for (const auto& a : capacity_atoms(model, x)) atoms.push_back(fraction_string(a));
    j["capacity_atoms"] = atoms;
    const DistributionPair pair = distribution_pair(model, x);
    j["distribution_pair_csv"] = distribution_pair_csv(pair);
    if (options.csv_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*options.csv_dir, ec);
      const std::string path = *options.csv_dir + "/" + check.variable + "_pair.csv";
      std::ofstream out(path);
      if (!out) fail_input("cannot write CSV file " + path);
      out << distribution_pair_csv(pair);
      j["csv_file"] = path;
    }
  } else if (check.type == "capacity") {
    j["capacity"] = value_json(capacity(model, *check.event));
    j["polar"] = is_polar(model, *check.event);
  } else if (check.type == "converge") {
    const SequenceSpec& seq = scenario.sequence(check.sequence);
    ModeParams params;
    params.p = check.p;
    params.r = check.r;
    Json modes;
    for (const Mode mode : check.modes) {
      params.mode = mode;
      modes[mode_name(mode)] = verdict_json(check_convergence(model, seq, params));
    }
    j["modes"] = modes;
  } else if (check.type == "implication") {
    const ImplicationReport rep =
        implication_audit(model, scenario.sequence(check.sequence), check.r, check.p);
    j["qs"] = verdict_json(rep.qs);
    j["capacity"] = verdict_json(rep.capacity);
    j["lp"] = verdict_json(rep.lp);
    j["distribution"] = verdict_json(rep.distribution);
    j["complete"] = verdict_json(rep.complete);
    j["slr"] = verdict_json(rep.slr);
    Json arrows;
    for (const auto& [name, violated] : rep.arrows) arrows[name] = violated ? "violated" : "ok";
    j["arrows"] = arrows;
    if (rep.any_violation()) {
      ++violations;
      j["violation"] = "implication arrow broken";
    }
  } else if (check.type == "subsequence") {
    j["verdict"] =
        verdict_json(subsequence_principle(model, scenario.sequence(check.sequence), default_probes()));
  } else if (check.type == "continuous-mapping") {
    ModeParams params;
    j["verdict"] = verdict_json(
        continuous_mapping_check(model, scenario.sequence(check.sequence), *check.function, params));
  } else if (check.type == "markov") {
    const MarkovResult res =
        markov_bound(model, scenario.variable(check.variable), *check.lambda, check.p);
    j["lhs"] = value_json(res.lhs);
    if (res.rhs_exact) j["rhs"] = value_json(*res.rhs_exact);
    j["verdict"] = verdict_json(res.verdict);
    if (res.verdict.fails()) ++violations;
  } else if (check.type == "borel-cantelli") {
    const Verdict v = borel_cantelli_check(model, *check.schedule);
    j["verdict"] = verdict_json(v);
    if (v.fails()) ++violations;
  } else if (check.type == "certify-dct") {
    const DCTCertificate cert = dct_certificate(model, scenario.sequence(check.sequence),
                                                scenario.variable(check.dominator), *check.epsilon);
    j["epsilon"] = fraction_string(cert.epsilon);
    j["cutoff"] = fraction_string(cert.cutoff);
    j["n_threshold"] = cert.n_threshold.get_str();
    j["analytic_tail_from"] = cert.analytic_tail_from.get_str();
    Json samples = Json::array();
    for (const auto& s : cert.samples) {
      Json row;
      row["n"] = s.n.get_str();
      row["truncation"] = fraction_string(s.truncation);
      row["tail_xn"] = fraction_string(s.tail_xn);
      row["tail_x"] = fraction_string(s.tail_x);
      row["deviation_l1"] = fraction_string(s.deviation_l1);
      row["exact"] = s.exact;
      samples.push_back(row);
    }
    j["samples"] = samples;
    j["limit_membership"] = verdict_json(cert.limit_membership);
  } else if (check.type == "portmanteau") {
    const PortmanteauAudit audit = portmanteau_audit(model, scenario.sequence(check.sequence));
    Json claims;
    for (int i = 0; i < 6; ++i)
      claims["claim" + std::to_string(i + 1)] =
          verdict_json(audit.claims[static_cast<std::size_t>(i)]);
    j["claims"] = claims;
    Json arrows;
    for (const auto& [name, violated] : audit.arrows) arrows[name] = violated ? "violated" : "ok";
    j["arrows"] = arrows;
    j["all_agree"] = audit.all_agree;
    if (!audit.all_agree) {
      ++violations;
      j["violation"] = "portmanteau claims disagree";
    }
  } else if (check.type == "df-convergence") {
    const Verdict v = df_convergence_audit(model, scenario.sequence(check.sequence));
    j["verdict"] = verdict_json(v);
  } else if (check.type == "constant-limit") {
    j["verdict"] = verdict_json(
        constant_limit_check(model, scenario.sequence(check.sequence), *check.constant));
  } else if (check.type == "lb-membership") {
    const Verdict v = lb_membership(model, scenario.variable(check.variable), check.p);
    j["verdict"] = verdict_json(v);
    if (v.fails()) ++violations;
  } else if (check.type == "uniform-integrability") {
    std::pair<UIReport, Verdict> res;
    if (!check.sequence.empty()) {
      res = uniform_integrability_seq(model, scenario.sequence(check.sequence));
    } else {
      std::vector<RandomVariable> family;
      for (const auto& name : check.family) family.push_back(scenario.variable(name));
      res = uniform_integrability_list(model, family);
    }
    Json modulus = Json::array();
    for (const auto& [c, value] : res.first.modulus)
      modulus.push_back(Json{{"cutoff", fraction_string(c)},
                             {"value_hi", fraction_string(value.hi)},
                             {"exact", value.is_exact()}});
    j["modulus"] = modulus;
    j["verdict"] = verdict_json(res.second);
  } else if (check.type == "monotone-convergence") {
    j["verdict"] = verdict_json(monotone_convergence_check(
        model, scenario.sequence(check.sequence), scenario.variable(check.limit)));
  } else if (check.type == "two-monotone") {
    j["verdict"] = verdict_json(two_monotone_check(model, scenario.variable(check.variable)));
  } else if (check.type == "pair-properties") {
    const Verdict v = pair_properties_check(model, scenario.variable(check.variable));
    j["verdict"] = verdict_json(v);
    if (v.fails()) ++violations;
  } else if (check.type == "distribution-capacity") {
    j["capacity"] =
        value_json(distribution_capacity(model, scenario.variable(check.variable), *check.set));
  } else {
    fail_input("unknown check type \"" + check.type + "\"");
  }
  return j;
}

}  // namespace

RunResult run_report(const Scenario& scenario, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  Json doc;
  doc["tool_version"] = kToolVersion;
  if (!scenario.name.empty()) doc["scenario"] = scenario.name;
  if (options.seed) doc["seed"] = *options.seed;

  Json results = Json::array();
  for (const auto& check : scenario.checks) {
    if (!options.select_types.empty() &&
        std::find(options.select_types.begin(), options.select_types.end(), check.type) ==
            options.select_types.end())
      continue;
    ++result.checks_run;
    try {
      results.push_back(run_check(scenario, check, options, result.violations));
    } catch (const Error& e) {
      if (e.kind() == Error::Kind::Internal) throw;
      Json j;
      j["check"] = check.type;
      j["error"] = e.what();
      results.push_back(j);
      ++result.errors;
    }
  }
  doc["results"] = results;
  doc["summary"] = Json{{"checks", result.checks_run},
                        {"violations", result.violations},
                        {"errors", result.errors}};
  if (options.include_timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    doc["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  result.report_json = doc.dump(2) + "\n";
  result.exit_code = result.violations > 0 ? 2 : (result.errors > 0 ? 1 : 0);
  return result;
}

}  // namespace subexp
