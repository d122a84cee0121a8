// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qprob/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qprob/errors.hpp"
#include "qprob/simulator.hpp"

namespace qprob::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSamples = 100000;
constexpr Seed kDefaultSeed = 1;

Report base_report(const std::string& command, const std::string& digest) {
  Report r;
  r.command = command;
  r.input_digest = digest;
  r.tolerances = tolerances();
  r.version = version();
  return r;
}

const PreparationEnsemble& need_ensemble(const ScenarioFile& f) {
  if (!f.ensemble) throw ParseError("/ensemble", "this command needs 'state' or 'ensemble'");
  return *f.ensemble;
}

const MeasurementProcedure& need_procedure(const ScenarioFile& f) {
  if (!f.procedure) throw ParseError("/procedure", "missing required field");
  return *f.procedure;
}

Json labeled_json(const LabeledValues<std::string>& values) {
  Json out = Json::object();
  for (const auto& [label, v] : values) out[label] = v;
  return out;
}

Json estimates_json(const std::vector<Estimate>& estimates) {
  Json out = Json::array();
  for (const Estimate& e : estimates) {
    out.push_back({{"label", e.label},
                   {"count", e.count},
                   {"frequency", e.frequency},
                   {"std_error", e.std_error}});
  }
  return out;
}

void shift_target(Comparison& c, double sigmas) {
  const double away = c.analytic >= c.empirical ? 1.0 : -1.0;
  c.analytic += away * sigmas * c.std_error;
  c.gap = std::abs(c.empirical - c.analytic);
  c.z = c.gap == 0.0 ? 0.0 : c.gap / c.std_error;
}


}  // namespace

CommandResult cmd_predict(const ScenarioFile& file, const std::string& digest) {
  const PreparationEnsemble& e = need_ensemble(file);
  MeasurementProcedure x = need_procedure(file);
  if (!file.recorded.empty()) x = restrict(x, file.recorded);
  const ProbabilityReport p = general_distribution(x, average_state(e));

  CommandResult out{base_report("predict", digest), kExitOk};
  Report& r = out.report;
  r.results["probabilities"] = labeled_json(p.probabilities);
  r.results["denominator"] = p.denominator;
  r.results["standard"] = p.standard;
  r.results["k"] = p.k ? Json(*p.k) : Json(nullptr);

  Table t{"p(m|s,x) = Tr(M rho) / Tr(X rho)", {"outcome", "probability"}, {}};
  for (const auto& [label, v] : p.probabilities) t.rows.push_back({label, format_number(v)});
  r.tables.push_back(std::move(t));
  r.notes.push_back("Tr(X rho) = " + format_number(p.denominator));
  r.notes.push_back(p.standard ? "standard procedure, X = K I with K = " + format_number(*p.k)
                               : "non-standard procedure (X not proportional to I)");
  return out;
}

CommandResult cmd_retrodict(const ScenarioFile& file, const std::string& digest) {
  const PreparationEnsemble& e = need_ensemble(file);
  const MeasurementProcedure& x = need_procedure(file);
  if (!file.observed) throw ParseError("/observed", "missing required field");
  const PositiveOperator& m = x.op(*file.observed);

  const auto direct = retrodict(e, m);
  const auto dual = retrodict_via_duality(e, m);
  double discrepancy = 0.0;
  for (std::size_t k = 0; k < direct.size(); ++k) {
    discrepancy = std::max(discrepancy, std::abs(direct[k].second - dual[k].second));
  }

  CommandResult out{base_report("retrodict", digest), kExitOk};
  Report& r = out.report;
  r.results["observed"] = *file.observed;
  r.results["posterior"] = labeled_json(direct);
  r.results["posterior_via_duality"] = labeled_json(dual);
  r.results["max_discrepancy"] = discrepancy;

  Table t{"P(s|" + *file.observed + ")", {"preparation", "prior", "retrodict", "via duality"}, {}};
  for (std::size_t k = 0; k < direct.size(); ++k) {
    t.rows.push_back({direct[k].first, format_number(e.entries()[k].prior),
                      format_number(direct[k].second), format_number(dual[k].second)});
  }
  r.tables.push_back(std::move(t));
  r.notes.push_back("max discrepancy = " + format_number(discrepancy));
  return out;
}

CommandResult cmd_simulate(const ScenarioFile& file, const std::string& digest,
                           const SimulateOverrides& overrides) {
  const PreparationEnsemble& e = need_ensemble(file);
  const MeasurementProcedure& x = need_procedure(file);
  const std::optional<double> k = is_standard(x);
  const bool complete = k && std::abs(*k - 1.0) <= kStandardTolerance;
  const StandardPOVM povm = complete ? to_povm(x) : completion_of(x);
  const std::vector<OutcomeLabel> recorded = file.recorded.empty() ? x.labels() : file.recorded;
  const std::uint64_t samples = overrides.samples.value_or(file.samples.value_or(kDefaultSamples));
  const Seed seed = overrides.seed.value_or(file.seed.value_or(kDefaultSeed));

  SimulationReport sim = run(Scenario(e, povm, recorded, samples, seed));
  if (file.analytic_offset_sigmas && !sim.analytic_comparison.empty()) {
    shift_target(sim.analytic_comparison.front(), *file.analytic_offset_sigmas);
  }

  CommandResult out{base_report("simulate", digest), kExitOk};
  Report& r = out.report;
  r.results["samples"] = samples;
  r.results["seed"] = seed;
  r.results["completed"] = !complete;
  r.results["recorded"] = recorded;
  r.results["trials"] = sim.trials;
  r.results["accepted"] = sim.accepted;
  r.results["inconclusive"] = sim.inconclusive;
  r.results["consistent"] = sim.consistent();
  r.results["outcome_frequencies"] = estimates_json(sim.outcome_frequencies);
  r.results["preparation_frequencies"] = estimates_json(sim.preparation_frequencies);
  Json comparisons = Json::array();
  Table t{"analytic vs empirical", {"quantity", "analytic", "empirical", "stderr", "gap", "z"}, {}};
  for (const Comparison& c : sim.analytic_comparison) {
    comparisons.push_back({{"quantity", c.quantity},
                           {"analytic", c.analytic},
                           {"empirical", c.empirical},
                           {"std_error", c.std_error},
                           {"gap", c.gap},
                           {"z", c.z},
                           {"consistent", c.consistent()}});
    t.rows.push_back({c.quantity, format_number(c.analytic), format_number(c.empirical),
                      format_number(c.std_error), format_number(c.gap), format_number(c.z)});
  }
  r.results["analytic_comparison"] = comparisons;
  if (!t.rows.empty()) r.tables.push_back(std::move(t));

  r.notes.push_back("accepted " + std::to_string(sim.accepted) + " of " +
                    std::to_string(sim.trials) + " trials" +
                    (complete ? "" : " (procedure embedded via completion)"));
  if (sim.inconclusive) {
    r.notes.push_back("verdict: inconclusive (no trial was accepted)");
    out.exit_code = kExitInconclusive;
  } else if (!sim.consistent()) {
    r.notes.push_back("verdict: inconsistent (some gap exceeds 4 stderr)");
    out.exit_code = kExitInconsistent;
  } else {
    r.notes.push_back("verdict: consistent (every gap within 4 stderr)");
  }
  return out;
}

CommandResult cmd_verify(const VerifyOptions& options) {
  std::ostringstream canonical;
  canonical << "verify seed=" << options.seed << " trials=" << options.trials << " dims=";
  for (std::size_t i = 0; i < options.dims.size(); ++i) {
    canonical << (i ? "," : "") << options.dims[i];
  }
  CommandResult out{base_report("verify", sha256_hex(canonical.str())), kExitOk};
  Report& r = out.report;
  const std::vector<PropertyResult> results = run_verify(options);

  r.results["seed"] = options.seed;
  r.results["dims"] = options.dims;
  r.results["trials"] = options.trials;
  Json properties = Json::array();
  Json failures = Json::array();
  Table t{"property battery", {"property", "dim", "max violation", "threshold", "status"}, {}};
  for (const PropertyResult& p : results) {
    properties.push_back({{"property", p.property},
                          {"dim", p.dim},
                          {"max_violation", p.max_violation},
                          {"threshold", p.threshold},
                          {"passed", p.passed}});
    t.rows.push_back({p.property, std::to_string(p.dim), format_number(p.max_violation),
                      format_number(p.threshold), p.passed ? "pass" : "FAIL"});
    if (!p.passed) failures.push_back(p.counterexample);
  }
  r.results["properties"] = properties;
  r.results["passed"] = failures.empty();
  r.results["counterexamples"] = failures;
  r.tables.push_back(std::move(t));
  if (failures.empty()) {
    r.notes.push_back("verdict: all properties hold");
  } else {
    out.exit_code = kExitInconsistent;
    r.notes.push_back("verdict: " + std::to_string(failures.size()) + " property check(s) failed");
    for (const Json& c : failures) r.notes.push_back("replay: " + c.dump());
  }
  return out;
}

Tolerances parse_tolerance_overrides(const std::string& list, Tolerances base) {
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("--tolerance-overrides", "expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    double value;
    std::size_t used = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(value) || value < 0.0) {
      throw ParseError("--tolerance-overrides", "bad value '" + text + "' for " + key);
    }
    if (key == "hermitian") {
      base.hermitian = value;
    } else if (key == "positive") {
      base.positive = value;
    } else if (key == "trace") {
      base.trace = value;
    } else if (key == "denominator") {
      base.denominator = value;
    } else {
      throw ParseError("--tolerance-overrides", "unknown tolerance '" + key + "'");
    }
  }
  return base;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized quantum probability: predict, retrodict, simulate, verify"};
  app.require_subcommand(1);

  bool machine_readable = false;
  std::string overrides;
  app.add_flag("--machine-readable", machine_readable, "Emit a JSON report");
  app.add_option("--tolerance-overrides", overrides,
                 "Comma-separated key=value over hermitian, positive, trace, denominator");

  std::string file;
  std::optional<std::uint64_t> samples;
  std::optional<Seed> seed;
  VerifyOptions verify_options;

  auto* predict = app.add_subcommand("predict", "General probability law for a scenario file");
  auto* retrodict = app.add_subcommand("retrodict", "Posterior over preparations given 'observed'");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo post-selection experiment");
  auto* verify = app.add_subcommand("verify", "Randomized property battery");
  for (auto* sub : {predict, retrodict, simulate}) {
    sub->add_option("--file", file, "Scenario file (JSON)")->required();
    sub->fallthrough();
  }
  simulate->add_option("--samples", samples, "Number of trials (overrides the file)");
  simulate->add_option("--seed", seed, "Random seed (overrides the file)");
  verify->add_option("--seed", verify_options.seed, "Random seed");
  verify->add_option("--dims", verify_options.dims, "Dimensions, e.g. 2,3,4")->delimiter(',');
  verify->add_option("--trials", verify_options.trials, "Random instances per property");
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const ScopedTolerances scope(parse_tolerance_overrides(overrides, tolerances()));
    CommandResult result;
    if (verify->parsed()) {
      result = cmd_verify(verify_options);
    } else {
      const std::string text = read_file(file);
      const ScenarioFile scenario = parse_scenario(text);
      const std::string digest = sha256_hex(text);
      if (predict->parsed()) {
        result = cmd_predict(scenario, digest);
      } else if (retrodict->parsed()) {
        result = cmd_retrodict(scenario, digest);
      } else {
        result = cmd_simulate(scenario, digest, SimulateOverrides{samples, seed});
      }
    }
    out << (machine_readable ? render_machine(result.report) : render_human(result.report));
    return result.exit_code;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const QprobError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace qprob::cli
