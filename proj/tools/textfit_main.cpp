#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "textfit/analysis.hpp"
#include "textfit/candidates.hpp"
#include "textfit/errors.hpp"
#include "textfit/model.hpp"
#include "textfit/report.hpp"
#include "textfit/solver.hpp"

namespace {

using namespace textfit;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CommonOptions {
  std::string candidates_path;
  std::string lexicon_path;
  std::string config_path;
  std::string k1_override;
  std::string k2_override;
  std::string k3_override;
  std::string format = "human";
  int threads = 1;
};

Lexicon load_lexicon(const CommonOptions& options) {
  if (options.lexicon_path.empty()) return Lexicon::builtin();
  return Lexicon::load(options.lexicon_path);
}

AppConfig load_app_config(const CommonOptions& options) {
  AppConfig config;
  if (!options.config_path.empty()) config = load_config(options.config_path);
  if (!options.k1_override.empty()) {
    Rational k1 = parse_rational(options.k1_override);
    if (k1.denominator() != 1) throw ConfigError("--k1 must be an integer");
    config.k1 = k1.numerator();
  }
  if (!options.k2_override.empty()) config.k2 = parse_rational(options.k2_override);
  if (!options.k3_override.empty()) config.k3 = parse_rational(options.k3_override);
  return config;
}

bool json_output(const CommonOptions& options) { return options.format == "json"; }

// Loads, validates and models a candidate file; validation errors are fatal,
// warnings go to stderr.
struct PreparedInstance {
  Lexicon lexicon;
  CandidateSet set;
  Model model;
};

PreparedInstance prepare(const CommonOptions& options) {
  PreparedInstance instance{load_lexicon(options), {}, {}};
  AppConfig config = load_app_config(options);

  LoadedCandidates loaded = load_candidates(options.candidates_path, instance.lexicon);
  instance.set = std::move(loaded.set);
  for (const auto& warning : loaded.warnings)
    std::cerr << "warning: " << warning.where << ": " << warning.message << '\n';

  ValidationReport report =
      validate_candidate_set(instance.set, instance.lexicon, config.validation);
  for (const auto& issue : report.issues) {
    if (issue.severity == IssueSeverity::Warning)
      std::cerr << "warning: " << issue.where << ": " << issue.message << '\n';
  }
  if (!report.ok()) {
    for (const auto& issue : report.issues) {
      if (issue.severity == IssueSeverity::Error)
        std::cerr << "error: " << issue.where << ": " << issue.message << '\n';
    }
    throw ValidationError("candidate set failed validation");
  }

  instance.model = build_model(instance.set, resolve_model_config(config), config.weights);
  return instance;
}

std::vector<FlexibilityReport> all_flexibility_reports(const Model& model) {
  std::vector<FlexibilityReport> reports;
  for (auto metric : {TextMetricKind::TotalWords, TextMetricKind::AvgSentenceLength,
                      TextMetricKind::LexicalDensity})
    for (auto direction : {OptimizeDirection::Minimize, OptimizeDirection::Maximize})
      reports.push_back(analyze_flexibility(model, metric, direction));
  return reports;
}

int run_metrics(const std::string& document_path, const CommonOptions& options) {
  std::ifstream in(document_path);
  if (!in) throw ConfigError("cannot open document file: " + document_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();

  Lexicon lexicon = load_lexicon(options);
  Document doc = classify_words(tokenize(buffer.str()), lexicon);
  Metrics metrics = compute_metrics(doc);
  if (metrics.sentences == 0) throw ValidationError("document contains no sentences");

  if (json_output(options)) {
    std::cout << metrics_json(metrics).dump(2) << '\n';
  } else {
    std::cout << metrics_line(metrics) << '\n';
    std::cout << "decimal: avg=" << to_decimal_string(metrics.avg_sentence_length())
              << " density=" << to_decimal_string(metrics.lexical_density()) << '\n';
  }
  return kExitOk;
}

int run_solve(const CommonOptions& options, bool with_oracle, const std::string& out_path) {
  PreparedInstance instance = prepare(options);
  SolveOptions solve_options;
  solve_options.threads = options.threads;

  Solution solution = solve_branch_and_bound(instance.model, solve_options);

  std::optional<OutputJson> oracle;
  if (with_oracle) {
    auto feasible = enumerate_feasible_bruteforce(instance.model, solve_options.oracle_limit);
    OutputJson block;
    block["feasible_count"] = feasible.size();
    block["feasible_sets"] = OutputJson::array();
    for (const auto& assignment : feasible)
      block["feasible_sets"].push_back(selected_json(instance.model, assignment));
    bool agrees = false;
    if (solution.status == SolveStatus::Infeasible) {
      agrees = feasible.empty();
    } else {
      const Assignment* best = nullptr;
      Rational best_z;
      for (const auto& assignment : feasible) {
        Rational z{0};
        for (int v : assignment.selected) z += instance.model.objective[v];
        if (!best || z < best_z || (z == best_z && lex_less(assignment, *best))) {
          best = &assignment;
          best_z = z;
        }
      }
      agrees = best && *best == solution.assignment && best_z == solution.objective;
    }
    block["agrees"] = agrees;
    oracle = std::move(block);
  }

  if (solution.status == SolveStatus::Infeasible) {
    auto achievable = all_flexibility_reports(instance.model);
    if (json_output(options)) {
      std::cout << solution_json(instance.model, solution, nullptr, achievable,
                                 oracle ? &*oracle : nullptr)
                       .dump(2)
                << '\n';
    } else {
      std::cout << solution_human(instance.model, solution, nullptr, achievable,
                                  oracle ? &*oracle : nullptr);
    }
    return kExitInfeasible;
  }

  RewriteResult rewrite =
      apply_solution(instance.set.document, instance.set, solution.assignment, instance.lexicon);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write rewritten text to: " + out_path);
    out << rewrite.text;
    if (rewrite.text.empty() || rewrite.text.back() != '\n') out << '\n';
  }

  if (json_output(options)) {
    std::cout << solution_json(instance.model, solution, &rewrite.text, {},
                               oracle ? &*oracle : nullptr)
                     .dump(2)
              << '\n';
  } else {
    std::cout << solution_human(instance.model, solution, &rewrite.text, {},
                                oracle ? &*oracle : nullptr);
  }
  return kExitOk;
}

int run_flexibility(const CommonOptions& options) {
  // Flexibility ignores the constraint bounds, so k-values are not needed:
  // model the instance with the loosest valid bounds.
  CommonOptions relaxed = options;
  if (relaxed.k2_override.empty() && relaxed.config_path.empty()) relaxed.k2_override = "1000000";
  if (relaxed.k3_override.empty() && relaxed.config_path.empty()) relaxed.k3_override = "0";
  PreparedInstance instance = prepare(relaxed);
  auto reports = all_flexibility_reports(instance.model);
  if (json_output(options))
    std::cout << flexibility_json(instance.model, reports).dump(2) << '\n';
  else
    std::cout << flexibility_human(instance.model, reports);
  return kExitOk;
}

int run_sweep(const CommonOptions& options, const std::string& parameter,
              const std::string& values_csv) {
  PreparedInstance instance = prepare(options);

  ConstraintParameter param;
  if (parameter == "k1")
    param = ConstraintParameter::WordDeltaLimit;
  else if (parameter == "k2")
    param = ConstraintParameter::AvgSentenceLengthLimit;
  else if (parameter == "k3")
    param = ConstraintParameter::FunctionWordFloor;
  else
    throw ConfigError("--param must be one of k1, k2, k3");

  std::vector<Rational> values;
  std::istringstream stream(values_csv);
  std::string item;
  while (std::getline(stream, item, ',')) values.push_back(parse_rational(item));
  if (values.empty()) throw ConfigError("--values must list at least one bound");
  std::sort(values.begin(), values.end());

  SolveOptions solve_options;
  solve_options.threads = options.threads;
  auto points = sweep_constraint(instance.model, param, values, solve_options);
  if (json_output(options))
    std::cout << sweep_json(instance.model, parameter, points).dump(2) << '\n';
  else
    std::cout << sweep_human(instance.model, parameter, points);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selects a minimum-cost set of per-sentence paraphrases so the rewritten text "
               "meets length, readability and lexical-density bounds"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string document_path;
  std::string out_path;
  std::string sweep_param;
  std::string sweep_values;
  bool with_oracle = false;

  auto add_common = [&](CLI::App* cmd, bool needs_candidates) {
    if (needs_candidates)
      cmd->add_option("--candidates", common.candidates_path, "candidate file (JSON)")
          ->required();
    cmd->add_option("--lexicon", common.lexicon_path,
                    "function-word list (default: built-in list)");
    cmd->add_option("--config", common.config_path, "config file (JSON)");
    cmd->add_option("--k1", common.k1_override, "max total word-count change (integer <= 0)");
    cmd->add_option("--k2", common.k2_override, "max average sentence length (exact rational)");
    cmd->add_option("--k3", common.k3_override, "min function-word proportion (exact rational)");
    cmd->add_option("--threads", common.threads, "worker threads for the solver")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"human", "json"}));
  };

  CLI::App* metrics = app.add_subcommand("metrics", "compute W, S, F and the derived ratios");
  metrics->add_option("--document", document_path, "plain-text document")->required();
  add_common(metrics, false);

  CLI::App* solve = app.add_subcommand("solve", "select the minimum-cost feasible paraphrase set");
  add_common(solve, true);
  solve->add_flag("--oracle", with_oracle, "cross-check against brute-force enumeration");
  solve->add_option("--out", out_path, "write the rewritten document to this file");

  CLI::App* flexibility =
      app.add_subcommand("flexibility", "per-metric extremes ignoring costs and bounds");
  add_common(flexibility, true);

  CLI::App* sweep = app.add_subcommand("sweep", "re-solve across a range of bound values");
  add_common(sweep, true);
  sweep->add_option("--param", sweep_param, "which bound to sweep: k1, k2 or k3")->required();
  sweep->add_option("--values", sweep_values, "comma-separated bound values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (metrics->parsed()) return run_metrics(document_path, common);
    if (solve->parsed()) return run_solve(common, with_oracle, out_path);
    if (flexibility->parsed()) return run_flexibility(common);
    if (sweep->parsed()) return run_sweep(common, sweep_param, sweep_values);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
