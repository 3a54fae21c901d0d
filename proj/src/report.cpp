#include "textfit/report.hpp"

#include <fstream>
#include <sstream>

#include "textfit/errors.hpp"

namespace textfit {

namespace {

Rational exact_field(const OutputJson& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw ConfigError(where + ": expected an exact value as a string (e.g. \"0.525\") or an integer");
}

}  // namespace

AppConfig parse_config_json(std::string_view json_text, std::string_view origin) {
  OutputJson root;
  try {
    root = OutputJson::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(std::string(origin) + ": top level must be an object");

  AppConfig config;
  if (root.contains("constraints")) {
    const auto& constraints = root["constraints"];
    if (!constraints.is_object())
      throw ConfigError(std::string(origin) + ": 'constraints' must be an object");
    if (constraints.contains("k1")) {
      if (!constraints["k1"].is_number_integer())
        throw ConfigError(std::string(origin) + ": constraints.k1 must be an integer");
      config.k1 = constraints["k1"].get<long long>();
    }
    if (constraints.contains("k2"))
      config.k2 = exact_field(constraints["k2"], std::string(origin) + ": constraints.k2");
    if (constraints.contains("k3"))
      config.k3 = exact_field(constraints["k3"], std::string(origin) + ": constraints.k3");
  }
  if (root.contains("weights")) {
    const auto& weights = root["weights"];
    if (!weights.is_object()) throw ConfigError(std::string(origin) + ": 'weights' must be an object");
    auto read = [&](const char* key, Rational& into) {
      if (weights.contains(key))
        into = exact_field(weights[key], std::string(origin) + ": weights." + key);
    };
    read("none", config.weights.none);
    read("closed_only", config.weights.closed_only);
    read("single_open", config.weights.single_open);
    read("multi_open", config.weights.multi_open);
    read("discourse_lambda", config.weights.discourse_lambda);
    config.weights.validate();
  }
  if (root.contains("validation")) {
    const auto& validation = root["validation"];
    if (!validation.is_object())
      throw ConfigError(std::string(origin) + ": 'validation' must be an object");
    if (validation.contains("allow_sentence_deletion")) {
      if (!validation["allow_sentence_deletion"].is_boolean())
        throw ConfigError(std::string(origin) + ": validation.allow_sentence_deletion must be a boolean");
      config.validation.allow_sentence_deletion =
          validation["allow_sentence_deletion"].get<bool>();
    }
  }
  return config;
}

AppConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str(), file.string());
}

ModelConfig resolve_model_config(const AppConfig& config) {
  ModelConfig model;
  model.word_delta_limit = config.k1.value_or(0);
  if (!config.k2) throw ConfigError("k2 (average sentence length limit) is not set");
  if (!config.k3) throw ConfigError("k3 (function word floor) is not set");
  model.avg_sentence_length_limit = *config.k2;
  model.function_word_floor = *config.k3;
  return model;
}

std::string rational_with_decimal(const Rational& value) {
  return to_string(value) + " (= " + to_decimal_string(value) + ")";
}

OutputJson rational_json(const Rational& value) {
  OutputJson out;
  out["exact"] = to_string(value);
  out["decimal"] = to_double(value);
  return out;
}

OutputJson metrics_json(const Metrics& metrics) {
  OutputJson out;
  out["words"] = metrics.words;
  out["sentences"] = metrics.sentences;
  out["function_words"] = metrics.function_words;
  out["avg_sentence_length"] =
      metrics.sentences > 0 ? rational_json(metrics.avg_sentence_length()) : OutputJson(nullptr);
  out["lexical_density"] =
      metrics.words > 0 ? rational_json(metrics.lexical_density()) : OutputJson(nullptr);
  return out;
}

OutputJson stats_json(const SolverStats& stats) {
  OutputJson out;
  out["nodes_explored"] = stats.nodes_explored;
  out["nodes_pruned_bound"] = stats.nodes_pruned_bound;
  out["nodes_pruned_infeasible"] = stats.nodes_pruned_infeasible;
  out["full_space"] = stats.full_space;
  out["explored_fraction"] =
      stats.full_space ? static_cast<double>(stats.nodes_explored) / static_cast<double>(stats.full_space)
                       : 0.0;
  return out;
}

OutputJson selected_json(const Model& model, const Assignment& assignment) {
  OutputJson out = OutputJson::array();
  for (int v : assignment.selected) {
    OutputJson entry;
    entry["sentence"] = model.variables.at(v).sentence;
    entry["candidate"] = model.variables.at(v).candidate;
    out.push_back(std::move(entry));
  }
  return out;
}

std::string metrics_line(const Metrics& metrics) {
  std::ostringstream out;
  out << "W=" << metrics.words << " S=" << metrics.sentences << " F=" << metrics.function_words;
  if (metrics.sentences > 0) out << " avg=" << to_string(metrics.avg_sentence_length());
  if (metrics.words > 0) out << " density=" << to_string(metrics.lexical_density());
  return out.str();
}

std::string selected_human(const Model& model, const Assignment& assignment) {
  if (assignment.selected.empty()) return "(none)";
  std::ostringstream out;
  for (std::size_t k = 0; k < assignment.selected.size(); ++k) {
    const auto& var = model.variables.at(assignment.selected[k]);
    if (k > 0) out << ' ';
    out << '(' << var.sentence << ',' << var.candidate << ')';
  }
  return out.str();
}

namespace {

OutputJson achievable_json(std::span<const FlexibilityReport> achievable) {
  OutputJson out;
  for (const auto& report : achievable) {
    OutputJson& slot = out[std::string(to_string(report.metric))];
    slot[std::string(to_string(report.direction))] = rational_json(report.extreme_value);
  }
  return out;
}

}  // namespace

OutputJson solution_json(const Model& model, const Solution& solution,
                         const std::string* rewritten,
                         std::span<const FlexibilityReport> achievable,
                         const OutputJson* oracle) {
  OutputJson out;
  out["status"] = solution.status == SolveStatus::Optimal ? "optimal" : "infeasible";
  out["before"] = metrics_json(model.base);
  if (solution.status == SolveStatus::Optimal) {
    out["objective"] = rational_json(solution.objective);
    out["selected"] = selected_json(model, solution.assignment);
    out["after"] = metrics_json(metrics_after(model, solution.assignment));
    if (rewritten) out["rewritten"] = *rewritten;
  } else {
    out["achievable"] = achievable_json(achievable);
  }
  if (oracle) out["oracle"] = *oracle;
  out["stats"] = stats_json(solution.stats);
  return out;
}

std::string solution_human(const Model& model, const Solution& solution,
                           const std::string* rewritten,
                           std::span<const FlexibilityReport> achievable,
                           const OutputJson* oracle) {
  std::ostringstream out;
  out << "status: " << (solution.status == SolveStatus::Optimal ? "optimal" : "infeasible") << '\n';
  out << "before: " << metrics_line(model.base) << '\n';
  if (solution.status == SolveStatus::Optimal) {
    out << "objective: " << rational_with_decimal(solution.objective) << '\n';
    out << "selected: " << selected_human(model, solution.assignment) << '\n';
    out << "after: " << metrics_line(metrics_after(model, solution.assignment)) << '\n';
    if (rewritten) out << "rewritten:\n" << *rewritten << '\n';
  } else {
    out << "achievable (ignoring costs, exclusivity only):\n";
    for (const auto& report : achievable) {
      out << "  " << to_string(report.metric) << ' ' << to_string(report.direction) << " = "
          << rational_with_decimal(report.extreme_value) << '\n';
    }
  }
  if (oracle) {
    out << "oracle: feasible_count=" << (*oracle)["feasible_count"].get<std::size_t>()
        << " agrees=" << ((*oracle)["agrees"].get<bool>() ? "yes" : "no") << '\n';
  }
  out << "stats: explored=" << solution.stats.nodes_explored
      << " pruned_bound=" << solution.stats.nodes_pruned_bound
      << " pruned_infeasible=" << solution.stats.nodes_pruned_infeasible
      << " full_space=" << solution.stats.full_space << '\n';
  return out.str();
}

OutputJson flexibility_json(const Model& model, std::span<const FlexibilityReport> reports) {
  OutputJson out;
  out["original"] = metrics_json(model.base);
  out["reports"] = OutputJson::array();
  for (const auto& report : reports) {
    OutputJson entry;
    entry["metric"] = std::string(to_string(report.metric));
    entry["direction"] = std::string(to_string(report.direction));
    entry["extreme"] = rational_json(report.extreme_value);
    entry["original"] = rational_json(report.original_value);
    entry["selected"] = selected_json(model, report.assignment);
    entry["resulting"] = metrics_json(report.resulting);
    out["reports"].push_back(std::move(entry));
  }
  return out;
}

std::string flexibility_human(const Model& model, std::span<const FlexibilityReport> reports) {
  std::ostringstream out;
  out << "original: " << metrics_line(model.base) << '\n';
  for (const auto& report : reports) {
    out << to_string(report.metric) << ' ' << to_string(report.direction) << ": "
        << rational_with_decimal(report.extreme_value) << " via "
        << selected_human(model, report.assignment) << "; after: " << metrics_line(report.resulting)
        << '\n';
  }
  return out.str();
}

OutputJson sweep_json(const Model& model, std::string_view parameter,
                      std::span<const SweepPoint> points) {
  OutputJson out;
  out["parameter"] = std::string(parameter);
  out["points"] = OutputJson::array();
  for (const auto& point : points) {
    OutputJson entry;
    entry["value"] = rational_json(point.value);
    entry["status"] =
        point.solution.status == SolveStatus::Optimal ? "optimal" : "infeasible";
    if (point.solution.status == SolveStatus::Optimal) {
      entry["objective"] = rational_json(point.solution.objective);
      entry["selected"] = selected_json(model, point.solution.assignment);
    }
    out["points"].push_back(std::move(entry));
  }
  return out;
}

std::string sweep_human(const Model& model, std::string_view parameter,
                        std::span<const SweepPoint> points) {
  std::ostringstream out;
  out << "sweep " << parameter << ":\n";
  for (const auto& point : points) {
    out << "  " << rational_with_decimal(point.value) << " -> ";
    if (point.solution.status == SolveStatus::Optimal) {
      out << "optimal z=" << rational_with_decimal(point.solution.objective)
          << " selected=" << selected_human(model, point.solution.assignment);
    } else {
      out << "infeasible";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace textfit
