#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "textfit/analysis.hpp"
#include "textfit/candidates.hpp"
#include "textfit/model.hpp"
#include "textfit/solver.hpp"

namespace textfit {

using OutputJson = nlohmann::ordered_json;

// Run-time configuration file: {"constraints": {"k1": 0, "k2": "10",
// "k3": "0.525"}, "weights": {...}, "validation": {...}}. k2/k3 and the
// weights are decimal strings (or integers) parsed to exact rationals.
struct AppConfig {
  std::optional<long long> k1;
  std::optional<Rational> k2;
  std::optional<Rational> k3;
  CostWeights weights;
  ValidationOptions validation;
};

AppConfig load_config(const std::filesystem::path& file);
AppConfig parse_config_json(std::string_view json_text, std::string_view origin = "<input>");

// Throws ConfigError unless k2 and k3 are present; k1 defaults to 0.
ModelConfig resolve_model_config(const AppConfig& config);

// "17/33 (= 0.515152)"
std::string rational_with_decimal(const Rational& value);

OutputJson rational_json(const Rational& value);
OutputJson metrics_json(const Metrics& metrics);
OutputJson stats_json(const SolverStats& stats);
OutputJson selected_json(const Model& model, const Assignment& assignment);

// "W=33 S=3 F=17 avg=11 density=17/33"
std::string metrics_line(const Metrics& metrics);
std::string selected_human(const Model& model, const Assignment& assignment);

OutputJson solution_json(const Model& model, const Solution& solution,
                         const std::string* rewritten,
                         std::span<const FlexibilityReport> achievable,
                         const OutputJson* oracle);
std::string solution_human(const Model& model, const Solution& solution,
                           const std::string* rewritten,
                           std::span<const FlexibilityReport> achievable,
                           const OutputJson* oracle);

OutputJson flexibility_json(const Model& model, std::span<const FlexibilityReport> reports);
std::string flexibility_human(const Model& model, std::span<const FlexibilityReport> reports);

OutputJson sweep_json(const Model& model, std::string_view parameter,
                      std::span<const SweepPoint> points);
std::string sweep_human(const Model& model, std::string_view parameter,
                        std::span<const SweepPoint> points);

}  // namespace textfit
