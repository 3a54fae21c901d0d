#pragma once

#include <string>
#include <vector>

#include "textfit/model.hpp"
#include "textfit/solver.hpp"

namespace textfit {

enum class TextMetricKind { TotalWords, AvgSentenceLength, LexicalDensity };
enum class OptimizeDirection { Minimize, Maximize };

std::string_view to_string(TextMetricKind metric);
std::string_view to_string(OptimizeDirection direction);

// The extreme value a metric can reach over all selections that respect
// per-sentence exclusivity, ignoring every other constraint and all costs.
struct FlexibilityReport {
  TextMetricKind metric = TextMetricKind::TotalWords;
  OptimizeDirection direction = OptimizeDirection::Minimize;
  Rational extreme_value;
  Assignment assignment;
  Rational original_value;
  Metrics resulting;  // full counts under the achieving assignment
};

FlexibilityReport analyze_flexibility(const Model& model, TextMetricKind metric,
                                      OptimizeDirection direction);

enum class ConstraintParameter { WordDeltaLimit, AvgSentenceLengthLimit, FunctionWordFloor };

struct SweepPoint {
  Rational value;
  Solution solution;
};

// Re-solves the model once per bound value; results follow the input order.
std::vector<SweepPoint> sweep_constraint(const Model& model, ConstraintParameter parameter,
                                         const std::vector<Rational>& values,
                                         const SolveOptions& options = {});

struct RewriteResult {
  std::string text;
  Metrics metrics;  // recomputed from the rewritten text
};

// Substitutes each selected candidate's replacement for its source sentence,
// preserving the original inter-sentence whitespace. The recomputed metrics
// must equal base + selected deltas; a mismatch throws ValidationError, as
// does selecting two candidates for one sentence.
RewriteResult apply_solution(const Document& document, const CandidateSet& set,
                             const Assignment& assignment, const Lexicon& lexicon);

// base + the selected variables' deltas.
Metrics metrics_after(const Model& model, const Assignment& assignment);

}  // namespace textfit
