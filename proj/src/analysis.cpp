#include "textfit/analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "textfit/errors.hpp"

namespace textfit {

namespace {

std::vector<std::vector<int>> sentence_groups(const Model& model) {
  std::map<int, std::vector<int>> by_sentence;
  for (int v = 0; v < static_cast<int>(model.variables.size()); ++v)
    by_sentence[model.variables[v].sentence].push_back(v);
  std::vector<std::vector<int>> groups;
  groups.reserve(by_sentence.size());
  for (auto& [sentence, members] : by_sentence) groups.push_back(std::move(members));
  return groups;
}

long long word_delta(const Model& model, int v) { return model.variables[v].deltas.words; }

// Minimizes (A + sum a_v x_v) / (B + sum b_v x_v) over exclusivity-respecting
// selections by Dinkelbach iteration: for a fixed ratio guess q, the inner
// problem min sum (a_v - q b_v) x_v is separable per sentence, and the guess
// q is exact because everything is rational. The denominator stays >= 1 for
// every selection (validated at model build), so each iterate is well
// defined and the loop terminates at the exact optimum.
struct RatioProblem {
  Rational base_num;
  Rational base_den;
  std::vector<Rational> num_delta;  // a_v
  std::vector<Rational> den_delta;  // b_v
};

std::pair<Rational, std::vector<int>> minimize_ratio(const RatioProblem& problem,
                                                     const std::vector<std::vector<int>>& groups) {
  Rational ratio = problem.base_num / problem.base_den;
  std::vector<int> achiever;  // attains `ratio`; initially the empty selection
  while (true) {
    Rational reduced_total{0};
    std::vector<int> chosen;
    for (const auto& group : groups) {
      Rational best{0};
      int pick = -1;
      for (int v : group) {
        Rational reduced = problem.num_delta[v] - ratio * problem.den_delta[v];
        if (reduced < best) {
          best = reduced;
          pick = v;
        }
      }
      if (pick != -1) {
        reduced_total += best;
        chosen.push_back(pick);
      }
    }
    // reduced_total = min over x of [N(x) - ratio * D(x)]; zero means no
    // selection beats the current ratio, so `ratio` is the exact minimum.
    if (reduced_total == Rational(0)) {
      std::sort(achiever.begin(), achiever.end());
      return {ratio, std::move(achiever)};
    }
    Rational num = problem.base_num;
    Rational den = problem.base_den;
    for (int v : chosen) {
      num += problem.num_delta[v];
      den += problem.den_delta[v];
    }
    ratio = num / den;
    achiever = std::move(chosen);
  }
}

}  // namespace

std::string_view to_string(TextMetricKind metric) {
  switch (metric) {
    case TextMetricKind::TotalWords: return "total_words";
    case TextMetricKind::AvgSentenceLength: return "avg_sentence_length";
    case TextMetricKind::LexicalDensity: return "lexical_density";
  }
  return "total_words";
}

std::string_view to_string(OptimizeDirection direction) {
  return direction == OptimizeDirection::Minimize ? "min" : "max";
}

Metrics metrics_after(const Model& model, const Assignment& assignment) {
  Metrics after = model.base;
  for (int v : assignment.selected) {
    const auto& d = model.variables.at(v).deltas;
    after.words += d.words;
    after.sentences += d.sentences;
    after.function_words += d.function_words;
  }
  return after;
}

FlexibilityReport analyze_flexibility(const Model& model, TextMetricKind metric,
                                      OptimizeDirection direction) {
  FlexibilityReport report;
  report.metric = metric;
  report.direction = direction;

  auto groups = sentence_groups(model);
  const bool minimize = direction == OptimizeDirection::Minimize;

  if (metric == TextMetricKind::TotalWords) {
    report.original_value = Rational(model.base.words);
    long long total = model.base.words;
    for (const auto& group : groups) {
      long long best = 0;
      int pick = -1;
      for (int v : group) {
        long long w = word_delta(model, v);
        if (minimize ? w < best : w > best) {
          best = w;
          pick = v;
        }
      }
      if (pick != -1) {
        total += best;
        report.assignment.selected.push_back(pick);
      }
    }
    std::sort(report.assignment.selected.begin(), report.assignment.selected.end());
    report.extreme_value = Rational(total);
  } else {
    RatioProblem problem;
    const int n = static_cast<int>(model.variables.size());
    problem.num_delta.resize(n);
    problem.den_delta.resize(n);
    if (metric == TextMetricKind::AvgSentenceLength) {
      problem.base_num = Rational(model.base.words);
      problem.base_den = Rational(model.base.sentences);
      for (int v = 0; v < n; ++v) {
        problem.num_delta[v] = Rational(model.variables[v].deltas.words);
        problem.den_delta[v] = Rational(model.variables[v].deltas.sentences);
      }
    } else {
      problem.base_num = Rational(model.base.function_words);
      problem.base_den = Rational(model.base.words);
      for (int v = 0; v < n; ++v) {
        problem.num_delta[v] = Rational(model.variables[v].deltas.function_words);
        problem.den_delta[v] = Rational(model.variables[v].deltas.words);
      }
    }
    report.original_value = problem.base_num / problem.base_den;
    if (!minimize) {
      // max N/D = -min(-N)/D; the denominator is positive throughout.
      problem.base_num = -problem.base_num;
      for (auto& a : problem.num_delta) a = -a;
    }
    auto [value, chosen] = minimize_ratio(problem, groups);
    report.extreme_value = minimize ? value : -value;
    report.assignment.selected = std::move(chosen);
  }

  report.resulting = metrics_after(model, report.assignment);
  return report;
}

std::vector<SweepPoint> sweep_constraint(const Model& model, ConstraintParameter parameter,
                                         const std::vector<Rational>& values,
                                         const SolveOptions& options) {
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (const Rational& value : values) {
    ModelConfig config = model.config;
    switch (parameter) {
      case ConstraintParameter::WordDeltaLimit:
        if (value.denominator() != 1)
          throw ValidationError("k1 must be an integer, got " + to_string(value));
        config.word_delta_limit = value.numerator();
        break;
      case ConstraintParameter::AvgSentenceLengthLimit:
        config.avg_sentence_length_limit = value;
        break;
      case ConstraintParameter::FunctionWordFloor:
        config.function_word_floor = value;
        break;
    }
    Model rebuilt = build_model(model.variables, model.base, config);
    points.push_back({value, solve_branch_and_bound(rebuilt, options)});
  }
  return points;
}

RewriteResult apply_solution(const Document& document, const CandidateSet& set,
                             const Assignment& assignment, const Lexicon& lexicon) {
  std::map<int, const ParaphraseCandidate*> chosen;  // sentence -> candidate
  Deltas total;
  for (int index : assignment.selected) {
    if (index < 0 || index >= static_cast<int>(set.candidates.size()))
      throw ValidationError("assignment references unknown candidate index " +
                            std::to_string(index));
    const ParaphraseCandidate& candidate = set.candidates[index];
    if (!chosen.emplace(candidate.sentence_index, &candidate).second)
      throw ValidationError("two candidates selected for sentence " +
                            std::to_string(candidate.sentence_index));
    total.words += candidate.deltas.words;
    total.sentences += candidate.deltas.sentences;
    total.function_words += candidate.deltas.function_words;
  }

  const std::string& source = document.source_text;
  std::string out;
  out.reserve(source.size());
  std::size_t cursor = 0;
  bool swallow_gap = false;
  for (std::size_t i = 0; i < document.sentences.size(); ++i) {
    const Sentence& sentence = document.sentences[i];
    if (!swallow_gap) out += source.substr(cursor, sentence.begin - cursor);
    swallow_gap = false;
    auto it = chosen.find(static_cast<int>(i) + 1);
    if (it == chosen.end()) {
      out += source.substr(sentence.begin, sentence.end - sentence.begin);
    } else {
      std::string_view replacement = it->second->replacement_text;
      auto first = replacement.find_first_not_of(" \t\r\n");
      if (first == std::string_view::npos) {
        swallow_gap = true;  // deleted sentence: drop the following separator too
      } else {
        auto last = replacement.find_last_not_of(" \t\r\n");
        out += replacement.substr(first, last - first + 1);
      }
    }
    cursor = sentence.end;
  }
  out += source.substr(cursor);

  RewriteResult result;
  result.text = std::move(out);
  result.metrics = compute_metrics(classify_words(tokenize(result.text), lexicon));

  Metrics base = compute_metrics(document);
  Metrics expected{base.words + total.words, base.sentences + total.sentences,
                   base.function_words + total.function_words};
  if (result.metrics != expected) {
    std::ostringstream msg;
    msg << "rewritten text metrics (W=" << result.metrics.words
        << ", S=" << result.metrics.sentences << ", F=" << result.metrics.function_words
        << ") do not match base plus selected deltas (W=" << expected.words
        << ", S=" << expected.sentences << ", F=" << expected.function_words << ")";
    throw ValidationError(msg.str());
  }
  return result;
}

}  // namespace textfit
