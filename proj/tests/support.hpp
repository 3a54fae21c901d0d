#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "textfit/analysis.hpp"
#include "textfit/candidates.hpp"
#include "textfit/model.hpp"
#include "textfit/report.hpp"
#include "textfit/solver.hpp"

namespace textfit::test {

inline std::filesystem::path data_dir() { return TEXTFIT_DATA_DIR; }
inline std::filesystem::path golden_dir() { return data_dir() / "golden"; }

inline const char* kGoldenText =
    "The cat sat on the mat which was by the door. It ate the cream ladled out by its owner. "
    "The owner, an eminent engineer, had a convertible used in a bank robbery.";

inline CandidateSet golden_candidates() {
  return load_candidates(golden_dir() / "candidates.json", Lexicon::builtin()).set;
}

inline ModelConfig golden_config() {
  ModelConfig config;
  config.word_delta_limit = 0;
  config.avg_sentence_length_limit = Rational(10);
  config.function_word_floor = Rational(21, 40);  // 0.525
  return config;
}

inline Model golden_model() {
  return build_model(golden_candidates(), golden_config(), CostWeights{});
}

// ---------------------------------------------------------------------------
// Random synthetic instances (coefficients only, no text) for the oracle
// equivalence and linearization properties.

struct SyntheticInstance {
  Metrics base;
  std::vector<ModelVariable> variables;
  ModelConfig config;
};

inline Rational random_positive_cost(std::mt19937& rng) {
  static const long long dens[] = {1, 1, 2, 4, 5, 10};
  std::uniform_int_distribution<long long> num(1, 40);
  std::uniform_int_distribution<std::size_t> den(0, std::size(dens) - 1);
  return Rational(num(rng), dens[den(rng)]);
}

// Base metrics plus up to `max_vars` variables with coefficients in [-5, +5],
// constrained so that no exclusivity-respecting selection can push the
// sentence or word count below 1 (the model builder rejects those).
inline SyntheticInstance random_instance(std::mt19937& rng, int max_vars) {
  SyntheticInstance instance;
  std::uniform_int_distribution<int> var_count(1, max_vars);
  const int n = var_count(rng);

  std::uniform_int_distribution<long long> sentences(2, 8);
  instance.base.sentences = sentences(rng);
  std::uniform_int_distribution<long long> words_per_sentence(6, 14);
  instance.base.words = instance.base.sentences * words_per_sentence(rng);
  std::uniform_int_distribution<long long> functions(instance.base.words / 3,
                                                     2 * instance.base.words / 3);
  instance.base.function_words = functions(rng);

  std::uniform_int_distribution<int> sentence_of(1, static_cast<int>(instance.base.sentences));
  std::uniform_int_distribution<long long> coeff(-5, 5);
  std::uniform_int_distribution<long long> sentence_delta(-1, 2);

  std::vector<int> per_sentence_count(instance.base.sentences + 1, 0);
  for (int k = 0; k < n; ++k) {
    ModelVariable var;
    var.sentence = sentence_of(rng);
    var.candidate = ++per_sentence_count[var.sentence];
    var.deltas.words = coeff(rng);
    var.deltas.function_words = coeff(rng);
    var.deltas.sentences = sentence_delta(rng);
    var.cost = random_positive_cost(rng);
    instance.variables.push_back(var);
  }

  // Worst-case totals stay >= 1: the per-sentence minima are what an
  // exclusivity-respecting selection can reach.
  auto worst_total = [&](auto member) {
    long long total = member == 0 ? instance.base.sentences : instance.base.words;
    for (long long s = 1; s <= instance.base.sentences; ++s) {
      long long worst = 0;
      for (const auto& var : instance.variables) {
        if (var.sentence != s) continue;
        worst = std::min(worst, member == 0 ? var.deltas.sentences : var.deltas.words);
      }
      total += worst;
    }
    return total;
  };
  while (worst_total(0) < 1) {
    for (auto& var : instance.variables)
      if (var.deltas.sentences < 0) var.deltas.sentences = 0;
  }
  while (worst_total(1) < 1) {
    // plenty of base words relative to 5-word deltas; nudge the worst one up
    long long worst_value = 0;
    ModelVariable* worst_var = nullptr;
    for (auto& var : instance.variables)
      if (var.deltas.words < worst_value) {
        worst_value = var.deltas.words;
        worst_var = &var;
      }
    if (!worst_var) break;
    ++worst_var->deltas.words;
  }

  // Feasible-ish bounds around the base ratios.
  std::uniform_int_distribution<long long> k1(-3, 0);
  instance.config.word_delta_limit = k1(rng);
  std::uniform_int_distribution<long long> k2_jitter(-2, 2);
  static const long long k2_dens[] = {1, 2, 4};
  std::uniform_int_distribution<std::size_t> k2_den(0, std::size(k2_dens) - 1);
  Rational avg = Rational(instance.base.words, instance.base.sentences);
  instance.config.avg_sentence_length_limit =
      avg + Rational(k2_jitter(rng), k2_dens[k2_den(rng)]);
  if (instance.config.avg_sentence_length_limit < Rational(1))
    instance.config.avg_sentence_length_limit = Rational(1);
  std::uniform_int_distribution<long long> k3_jitter(-4, 4);
  Rational density = Rational(instance.base.function_words, instance.base.words);
  Rational floor = density + Rational(k3_jitter(rng), 40);
  if (floor < Rational(0)) floor = Rational(0);
  if (floor > Rational(1)) floor = Rational(1);
  instance.config.function_word_floor = floor;
  return instance;
}

inline Model build(const SyntheticInstance& instance) {
  return build_model(instance.variables, instance.base, instance.config);
}

// All exclusivity-respecting selections (product over sentence groups),
// independent of the solver machinery; for flexibility oracles.
inline std::vector<Assignment> exclusive_assignments(const Model& model) {
  std::vector<std::vector<int>> groups;
  {
    std::vector<int> seen_sentences;
    for (int v = 0; v < static_cast<int>(model.variables.size()); ++v) {
      int sentence = model.variables[v].sentence;
      bool found = false;
      for (std::size_t g = 0; g < seen_sentences.size(); ++g) {
        if (seen_sentences[g] == sentence) {
          groups[g].push_back(v);
          found = true;
        }
      }
      if (!found) {
        seen_sentences.push_back(sentence);
        groups.push_back({v});
      }
    }
  }
  std::vector<Assignment> result{{}};
  for (const auto& group : groups) {
    std::vector<Assignment> extended;
    for (const auto& partial : result) {
      extended.push_back(partial);
      for (int v : group) {
        Assignment next = partial;
        next.selected.push_back(v);
        extended.push_back(std::move(next));
      }
    }
    result = std::move(extended);
  }
  for (auto& assignment : result)
    std::sort(assignment.selected.begin(), assignment.selected.end());
  return result;
}

}  // namespace textfit::test
