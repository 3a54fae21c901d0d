#include "textfit/model.hpp"

#include <algorithm>
#include <map>

#include "textfit/errors.hpp"

namespace textfit {

Rational evaluate_lhs(const LinearConstraint& constraint, std::span<const char> selection) {
  Rational lhs{0};
  for (const auto& term : constraint.terms) {
    if (term.variable < 0 || term.variable >= static_cast<int>(selection.size()))
      throw ValidationError("constraint references unknown variable " +
                            std::to_string(term.variable));
    if (selection[term.variable]) lhs += term.coefficient;
  }
  return lhs;
}

bool satisfies(const LinearConstraint& constraint, std::span<const char> selection) {
  Rational lhs = evaluate_lhs(constraint, selection);
  return constraint.sense == ConstraintSense::LessEq ? lhs <= constraint.rhs
                                                     : lhs >= constraint.rhs;
}

int Model::variable_index(int sentence, int candidate) const {
  for (int v = 0; v < static_cast<int>(variables.size()); ++v)
    if (variables[v].sentence == sentence && variables[v].candidate == candidate) return v;
  return -1;
}

LinearConstraint build_length_constraint(std::span<const ModelVariable> variables,
                                         long long limit) {
  LinearConstraint c;
  c.label = "length";
  c.sense = ConstraintSense::LessEq;
  c.rhs = Rational(limit);
  for (int v = 0; v < static_cast<int>(variables.size()); ++v) {
    if (variables[v].deltas.words == 0) continue;
    c.terms.push_back({v, Rational(variables[v].deltas.words)});
  }
  return c;
}

LinearConstraint build_readability_constraint(std::span<const ModelVariable> variables,
                                              const Metrics& base, const Rational& limit) {
  LinearConstraint c;
  c.label = "readability";
  c.sense = ConstraintSense::LessEq;
  c.rhs = limit * Rational(base.sentences) - Rational(base.words);
  for (int v = 0; v < static_cast<int>(variables.size()); ++v) {
    Rational coeff = Rational(variables[v].deltas.words) - limit * Rational(variables[v].deltas.sentences);
    if (coeff == Rational(0)) continue;
    c.terms.push_back({v, coeff});
  }
  return c;
}

LinearConstraint build_lexical_density_constraint(std::span<const ModelVariable> variables,
                                                  const Metrics& base, const Rational& floor) {
  LinearConstraint c;
  c.label = "lexical_density";
  c.sense = ConstraintSense::GreaterEq;
  c.rhs = floor * Rational(base.words) - Rational(base.function_words);
  for (int v = 0; v < static_cast<int>(variables.size()); ++v) {
    Rational coeff =
        Rational(variables[v].deltas.function_words) - floor * Rational(variables[v].deltas.words);
    if (coeff == Rational(0)) continue;
    c.terms.push_back({v, coeff});
  }
  return c;
}

std::vector<LinearConstraint> build_exclusivity_constraints(
    std::span<const ModelVariable> variables) {
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < static_cast<int>(variables.size()); ++v)
    groups[variables[v].sentence].push_back(v);

  std::vector<LinearConstraint> constraints;
  for (const auto& [sentence, members] : groups) {
    if (members.size() < 2) continue;  // the 0/1 domain already enforces it
    LinearConstraint c;
    c.label = "exclusivity(sentence=" + std::to_string(sentence) + ")";
    c.sense = ConstraintSense::LessEq;
    c.rhs = Rational(1);
    for (int v : members) c.terms.push_back({v, Rational(1)});
    constraints.push_back(std::move(c));
  }
  return constraints;
}

std::vector<Rational> build_objective(const CandidateSet& set, const CostWeights& weights) {
  std::vector<Rational> costs;
  costs.reserve(set.candidates.size());
  for (const auto& candidate : set.candidates)
    costs.push_back(compute_cost(candidate, weights).total);
  return costs;
}

Model build_model(std::vector<ModelVariable> variables, const Metrics& base,
                  const ModelConfig& config) {
  if (config.word_delta_limit > 0)
    throw ValidationError("k1 must be <= 0 (the text may not grow)");
  if (config.avg_sentence_length_limit < Rational(0))
    throw ValidationError("k2 must be >= 0");
  if (config.function_word_floor < Rational(0) || config.function_word_floor > Rational(1))
    throw ValidationError("k3 must be within [0, 1]");
  if (base.sentences < 1) throw ValidationError("base document must contain a sentence");

  std::sort(variables.begin(), variables.end(), [](const ModelVariable& a, const ModelVariable& b) {
    return std::pair(a.sentence, a.candidate) < std::pair(b.sentence, b.candidate);
  });
  for (std::size_t v = 1; v < variables.size(); ++v) {
    if (variables[v - 1].sentence == variables[v].sentence &&
        variables[v - 1].candidate == variables[v].candidate)
      throw ValidationError("duplicate variable (" + std::to_string(variables[v].sentence) + "," +
                            std::to_string(variables[v].candidate) + ")");
  }

  // The linearized ratio constraints are equivalent to the ratio forms only
  // while the post-rewrite denominators stay positive.
  std::map<int, std::pair<long long, long long>> worst;  // sentence -> (min s, min w)
  for (const auto& var : variables) {
    auto& [min_s, min_w] = worst.try_emplace(var.sentence, 0LL, 0LL).first->second;
    min_s = std::min(min_s, var.deltas.sentences);
    min_w = std::min(min_w, var.deltas.words);
  }
  long long min_sentences = base.sentences;
  long long min_words = base.words;
  for (const auto& [sentence, mins] : worst) {
    if (config.per_sentence_exclusivity) {
      min_sentences += mins.first;
      min_words += mins.second;
    }
  }
  if (!config.per_sentence_exclusivity) {
    for (const auto& var : variables) {
      min_sentences += std::min(0LL, var.deltas.sentences);
      min_words += std::min(0LL, var.deltas.words);
    }
  }
  if (min_sentences < 1)
    throw ValidationError("some selection could drive the sentence count below 1");
  if (min_words < 1) throw ValidationError("some selection could drive the word count below 1");

  Model model;
  model.base = base;
  model.config = config;
  model.objective.reserve(variables.size());
  for (const auto& var : variables) {
    if (var.cost <= Rational(0))
      throw ValidationError("variable (" + std::to_string(var.sentence) + "," +
                            std::to_string(var.candidate) + ") must have a positive cost");
    model.objective.push_back(var.cost);
  }
  model.variables = std::move(variables);

  model.constraints.push_back(
      build_length_constraint(model.variables, config.word_delta_limit));
  model.constraints.push_back(
      build_readability_constraint(model.variables, base, config.avg_sentence_length_limit));
  model.constraints.push_back(
      build_lexical_density_constraint(model.variables, base, config.function_word_floor));
  if (config.per_sentence_exclusivity)
    for (auto& c : build_exclusivity_constraints(model.variables))
      model.constraints.push_back(std::move(c));
  return model;
}

Model build_model(const CandidateSet& set, const ModelConfig& config, const CostWeights& weights) {
  std::vector<Rational> costs = build_objective(set, weights);
  std::vector<ModelVariable> variables;
  variables.reserve(set.candidates.size());
  for (std::size_t k = 0; k < set.candidates.size(); ++k) {
    const auto& c = set.candidates[k];
    variables.push_back({c.sentence_index, c.candidate_index, c.deltas, costs[k]});
  }
  return build_model(std::move(variables), compute_metrics(set.document), config);
}

}  // namespace textfit
