#pragma once

#include <span>
#include <string>
#include <vector>

#include "textfit/candidates.hpp"
#include "textfit/rational.hpp"
#include "textfit/text.hpp"

namespace textfit {

enum class ConstraintSense { LessEq, GreaterEq };

struct LinearTerm {
  int variable = 0;  // index into Model::variables
  Rational coefficient;

  bool operator==(const LinearTerm&) const = default;
};

struct LinearConstraint {
  std::string label;
  std::vector<LinearTerm> terms;  // ascending variable index, nonzero coefficients
  ConstraintSense sense = ConstraintSense::LessEq;
  Rational rhs;

  bool operator==(const LinearConstraint&) const = default;
};

// Exact left-hand-side value of the constraint under a 0/1 selection vector.
Rational evaluate_lhs(const LinearConstraint& constraint, std::span<const char> selection);
bool satisfies(const LinearConstraint& constraint, std::span<const char> selection);

// One 0/1 decision: apply candidate j to sentence i, with its metric deltas
// and strictly positive cost.
struct ModelVariable {
  int sentence = 0;
  int candidate = 0;
  Deltas deltas;
  Rational cost;

  bool operator==(const ModelVariable&) const = default;
};

struct ModelConfig {
  long long word_delta_limit = 0;        // k1: total word change must be <= k1 (k1 <= 0)
  Rational avg_sentence_length_limit;    // k2 >= 0
  Rational function_word_floor;          // k3 in [0, 1]
  bool per_sentence_exclusivity = true;

  bool operator==(const ModelConfig&) const = default;
};

struct Model {
  std::vector<ModelVariable> variables;  // sorted by (sentence, candidate)
  std::vector<Rational> objective;       // parallel to variables, all > 0
  std::vector<LinearConstraint> constraints;
  Metrics base;
  ModelConfig config;

  int variable_index(int sentence, int candidate) const;  // -1 when absent
};

// sum w_v x_v <= limit
LinearConstraint build_length_constraint(std::span<const ModelVariable> variables,
                                         long long limit);

// Linearized form of (W + sum w x) / (S + sum s x) <= limit:
// sum (w_v - limit * s_v) x_v <= limit * S - W.
LinearConstraint build_readability_constraint(std::span<const ModelVariable> variables,
                                              const Metrics& base, const Rational& limit);

// Linearized form of (F + sum f x) / (W + sum w x) >= floor:
// sum (f_v - floor * w_v) x_v >= floor * W - F.
LinearConstraint build_lexical_density_constraint(std::span<const ModelVariable> variables,
                                                  const Metrics& base, const Rational& floor);

// One "sum_j x_ij <= 1" row per sentence holding two or more candidates.
std::vector<LinearConstraint> build_exclusivity_constraints(
    std::span<const ModelVariable> variables);

// Costs in (sentence, candidate) order, computed from meaning class and
// discourse annotation; all strictly positive.
std::vector<Rational> build_objective(const CandidateSet& set, const CostWeights& weights);

// Assembles objective + the four constraint families. Validates the config
// ranges, positive costs, variable ordering, and that no exclusivity-
// respecting selection can drive the post-rewrite sentence or word count
// below 1 (the ratio linearizations require S' >= 1 and W' >= 1).
Model build_model(std::vector<ModelVariable> variables, const Metrics& base,
                  const ModelConfig& config);
Model build_model(const CandidateSet& set, const ModelConfig& config, const CostWeights& weights);

}  // namespace textfit
