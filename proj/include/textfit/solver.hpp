#pragma once

#include <cstdint>
#include <vector>

#include "textfit/model.hpp"

namespace textfit {

// A 0/1 point: the ascending model-variable indices set to 1.
struct Assignment {
  std::vector<int> selected;

  bool operator==(const Assignment&) const = default;
};

// Lexicographic order on the ascending index sequences; the tie-break used
// whenever two selections have equal objective value.
bool lex_less(const Assignment& a, const Assignment& b);

enum class SolveStatus { Optimal, Infeasible };

struct SolverStats {
  // Complete assignments evaluated. Without pruning this reaches full_space.
  std::uint64_t nodes_explored = 0;
  // Subtrees cut because the committed cost already exceeds the incumbent.
  std::uint64_t nodes_pruned_bound = 0;
  // Subtrees cut because some constraint cannot be satisfied even by the
  // best-case completion of the undecided variables.
  std::uint64_t nodes_pruned_infeasible = 0;
  std::uint64_t full_space = 0;  // 2^n
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  Assignment assignment;  // empty when infeasible
  Rational objective;     // sum of selected costs; 0 when infeasible
  SolverStats stats;
};

struct SolveOptions {
  int threads = 1;
  int oracle_limit = 24;  // refuse brute force beyond this many variables
};

// Exact evaluation of every constraint. Throws ValidationError on an
// out-of-range or duplicated variable index.
bool check_feasibility(const Model& model, const Assignment& assignment);

// Tests all 2^n assignments; returns the feasible ones in lexicographic
// order of their selected-index sets. Throws ValidationError when the model
// has more variables than the limit.
std::vector<Assignment> enumerate_feasible_bruteforce(const Model& model,
                                                      int variable_limit = 24);

// Depth-first branch and bound over the variables in descending |w| order
// (ties by (sentence, candidate)). Returns the minimum-cost feasible
// assignment, breaking objective ties toward the lexicographically smallest
// selected set; the result is identical for any thread count.
Solution solve_branch_and_bound(const Model& model, const SolveOptions& options = {});

}  // namespace textfit
