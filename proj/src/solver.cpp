#include "textfit/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "textfit/errors.hpp"

namespace textfit {

namespace {

using std::int64_t;
using std::uint64_t;

int64_t checked_narrow(__int128 value, const char* what) {
  if (value > std::numeric_limits<int64_t>::max() || value < std::numeric_limits<int64_t>::min())
    throw ValidationError(std::string("constraint scaling overflows 64-bit range: ") + what);
  return static_cast<int64_t>(value);
}

// A constraint with integer coefficients, oriented as "lhs <= rhs".
// Multiplying through by the (positive) LCM of the denominators preserves
// the exact feasible set while keeping the search loop in plain integers.
struct ScaledConstraint {
  std::vector<int64_t> coeff;  // dense over all variables
  int64_t rhs = 0;
};

ScaledConstraint scale_constraint(const LinearConstraint& constraint, int variable_count) {
  int64_t lcm = constraint.rhs.denominator();
  for (const auto& term : constraint.terms) {
    int64_t den = term.coefficient.denominator();
    __int128 next = static_cast<__int128>(lcm / std::gcd(lcm, den)) * den;
    lcm = checked_narrow(next, constraint.label.c_str());
  }

  int sign = constraint.sense == ConstraintSense::LessEq ? 1 : -1;
  ScaledConstraint scaled;
  scaled.coeff.assign(variable_count, 0);
  scaled.rhs = checked_narrow(
      static_cast<__int128>(sign) * constraint.rhs.numerator() * (lcm / constraint.rhs.denominator()),
      constraint.label.c_str());
  __int128 magnitude = scaled.rhs < 0 ? -static_cast<__int128>(scaled.rhs) : scaled.rhs;
  for (const auto& term : constraint.terms) {
    __int128 value = static_cast<__int128>(sign) * term.coefficient.numerator() *
                     (lcm / term.coefficient.denominator());
    scaled.coeff[term.variable] = checked_narrow(value, constraint.label.c_str());
    magnitude += value < 0 ? -value : value;
  }
  checked_narrow(magnitude, constraint.label.c_str());  // every partial sum stays in range
  return scaled;
}

struct Incumbent {
  Rational objective;
  std::vector<int> selected;  // ascending model indices
};

// (objective, lex) order; the minimum over this order is unique, which is
// what makes multi-threaded solves return the single-threaded answer.
bool better(const Rational& z, const std::vector<int>& selected, const Incumbent& than) {
  if (z != than.objective) return z < than.objective;
  return std::lexicographical_compare(selected.begin(), selected.end(), than.selected.begin(),
                                      than.selected.end());
}

struct SharedIncumbent {
  std::mutex mutex;
  std::optional<Incumbent> best;
  std::atomic<uint64_t> version{0};

  void offer(const Rational& z, std::vector<int> selected) {
    std::lock_guard lock(mutex);
    if (!best || better(z, selected, *best)) {
      best = Incumbent{z, std::move(selected)};
      version.fetch_add(1, std::memory_order_release);
    }
  }
};

class Searcher {
 public:
  Searcher(const Model& model, const std::vector<ScaledConstraint>& constraints,
           const std::vector<int>& order, const std::vector<int>& group_of, int group_count,
           SharedIncumbent& shared)
      : model_(model),
        constraints_(constraints),
        order_(order),
        group_of_(group_of),
        shared_(shared),
        n_(static_cast<int>(model.variables.size())),
        committed_(constraints.size(), 0),
        group_selected_(group_count, 0),
        group_best_(group_count, 0),
        committed_cost_(0) {
    refresh_incumbent();
  }

  // Runs the subtree whose first `prefix_depth` branching decisions are the
  // bits of `prefix` (bit k = take order_[k]).
  void run(uint64_t prefix, int prefix_depth) {
    for (int k = 0; k < prefix_depth; ++k)
      if (prefix >> k & 1) select(order_[k]);
    dfs(prefix_depth);
    for (int k = prefix_depth - 1; k >= 0; --k)
      if (prefix >> k & 1) unselect(order_[k]);
  }

  SolverStats stats;

 private:
  void select(int v) {
    for (std::size_t c = 0; c < constraints_.size(); ++c) committed_[c] += constraints_[c].coeff[v];
    committed_cost_ += model_.objective[v];
    ++group_selected_[group_of_[v]];
    path_.push_back(v);
  }

  void unselect(int v) {
    for (std::size_t c = 0; c < constraints_.size(); ++c) committed_[c] -= constraints_[c].coeff[v];
    committed_cost_ -= model_.objective[v];
    --group_selected_[group_of_[v]];
    path_.pop_back();
  }

  void refresh_incumbent() {
    uint64_t version = shared_.version.load(std::memory_order_acquire);
    if (version == cached_version_ && cached_checked_) return;
    std::lock_guard lock(shared_.mutex);
    cached_version_ = shared_.version.load(std::memory_order_relaxed);
    cached_checked_ = true;
    if (shared_.best) {
      cached_objective_ = shared_.best->objective;
      have_incumbent_ = true;
    }
  }

  // Best case for each constraint: every undecided variable in a sentence
  // without a selection may contribute, but at most one per sentence.
  bool optimistically_satisfiable(int depth) const {
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      const auto& coeff = constraints_[c].coeff;
      auto& best = group_best_;
      touched_.clear();
      for (int p = depth; p < n_; ++p) {
        int v = order_[p];
        int g = group_of_[v];
        if (group_selected_[g] > 0) continue;
        int64_t k = coeff[v];
        if (k >= 0) continue;
        if (best[g] == 0) touched_.push_back(g);
        if (k < best[g]) best[g] = k;
      }
      int64_t bound = committed_[c];
      for (int g : touched_) {
        bound += best[g];
        best[g] = 0;
      }
      if (bound > constraints_[c].rhs) return false;
    }
    return true;
  }

  void offer_leaf() {
    ++stats.nodes_explored;
    for (std::size_t c = 0; c < constraints_.size(); ++c)
      if (committed_[c] > constraints_[c].rhs) return;
    refresh_incumbent();
    if (have_incumbent_ && committed_cost_ > cached_objective_) return;
    std::vector<int> selected = path_;
    std::sort(selected.begin(), selected.end());
    shared_.offer(committed_cost_, std::move(selected));
    refresh_incumbent();
  }

  void dfs(int depth) {
    if (depth == n_) {
      offer_leaf();
      return;
    }
    refresh_incumbent();
    if (have_incumbent_ && committed_cost_ > cached_objective_) {
      ++stats.nodes_pruned_bound;
      return;
    }
    if (!optimistically_satisfiable(depth)) {
      ++stats.nodes_pruned_infeasible;
      return;
    }
    int v = order_[depth];
    dfs(depth + 1);  // cheaper completions first
    if (group_selected_[group_of_[v]] > 0) return;  // at most one per sentence
    select(v);
    dfs(depth + 1);
    unselect(v);
  }

  const Model& model_;
  const std::vector<ScaledConstraint>& constraints_;
  const std::vector<int>& order_;
  const std::vector<int>& group_of_;
  SharedIncumbent& shared_;
  const int n_;

  std::vector<int64_t> committed_;
  std::vector<int> group_selected_;
  mutable std::vector<int64_t> group_best_;
  mutable std::vector<int> touched_;
  std::vector<int> path_;
  Rational committed_cost_;

  uint64_t cached_version_ = 0;
  bool cached_checked_ = false;
  bool have_incumbent_ = false;
  Rational cached_objective_;
};

// Repeatedly adds the unselected candidate with the best violation reduction
// per unit cost; seeds the incumbent when it reaches feasibility.
std::optional<Incumbent> greedy_seed(const Model& model,
                                     const std::vector<ScaledConstraint>& constraints,
                                     const std::vector<int>& group_of, int group_count) {
  const int n = static_cast<int>(model.variables.size());
  std::vector<char> taken(n, 0);
  std::vector<int> group_used(group_count, 0);
  std::vector<int64_t> lhs(constraints.size(), 0);
  std::vector<int> selected;
  Rational cost{0};

  auto total_violation = [&](const std::vector<int64_t>& values) {
    __int128 total = 0;
    for (std::size_t c = 0; c < constraints.size(); ++c)
      total += std::max<int64_t>(0, values[c] - constraints[c].rhs);
    return total;
  };

  for (int round = 0; round <= n; ++round) {
    __int128 violation = total_violation(lhs);
    if (violation == 0) {
      std::sort(selected.begin(), selected.end());
      return Incumbent{cost, std::move(selected)};
    }
    int best = -1;
    Rational best_score{0};
    std::vector<int64_t> trial(constraints.size());
    for (int v = 0; v < n; ++v) {
      if (taken[v] || group_used[group_of[v]] > 0) continue;
      for (std::size_t c = 0; c < constraints.size(); ++c)
        trial[c] = lhs[c] + constraints[c].coeff[v];
      __int128 progress = violation - total_violation(trial);
      if (progress <= 0) continue;
      Rational score = Rational(static_cast<int64_t>(progress)) / model.objective[v];
      if (best == -1 || score > best_score) {
        best = v;
        best_score = score;
      }
    }
    if (best == -1) return std::nullopt;
    taken[best] = 1;
    ++group_used[group_of[best]];
    for (std::size_t c = 0; c < constraints.size(); ++c) lhs[c] += constraints[c].coeff[best];
    cost += model.objective[best];
    selected.push_back(best);
  }
  return std::nullopt;
}

}  // namespace

bool lex_less(const Assignment& a, const Assignment& b) {
  return std::lexicographical_compare(a.selected.begin(), a.selected.end(), b.selected.begin(),
                                      b.selected.end());
}

bool check_feasibility(const Model& model, const Assignment& assignment) {
  const int n = static_cast<int>(model.variables.size());
  std::vector<char> mask(n, 0);
  for (int v : assignment.selected) {
    if (v < 0 || v >= n) throw ValidationError("unknown variable index " + std::to_string(v));
    if (mask[v]) throw ValidationError("variable index " + std::to_string(v) + " selected twice");
    mask[v] = 1;
  }
  for (const auto& constraint : model.constraints)
    if (!satisfies(constraint, mask)) return false;
  return true;
}

std::vector<Assignment> enumerate_feasible_bruteforce(const Model& model, int variable_limit) {
  const int n = static_cast<int>(model.variables.size());
  if (n > variable_limit)
    throw ValidationError("brute-force enumeration limited to " + std::to_string(variable_limit) +
                          " variables, model has " + std::to_string(n));

  const auto& constraints = model.constraints;
  std::vector<std::vector<std::pair<int, Rational>>> touching(n);
  for (int c = 0; c < static_cast<int>(constraints.size()); ++c)
    for (const auto& term : constraints[c].terms)
      touching[term.variable].push_back({c, term.coefficient});

  std::vector<Rational> lhs(constraints.size(), Rational(0));
  auto feasible_now = [&] {
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      if (constraints[c].sense == ConstraintSense::LessEq ? lhs[c] > constraints[c].rhs
                                                          : lhs[c] < constraints[c].rhs)
        return false;
    }
    return true;
  };

  std::vector<uint64_t> feasible_masks;
  if (feasible_now()) feasible_masks.push_back(0);

  // Gray-code walk: consecutive assignments differ in one variable, so the
  // running left-hand sides update with a single exact addition each.
  const uint64_t total = uint64_t{1} << n;
  uint64_t gray = 0;
  for (uint64_t k = 1; k < total; ++k) {
    uint64_t next = k ^ (k >> 1);
    int v = std::countr_zero(gray ^ next);
    bool now_selected = (next >> v) & 1;
    for (const auto& [c, coeff] : touching[v]) lhs[c] += now_selected ? coeff : -coeff;
    gray = next;
    if (feasible_now()) feasible_masks.push_back(gray);
  }

  std::vector<Assignment> result;
  result.reserve(feasible_masks.size());
  for (uint64_t mask : feasible_masks) {
    Assignment a;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) a.selected.push_back(v);
    result.push_back(std::move(a));
  }
  std::sort(result.begin(), result.end(), lex_less);
  return result;
}

Solution solve_branch_and_bound(const Model& model, const SolveOptions& options) {
  const int n = static_cast<int>(model.variables.size());
  if (n > 62) throw ValidationError("model too large for this solver (max 62 variables)");

  Solution solution;
  solution.stats.full_space = uint64_t{1} << n;

  std::vector<ScaledConstraint> constraints;
  constraints.reserve(model.constraints.size());
  for (const auto& c : model.constraints) constraints.push_back(scale_constraint(c, n));

  if (n == 0) {
    solution.stats.nodes_explored = 1;
    bool feasible = true;
    for (const auto& c : constraints) feasible &= 0 <= c.rhs;
    solution.status = feasible ? SolveStatus::Optimal : SolveStatus::Infeasible;
    solution.objective = Rational(0);
    return solution;
  }

  // Branching order: descending |w|, ties by (sentence, candidate). Length-
  // significant variables early keep the optimistic-completion bounds tight.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::llabs(model.variables[a].deltas.words) >
           std::llabs(model.variables[b].deltas.words);
  });

  // Exclusivity groups; with per-sentence exclusivity off every variable is
  // its own group.
  std::vector<int> group_of(n);
  int group_count = 0;
  if (model.config.per_sentence_exclusivity) {
    std::vector<std::pair<int, int>> sentile;
    for (int v = 0; v < n; ++v) {
      int sentence = model.variables[v].sentence;
      int found = -1;
      for (const auto& [s, g] : sentile)
        if (s == sentence) found = g;
      if (found == -1) {
        found = group_count++;
        sentile.push_back({sentence, found});
      }
      group_of[v] = found;
    }
  } else {
    std::iota(group_of.begin(), group_of.end(), 0);
    group_count = n;
  }

  SharedIncumbent shared;
  if (auto seed = greedy_seed(model, constraints, group_of, group_count))
    shared.offer(seed->objective, std::move(seed->selected));

  int threads = std::max(1, options.threads);
  if (threads == 1) {
    Searcher searcher(model, constraints, order, group_of, group_count, shared);
    searcher.run(0, 0);
    solution.stats.nodes_explored = searcher.stats.nodes_explored;
    solution.stats.nodes_pruned_bound = searcher.stats.nodes_pruned_bound;
    solution.stats.nodes_pruned_infeasible = searcher.stats.nodes_pruned_infeasible;
  } else {
    int prefix_depth = 0;
    while (prefix_depth < n && prefix_depth < 12 && (1 << prefix_depth) < 4 * threads)
      ++prefix_depth;
    const uint64_t tasks = uint64_t{1} << prefix_depth;
    std::atomic<uint64_t> next_task{0};
    std::vector<SolverStats> worker_stats(threads);
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        Searcher searcher(model, constraints, order, group_of, group_count, shared);
        for (uint64_t task = next_task.fetch_add(1); task < tasks;
             task = next_task.fetch_add(1))
          searcher.run(task, prefix_depth);
        worker_stats[t] = searcher.stats;
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& s : worker_stats) {
      solution.stats.nodes_explored += s.nodes_explored;
      solution.stats.nodes_pruned_bound += s.nodes_pruned_bound;
      solution.stats.nodes_pruned_infeasible += s.nodes_pruned_infeasible;
    }
  }

  std::lock_guard lock(shared.mutex);
  if (!shared.best) {
    solution.status = SolveStatus::Infeasible;
    solution.objective = Rational(0);
    return solution;
  }
  solution.status = SolveStatus::Optimal;
  solution.assignment.selected = shared.best->selected;
  solution.objective = shared.best->objective;
  if (!check_feasibility(model, solution.assignment))
    throw std::logic_error("solver returned an infeasible assignment");
  return solution;
}

}  // namespace textfit
