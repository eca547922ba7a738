#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "septree/bounds/bounds.h"
#include "septree/core/front.h"
#include "septree/core/state.h"
#include "septree/core/task.h"

namespace septree {

struct SolverConfig {
	int max_depth = 3;
	/// Branching-node budget; negative means 2^max_depth - 1.
	int max_nodes = -1;
	bool use_cache = true;
	bool use_bounds = true;
	bool use_depth2 = true;
	/// Seconds; 0 disables the limit.
	double time_limit = 0.0;
	int min_leaf_support = 0;

	/// Throws ContractError on out-of-range fields.
	void validate() const;
	/// Budget resolved and clamped to 2^d - 1, depth clamped to the budget.
	SolverConfig normalized() const;
};

enum class CacheStatus { kOptimal, kLowerBoundOnly };

struct CacheEntry {
	std::vector<FrontEntry> solutions;
	std::vector<SolutionValue> lower_bound;
	CacheStatus status = CacheStatus::kOptimal;
};

struct CacheKey {
	BranchPath path;
	int depth = 0;
	int budget = 0;

	friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheKeyHash {
	std::size_t operator()(const CacheKey& k) const;
};

struct SolverStats {
	std::uint64_t recursions = 0;
	std::uint64_t cache_hits = 0;
	std::uint64_t cache_entries = 0;
	std::uint64_t lb_prunes = 0;
	std::uint64_t depth2_calls = 0;
	std::uint64_t similarity_bounds = 0;
	double seconds = 0.0;
};

struct SolveResult {
	ParetoFront front;
	/// False when the time limit cut the search short; the front then holds
	/// the best trees found so far.
	bool optimal = true;
	SolverStats stats;

	bool infeasible() const { return optimal && front.empty(); }
};

/// Dynamic-programming search over subtrees with memoization, bounds and the
/// depth-two specialization. The cache persists across solve() calls on the
/// same instance.
class Solver {
public:
	Solver(TaskPtr task, SolverConfig config);

	SolveResult solve();

	/// Front of trees on `state` with depth <= d and at most n branching
	/// nodes, without values that ub dominates or equals.
	std::vector<FrontEntry> recurse(const State& state, int d, int n, std::span<const SolutionValue> ub);

	const SolverConfig& config() const { return config_; }
	const OptimizationTask& task() const { return *task_; }
	const SolverStats& stats() const { return stats_; }
	const CacheEntry* cached(const BranchPath& path, int d, int n) const;
	std::size_t cache_size() const { return cache_.size(); }
	void clear_cache();

private:
	struct LowerBound {
		std::vector<SolutionValue> values;
	};

	std::optional<LowerBound> lower_bound(const State& state, int d, int n);
	void store(const State& state, int d, int n, std::vector<FrontEntry> solutions, std::span<const SolutionValue> ub);
	void store_optimal(const State& state, int d, int n, const std::vector<FrontEntry>& solutions);
	std::vector<FrontEntry> solve_depth2_cached(const State& state, int d, int n, std::span<const SolutionValue> ub);
	bool out_of_time();

	TaskPtr task_;
	SolverConfig config_;
	bool bounds_ = false;
	bool subtraction_ = false;
	bool similarity_ = false;
	bool depth2_ = false;
	SolverStats stats_;
	std::unordered_map<CacheKey, CacheEntry, CacheKeyHash> cache_;
	std::map<std::pair<int, int>, std::deque<SimilarityEntry>> archive_;
	std::chrono::steady_clock::time_point deadline_{};
	bool has_deadline_ = false;
	bool timed_out_ = false;
};

SolveResult solve(TaskPtr task, const SolverConfig& config);

/// opt over { g(state, k) : k } paired with Leaf(k); empty when the state
/// holds fewer than min_leaf_support instances.
std::vector<FrontEntry> leaf_solve(const State& state, const OptimizationTask& task, std::span<const SolutionValue> ub = {},
                                   int min_leaf_support = 0);

/// What node-budget tuning optimizes.
struct TuneObjective {
	/// Builds the task on a training or validation split.
	std::function<TaskPtr(DatasetPtr)> make_task;
	/// Picks the tree to validate from a training front; defaults to the first entry.
	std::function<std::optional<Tree>(const ParetoFront&, const OptimizationTask&)> select;
	/// Validation score, lower is better; defaults to the minimization key of
	/// the first component of tree_cost under make_task(validation).
	std::function<double(const Tree&, const DatasetPtr&)> score;
};

struct TuneResult {
	int best_budget = 0;
	/// Mean validation score per budget 0..2^d - 1.
	std::vector<double> mean_scores;
};

/// Five seeded 80/20 splits; every budget is solved on the training part and
/// scored on the validation part. Ties go to the smaller budget.
TuneResult hypertune(const TuneObjective& objective, DatasetPtr data, int max_depth, std::uint64_t seed,
                     SolverConfig base = {});
int hypertune_nodes(const TuneObjective& objective, DatasetPtr data, int max_depth, std::uint64_t seed,
                    SolverConfig base = {});

} // namespace septree
