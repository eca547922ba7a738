#pragma once

#include <span>
#include <vector>

#include "septree/core/task.h"
#include "septree/core/tree.h"
#include "septree/core/value.h"

namespace septree {

struct FrontEntry {
	SolutionValue value;
	Tree tree;
};

/// Set of mutually nondominated (value, tree) pairs, sorted lexicographically
/// by minimization key (first component first). Equal values are collapsed,
/// keeping the preferred tree (see Tree::preferred).
class ParetoFront {
public:
	ParetoFront() = default;

	/// Builds nondom(entries) under `order`.
	static ParetoFront from_entries(std::vector<FrontEntry> entries, const ValueOrder& order);

	bool empty() const { return entries_.empty(); }
	std::size_t size() const { return entries_.size(); }
	const std::vector<FrontEntry>& entries() const { return entries_; }
	const FrontEntry& operator[](std::size_t i) const { return entries_[i]; }
	auto begin() const { return entries_.begin(); }
	auto end() const { return entries_.end(); }

	std::vector<SolutionValue> values() const;

private:
	std::vector<FrontEntry> entries_;
};

/// Nondominated subset of `values`; equal values collapse to one.
std::vector<SolutionValue> nondom(std::vector<SolutionValue> values, const ValueOrder& order);
/// Nondominated subset of `entries`, equal values keep the preferred tree.
std::vector<FrontEntry> nondom(std::vector<FrontEntry> entries, const ValueOrder& order);

/// Values v with c(v, s) = 1.
std::vector<SolutionValue> feas(std::span<const SolutionValue> values, const NodeContext& node, const OptimizationTask& task);

/// True when some member of `ub` dominates or equals v.
bool pruned_by(const SolutionValue& v, std::span<const SolutionValue> ub, const ValueOrder& order);

/// nondom(feas(values)) without the values an upper bound dominates or equals.
std::vector<SolutionValue> opt(std::vector<SolutionValue> values, const NodeContext& node, const OptimizationTask& task,
                               std::span<const SolutionValue> ub = {});
std::vector<FrontEntry> opt(std::vector<FrontEntry> entries, const NodeContext& node, const OptimizationTask& task,
                            std::span<const SolutionValue> ub = {});

/// All combinations v1 (+) v2 (+) g(s, f) with trees Branch(f, t1, t2); equal
/// values collapse. Left entries solve t(s, f-bar), right entries t(s, f).
std::vector<FrontEntry> merge(std::span<const FrontEntry> left, std::span<const FrontEntry> right, const NodeContext& node,
                              int feature, const OptimizationTask& task);
std::vector<SolutionValue> merge(std::span<const SolutionValue> left, std::span<const SolutionValue> right,
                                 const NodeContext& node, int feature, const OptimizationTask& task);

/// opt(merge(left, right)) computed on values first; trees are only built for
/// surviving combinations.
std::vector<FrontEntry> merge_opt(std::span<const FrontEntry> left, std::span<const FrontEntry> right, const NodeContext& node,
                                  int feature, const OptimizationTask& task, std::span<const SolutionValue> ub = {});

/// Reference evaluator C(s, u): leaves cost g(s, l(u)); branches cost
/// C(left) (+) C(right) (+) g(s, b(u)).
SolutionValue tree_cost(const Tree& tree, const State& state, const OptimizationTask& task);

/// True when tree_cost is feasible at the root and every leaf holds at least
/// `min_leaf_support` instances.
bool tree_feasible(const Tree& tree, const State& state, const OptimizationTask& task, int min_leaf_support = 0);

} // namespace septree
