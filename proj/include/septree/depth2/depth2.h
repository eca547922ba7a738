#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "septree/core/front.h"
#include "septree/core/state.h"
#include "septree/core/task.h"

namespace septree {

/// Aggregated per-instance costs of one state. Every aggregate holds
/// label_count * arity cost channels (indexed [label * arity + component])
/// followed by one instance-count channel.
///
/// Stored densely: the total, one aggregate per feature (x_f = 1) and one per
/// unordered feature pair (x_i = 1 and x_j = 1). The other bit combinations
/// follow by marginalization.
class PairCounts {
public:
	static constexpr int kMaxFeatures = 512;

	/// Throws CapabilityError when the task is not per-instance additive or the
	/// dataset has more than kMaxFeatures features.
	PairCounts(const State& state, const OptimizationTask& task);

	int feature_count() const { return features_; }
	int channel_count() const { return channels_; }

	std::span<const double> total() const { return { total_.data(), std::size_t(channels_) }; }
	/// Instances with x_f = positive.
	std::vector<double> aggregate(int f, bool positive) const;
	/// Instances with x_i = pi and x_j = pj (i != j).
	std::vector<double> aggregate(int i, bool pi, int j, bool pj) const;

	/// Number of times an instance row was read while building the counts.
	std::size_t instance_touches() const { return touches_; }

private:
	std::span<const double> single(int f) const { return { single_.data() + std::size_t(f) * channels_, std::size_t(channels_) }; }
	std::span<const double> pair(int i, int j) const;

	int features_ = 0;
	int channels_ = 0;
	std::vector<double> total_;
	std::vector<double> single_;
	std::vector<double> pair_;
	std::size_t touches_ = 0;
};

PairCounts compute_pair_counts(const State& state, const OptimizationTask& task);

/// Whether solve_depth2 can serve this task and dataset.
bool depth2_applicable(const OptimizationTask& task);

/// Fronts of depth <= 2 trees on a state, indexed by branching-node budget
/// 0..3 (budget 1 is the depth-one front).
using Depth2Fronts = std::array<std::vector<FrontEntry>, 4>;

/// All budgets at once from the aggregates; never reads instances.
/// Constraints and branch costs are evaluated on the assembled candidates
/// with the node's path and aggregate size.
Depth2Fronts solve_depth2(const PairCounts& counts, const State& state, const OptimizationTask& task, int min_leaf_support = 0);

/// Front for one budget n in {0,1,2,3}, filtered by ub.
std::vector<FrontEntry> solve_depth2(const State& state, const OptimizationTask& task, int n,
                                     std::span<const SolutionValue> ub = {}, int min_leaf_support = 0);

} // namespace septree
