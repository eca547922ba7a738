#pragma once

#include <optional>
#include <span>
#include <vector>

#include "septree/core/state.h"
#include "septree/core/task.h"
#include "septree/core/value.h"

namespace septree {

enum class BoundKind { kUpper, kLower };

/// An upper bound prunes v when some member dominates or equals v.
/// A lower bound promises that every value below a node is dominated or
/// equalled by some member.
struct BoundSet {
	std::vector<SolutionValue> values;
	BoundKind kind = BoundKind::kUpper;
};

/// Upper bound for the sibling subtree once the solutions `solved` of one
/// child are known: { u (-) ideal(solved) (-) g : u in ub }, reduced to its
/// nondominated members. Any value v2 it prunes satisfies: v1 (+) v2 (+) g is
/// pruned by ub for every v1 in `solved`. With a single solved value this is
/// exactly u (-) v1 (-) g.
/// Throws CapabilityError when the task has no subtraction.
BoundSet subtract_ub(const BoundSet& ub, std::span<const SolutionValue> solved, const SolutionValue& branch_cost,
                     const OptimizationTask& task);
BoundSet subtract_ub(const BoundSet& ub, std::span<const SolutionValue> solved, const State& state, int feature,
                     const OptimizationTask& task);

/// A previously solved state: its (sorted) root row indices and the values of
/// its complete optimal front.
struct SimilarityEntry {
	std::vector<int> rows;
	std::vector<SolutionValue> values;
};

/// Whether the task meets the conditions for similarity bounds: subtraction,
/// no constraint, context independence, per-instance additivity and no
/// branch costs.
bool similarity_applicable(const OptimizationTask& task);

/// Lower bound on the current state from a cached solution. Instances that
/// left the cached set are charged their worst contribution; instances new to
/// the current set are credited their best contribution:
///   lb = { v (-) sum_out w_k (+) sum_in b_k : v in cached }.
/// For non-negative minimization costs b_k = 0 and only departed instances matter.
/// nullopt when the task does not qualify.
std::optional<BoundSet> similarity_lb(const SimilarityEntry& cached, const State& current, const OptimizationTask& task);

/// True when no value below a node can improve on ub: every lower-bound
/// member is dominated or equalled by some upper-bound member. An empty lower
/// bound (known infeasible) always prunes; an empty upper bound never does.
bool lb_dominates_ub(std::span<const SolutionValue> lb, std::span<const SolutionValue> ub, const ValueOrder& order);
inline bool lb_dominates_ub(const BoundSet& lb, const BoundSet& ub, const ValueOrder& order) {
	return lb_dominates_ub(lb.values, ub.values, order);
}

/// Shrinks a bound to at most max_size points while keeping it valid.
/// Upper bounds keep a subset (picked by farthest-point sampling on the first
/// component); lower bounds split the points into that many runs along the
/// first component and replace each run by its ideal point.
std::vector<SolutionValue> reduce_representative(std::vector<SolutionValue> values, std::size_t max_size, BoundKind kind,
                                                 const ValueOrder& order);

inline constexpr std::size_t kDefaultRepresentativeSize = 8;

} // namespace septree
