#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "septree/core/front.h"
#include "septree/core/task.h"
#include "septree/core/tree.h"

namespace septree {

inline constexpr std::uint64_t kEnumerationLimit = 100'000'000;

/// Raised when an enumeration would exceed its limit; carries the count.
class EnumerationLimitError : public std::runtime_error {
public:
	EnumerationLimitError(std::uint64_t count, std::uint64_t limit);
	std::uint64_t count() const { return count_; }

private:
	std::uint64_t count_;
};

/// Number of trees with depth <= d and exactly m branching nodes over F
/// features (repeats allowed) and K labels:
///   E(d, 0) = K, E(0, m > 0) = 0, E(d, m) = F * sum_{a+b=m-1} E(d-1, a) E(d-1, b).
/// Saturates at UINT64_MAX.
std::uint64_t count_trees_exact(int features, int labels, int d, int m);
/// Trees with depth <= d and at most n branching nodes.
std::uint64_t count_trees(int features, int labels, int d, int n);

/// Calls visit on every tree with depth <= d and at most n branching nodes,
/// ordered by node count, then feature, then left and right subtree order.
/// Throws EnumerationLimitError when the count exceeds limit.
void enumerate_trees(int features, int labels, int d, int n, const std::function<void(const Tree&)>& visit,
                     std::uint64_t limit = kEnumerationLimit);

/// Exact front by exhaustive search: every achievable value of every
/// subtree (no dominance pruning, repeated features allowed) is kept, and
/// the root values are filtered by the constraint and leaf support at the end.
/// Guarded by the same tree-count limit as enumerate_trees.
std::vector<FrontEntry> brute_force_front(const OptimizationTask& task, int d, int n, int min_leaf_support = 0,
                                          std::uint64_t limit = kEnumerationLimit);

/// Exact front by enumerating every tree and evaluating tree_cost and
/// tree_feasible on it. Slow; used to cross-check brute_force_front.
std::vector<FrontEntry> naive_front(const OptimizationTask& task, int d, int n, int min_leaf_support = 0,
                                    std::uint64_t limit = kEnumerationLimit);

} // namespace septree
