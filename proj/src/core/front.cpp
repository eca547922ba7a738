#include "septree/core/front.h"

#include <algorithm>

#include "septree/core/errors.h"

namespace septree {

namespace {

// Sort by minimization key, then by preference; sweep keeping entries not
// dominated or equalled by an earlier one. Two exact components allow an
// O(1) check against the last kept entry.
template <class T, class ValueOf, class Prefer>
std::vector<T> nondom_impl(std::vector<T> items, const ValueOrder& order, ValueOf value_of, Prefer prefer) {
	if (items.empty()) return items;
	for (const auto& it : items) order.check_arity(value_of(it));

	if (order.total()) {
		std::size_t best = 0;
		for (std::size_t i = 1; i < items.size(); ++i) {
			const auto& v = value_of(items[i]);
			const auto& b = value_of(items[best]);
			if (order.component_better(0, v[0], b[0])) best = i;
			else if (order.equal(v, b) && prefer(items[i], items[best])) best = i;
		}
		std::vector<T> out;
		out.push_back(std::move(items[best]));
		return out;
	}

	std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) {
		const auto& va = value_of(a);
		const auto& vb = value_of(b);
		if (order.key_less(va, vb)) return true;
		if (order.key_less(vb, va)) return false;
		return prefer(a, b);
	});

	std::vector<T> kept;
	if (order.arity() == 2 && order.exact()) {
		for (auto& it : items) {
			if (!kept.empty()) {
				const auto& last = value_of(kept.back());
				const auto& v = value_of(it);
				if (order.key(1, last[1]) <= order.key(1, v[1])) continue;
			}
			kept.push_back(std::move(it));
		}
		return kept;
	}

	for (auto& it : items) {
		const auto& v = value_of(it);
		bool drop = false;
		for (std::size_t j = kept.size(); j-- > 0;) {
			Relation rel = order.compare(value_of(kept[j]), v);
			if (rel == Relation::kDominates) {
				drop = true;
				break;
			}
			if (rel == Relation::kEqual) {
				if (prefer(it, kept[j])) kept[j] = std::move(it);
				drop = true;
				break;
			}
		}
		if (drop) continue;
		std::erase_if(kept, [&](const T& k) { return order.dominates(v, value_of(k)); });
		kept.push_back(std::move(it));
	}
	return kept;
}

// Collapse values equal within tolerance, keeping the preferred item.
template <class T, class ValueOf, class Prefer>
std::vector<T> dedupe_impl(std::vector<T> items, const ValueOrder& order, ValueOf value_of, Prefer prefer) {
	std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) {
		const auto& va = value_of(a);
		const auto& vb = value_of(b);
		if (order.key_less(va, vb)) return true;
		if (order.key_less(vb, va)) return false;
		return prefer(a, b);
	});
	std::vector<T> out;
	for (auto& it : items) {
		bool dup = false;
		for (std::size_t j = out.size(); j-- > 0;) {
			if (order.equal(value_of(out[j]), value_of(it))) {
				if (prefer(it, out[j])) out[j] = std::move(it);
				dup = true;
				break;
			}
			if (order.key(0, value_of(it)[0]) - order.key(0, value_of(out[j])[0]) > order.epsilon(0)) break;
		}
		if (!dup) out.push_back(std::move(it));
	}
	return out;
}

const SolutionValue& value_of_value(const SolutionValue& v) { return v; }
const SolutionValue& value_of_entry(const FrontEntry& e) { return e.value; }
bool no_preference(const SolutionValue&, const SolutionValue&) { return false; }
bool prefer_entry(const FrontEntry& a, const FrontEntry& b) { return Tree::preferred(a.tree, b.tree); }

} // namespace

ParetoFront ParetoFront::from_entries(std::vector<FrontEntry> entries, const ValueOrder& order) {
	ParetoFront f;
	f.entries_ = nondom(std::move(entries), order);
	return f;
}

std::vector<SolutionValue> ParetoFront::values() const {
	std::vector<SolutionValue> out;
	out.reserve(entries_.size());
	for (const auto& e : entries_) out.push_back(e.value);
	return out;
}

std::vector<SolutionValue> nondom(std::vector<SolutionValue> values, const ValueOrder& order) {
	return nondom_impl(std::move(values), order, value_of_value, no_preference);
}

std::vector<FrontEntry> nondom(std::vector<FrontEntry> entries, const ValueOrder& order) {
	return nondom_impl(std::move(entries), order, value_of_entry, prefer_entry);
}

std::vector<SolutionValue> feas(std::span<const SolutionValue> values, const NodeContext& node, const OptimizationTask& task) {
	std::vector<SolutionValue> out;
	for (const auto& v : values)
		if (task.feasible(v, node)) out.push_back(v);
	return out;
}

bool pruned_by(const SolutionValue& v, std::span<const SolutionValue> ub, const ValueOrder& order) {
	for (const auto& u : ub)
		if (order.weakly_dominates(u, v)) return true;
	return false;
}

std::vector<SolutionValue> opt(std::vector<SolutionValue> values, const NodeContext& node, const OptimizationTask& task,
                               std::span<const SolutionValue> ub) {
	std::erase_if(values, [&](const SolutionValue& v) {
		return !task.feasible(v, node) || pruned_by(v, ub, task.order());
	});
	return nondom(std::move(values), task.order());
}

std::vector<FrontEntry> opt(std::vector<FrontEntry> entries, const NodeContext& node, const OptimizationTask& task,
                            std::span<const SolutionValue> ub) {
	std::erase_if(entries, [&](const FrontEntry& e) {
		return !task.feasible(e.value, node) || pruned_by(e.value, ub, task.order());
	});
	return nondom(std::move(entries), task.order());
}

std::vector<FrontEntry> merge(std::span<const FrontEntry> left, std::span<const FrontEntry> right, const NodeContext& node,
                              int feature, const OptimizationTask& task) {
	const auto g = task.branch_cost(node, feature);
	std::vector<FrontEntry> out;
	out.reserve(left.size() * right.size());
	for (const auto& l : left)
		for (const auto& r : right)
			out.push_back({ task.combine(task.combine(l.value, r.value), g), Tree::branch(feature, l.tree, r.tree) });
	return dedupe_impl(std::move(out), task.order(), value_of_entry, prefer_entry);
}

std::vector<SolutionValue> merge(std::span<const SolutionValue> left, std::span<const SolutionValue> right,
                                 const NodeContext& node, int feature, const OptimizationTask& task) {
	const auto g = task.branch_cost(node, feature);
	std::vector<SolutionValue> out;
	out.reserve(left.size() * right.size());
	for (const auto& l : left)
		for (const auto& r : right) out.push_back(task.combine(task.combine(l, r), g));
	return dedupe_impl(std::move(out), task.order(), value_of_value, no_preference);
}

std::vector<FrontEntry> merge_opt(std::span<const FrontEntry> left, std::span<const FrontEntry> right, const NodeContext& node,
                                  int feature, const OptimizationTask& task, std::span<const SolutionValue> ub) {
	struct Candidate {
		SolutionValue value;
		int l, r, branches;
	};
	const auto g = task.branch_cost(node, feature);
	const auto& order = task.order();
	std::vector<Candidate> cands;
	cands.reserve(left.size() * right.size());
	for (int i = 0; i < int(left.size()); ++i)
		for (int j = 0; j < int(right.size()); ++j) {
			auto v = task.combine(task.combine(left[i].value, right[j].value), g);
			if (!task.feasible(v, node) || pruned_by(v, ub, order)) continue;
			cands.push_back({ v, i, j, 1 + left[i].tree.branch_count() + right[j].tree.branch_count() });
		}
	auto prefer = [&](const Candidate& a, const Candidate& b) {
		if (a.branches != b.branches) return a.branches < b.branches;
		if (a.l == b.l && a.r == b.r) return false;
		return Tree::preferred(Tree::branch(feature, left[a.l].tree, right[a.r].tree),
		                       Tree::branch(feature, left[b.l].tree, right[b.r].tree));
	};
	auto kept = nondom_impl(std::move(cands), order, [](const Candidate& c) -> const SolutionValue& { return c.value; }, prefer);
	std::vector<FrontEntry> out;
	out.reserve(kept.size());
	for (auto& c : kept) out.push_back({ c.value, Tree::branch(feature, left[c.l].tree, right[c.r].tree) });
	return out;
}

SolutionValue tree_cost(const Tree& tree, const State& state, const OptimizationTask& task) {
	if (tree.is_leaf()) {
		if (tree.label() >= task.label_count()) throw ContractError("tree_cost: leaf label out of range");
		return task.leaf_cost(state, tree.label());
	}
	if (tree.feature() >= state.data().feature_count()) throw ContractError("tree_cost: feature index out of range");
	auto left = tree_cost(tree.left(), state.branch(tree.feature(), false), task);
	auto right = tree_cost(tree.right(), state.branch(tree.feature(), true), task);
	return task.combine(task.combine(left, right), task.branch_cost(state, tree.feature()));
}

namespace {
bool leaves_supported(const Tree& tree, const State& state, int min_support) {
	if (tree.is_leaf()) return int(state.size()) >= min_support;
	return leaves_supported(tree.left(), state.branch(tree.feature(), false), min_support) &&
	       leaves_supported(tree.right(), state.branch(tree.feature(), true), min_support);
}
} // namespace

bool tree_feasible(const Tree& tree, const State& state, const OptimizationTask& task, int min_leaf_support) {
	if (min_leaf_support > 0 && !leaves_supported(tree, state, min_leaf_support)) return false;
	return task.feasible(tree_cost(tree, state, task), state);
}

} // namespace septree
