#include "septree/bounds/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "septree/core/errors.h"
#include "septree/core/front.h"

namespace septree {

BoundSet subtract_ub(const BoundSet& ub, std::span<const SolutionValue> solved, const SolutionValue& branch_cost,
                     const OptimizationTask& task) {
	if (!task.traits().has_subtraction) throw CapabilityError(task.name() + ": subtract_ub needs a subtraction operator");
	BoundSet out{ {}, BoundKind::kUpper };
	if (ub.values.empty() || solved.empty()) return out;
	auto best = task.order().ideal(solved);
	for (const auto& u : ub.values) out.values.push_back(task.subtract(task.subtract(u, best), branch_cost));
	out.values = nondom(std::move(out.values), task.order());
	return out;
}

BoundSet subtract_ub(const BoundSet& ub, std::span<const SolutionValue> solved, const State& state, int feature,
                     const OptimizationTask& task) {
	return subtract_ub(ub, solved, task.branch_cost(state, feature), task);
}

bool similarity_applicable(const OptimizationTask& task) {
	const auto& t = task.traits();
	return t.has_subtraction && !t.has_constraint && t.context_independent && t.per_instance_additive &&
	       !t.has_branch_costs;
}

std::optional<BoundSet> similarity_lb(const SimilarityEntry& cached, const State& current, const OptimizationTask& task) {
	if (!similarity_applicable(task)) return std::nullopt;
	const int K = task.label_count();
	std::vector<int> out_count(K, 0), in_count(K, 0);
	auto cur = current.rows();
	const auto& old = cached.rows;
	std::size_t i = 0, j = 0;
	const auto& data = task.data();
	while (i < old.size() || j < cur.size()) {
		if (j == cur.size() || (i < old.size() && old[i] < cur[j])) {
			++out_count[data.label(old[i++])];
		} else if (i == old.size() || cur[j] < old[i]) {
			++in_count[data.label(cur[j++])];
		} else {
			++i;
			++j;
		}
	}
	SolutionValue charge = task.zero();
	SolutionValue credit = task.zero();
	for (int k = 0; k < K; ++k) {
		for (int c = 0; c < out_count[k]; ++c) charge = task.combine(charge, task.worst_contribution(k));
		for (int c = 0; c < in_count[k]; ++c) credit = task.combine(credit, task.best_contribution(k));
	}
	BoundSet lb{ {}, BoundKind::kLower };
	for (const auto& v : cached.values) lb.values.push_back(task.combine(task.subtract(v, charge), credit));
	return lb;
}

bool lb_dominates_ub(std::span<const SolutionValue> lb, std::span<const SolutionValue> ub, const ValueOrder& order) {
	if (lb.empty()) return true;
	if (ub.empty()) return false;
	for (const auto& l : lb)
		if (!pruned_by(l, ub, order)) return false;
	return true;
}

namespace {

// Indices (into a vector sorted by first-component key) chosen by
// farthest-point sampling, starting from the best first component.
std::vector<std::size_t> farthest_points(const std::vector<SolutionValue>& sorted, std::size_t count, const ValueOrder& order) {
	std::vector<std::size_t> chosen{ 0 };
	std::vector<double> dist(sorted.size(), std::numeric_limits<double>::infinity());
	while (chosen.size() < count) {
		double k = order.key(0, sorted[chosen.back()][0]);
		std::size_t next = 0;
		double far = -1.0;
		for (std::size_t i = 0; i < sorted.size(); ++i) {
			dist[i] = std::min(dist[i], std::abs(order.key(0, sorted[i][0]) - k));
			if (dist[i] > far) {
				far = dist[i];
				next = i;
			}
		}
		if (far <= 0.0) {
			// remaining points coincide in the first component; fill in order
			for (std::size_t i = 0; i < sorted.size() && chosen.size() < count; ++i)
				if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
			break;
		}
		chosen.push_back(next);
	}
	std::sort(chosen.begin(), chosen.end());
	return chosen;
}

} // namespace

std::vector<SolutionValue> reduce_representative(std::vector<SolutionValue> values, std::size_t max_size, BoundKind kind,
                                                 const ValueOrder& order) {
	if (max_size < 1) throw ContractError("reduce_representative: max_size must be at least 1");
	if (values.size() <= max_size) return values;
	std::stable_sort(values.begin(), values.end(), [&](const auto& a, const auto& b) { return order.key_less(a, b); });
	auto anchors = farthest_points(values, max_size, order);
	std::vector<SolutionValue> out;
	if (kind == BoundKind::kUpper) {
		for (auto i : anchors) out.push_back(values[i]);
		return out;
	}
	for (std::size_t a = 0; a < anchors.size(); ++a) {
		std::size_t begin = anchors[a];
		std::size_t end = a + 1 < anchors.size() ? anchors[a + 1] : values.size();
		out.push_back(order.ideal(std::span<const SolutionValue>(values.data() + begin, end - begin)));
	}
	return out;
}

} // namespace septree
