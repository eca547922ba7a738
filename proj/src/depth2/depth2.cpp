#include "septree/depth2/depth2.h"

#include <functional>

#include "septree/core/errors.h"

namespace septree {

bool depth2_applicable(const OptimizationTask& task) {
	return task.traits().per_instance_additive && task.data().feature_count() <= PairCounts::kMaxFeatures;
}

PairCounts::PairCounts(const State& state, const OptimizationTask& task) {
	if (!task.traits().per_instance_additive)
		throw CapabilityError(task.name() + ": depth-two solver needs per-instance additive costs");
	const auto& data = task.data();
	features_ = data.feature_count();
	if (features_ > kMaxFeatures)
		throw CapabilityError("depth-two solver supports at most " + std::to_string(kMaxFeatures) + " features");
	const int cost_channels = task.label_count() * task.arity();
	channels_ = cost_channels + 1;
	const std::size_t C = std::size_t(channels_);
	const std::size_t F = std::size_t(features_);
	total_.assign(C, 0.0);
	single_.assign(F * C, 0.0);
	pair_.assign(F * (F > 0 ? F - 1 : 0) / 2 * C, 0.0);

	auto add = [&](double* dst, std::span<const double> row) {
		for (int c = 0; c < cost_channels; ++c) dst[c] += row[c];
		dst[cost_channels] += 1.0;
		++touches_;
	};
	for (int r : state.rows()) {
		auto row = task.instance_row(r);
		add(total_.data(), row);
		auto set = data.set_features(r);
		for (std::size_t a = 0; a < set.size(); ++a) {
			int i = set[a];
			add(single_.data() + std::size_t(i) * C, row);
			for (std::size_t b = a + 1; b < set.size(); ++b) {
				int j = set[b];
				std::size_t idx = std::size_t(i) * F - std::size_t(i) * (i + 1) / 2 + std::size_t(j - i - 1);
				add(pair_.data() + idx * C, row);
			}
		}
	}
}

std::span<const double> PairCounts::pair(int i, int j) const {
	if (i > j) std::swap(i, j);
	const std::size_t F = std::size_t(features_);
	std::size_t idx = std::size_t(i) * F - std::size_t(i) * (i + 1) / 2 + std::size_t(j - i - 1);
	return { pair_.data() + idx * channels_, std::size_t(channels_) };
}

std::vector<double> PairCounts::aggregate(int f, bool positive) const {
	if (f < 0 || f >= features_) throw ContractError("PairCounts: feature out of range");
	auto s = single(f);
	std::vector<double> out(s.begin(), s.end());
	if (!positive)
		for (int c = 0; c < channels_; ++c) out[c] = total_[c] - s[c];
	return out;
}

std::vector<double> PairCounts::aggregate(int i, bool pi, int j, bool pj) const {
	if (i < 0 || j < 0 || i >= features_ || j >= features_ || i == j)
		throw ContractError("PairCounts: need two distinct features in range");
	auto si = single(i);
	auto sj = single(j);
	auto p = pair(i, j);
	std::vector<double> out(static_cast<std::size_t>(channels_));
	for (int c = 0; c < channels_; ++c) {
		if (pi && pj) out[c] = p[c];
		else if (pi) out[c] = si[c] - p[c];
		else if (pj) out[c] = sj[c] - p[c];
		else out[c] = total_[c] - si[c] - sj[c] + p[c];
	}
	return out;
}

PairCounts compute_pair_counts(const State& state, const OptimizationTask& task) { return PairCounts(state, task); }

namespace {

using ChildAggregate = std::function<std::vector<double>(int, bool)>;

class Assembler {
public:
	Assembler(const OptimizationTask& task, int support)
		: task_(task), support_(support), arity_(task.arity()), labels_(task.label_count()),
		  needs_path_(task.traits().has_constraint || task.traits().has_branch_costs || !task.traits().context_independent) {}

	std::vector<FrontEntry> leaf(const std::vector<double>& agg, const BranchPath& path) const {
		double size = agg.back();
		if (size < double(support_)) return {};
		std::vector<FrontEntry> entries;
		for (int k = 0; k < labels_; ++k)
			entries.push_back({ SolutionValue(std::span<const double>(agg.data() + std::size_t(k) * arity_, arity_)), Tree::leaf(k) });
		return opt(std::move(entries), NodeContext{ path, std::size_t(size + 0.5) }, task_);
	}

	// Depth <= 1 front of a node, splitting on every feature off the path
	// except `skip`.
	std::vector<FrontEntry> stump(const std::vector<double>& agg, const BranchPath& path, const ChildAggregate& child,
	                              int skip = -1) const {
		auto out = leaf(agg, path);
		NodeContext node{ path, std::size_t(agg.back() + 0.5) };
		for (int j = 0; j < task_.data().feature_count(); ++j) {
			if (j == skip || path.contains_feature(j)) continue;
			auto left = leaf(child(j, false), extend(path, j, false));
			if (left.empty()) continue;
			auto right = leaf(child(j, true), extend(path, j, true));
			if (right.empty()) continue;
			auto merged = merge_opt(left, right, node, j, task_);
			out.insert(out.end(), std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
		}
		return nondom(std::move(out), task_.order());
	}

	BranchPath extend(const BranchPath& path, int f, bool positive) const {
		return needs_path_ ? path.with({ f, positive }) : path;
	}

	const OptimizationTask& task() const { return task_; }

private:
	const OptimizationTask& task_;
	int support_;
	int arity_;
	int labels_;
	bool needs_path_;
};

} // namespace

Depth2Fronts solve_depth2(const PairCounts& counts, const State& state, const OptimizationTask& task, int min_leaf_support) {
	Assembler as(task, min_leaf_support);
	const auto& path = state.path();
	const int F = task.data().feature_count();
	std::vector<double> root(counts.total().begin(), counts.total().end());
	NodeContext node{ path, std::size_t(root.back() + 0.5) };

	Depth2Fronts fronts;
	fronts[0] = as.leaf(root, path);
	fronts[1] = as.stump(root, path, [&](int j, bool b) { return counts.aggregate(j, b); });
	fronts[2] = fronts[0];
	fronts[3] = fronts[0];
	for (int f = 0; f < F; ++f) {
		if (path.contains_feature(f)) continue;
		std::vector<FrontEntry> leaf_side[2], stump_side[2];
		for (int b = 0; b < 2; ++b) {
			auto agg = counts.aggregate(f, b == 1);
			auto child_path = as.extend(path, f, b == 1);
			leaf_side[b] = as.leaf(agg, child_path);
			auto child = [&, b](int j, bool bj) { return counts.aggregate(f, b == 1, j, bj); };
			stump_side[b] = as.stump(agg, child_path, child, f);
		}
		auto add = [&](std::vector<FrontEntry>& dst, const std::vector<FrontEntry>& l, const std::vector<FrontEntry>& r) {
			if (l.empty() || r.empty()) return;
			auto merged = merge_opt(l, r, node, f, task);
			dst.insert(dst.end(), std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
		};
		add(fronts[2], stump_side[0], leaf_side[1]);
		add(fronts[2], leaf_side[0], stump_side[1]);
		add(fronts[3], stump_side[0], stump_side[1]);
	}
	fronts[2] = nondom(std::move(fronts[2]), task.order());
	fronts[3] = nondom(std::move(fronts[3]), task.order());
	return fronts;
}

std::vector<FrontEntry> solve_depth2(const State& state, const OptimizationTask& task, int n, std::span<const SolutionValue> ub,
                                     int min_leaf_support) {
	if (n < 0 || n > 3) throw ContractError("solve_depth2: budget must be in 0..3");
	PairCounts counts(state, task);
	auto fronts = solve_depth2(counts, state, task, min_leaf_support);
	return opt(std::move(fronts[std::size_t(n)]), state.context(), task, ub);
}

} // namespace septree
