#include "septree/core/random.h"
#include "septree/tasks/tasks.h"

namespace septree {

namespace {

// A value some subtree could take: a leaf cost on a random subset, optionally
// plus the branch cost of a random feature.
SolutionValue sample_value(const OptimizationTask& task, Rng& rng) {
	const auto& data = task.data();
	double p = rng.uniform();
	std::vector<int> rows;
	for (int r = 0; r < int(data.size()); ++r)
		if (rng.coin(p)) rows.push_back(r);
	BranchPath path;
	if (data.feature_count() > 0) {
		int depth = int(rng.below(3));
		for (int i = 0; i < depth; ++i) path = path.with({ int(rng.below(data.feature_count())), rng.coin() });
	}
	State s(task.data_ptr(), std::move(rows), path);
	auto v = task.leaf_cost(s, int(rng.below(task.label_count())));
	if (data.feature_count() > 0 && task.traits().has_branch_costs && rng.coin())
		v = task.combine(v, task.branch_cost(s, int(rng.below(data.feature_count()))));
	return v;
}

void record(CheckReport& rep, bool ok, const std::string& what) {
	++rep.checked;
	if (ok) return;
	if (rep.violations++ == 0) rep.first_violation = what;
}

} // namespace

CheckReport check_order_preservation(const OptimizationTask& task, int samples, std::uint64_t seed) {
	Rng rng(seed);
	CheckReport rep;
	const auto& order = task.order();
	for (int attempt = 0; rep.checked < samples && attempt < samples * 50; ++attempt) {
		auto v1 = sample_value(task, rng);
		auto v1p = rng.coin() ? task.combine(v1, sample_value(task, rng)) : sample_value(task, rng);
		auto v2 = sample_value(task, rng);
		if (order.dominates(v1p, v1)) std::swap(v1, v1p);
		if (!order.dominates(v1, v1p)) continue;
		auto a = task.combine(v1, v2);
		auto b = task.combine(v1p, v2);
		bool ok = order.weakly_dominates(a, b) && !order.dominates(b, a);
		record(rep, ok, v1.to_string() + " > " + v1p.to_string() + " but not after adding " + v2.to_string());
	}
	return rep;
}

CheckReport check_worsening(const OptimizationTask& task, int samples, std::uint64_t seed) {
	Rng rng(seed);
	CheckReport rep;
	const auto& order = task.order();
	for (int i = 0; i < samples; ++i) {
		auto v1 = sample_value(task, rng);
		auto v2 = sample_value(task, rng);
		auto v = task.combine(v1, v2);
		bool ok = order.weakly_dominates(v1, v) && order.weakly_dominates(v2, v);
		record(rep, ok, v1.to_string() + " (+) " + v2.to_string() + " = " + v.to_string());
	}
	// every single-instance contribution must itself be non-improving
	if (task.traits().per_instance_additive) {
		auto zero = task.zero();
		for (int r = 0; r < int(task.data().size()); ++r)
			for (int k = 0; k < task.label_count(); ++k) {
				auto c = task.instance_cost(r, k);
				record(rep, order.weakly_dominates(zero, c), "instance contribution " + c.to_string() + " improves on zero");
			}
	}
	return rep;
}

} // namespace septree
