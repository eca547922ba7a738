#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "septree/core/front.h"
#include "septree/core/random.h"
#include "septree/tasks/tasks.h"

namespace septree::testing {

inline DatasetPtr make_data(const std::vector<std::vector<std::uint8_t>>& rows, std::vector<int> labels, int label_count = 2,
                            std::map<std::string, std::vector<double>> aux = {}) {
	return std::make_shared<const Dataset>(rows, std::move(labels), label_count, std::move(aux));
}

/// (0,0)->0, (0,1)->1, (1,0)->1, (1,1)->0
inline DatasetPtr xor_data() { return make_data({ { 0, 0 }, { 0, 1 }, { 1, 0 }, { 1, 1 } }, { 0, 1, 1, 0 }); }

/// Random binary features and labels plus the float columns every task
/// family reads: y, mu, vhat_k and a 0/1 group with both groups present.
inline DatasetPtr random_dataset(Rng& rng, int rows, int features, int labels) {
	std::vector<std::vector<std::uint8_t>> bits(static_cast<std::size_t>(rows), std::vector<std::uint8_t>(static_cast<std::size_t>(features)));
	std::vector<int> y(static_cast<std::size_t>(rows));
	std::map<std::string, std::vector<double>> aux;
	double density = 0.25 + 0.5 * rng.uniform();
	for (int r = 0; r < rows; ++r) {
		for (int f = 0; f < features; ++f) bits[r][f] = rng.coin(density) ? 1 : 0;
		// labels loosely follow the first feature so trees have something to find
		if (features > 0 && rng.coin(0.6)) y[r] = bits[r][0] % labels;
		else y[r] = int(rng.below(std::uint64_t(labels)));
		aux["y"].push_back(double(rng.below(5)) / 4.0);
		aux["mu"].push_back(0.25 + 0.75 * rng.uniform());
		aux["group"].push_back(r < 2 ? double(r) : double(rng.below(2)));
	}
	for (int k = 0; k < labels; ++k)
		for (int r = 0; r < rows; ++r) aux["vhat_" + std::to_string(k)].push_back(rng.uniform());
	return make_data(bits, std::move(y), labels, std::move(aux));
}

/// Same instances with labels collapsed to {0, 1} (label > 0 becomes 1).
inline DatasetPtr binary_view(const DatasetPtr& data) {
	std::vector<std::vector<std::uint8_t>> bits;
	std::vector<int> labels;
	for (std::size_t r = 0; r < data->size(); ++r) {
		auto b = data->row_bits(int(r));
		bits.emplace_back(b.begin(), b.end());
		labels.push_back(data->label(int(r)) > 0 ? 1 : 0);
	}
	return make_data(bits, std::move(labels), 2, data->aux());
}

struct NamedTask {
	std::string family;
	TaskPtr task;
};

/// One task per family. Cost-sensitive has a discount group (context
/// dependent); f1 and fairness run on the binary view.
inline std::vector<NamedTask> task_families(const DatasetPtr& data, Rng& rng) {
	std::vector<NamedTask> out;
	out.push_back({ "accuracy", accuracy_task(data) });

	CostSpec cost;
	const int F = data->feature_count();
	const int K = data->label_count();
	cost.misclassification.assign(std::size_t(K), std::vector<double>(std::size_t(K), 0.0));
	for (int k = 0; k < K; ++k)
		for (int j = 0; j < K; ++j)
			if (j != k) cost.misclassification[k][j] = double(1 + rng.below(4));
	for (int f = 0; f < F; ++f) {
		double c = double(rng.below(3)) * 0.25;
		cost.feature_costs.push_back(c);
		cost.discounted_costs.push_back(c / 2.0);
		cost.groups.push_back(f < 2 ? 0 : -1);
	}
	out.push_back({ "cost-sensitive", cost_sensitive_task(data, cost) });

	PolicySpec policy;
	policy.method = PolicyMethod(rng.below(3));
	out.push_back({ "policy", policy_task(data, policy) });

	auto binary = binary_view(data);
	out.push_back({ "f1", f1_task(binary) });

	FairnessSpec fair;
	fair.delta = rng.coin() ? 0.1 : 0.3;
	out.push_back({ "fairness", fairness_task(binary, fair) });
	return out;
}

inline std::vector<SolutionValue> sorted_values(std::span<const FrontEntry> front, const ValueOrder& order) {
	std::vector<SolutionValue> v;
	for (const auto& e : front) v.push_back(e.value);
	std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return order.key_less(a, b); });
	return v;
}

/// Value sets equal per component (exactly for integral orders, within the
/// order's epsilon otherwise).
inline bool same_values(std::span<const FrontEntry> a, std::span<const FrontEntry> b, const ValueOrder& order) {
	auto x = sorted_values(a, order);
	auto y = sorted_values(b, order);
	if (x.size() != y.size()) return false;
	for (std::size_t i = 0; i < x.size(); ++i)
		if (!order.equal(x[i], y[i])) return false;
	return true;
}

inline std::string describe(std::span<const FrontEntry> front) {
	std::string s = "{";
	for (std::size_t i = 0; i < front.size(); ++i) s += (i ? ", " : "") + front[i].value.to_string();
	return s + "}";
}

} // namespace septree::testing
