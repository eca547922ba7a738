#include <algorithm>
#include <numeric>

#include "septree/core/errors.h"
#include "septree/tasks/tasks.h"

namespace septree {

void CostSpec::validate(int feature_count, int label_count) const {
	if (int(misclassification.size()) != label_count) throw DataError("cost spec: misclassification matrix must be |K| x |K|");
	for (int k = 0; k < label_count; ++k) {
		if (int(misclassification[k].size()) != label_count)
			throw DataError("cost spec: misclassification matrix must be |K| x |K|");
		for (int j = 0; j < label_count; ++j) {
			double m = misclassification[k][j];
			if (!(m >= 0.0)) throw DataError("cost spec: misclassification costs must be non-negative");
			if (k == j && m != 0.0) throw DataError("cost spec: misclassification diagonal must be zero");
		}
	}
	if (int(feature_costs.size()) != feature_count) throw DataError("cost spec: need one cost per feature");
	for (double c : feature_costs)
		if (!(c >= 0.0)) throw DataError("cost spec: feature costs must be non-negative");
	if (!discounted_costs.empty() && int(discounted_costs.size()) != feature_count)
		throw DataError("cost spec: need one discounted cost per feature");
	if (!groups.empty() && int(groups.size()) != feature_count) throw DataError("cost spec: need one group id per feature");
	for (std::size_t f = 0; f < discounted_costs.size(); ++f)
		if (!(discounted_costs[f] >= 0.0) || discounted_costs[f] > feature_costs[f])
			throw DataError("cost spec: discounted cost must lie in [0, base cost]");
	if (!groups.empty() && discounted_costs.empty()) throw DataError("cost spec: discount groups need discounted costs");
}

double CostSpec::feature_cost(const BranchPath& path, int feature) const {
	if (groups.empty() || groups[feature] < 0) return feature_costs[feature];
	for (auto code : path.codes()) {
		int g = Literal::from_code(code).feature;
		if (g < int(groups.size()) && groups[g] == groups[feature]) return discounted_costs[feature];
	}
	return feature_costs[feature];
}

double CostSpec::total_feature_cost() const { return std::accumulate(feature_costs.begin(), feature_costs.end(), 0.0); }

namespace {
TaskTraits cost_traits(const CostSpec& spec) {
	TaskTraits t;
	t.has_branch_costs = true;
	t.context_independent = spec.groups.empty() ||
	                        std::all_of(spec.groups.begin(), spec.groups.end(), [](int g) { return g < 0; });
	return t;
}
} // namespace

CostSensitiveTask::CostSensitiveTask(DatasetPtr data, CostSpec spec)
	: OptimizationTask(data, ValueOrder::uniform(1, Sense::kMinimize, false), cost_traits(spec)), spec_(std::move(spec)) {
	spec_.validate(data->feature_count(), data->label_count());
	const int K = data->label_count();
	std::vector<double> table(data->size() * K);
	for (std::size_t r = 0; r < data->size(); ++r)
		for (int k = 0; k < K; ++k) table[r * K + k] = spec_.misclassification[data->label(int(r))][k];
	adopt_instance_costs(std::move(table));
}

SolutionValue CostSensitiveTask::branch_cost(const NodeContext& node, int feature) const {
	return SolutionValue{ double(node.size) * spec_.feature_cost(node.path, feature) };
}

TaskPtr cost_sensitive_task(DatasetPtr data, CostSpec spec) {
	return std::make_shared<CostSensitiveTask>(std::move(data), std::move(spec));
}

double standard_cost(const Dataset& data, const CostSpec& spec) {
	double c = spec.total_feature_cost();
	if (data.empty()) return c;
	auto counts = data.label_counts();
	double min_miss = 1.0;
	for (int n : counts) min_miss = std::min(min_miss, 1.0 - double(n) / double(data.size()));
	double max_m = 0.0;
	for (const auto& row : spec.misclassification)
		for (double m : row) max_m = std::max(max_m, m);
	return c + min_miss * max_m;
}

std::vector<std::vector<double>> frequency_scaled_costs(const Dataset& data, double total_feature_cost, double fraction) {
	const int K = data.label_count();
	if (data.empty()) throw DataError("frequency_scaled_costs: empty dataset");
	auto counts = data.label_counts();
	double c_def = fraction * total_feature_cost;
	std::vector<std::vector<double>> m(K, std::vector<double>(K, 0.0));
	for (int k = 0; k < K; ++k) {
		if (counts[k] == 0) throw DataError("frequency_scaled_costs: class " + std::to_string(k) + " does not occur");
		double f_k = double(counts[k]) / double(data.size());
		double c_k = c_def / (f_k * K);
		for (int j = 0; j < K; ++j)
			if (j != k) m[k][j] = c_k;
	}
	return m;
}

} // namespace septree
