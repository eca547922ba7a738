#include "septree/core/errors.h"
#include "septree/tasks/tasks.h"

namespace septree {

PolicyMethod parse_policy_method(const std::string& s) {
	if (s == "dm" || s == "DM") return PolicyMethod::kDirect;
	if (s == "ipw" || s == "IPW") return PolicyMethod::kInversePropensity;
	if (s == "dr" || s == "DR") return PolicyMethod::kDoublyRobust;
	throw DataError("unknown policy method '" + s + "' (expected dm, ipw or dr)");
}

std::string to_string(PolicyMethod m) {
	switch (m) {
	case PolicyMethod::kDirect: return "dm";
	case PolicyMethod::kInversePropensity: return "ipw";
	case PolicyMethod::kDoublyRobust: return "dr";
	}
	return "?";
}

namespace {

// Row-major [row][treatment] per-instance scores.
std::vector<double> policy_scores(const Dataset& data, const PolicySpec& spec) {
	const int K = data.label_count();
	const bool need_teacher = spec.method != PolicyMethod::kInversePropensity;
	const bool need_ipw = spec.method != PolicyMethod::kDirect;
	std::vector<std::span<const double>> vhat;
	if (need_teacher)
		for (int k = 0; k < K; ++k) vhat.push_back(data.column(spec.teacher_prefix + std::to_string(k)));
	std::span<const double> y, mu;
	if (need_ipw) {
		y = data.column(spec.outcome_column);
		mu = data.column(spec.propensity_column);
		for (std::size_t r = 0; r < data.size(); ++r)
			if (!(mu[r] > 0.0)) throw DataError("policy: propensity at row " + std::to_string(r) + " is not positive");
	}
	std::vector<double> table(data.size() * K, 0.0);
	for (std::size_t r = 0; r < data.size(); ++r) {
		const int hist = data.label(int(r));
		for (int k = 0; k < K; ++k) {
			double s = 0.0;
			if (need_teacher) s += vhat[k][r];
			if (need_ipw && k == hist) {
				double residual = spec.method == PolicyMethod::kDoublyRobust ? y[r] - vhat[hist][r] : y[r];
				s += residual / mu[r];
			}
			table[r * K + k] = s;
		}
	}
	return table;
}

} // namespace

PolicyTask::PolicyTask(DatasetPtr data, PolicySpec spec)
	: OptimizationTask(data, ValueOrder::uniform(1, Sense::kMaximize, false), TaskTraits{}), spec_(std::move(spec)) {
	adopt_instance_costs(policy_scores(*data, spec_));
}

TaskPtr policy_task(DatasetPtr data, PolicySpec spec) { return std::make_shared<PolicyTask>(std::move(data), std::move(spec)); }

double policy_value(const Tree& tree, const Dataset& data, const PolicySpec& spec) {
	if (data.empty()) return 0.0;
	auto table = policy_scores(data, spec);
	const int K = data.label_count();
	double total = 0.0;
	for (std::size_t r = 0; r < data.size(); ++r) {
		int k = tree.predict(data, int(r));
		if (k >= K) throw ContractError("policy_value: tree assigns an unknown treatment");
		total += table[r * K + k];
	}
	return total / double(data.size());
}

} // namespace septree
