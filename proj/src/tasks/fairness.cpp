#include <cmath>

#include "septree/core/errors.h"
#include "septree/tasks/tasks.h"

namespace septree {

FairnessMode parse_fairness_mode(const std::string& s) {
	if (s == "demographic-parity" || s == "dp") return FairnessMode::kDemographicParity;
	if (s == "equal-opportunity" || s == "equality-of-opportunity" || s == "eo") return FairnessMode::kEqualOpportunity;
	throw DataError("unknown fairness mode '" + s + "'");
}

std::string to_string(FairnessMode m) {
	return m == FairnessMode::kDemographicParity ? "demographic-parity" : "equal-opportunity";
}

namespace {
bool counts_toward(const Dataset& data, const FairnessSpec& spec, int row) {
	return spec.mode == FairnessMode::kDemographicParity || data.label(row) == 1;
}
} // namespace

GroupBalanceTask::GroupBalanceTask(DatasetPtr data, FairnessSpec spec, bool side_a)
	: OptimizationTask(data, ValueOrder::uniform(1, Sense::kMinimize, false), TaskTraits{}), spec_(std::move(spec)),
	  side_a_(side_a) {
	if (data->label_count() != 2) throw DataError("fairness: binary labels required");
	if (!(spec_.delta >= 0.0)) throw DataError("fairness: delta must be non-negative");
	auto group = data->column(spec_.sensitive_column);
	for (std::size_t r = 0; r < data->size(); ++r) {
		if (!counts_toward(*data, spec_, int(r))) continue;
		(group[r] != 0.0 ? n_group_ : n_rest_) += 1.0;
	}
	if (n_group_ == 0.0 || n_rest_ == 0.0)
		throw DataError("fairness: both groups need a positive total in column '" + spec_.sensitive_column + "'");
	std::vector<double> table(data->size() * 2, 0.0);
	for (std::size_t r = 0; r < data->size(); ++r) {
		if (!counts_toward(*data, spec_, int(r))) continue;
		bool in_a = group[r] != 0.0;
		// side a: group members labelled 1, others labelled 0; side not-a swaps labels
		int label = (in_a == side_a_) ? 1 : 0;
		table[r * 2 + label] = 1.0 / (in_a ? n_group_ : n_rest_);
	}
	adopt_instance_costs(std::move(table));
}

TaskPtr fairness_task(DatasetPtr data, FairnessSpec spec) {
	SolutionValue beta{ 1.0 + spec.delta };
	auto a = threshold_wrap(std::make_shared<GroupBalanceTask>(data, spec, true), beta);
	auto not_a = threshold_wrap(std::make_shared<GroupBalanceTask>(data, spec, false), beta);
	return combine_tasks({ accuracy_task(data), a, not_a });
}

double discrimination(const Tree& tree, const Dataset& data, const FairnessSpec& spec) {
	auto group = data.column(spec.sensitive_column);
	double n[2] = { 0, 0 }, pos[2] = { 0, 0 };
	for (std::size_t r = 0; r < data.size(); ++r) {
		if (!counts_toward(data, spec, int(r))) continue;
		int g = group[r] != 0.0 ? 1 : 0;
		n[g] += 1;
		if (tree.predict(data, int(r)) == 1) pos[g] += 1;
	}
	if (n[0] == 0 || n[1] == 0) throw DataError("discrimination: a group is empty");
	return std::abs(pos[1] / n[1] - pos[0] / n[0]);
}

} // namespace septree
