#include <cmath>

#include "septree/core/errors.h"
#include "septree/tasks/tasks.h"

namespace septree {

AccuracyTask::AccuracyTask(DatasetPtr data)
	: OptimizationTask(data, ValueOrder::uniform(1, Sense::kMinimize, true), TaskTraits{}) {
	const int K = data->label_count();
	std::vector<double> table(data->size() * K);
	for (std::size_t r = 0; r < data->size(); ++r)
		for (int k = 0; k < K; ++k) table[r * K + k] = data->label(int(r)) != k ? 1.0 : 0.0;
	adopt_instance_costs(std::move(table));
}

TaskPtr accuracy_task(DatasetPtr data) { return std::make_shared<AccuracyTask>(std::move(data)); }

PerClassTask::PerClassTask(DatasetPtr data, int target)
	: OptimizationTask(data, ValueOrder::uniform(1, Sense::kMinimize, true), TaskTraits{}), target_(target) {
	if (data->label_count() != 2) throw DataError("per-class task requires binary labels");
	if (target != 0 && target != 1) throw ContractError("per-class task: target must be 0 or 1");
	std::vector<double> table(data->size() * 2, 0.0);
	for (std::size_t r = 0; r < data->size(); ++r)
		table[r * 2 + target] = data->label(int(r)) != target ? 1.0 : 0.0;
	adopt_instance_costs(std::move(table));
}

TaskPtr per_class_task(DatasetPtr data, int target) { return std::make_shared<PerClassTask>(std::move(data), target); }

TaskPtr f1_task(DatasetPtr data) { return combine_tasks({ per_class_task(data, 1), per_class_task(data, 0) }); }

double f1_score(double tp, double fp, double fn) {
	double denom = tp + 0.5 * (fp + fn);
	if (denom <= 0.0) return std::nan("");
	return tp / denom;
}

F1Choice f1_from_front(const ParetoFront& front, int positives) {
	if (front.empty()) throw ContractError("f1_from_front: empty front");
	bool found = false;
	F1Choice best;
	for (std::size_t i = 0; i < front.size(); ++i) {
		const auto& v = front[i].value;
		if (v.arity() != 2) throw ContractError("f1_from_front: expected (fp, fn) values");
		double f1 = f1_score(positives - v[1], v[0], v[1]);
		if (std::isnan(f1)) continue;
		bool better = !found || f1 > best.f1 ||
		              (f1 == best.f1 && front[i].tree.branch_count() < front[best.index].tree.branch_count());
		if (better) {
			best = { i, f1 };
			found = true;
		}
	}
	if (!found) throw ContractError("f1_from_front: F1 undefined for every entry");
	return best;
}

} // namespace septree
