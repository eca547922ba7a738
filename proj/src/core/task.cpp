#include "septree/core/task.h"

#include "septree/core/errors.h"

namespace septree {

OptimizationTask::OptimizationTask(DatasetPtr data, ValueOrder order, TaskTraits traits)
	: data_(std::move(data)), order_(std::move(order)), traits_(traits) {
	if (!data_) throw ContractError("task: null dataset");
}

void OptimizationTask::adopt_instance_costs(std::vector<double> table) {
	const int K = label_count();
	const int A = arity();
	if (table.size() != data_->size() * std::size_t(K) * A) throw ContractError("task: instance cost table has wrong size");
	instance_table_ = std::move(table);
	traits_.per_instance_additive = true;
	row_best_.assign(data_->size() * A, 0.0);
	worst_.assign(K, SolutionValue(A));
	best_.assign(K, SolutionValue(A));
	std::vector<bool> seen(K, false);
	std::vector<SolutionValue> per_label(K, SolutionValue(A));
	for (std::size_t r = 0; r < data_->size(); ++r) {
		auto row = instance_row(int(r));
		for (int l = 0; l < K; ++l)
			for (int a = 0; a < A; ++a) per_label[l][a] = row[l * A + a];
		auto best = order_.ideal(per_label);
		auto worst = order_.nadir(per_label);
		for (int a = 0; a < A; ++a) row_best_[r * A + a] = best[a];
		int k = data_->label(int(r));
		if (!seen[k]) {
			worst_[k] = worst;
			best_[k] = best;
			seen[k] = true;
		} else {
			SolutionValue w[2] = { worst_[k], worst };
			SolutionValue b[2] = { best_[k], best };
			worst_[k] = order_.nadir(w);
			best_[k] = order_.ideal(b);
		}
	}
}

SolutionValue OptimizationTask::leaf_cost(const State& s, int label) const {
	if (!traits_.per_instance_additive) throw CapabilityError(name() + ": leaf_cost not provided");
	const int K = label_count();
	const int A = arity();
	SolutionValue v(A);
	for (int r : s.rows()) {
		const double* row = instance_table_.data() + std::size_t(r) * K * A + std::size_t(label) * A;
		for (int a = 0; a < A; ++a) v[a] += row[a];
	}
	return v;
}

std::vector<SolutionValue> OptimizationTask::leaf_costs(const State& s) const {
	const int K = label_count();
	std::vector<SolutionValue> out;
	out.reserve(K);
	if (!traits_.per_instance_additive) {
		for (int k = 0; k < K; ++k) out.push_back(leaf_cost(s, k));
		return out;
	}
	const int A = arity();
	out.assign(K, SolutionValue(A));
	for (int r : s.rows()) {
		const double* row = instance_table_.data() + std::size_t(r) * K * A;
		for (int k = 0; k < K; ++k)
			for (int a = 0; a < A; ++a) out[k][a] += row[k * A + a];
	}
	return out;
}

SolutionValue OptimizationTask::branch_cost(const NodeContext&, int) const { return zero(); }

bool OptimizationTask::feasible(const SolutionValue&, const NodeContext&) const { return true; }

SolutionValue OptimizationTask::combine(const SolutionValue& a, const SolutionValue& b) const {
	SolutionValue v(arity());
	for (int i = 0; i < arity(); ++i) v[i] = a[i] + b[i];
	return v;
}

SolutionValue OptimizationTask::subtract(const SolutionValue& a, const SolutionValue& b) const {
	if (!traits_.has_subtraction) throw CapabilityError(name() + ": no subtraction operator");
	SolutionValue v(arity());
	for (int i = 0; i < arity(); ++i) v[i] = a[i] - b[i];
	return v;
}

SolutionValue OptimizationTask::instance_cost(int row, int label) const {
	auto r = instance_row(row);
	return SolutionValue(r.subspan(std::size_t(label) * arity(), arity()));
}

std::span<const double> OptimizationTask::instance_row(int row) const {
	if (!traits_.per_instance_additive) throw CapabilityError(name() + ": not per-instance additive");
	const std::size_t width = std::size_t(label_count()) * arity();
	return { instance_table_.data() + std::size_t(row) * width, width };
}

const SolutionValue& OptimizationTask::worst_contribution(int label) const {
	if (!traits_.per_instance_additive) throw CapabilityError(name() + ": not per-instance additive");
	return worst_.at(label);
}

const SolutionValue& OptimizationTask::best_contribution(int label) const {
	if (!traits_.per_instance_additive) throw CapabilityError(name() + ": not per-instance additive");
	return best_.at(label);
}

std::optional<SolutionValue> OptimizationTask::optimistic_bound(const State& s) const {
	if (!traits_.per_instance_additive || branch_costs_may_improve_) return std::nullopt;
	const int A = arity();
	SolutionValue v(A);
	for (int r : s.rows())
		for (int a = 0; a < A; ++a) v[a] += row_best_[std::size_t(r) * A + a];
	return v;
}

} // namespace septree
