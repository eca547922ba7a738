#include "septree/core/errors.h"
#include "septree/tasks/tasks.h"

namespace septree {

namespace {

std::vector<double> copy_instance_table(const OptimizationTask& t) {
	std::vector<double> table;
	table.reserve(t.data().size() * std::size_t(t.label_count()) * t.arity());
	for (std::size_t r = 0; r < t.data().size(); ++r) {
		auto row = t.instance_row(int(r));
		table.insert(table.end(), row.begin(), row.end());
	}
	return table;
}

TaskTraits threshold_traits(const OptimizationTask& inner) {
	TaskTraits t = inner.traits();
	t.has_constraint = true;
	return t;
}

} // namespace

ThresholdTask::ThresholdTask(TaskPtr inner, SolutionValue beta)
	: OptimizationTask(inner->data_ptr(), inner->order(), threshold_traits(*inner)), inner_(std::move(inner)),
	  beta_(beta) {
	order().check_arity(beta_);
	if (!beta_.all_finite()) throw ContractError("threshold: beta must be finite");
	auto report = check_worsening(*inner_, 256, 0x7468726573686f6cull);
	if (!report.ok()) throw CapabilityError("threshold: combine of " + inner_->name() + " is not worsening: " + report.first_violation);
	if (inner_->traits().per_instance_additive) adopt_instance_costs(copy_instance_table(*inner_));
	set_branch_costs_may_improve(inner_->branch_costs_may_improve());
}

bool ThresholdTask::feasible(const SolutionValue& v, const NodeContext& node) const {
	return inner_->feasible(v, node) && order().weakly_dominates(v, beta_);
}

TaskPtr threshold_wrap(TaskPtr inner, SolutionValue beta) { return std::make_shared<ThresholdTask>(std::move(inner), beta); }

namespace {

DatasetPtr shared_data(const std::vector<TaskPtr>& tasks) {
	if (tasks.size() < 2) throw ContractError("combine_tasks: need at least two tasks");
	for (const auto& t : tasks) {
		if (!t) throw ContractError("combine_tasks: null task");
		if (t->data_ptr() != tasks.front()->data_ptr()) throw ContractError("combine_tasks: tasks must share one dataset");
	}
	return tasks.front()->data_ptr();
}

ValueOrder concat_order(const std::vector<TaskPtr>& tasks, int max_width) {
	int width = 0;
	std::vector<ValueOrder> orders;
	for (const auto& t : tasks) {
		width += t->arity();
		orders.push_back(t->order());
	}
	if (width > max_width)
		throw ContractError("combine_tasks: combined width " + std::to_string(width) + " exceeds maximum " +
		                    std::to_string(max_width));
	return ValueOrder::concat(orders);
}

TaskTraits combined_traits(const std::vector<TaskPtr>& tasks) {
	TaskTraits t;
	t.per_instance_additive = true;
	for (const auto& p : tasks) {
		const auto& s = p->traits();
		t.context_independent = t.context_independent && s.context_independent;
		t.per_instance_additive = t.per_instance_additive && s.per_instance_additive;
		t.has_constraint = t.has_constraint || s.has_constraint;
		t.has_subtraction = t.has_subtraction && s.has_subtraction;
		t.has_branch_costs = t.has_branch_costs || s.has_branch_costs;
	}
	t.per_instance_additive = false; // set by adopt_instance_costs
	return t;
}

} // namespace

CombinedTask::CombinedTask(std::vector<TaskPtr> tasks, int max_width)
	: OptimizationTask(shared_data(tasks), concat_order(tasks, max_width), combined_traits(tasks)), tasks_(std::move(tasks)) {
	int off = 0;
	bool all_additive = true;
	bool may_improve = false;
	for (const auto& t : tasks_) {
		offsets_.push_back(off);
		off += t->arity();
		all_additive = all_additive && t->traits().per_instance_additive;
		may_improve = may_improve || t->branch_costs_may_improve();
	}
	offsets_.push_back(off);
	set_branch_costs_may_improve(may_improve);
	if (all_additive) {
		const int K = label_count();
		std::vector<double> table;
		table.reserve(data().size() * std::size_t(K) * arity());
		for (std::size_t r = 0; r < data().size(); ++r)
			for (int k = 0; k < K; ++k)
				for (const auto& t : tasks_) {
					auto row = t->instance_row(int(r));
					for (int a = 0; a < t->arity(); ++a) table.push_back(row[std::size_t(k) * t->arity() + a]);
				}
		adopt_instance_costs(std::move(table));
	}
}

std::string CombinedTask::name() const {
	std::string s = "combined(";
	for (std::size_t i = 0; i < tasks_.size(); ++i) s += (i ? "," : "") + tasks_[i]->name();
	return s + ")";
}

SolutionValue CombinedTask::slice(const SolutionValue& v, std::size_t part) const {
	return SolutionValue(v.components().subspan(offsets_[part], offsets_[part + 1] - offsets_[part]));
}

SolutionValue CombinedTask::leaf_cost(const State& s, int label) const {
	if (traits().per_instance_additive) return OptimizationTask::leaf_cost(s, label);
	SolutionValue v(arity());
	for (std::size_t p = 0; p < tasks_.size(); ++p) {
		auto part = tasks_[p]->leaf_cost(s, label);
		for (int a = 0; a < part.arity(); ++a) v[offsets_[p] + a] = part[a];
	}
	return v;
}

std::vector<SolutionValue> CombinedTask::leaf_costs(const State& s) const {
	if (traits().per_instance_additive) return OptimizationTask::leaf_costs(s);
	std::vector<SolutionValue> out;
	for (int k = 0; k < label_count(); ++k) out.push_back(leaf_cost(s, k));
	return out;
}

SolutionValue CombinedTask::branch_cost(const NodeContext& node, int feature) const {
	SolutionValue v(arity());
	if (!traits().has_branch_costs) return v;
	for (std::size_t p = 0; p < tasks_.size(); ++p) {
		auto part = tasks_[p]->branch_cost(node, feature);
		for (int a = 0; a < part.arity(); ++a) v[offsets_[p] + a] = part[a];
	}
	return v;
}

bool CombinedTask::feasible(const SolutionValue& v, const NodeContext& node) const {
	if (!traits().has_constraint) return true;
	for (std::size_t p = 0; p < tasks_.size(); ++p)
		if (!tasks_[p]->feasible(slice(v, p), node)) return false;
	return true;
}

SolutionValue CombinedTask::combine(const SolutionValue& a, const SolutionValue& b) const {
	SolutionValue v(arity());
	for (std::size_t p = 0; p < tasks_.size(); ++p) {
		auto part = tasks_[p]->combine(slice(a, p), slice(b, p));
		for (int i = 0; i < part.arity(); ++i) v[offsets_[p] + i] = part[i];
	}
	return v;
}

SolutionValue CombinedTask::subtract(const SolutionValue& a, const SolutionValue& b) const {
	if (!traits().has_subtraction) throw CapabilityError(name() + ": no subtraction operator");
	SolutionValue v(arity());
	for (std::size_t p = 0; p < tasks_.size(); ++p) {
		auto part = tasks_[p]->subtract(slice(a, p), slice(b, p));
		for (int i = 0; i < part.arity(); ++i) v[offsets_[p] + i] = part[i];
	}
	return v;
}

TaskPtr combine_tasks(std::vector<TaskPtr> tasks, int max_width) {
	return std::make_shared<CombinedTask>(std::move(tasks), max_width);
}

} // namespace septree
