#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "septree/core/dataset.h"
#include "septree/core/state.h"
#include "septree/core/value.h"

namespace septree {

/// Capability flags the solver consults before enabling bounds and the
/// depth-two specialization.
struct TaskTraits {
	/// Costs ignore the branch path above the node.
	bool context_independent = true;
	/// Leaf cost is a sum of per-instance contributions j(s, x, k, k-hat).
	bool per_instance_additive = false;
	/// The constraint c is not identically true.
	bool has_constraint = false;
	/// An exact inverse of combine exists.
	bool has_subtraction = true;
	/// Some branch cost g(s, f) may be nonzero.
	bool has_branch_costs = false;
};

/// An optimization task <g, t, >, (+), c, s0> bound to a root dataset.
///
/// The transition is shared by every task: t(<D, F>, f) = <D_f, F u {f}>.
/// Branch costs and the constraint observe a node through NodeContext (its
/// branch path and instance count); leaf costs see the full state.
///
/// Per-instance-additive tasks fill a row-major table of contributions
/// j(x, k, k-hat) once at construction; leaf costs, the depth-two solver and
/// the similarity bound all read from it.
class OptimizationTask {
public:
	virtual ~OptimizationTask() = default;

	virtual std::string name() const = 0;

	const Dataset& data() const { return *data_; }
	const DatasetPtr& data_ptr() const { return data_; }
	const ValueOrder& order() const { return order_; }
	int arity() const { return order_.arity(); }
	int label_count() const { return data_->label_count(); }
	const TaskTraits& traits() const { return traits_; }

	State root_state() const { return State::root(data_); }
	State transition(const State& s, Literal lit) const { return s.branch(lit.feature, lit.positive); }

	/// g(s, k-hat).
	virtual SolutionValue leaf_cost(const State& s, int label) const;
	/// g(s, k-hat) for every label at once.
	virtual std::vector<SolutionValue> leaf_costs(const State& s) const;
	/// g(s, f).
	virtual SolutionValue branch_cost(const NodeContext& node, int feature) const;
	SolutionValue branch_cost(const State& s, int feature) const { return branch_cost(s.context(), feature); }
	/// c(v, s).
	virtual bool feasible(const SolutionValue& v, const NodeContext& node) const;
	bool feasible(const SolutionValue& v, const State& s) const { return feasible(v, s.context()); }

	virtual SolutionValue combine(const SolutionValue& a, const SolutionValue& b) const;
	/// Inverse of combine; throws CapabilityError when has_subtraction is false.
	virtual SolutionValue subtract(const SolutionValue& a, const SolutionValue& b) const;
	/// Identity of combine.
	SolutionValue zero() const { return SolutionValue(arity()); }

	/// j(s, x, k, k-hat) for root row `row` assigned `label`.
	SolutionValue instance_cost(int row, int label) const;
	/// label_count * arity contributions of one row, indexed [label * arity + component].
	std::span<const double> instance_row(int row) const;
	/// Worst / best single-instance contribution among instances of true label k.
	const SolutionValue& worst_contribution(int label) const;
	const SolutionValue& best_contribution(int label) const;

	/// A single point at least as good as the value of every tree on s.
	/// Requires per-instance additivity and branch costs that never improve a
	/// value; otherwise nullopt.
	std::optional<SolutionValue> optimistic_bound(const State& s) const;
	bool branch_costs_may_improve() const { return branch_costs_may_improve_; }

protected:
	OptimizationTask(DatasetPtr data, ValueOrder order, TaskTraits traits);

	/// Installs the per-instance table and derives per-label extremes.
	void adopt_instance_costs(std::vector<double> table);
	/// Marks branch costs as able to improve a value (disables optimistic bounds).
	void set_branch_costs_may_improve(bool v) { branch_costs_may_improve_ = v; }

private:
	DatasetPtr data_;
	ValueOrder order_;
	TaskTraits traits_;
	bool branch_costs_may_improve_ = false;
	std::vector<double> instance_table_;
	std::vector<double> row_best_;
	std::vector<SolutionValue> worst_;
	std::vector<SolutionValue> best_;
};

using TaskPtr = std::shared_ptr<const OptimizationTask>;

} // namespace septree
