#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "septree/core/front.h"
#include "septree/core/task.h"

namespace septree {

// ---------------------------------------------------------------------------
// Accuracy

/// Misclassification count: scalar minimization, (+) = +.
class AccuracyTask : public OptimizationTask {
public:
	explicit AccuracyTask(DatasetPtr data);
	std::string name() const override { return "accuracy"; }
};

TaskPtr accuracy_task(DatasetPtr data);

// ---------------------------------------------------------------------------
// Cost-sensitive classification

struct CostSpec {
	/// misclassification[k][k-hat]: cost of assigning k-hat to an instance of class k.
	std::vector<std::vector<double>> misclassification;
	/// Base cost of testing each feature.
	std::vector<double> feature_costs;
	/// Cost of a feature once a member of its group is already on the path.
	/// Empty means no discounts.
	std::vector<double> discounted_costs;
	/// Group id per feature, -1 for none. Empty means no groups.
	std::vector<int> groups;

	/// Throws DataError unless the spec fits `feature_count` features and
	/// `label_count` labels.
	void validate(int feature_count, int label_count) const;
	/// m(F, f).
	double feature_cost(const BranchPath& path, int feature) const;
	double total_feature_cost() const;
};

/// Leaf cost sum of M[k][k-hat]; branch cost |D| * m(F, f). Context dependent
/// whenever discount groups exist.
class CostSensitiveTask : public OptimizationTask {
public:
	CostSensitiveTask(DatasetPtr data, CostSpec spec);
	std::string name() const override { return "cost-sensitive"; }
	SolutionValue branch_cost(const NodeContext& node, int feature) const override;
	const CostSpec& spec() const { return spec_; }

private:
	CostSpec spec_;
};

TaskPtr cost_sensitive_task(DatasetPtr data, CostSpec spec);

/// C + min_k (1 - f_k) * max M, with C the sum of base feature costs and f_k
/// the relative label frequencies of `data`.
double standard_cost(const Dataset& data, const CostSpec& spec);

/// Misclassification matrix with C_k = C_def / (f_k |K|) off the diagonal,
/// C_def = fraction * (sum of feature costs). Typical fractions: 1/6, 1/3, 1.
std::vector<std::vector<double>> frequency_scaled_costs(const Dataset& data, double total_feature_cost, double fraction);

// ---------------------------------------------------------------------------
// Prescriptive policies

enum class PolicyMethod { kDirect, kInversePropensity, kDoublyRobust };

struct PolicySpec {
	PolicyMethod method = PolicyMethod::kDoublyRobust;
	/// Observed outcome y.
	std::string outcome_column = "y";
	/// Propensity mu-hat(x, k) of the historic treatment k (the label).
	std::string propensity_column = "mu";
	/// Teacher predictions v-hat_k(x) live in columns prefix + k.
	std::string teacher_prefix = "vhat_";
};

PolicyMethod parse_policy_method(const std::string& s);
std::string to_string(PolicyMethod m);

/// Scalar maximization of the unnormalized policy value: g(D, k) is the sum
/// over D of the per-instance DM / IPW / DR score of treating with k.
class PolicyTask : public OptimizationTask {
public:
	PolicyTask(DatasetPtr data, PolicySpec spec);
	std::string name() const override { return "policy"; }
	const PolicySpec& spec() const { return spec_; }

private:
	PolicySpec spec_;
};

TaskPtr policy_task(DatasetPtr data, PolicySpec spec);

/// Mean per-instance score of `tree` on `data`.
double policy_value(const Tree& tree, const Dataset& data, const PolicySpec& spec);

// ---------------------------------------------------------------------------
// Per-class errors and F1

/// Counts misclassified instances only in leaves labelled `target`.
/// With target 1 this counts false positives, with target 0 false negatives.
class PerClassTask : public OptimizationTask {
public:
	PerClassTask(DatasetPtr data, int target);
	std::string name() const override { return "per-class-" + std::to_string(target_); }

private:
	int target_;
};

TaskPtr per_class_task(DatasetPtr data, int target);
/// combine(per_class(1), per_class(0)): values are (fp, fn).
TaskPtr f1_task(DatasetPtr data);

struct F1Choice {
	std::size_t index = 0;
	double f1 = 0.0;
};

double f1_score(double tp, double fp, double fn);
/// argmax over entries of tp / (tp + 0.5 (fp + fn)), tp = positives - fn;
/// ties go to fewer branching nodes. Throws ContractError when no entry has a
/// defined score.
F1Choice f1_from_front(const ParetoFront& front, int positives);

// ---------------------------------------------------------------------------
// Threshold constraints and task combination

/// Adds c(v) = [v dominates or equals beta] to an inner task. The inner
/// combine must be worsening, which is checked on random samples at
/// construction (CapabilityError otherwise).
class ThresholdTask : public OptimizationTask {
public:
	ThresholdTask(TaskPtr inner, SolutionValue beta);
	std::string name() const override { return "threshold(" + inner_->name() + ")"; }

	SolutionValue leaf_cost(const State& s, int label) const override { return inner_->leaf_cost(s, label); }
	std::vector<SolutionValue> leaf_costs(const State& s) const override { return inner_->leaf_costs(s); }
	SolutionValue branch_cost(const NodeContext& node, int feature) const override { return inner_->branch_cost(node, feature); }
	bool feasible(const SolutionValue& v, const NodeContext& node) const override;
	SolutionValue combine(const SolutionValue& a, const SolutionValue& b) const override { return inner_->combine(a, b); }
	SolutionValue subtract(const SolutionValue& a, const SolutionValue& b) const override { return inner_->subtract(a, b); }

	const SolutionValue& beta() const { return beta_; }

private:
	TaskPtr inner_;
	SolutionValue beta_;
};

TaskPtr threshold_wrap(TaskPtr inner, SolutionValue beta);

/// Tuple task over several tasks sharing one dataset: concatenated costs,
/// product order, element-wise combine and a conjunctive constraint.
class CombinedTask : public OptimizationTask {
public:
	CombinedTask(std::vector<TaskPtr> tasks, int max_width = kMaxArity);
	std::string name() const override;

	SolutionValue leaf_cost(const State& s, int label) const override;
	std::vector<SolutionValue> leaf_costs(const State& s) const override;
	SolutionValue branch_cost(const NodeContext& node, int feature) const override;
	bool feasible(const SolutionValue& v, const NodeContext& node) const override;
	SolutionValue combine(const SolutionValue& a, const SolutionValue& b) const override;
	SolutionValue subtract(const SolutionValue& a, const SolutionValue& b) const override;

	const std::vector<TaskPtr>& parts() const { return tasks_; }
	/// Component slice of part i.
	SolutionValue slice(const SolutionValue& v, std::size_t part) const;

private:
	std::vector<TaskPtr> tasks_;
	std::vector<int> offsets_;
};

TaskPtr combine_tasks(std::vector<TaskPtr> tasks, int max_width = kMaxArity);

// ---------------------------------------------------------------------------
// Group fairness

enum class FairnessMode { kDemographicParity, kEqualOpportunity };

struct FairnessSpec {
	/// Column holding group membership a (nonzero = in group a).
	std::string sensitive_column = "group";
	double delta = 0.01;
	FairnessMode mode = FairnessMode::kDemographicParity;
};

FairnessMode parse_fairness_mode(const std::string& s);
std::string to_string(FairnessMode m);

/// One of the two balance costs. For demographic parity, side a sums
/// 1/N(a) over group-a instances labelled 1 and 1/N(a-bar) over the others
/// labelled 0; the other side swaps the labels. Equal opportunity restricts
/// both to instances with label 1. Group totals come from the root dataset.
class GroupBalanceTask : public OptimizationTask {
public:
	GroupBalanceTask(DatasetPtr data, FairnessSpec spec, bool side_a);
	std::string name() const override { return side_a_ ? "balance-a" : "balance-not-a"; }
	double group_total() const { return n_group_; }
	double rest_total() const { return n_rest_; }

private:
	FairnessSpec spec_;
	bool side_a_;
	double n_group_ = 0, n_rest_ = 0;
};

/// combine(accuracy, threshold(balance_a, 1 + delta), threshold(balance_not_a, 1 + delta)).
TaskPtr fairness_task(DatasetPtr data, FairnessSpec spec);

/// |P(y-hat = 1 | a) - P(y-hat = 1 | not a)|, restricted to label 1 for equal opportunity.
double discrimination(const Tree& tree, const Dataset& data, const FairnessSpec& spec);

// ---------------------------------------------------------------------------
// Randomized separability checks

struct CheckReport {
	int checked = 0;
	int violations = 0;
	std::string first_violation;
	bool ok() const { return violations == 0; }
};

/// Samples tree-like values (leaf costs on random subsets, combined with
/// branch costs) and checks that (+) preserves the order: v1 > v1' implies
/// v1 (+) v2 >= v1' (+) v2 and never the reverse.
CheckReport check_order_preservation(const OptimizationTask& task, int samples, std::uint64_t seed);
/// Checks v1 (+) v2 is weakly dominated by both operands on sampled values.
CheckReport check_worsening(const OptimizationTask& task, int samples, std::uint64_t seed);

} // namespace septree
