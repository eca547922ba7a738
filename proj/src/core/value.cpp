#include "septree/core/value.h"

#include <cmath>
#include <sstream>

#include "septree/core/errors.h"

namespace septree {

SolutionValue::SolutionValue(int arity, double fill) : arity_(arity) {
	if (arity < 0 || arity > kMaxArity) throw ContractError("solution value arity out of range: " + std::to_string(arity));
	for (int i = 0; i < arity; ++i) c_[i] = fill;
}

SolutionValue::SolutionValue(std::initializer_list<double> components)
	: SolutionValue(std::span<const double>(components.begin(), components.size())) {}

SolutionValue::SolutionValue(std::span<const double> components) : SolutionValue(int(components.size())) {
	for (int i = 0; i < arity_; ++i) c_[i] = components[i];
}

bool SolutionValue::all_finite() const {
	for (int i = 0; i < arity_; ++i)
		if (!std::isfinite(c_[i])) return false;
	return true;
}

std::string SolutionValue::to_string() const {
	std::ostringstream os;
	os.precision(17);
	os << '(';
	for (int i = 0; i < arity_; ++i) {
		if (i) os << ", ";
		os << c_[i];
	}
	os << ')';
	return os.str();
}

bool operator==(const SolutionValue& a, const SolutionValue& b) {
	if (a.arity_ != b.arity_) return false;
	for (int i = 0; i < a.arity_; ++i)
		if (a.c_[i] != b.c_[i]) return false;
	return true;
}

ValueOrder::ValueOrder(std::vector<Sense> senses, std::vector<double> epsilons)
	: senses_(std::move(senses)), eps_(std::move(epsilons)) {
	if (senses_.size() != eps_.size()) throw ContractError("value order: sense/epsilon size mismatch");
	if (senses_.empty() || int(senses_.size()) > kMaxArity)
		throw ContractError("value order arity out of range: " + std::to_string(senses_.size()));
}

ValueOrder ValueOrder::uniform(int arity, Sense sense, bool integral) {
	return ValueOrder(std::vector<Sense>(arity, sense), std::vector<double>(arity, integral ? 0.0 : kFloatEpsilon));
}

ValueOrder ValueOrder::concat(std::span<const ValueOrder> parts) {
	std::vector<Sense> senses;
	std::vector<double> eps;
	for (const auto& p : parts) {
		senses.insert(senses.end(), p.senses_.begin(), p.senses_.end());
		eps.insert(eps.end(), p.eps_.begin(), p.eps_.end());
	}
	return ValueOrder(std::move(senses), std::move(eps));
}

bool ValueOrder::exact() const {
	for (double e : eps_)
		if (e != 0.0) return false;
	return true;
}

void ValueOrder::check_arity(const SolutionValue& v) const {
	if (v.arity() != arity())
		throw ContractError("arity mismatch: value " + v.to_string() + " against order of arity " + std::to_string(arity()));
}

Relation ValueOrder::compare(const SolutionValue& a, const SolutionValue& b) const {
	bool a_better = false;
	bool b_better = false;
	for (int i = 0; i < arity(); ++i) {
		if (component_better(i, a[i], b[i])) a_better = true;
		else if (component_better(i, b[i], a[i])) b_better = true;
	}
	if (a_better && b_better) return Relation::kIncomparable;
	if (a_better) return Relation::kDominates;
	if (b_better) return Relation::kDominated;
	return Relation::kEqual;
}

bool ValueOrder::equal(const SolutionValue& a, const SolutionValue& b) const {
	for (int i = 0; i < arity(); ++i)
		if (std::abs(a[i] - b[i]) > eps_[i]) return false;
	return true;
}

bool ValueOrder::weakly_dominates(const SolutionValue& a, const SolutionValue& b) const {
	for (int i = 0; i < arity(); ++i)
		if (!component_at_least(i, a[i], b[i])) return false;
	return true;
}

bool ValueOrder::key_less(const SolutionValue& a, const SolutionValue& b) const {
	for (int i = 0; i < arity(); ++i) {
		double ka = key(i, a[i]);
		double kb = key(i, b[i]);
		if (ka < kb) return true;
		if (kb < ka) return false;
	}
	return false;
}

SolutionValue ValueOrder::ideal(std::span<const SolutionValue> values) const {
	if (values.empty()) throw ContractError("ideal point of an empty set");
	SolutionValue best = values.front();
	for (const auto& v : values)
		for (int i = 0; i < arity(); ++i)
			if (key(i, v[i]) < key(i, best[i])) best[i] = v[i];
	return best;
}

SolutionValue ValueOrder::nadir(std::span<const SolutionValue> values) const {
	if (values.empty()) throw ContractError("nadir point of an empty set");
	SolutionValue worst = values.front();
	for (const auto& v : values)
		for (int i = 0; i < arity(); ++i)
			if (key(i, v[i]) > key(i, worst[i])) worst[i] = v[i];
	return worst;
}

} // namespace septree
