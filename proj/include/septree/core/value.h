#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace septree {

/// Maximum number of components a solution value may carry.
inline constexpr int kMaxArity = 8;

/// Fixed-capacity tuple of doubles. The arity is fixed per task.
class SolutionValue {
public:
	SolutionValue() = default;
	explicit SolutionValue(int arity, double fill = 0.0);
	SolutionValue(std::initializer_list<double> components);
	explicit SolutionValue(std::span<const double> components);

	int arity() const { return arity_; }
	double operator[](int i) const { return c_[i]; }
	double& operator[](int i) { return c_[i]; }
	std::span<const double> components() const { return { c_.data(), std::size_t(arity_) }; }

	bool all_finite() const;
	std::string to_string() const;

	friend bool operator==(const SolutionValue& a, const SolutionValue& b);

private:
	std::array<double, kMaxArity> c_{};
	int arity_ = 0;
};

enum class Sense : std::uint8_t { kMinimize, kMaximize };

enum class Relation : std::uint8_t { kDominates, kDominated, kEqual, kIncomparable };

/// Product partial order over solution values. Each component has an
/// optimization sense and an absolute tolerance (0 for integer-valued
/// components). a dominates b iff a is at least as good in every component
/// and strictly better in at least one, both up to the tolerance.
class ValueOrder {
public:
	ValueOrder() = default;
	ValueOrder(std::vector<Sense> senses, std::vector<double> epsilons);

	static ValueOrder uniform(int arity, Sense sense, bool integral);
	static ValueOrder concat(std::span<const ValueOrder> parts);

	int arity() const { return int(senses_.size()); }
	bool total() const { return arity() == 1; }
	bool exact() const;
	Sense sense(int i) const { return senses_[i]; }
	double epsilon(int i) const { return eps_[i]; }

	/// Minimization-oriented key: smaller is better.
	double key(int i, double x) const { return senses_[i] == Sense::kMinimize ? x : -x; }

	bool component_at_least(int i, double a, double b) const { return key(i, a) <= key(i, b) + eps_[i]; }
	bool component_better(int i, double a, double b) const { return key(i, a) < key(i, b) - eps_[i]; }

	Relation compare(const SolutionValue& a, const SolutionValue& b) const;
	bool dominates(const SolutionValue& a, const SolutionValue& b) const { return compare(a, b) == Relation::kDominates; }
	bool equal(const SolutionValue& a, const SolutionValue& b) const;
	/// a dominates or equals b.
	bool weakly_dominates(const SolutionValue& a, const SolutionValue& b) const;
	/// Reverse dominance: a is dominated by b.
	bool reverse_dominates(const SolutionValue& a, const SolutionValue& b) const { return dominates(b, a); }

	/// Lexicographic minimization-key comparison, used for canonical ordering.
	bool key_less(const SolutionValue& a, const SolutionValue& b) const;

	/// Component-wise best point of a nonempty set.
	SolutionValue ideal(std::span<const SolutionValue> values) const;
	/// Component-wise worst point of a nonempty set.
	SolutionValue nadir(std::span<const SolutionValue> values) const;

	void check_arity(const SolutionValue& v) const;

	friend bool operator==(const ValueOrder&, const ValueOrder&) = default;

private:
	std::vector<Sense> senses_;
	std::vector<double> eps_;
};

/// Tolerance used for float-valued components.
inline constexpr double kFloatEpsilon = 1e-9;

} // namespace septree
