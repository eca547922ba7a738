#include "septree/oracle/oracle.h"

#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "septree/core/errors.h"

namespace septree {

EnumerationLimitError::EnumerationLimitError(std::uint64_t count, std::uint64_t limit)
	: std::runtime_error("enumeration of " + (count == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
	                                                                                              : std::to_string(count)) +
	                     " trees exceeds the limit of " + std::to_string(limit)),
	  count_(count) {}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
	if (a == 0 || b == 0) return 0;
	return a > kSaturated / b ? kSaturated : a * b;
}

void check_args(int features, int labels, int d, int n) {
	if (features < 0 || labels < 1 || d < 0 || n < 0) throw ContractError("oracle: invalid enumeration arguments");
}

} // namespace

std::uint64_t count_trees_exact(int features, int labels, int d, int m) {
	check_args(features, labels, d, m);
	// table[depth][nodes]
	std::vector<std::vector<std::uint64_t>> e(std::size_t(d) + 1, std::vector<std::uint64_t>(std::size_t(m) + 1, 0));
	for (int dd = 0; dd <= d; ++dd) {
		e[dd][0] = std::uint64_t(labels);
		if (dd == 0) continue;
		for (int mm = 1; mm <= m; ++mm) {
			std::uint64_t s = 0;
			for (int a = 0; a <= mm - 1; ++a) s = sat_add(s, sat_mul(e[dd - 1][a], e[dd - 1][mm - 1 - a]));
			e[dd][mm] = sat_mul(std::uint64_t(features), s);
		}
	}
	return e[d][m];
}

std::uint64_t count_trees(int features, int labels, int d, int n) {
	std::uint64_t total = 0;
	for (int m = 0; m <= n; ++m) total = sat_add(total, count_trees_exact(features, labels, d, m));
	return total;
}

namespace {

void enumerate_exact(int features, int labels, int d, int m, const std::function<void(const Tree&)>& visit) {
	if (m == 0) {
		for (int k = 0; k < labels; ++k) visit(Tree::leaf(k));
		return;
	}
	if (d == 0) return;
	for (int f = 0; f < features; ++f)
		for (int a = 0; a <= m - 1; ++a)
			enumerate_exact(features, labels, d - 1, a, [&](const Tree& left) {
				enumerate_exact(features, labels, d - 1, m - 1 - a, [&](const Tree& right) { visit(Tree::branch(f, left, right)); });
			});
}

void guard(int features, int labels, int d, int n, std::uint64_t limit) {
	auto count = count_trees(features, labels, d, n);
	if (count > limit) throw EnumerationLimitError(count, limit);
}

} // namespace

void enumerate_trees(int features, int labels, int d, int n, const std::function<void(const Tree&)>& visit, std::uint64_t limit) {
	check_args(features, labels, d, n);
	guard(features, labels, d, n, limit);
	for (int m = 0; m <= n; ++m) enumerate_exact(features, labels, d, m, visit);
}

namespace {

// Values equal after rounding to a 1e-9 grid are the same value.
struct ValueKey {
	std::vector<long long> parts;
	friend bool operator<(const ValueKey& a, const ValueKey& b) { return a.parts < b.parts; }
};

ValueKey key_of(const SolutionValue& v) {
	ValueKey k;
	for (double x : v.components()) k.parts.push_back(std::llround(x * 1e9));
	return k;
}

using ValueSet = std::map<ValueKey, FrontEntry>;

class Exhaustive {
public:
	Exhaustive(const OptimizationTask& task, int support) : task_(task), support_(support) {}

	// All values of trees with depth <= d and exactly m branching nodes.
	const ValueSet& values(const State& s, int d, int m) {
		auto& slot = memo_[Key{ s.path(), d, m }];
		if (slot.computed) return slot.set;
		slot.computed = true;
		ValueSet out;
		if (m == 0) {
			if (s.size() >= std::size_t(support_))
				for (int k = 0; k < task_.label_count(); ++k) add(out, { task_.leaf_cost(s, k), Tree::leaf(k) });
		} else if (d > 0) {
			for (int f = 0; f < task_.data().feature_count(); ++f) {
				State left = s.branch(f, false);
				State right = s.branch(f, true);
				auto g = task_.branch_cost(s, f);
				for (int a = 0; a <= m - 1; ++a) {
					const auto& lv = values(left, d - 1, a);
					if (lv.empty()) continue;
					const auto& rv = values(right, d - 1, m - 1 - a);
					for (const auto& [lk, l] : lv)
						for (const auto& [rk, r] : rv)
							add(out, { task_.combine(task_.combine(l.value, r.value), g), Tree::branch(f, l.tree, r.tree) });
				}
			}
		}
		// element references survive rehashing, so slot is still valid
		slot.set = std::move(out);
		return slot.set;
	}

private:
	struct Key {
		BranchPath path;
		int d, m;
		friend bool operator==(const Key&, const Key&) = default;
	};
	struct KeyHash {
		std::size_t operator()(const Key& k) const { return k.path.hash() * 31 + std::size_t(k.d) * 1009 + std::size_t(k.m); }
	};
	struct Slot {
		bool computed = false;
		ValueSet set;
	};

	static void add(ValueSet& set, FrontEntry e) {
		auto k = key_of(e.value);
		auto it = set.find(k);
		if (it == set.end()) set.emplace(std::move(k), std::move(e));
		else if (Tree::preferred(e.tree, it->second.tree)) it->second = std::move(e);
	}

	const OptimizationTask& task_;
	int support_;
	std::unordered_map<Key, Slot, KeyHash> memo_;
};

} // namespace

std::vector<FrontEntry> brute_force_front(const OptimizationTask& task, int d, int n, int min_leaf_support, std::uint64_t limit) {
	check_args(task.data().feature_count(), task.label_count(), d, n);
	guard(task.data().feature_count(), task.label_count(), d, n, limit);
	Exhaustive ex(task, min_leaf_support);
	State root = task.root_state();
	std::vector<FrontEntry> all;
	for (int m = 0; m <= n; ++m)
		for (const auto& [k, e] : ex.values(root, d, m))
			if (task.feasible(e.value, root)) all.push_back(e);
	return nondom(std::move(all), task.order());
}

std::vector<FrontEntry> naive_front(const OptimizationTask& task, int d, int n, int min_leaf_support, std::uint64_t limit) {
	State root = task.root_state();
	std::vector<FrontEntry> all;
	enumerate_trees(
		task.data().feature_count(), task.label_count(), d, n,
		[&](const Tree& t) {
			if (tree_feasible(t, root, task, min_leaf_support)) all.push_back({ tree_cost(t, root, task), t });
		},
		limit);
	return nondom(std::move(all), task.order());
}

} // namespace septree
