#include <doctest.h>

#include "septree/core/errors.h"
#include "septree/depth2/depth2.h"
#include "septree/solver/solver.h"
#include "support.h"

using namespace septree;
using namespace septree::testing;

namespace {

// Count channel of a label under the accuracy task: instances whose true
// label differs from `label` contribute 1 to that channel.
double misclassified_if(const std::vector<double>& agg, int label) { return agg[std::size_t(label)]; }

} // namespace

TEST_CASE("pair counts on XOR") {
	auto data = xor_data();
	auto task = accuracy_task(data);
	PairCounts counts(task->root_state(), *task);
	CHECK(counts.channel_count() == 3);
	auto both = counts.aggregate(0, true, 1, true); // only row (1,1) -> 0
	CHECK(both.back() == 1);
	// predicting 1 there misclassifies the single label-0 instance
	CHECK(misclassified_if(both, 1) == 1);
	CHECK(misclassified_if(both, 0) == 0);
	CHECK(counts.aggregate(0, false, 1, true).back() == 1);
	CHECK(counts.total()[2] == 4);
}

TEST_CASE("pair aggregates marginalize to single aggregates") {
	Rng rng(31);
	for (int trial = 0; trial < 20; ++trial) {
		auto data = random_dataset(rng, 5 + int(rng.below(30)), 4, 2 + int(rng.below(2)));
		for (const auto& [family, task] : task_families(data, rng)) {
			CAPTURE(family);
			PairCounts counts(task->root_state(), *task);
			for (int i = 0; i < 4; ++i)
				for (int j = 0; j < 4; ++j) {
					if (i == j) continue;
					for (int bi = 0; bi < 2; ++bi) {
						auto single = counts.aggregate(i, bi == 1);
						auto a = counts.aggregate(i, bi == 1, j, false);
						auto b = counts.aggregate(i, bi == 1, j, true);
						for (int c = 0; c < counts.channel_count(); ++c) CHECK(a[c] + b[c] == doctest::Approx(single[c]).epsilon(1e-9));
					}
				}
		}
	}
}

TEST_CASE("pair counts of an empty state are zero") {
	auto data = xor_data();
	auto task = accuracy_task(data);
	auto empty = task->root_state().branch(0, true).branch(0, false);
	PairCounts counts(empty, *task);
	for (double x : counts.total()) CHECK(x == 0);
	for (double x : counts.aggregate(0, true, 1, false)) CHECK(x == 0);
}

TEST_CASE("pair counts need per-instance additive costs") {
	struct Opaque : OptimizationTask {
		explicit Opaque(DatasetPtr d) : OptimizationTask(d, ValueOrder::uniform(1, Sense::kMinimize, true), TaskTraits{}) {}
		std::string name() const override { return "opaque"; }
		SolutionValue leaf_cost(const State& s, int) const override { return SolutionValue{ double(s.size() % 2) }; }
	};
	Opaque task(xor_data());
	CHECK_FALSE(depth2_applicable(task));
	CHECK_THROWS_AS(PairCounts(task.root_state(), task), CapabilityError);
}

TEST_CASE("depth-two fronts on XOR") {
	auto task = accuracy_task(xor_data());
	auto s = task->root_state();
	CHECK(solve_depth2(s, *task, 3)[0].value[0] == 0);
	CHECK(solve_depth2(s, *task, 1)[0].value[0] == 2);
	CHECK(solve_depth2(s, *task, 0)[0].value[0] == 2);
	CHECK(solve_depth2(s, *task, 2)[0].value[0] == 1);
	CHECK_THROWS_AS(solve_depth2(s, *task, 4), ContractError);
}

TEST_CASE("single-class data is solved by a bare leaf") {
	auto data = make_data({ { 0, 1 }, { 1, 0 }, { 1, 1 } }, { 1, 1, 1 });
	auto task = accuracy_task(data);
	for (int n = 0; n <= 3; ++n) {
		auto front = solve_depth2(task->root_state(), *task, n);
		REQUIRE(front.size() == 1);
		CHECK(front[0].value[0] == 0);
		CHECK(front[0].tree.is_leaf());
	}
}

TEST_CASE("depth-two solver matches the general recursion") {
	Rng rng(37);
	for (int trial = 0; trial < 40; ++trial) {
		auto data = random_dataset(rng, 4 + int(rng.below(20)), 2 + int(rng.below(4)), 2 + int(rng.below(2)));
		for (const auto& [family, task] : task_families(data, rng)) {
			for (int n = 0; n <= 3; ++n) {
				CAPTURE(family);
				CAPTURE(n);
				auto fast = solve_depth2(task->root_state(), *task, n);
				auto slow = solve(task, SolverConfig{ .max_depth = 2, .max_nodes = n, .use_depth2 = false }).front;
				CHECK_MESSAGE(same_values(fast, slow.entries(), task->order()), (describe(fast) + " vs " + describe(slow.entries())));
			}
		}
	}
}

TEST_CASE("depth-two solver reads each instance a bounded number of times") {
	Rng rng(41);
	auto data = random_dataset(rng, 50, 6, 2);
	auto task = accuracy_task(data);
	PairCounts counts(task->root_state(), *task);
	const std::size_t F = 6;
	CHECK(counts.instance_touches() <= data->size() * (1 + F + F * (F - 1) / 2));
	auto before = counts.instance_touches();
	auto fronts = solve_depth2(counts, task->root_state(), *task);
	CHECK(counts.instance_touches() == before);
	CHECK(!fronts[3].empty());
}

TEST_CASE("depth-two solver honours minimum leaf support") {
	Rng rng(43);
	for (int trial = 0; trial < 20; ++trial) {
		auto data = random_dataset(rng, 6 + int(rng.below(12)), 3, 2);
		auto task = accuracy_task(data);
		int support = 1 + int(rng.below(4));
		for (int n = 0; n <= 3; ++n) {
			auto fast = solve_depth2(task->root_state(), *task, n, {}, support);
			auto slow = solve(task, SolverConfig{ .max_depth = 2, .max_nodes = n, .use_depth2 = false, .min_leaf_support = support }).front;
			CHECK(same_values(fast, slow.entries(), task->order()));
			for (const auto& e : fast) CHECK(tree_feasible(e.tree, task->root_state(), *task, support));
		}
	}
}
