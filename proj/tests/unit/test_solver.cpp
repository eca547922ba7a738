#include <doctest.h>

#include "septree/core/errors.h"
#include "septree/oracle/oracle.h"
#include "septree/solver/solver.h"
#include "support.h"

using namespace septree;
using namespace septree::testing;

namespace {

SolverConfig config(int d, int n = -1) {
	SolverConfig c;
	c.max_depth = d;
	c.max_nodes = n;
	return c;
}

double best(const SolveResult& r) { return r.front[0].value[0]; }

} // namespace

TEST_CASE("XOR fronts by depth and budget") {
	auto task = accuracy_task(xor_data());
	CHECK(best(solve(task, config(0))) == 2);
	CHECK(best(solve(task, config(1, 1))) == 2);
	CHECK(best(solve(task, config(2, 3))) == 0);
	CHECK(best(solve(task, config(2, 2))) == 1);
	auto r = solve(task, config(2, 3));
	CHECK(r.optimal);
	CHECK(r.front[0].tree.branch_count() == 3);
}

TEST_CASE("config normalization clamps budget and depth") {
	auto c = config(3, 1).normalized();
	CHECK(c.max_depth == 1);
	CHECK(c.max_nodes == 1);
	auto full = config(3).normalized();
	CHECK(full.max_nodes == 7);
	auto big = config(2, 10).normalized();
	CHECK(big.max_nodes == 3);
	CHECK_THROWS_AS(config(-1).normalized(), ContractError);

	Rng rng(1);
	auto task = accuracy_task(random_dataset(rng, 20, 4, 2));
	auto a = solve(task, config(3, 1));
	auto b = solve(task, config(1, 1));
	CHECK(same_values(a.front.entries(), b.front.entries(), task->order()));
	for (const auto& e : a.front) CHECK(e.tree.depth() <= 1);
}

TEST_CASE("leaf_solve") {
	auto data = make_data({ { 0 }, { 0 }, { 0 }, { 1 } }, { 1, 1, 1, 0 });
	auto acc = accuracy_task(data);
	auto leaf = leaf_solve(acc->root_state(), *acc);
	REQUIRE(leaf.size() == 1);
	CHECK(leaf[0].value[0] == 1);
	CHECK(leaf[0].tree.label() == 1);

	auto bi = f1_task(data);
	auto both = leaf_solve(bi->root_state(), *bi);
	REQUIRE(both.size() == 2);
	CHECK(same_values(both, std::vector<FrontEntry>{ { { 1, 0 }, Tree::leaf(1) }, { { 0, 3 }, Tree::leaf(0) } }, bi->order()));

	auto empty = acc->root_state().branch(0, true).branch(0, false);
	auto e = leaf_solve(empty, *acc);
	REQUIRE(e.size() == 1);
	CHECK(e[0].value[0] == 0);
	CHECK(e[0].tree.label() == 0);

	CHECK(leaf_solve(acc->root_state(), *acc, {}, 5).empty());
}

TEST_CASE("solver matches the oracle on random data") {
	Rng rng(101);
	for (int trial = 0; trial < 12; ++trial) {
		auto data = random_dataset(rng, 5 + int(rng.below(15)), 2 + int(rng.below(3)), 2 + int(rng.below(2)));
		for (const auto& [family, task] : task_families(data, rng)) {
			for (int d = 0; d <= 2; ++d)
				for (int n = 0; n <= (1 << d) - 1; ++n) {
					CAPTURE(family);
					CAPTURE(d);
					CAPTURE(n);
					auto got = solve(task, config(d, n));
					auto want = brute_force_front(*task, d, n);
					CHECK_MESSAGE(same_values(got.front.entries(), want, task->order()),
					              (describe(got.front.entries()) + " vs " + describe(want)));
				}
		}
	}
}

TEST_CASE("returned trees reproduce their values and respect the limits") {
	Rng rng(103);
	for (int trial = 0; trial < 10; ++trial) {
		auto data = random_dataset(rng, 10 + int(rng.below(15)), 4, 2 + int(rng.below(2)));
		for (const auto& [family, task] : task_families(data, rng)) {
			int d = 1 + int(rng.below(3));
			int n = int(rng.below(std::uint64_t(1) << d));
			auto r = solve(task, config(d, n));
			for (const auto& e : r.front) {
				CAPTURE(family);
				CHECK(e.tree.depth() <= d);
				CHECK(e.tree.branch_count() <= n);
				CHECK(task->order().equal(tree_cost(e.tree, task->root_state(), *task), e.value));
				CHECK(tree_feasible(e.tree, task->root_state(), *task));
			}
		}
	}
}

TEST_CASE("budget monotonicity for scalar tasks") {
	Rng rng(107);
	for (int trial = 0; trial < 10; ++trial) {
		auto data = random_dataset(rng, 15 + int(rng.below(20)), 4, 2);
		auto task = accuracy_task(data);
		double prev = 1e18;
		for (int n = 0; n <= 7; ++n) {
			double v = best(solve(task, config(3, n)));
			CHECK(v <= prev);
			prev = v;
		}
	}
}

TEST_CASE("configuration flags do not change the front") {
	Rng rng(109);
	for (int trial = 0; trial < 6; ++trial) {
		auto data = random_dataset(rng, 8 + int(rng.below(16)), 3 + int(rng.below(2)), 2 + int(rng.below(2)));
		for (const auto& [family, task] : task_families(data, rng)) {
			const int d = 3;
			auto reference = solve(task, SolverConfig{ .max_depth = d, .use_cache = false, .use_bounds = false, .use_depth2 = false });
			for (int mask = 0; mask < 8; ++mask) {
				SolverConfig c{ .max_depth = d, .use_cache = bool(mask & 1), .use_bounds = bool(mask & 2), .use_depth2 = bool(mask & 4) };
				auto r = solve(task, c);
				CAPTURE(family);
				CAPTURE(mask);
				CHECK(same_values(r.front.entries(), reference.front.entries(), task->order()));
			}
		}
	}
}

TEST_CASE("a warm cache returns the same front") {
	Rng rng(113);
	auto data = random_dataset(rng, 30, 5, 2);
	auto task = f1_task(binary_view(data));
	Solver solver(task, config(3));
	auto cold = solver.solve();
	CHECK(solver.cache_size() > 0);
	auto warm = solver.solve();
	CHECK(same_values(cold.front.entries(), warm.front.entries(), task->order()));
	CHECK(warm.stats.recursions < cold.stats.recursions + 1);
	CHECK(warm.stats.cache_hits >= 1);
	const auto* root = solver.cached(BranchPath{}, 3, 7);
	REQUIRE(root);
	CHECK(root->status == CacheStatus::kOptimal);
	CHECK(root->lower_bound.size() == root->solutions.size());
}

TEST_CASE("recurse answers against an upper bound") {
	auto task = accuracy_task(xor_data());
	Solver solver(task, config(2));
	auto s = task->root_state();
	std::vector<SolutionValue> ub{ { 0 } };
	CHECK(solver.recurse(s, 2, 3, ub).empty());
	std::vector<SolutionValue> loose{ { 1 } };
	auto r = solver.recurse(s, 2, 3, loose);
	REQUIRE(r.size() == 1);
	CHECK(r[0].value[0] == 0);
}

TEST_CASE("a lower-bound cache entry prunes without descending") {
	Rng rng(127);
	auto data = random_dataset(rng, 20, 4, 2);
	auto task = accuracy_task(data);
	Solver solver(task, SolverConfig{ .max_depth = 3, .use_depth2 = false });
	auto s = task->root_state().branch(0, true);
	std::vector<SolutionValue> tight{ { 0 } };
	auto first = solver.recurse(s, 3, 7, tight);
	const auto* entry = solver.cached(s.path(), 3, 7);
	REQUIRE(entry);
	if (entry->status == CacheStatus::kLowerBoundOnly) {
		auto before = solver.stats().recursions;
		CHECK(solver.recurse(s, 3, 7, tight).empty());
		CHECK(solver.stats().recursions == before + 1);
	} else {
		CHECK(!first.empty());
	}
}

TEST_CASE("minimum leaf support restricts trees") {
	Rng rng(131);
	for (int trial = 0; trial < 10; ++trial) {
		auto data = random_dataset(rng, 10 + int(rng.below(10)), 3, 2);
		auto task = accuracy_task(data);
		int support = 2 + int(rng.below(3));
		SolverConfig c = config(2);
		c.min_leaf_support = support;
		auto r = solve(task, c);
		auto want = brute_force_front(*task, 2, 3, support);
		CHECK(same_values(r.front.entries(), want, task->order()));
		for (const auto& e : r.front) CHECK(tree_feasible(e.tree, task->root_state(), *task, support));
	}
	auto tiny = accuracy_task(xor_data());
	SolverConfig c = config(2);
	c.min_leaf_support = 5;
	CHECK(solve(tiny, c).infeasible());
}

TEST_CASE("time limit returns an incumbent marked not optimal") {
	Rng rng(137);
	auto data = random_dataset(rng, 400, 24, 3);
	auto task = f1_task(binary_view(data));
	SolverConfig c = config(4);
	c.time_limit = 0.05;
	c.use_depth2 = false;
	auto r = solve(task, c);
	CHECK_FALSE(r.optimal);
	CHECK_FALSE(r.front.empty());
	for (const auto& e : r.front) CHECK(task->order().equal(tree_cost(e.tree, task->root_state(), *task), e.value));
}

TEST_CASE("empty datasets are rejected") {
	auto data = make_data({}, {}, 2);
	CHECK_THROWS_AS(solve(accuracy_task(data), config(1)), ContractError);
}

namespace {

TuneObjective accuracy_objective() {
	TuneObjective o;
	o.make_task = [](DatasetPtr d) { return accuracy_task(d); };
	return o;
}

DatasetPtr replicate(const std::vector<std::vector<std::uint8_t>>& rows, const std::vector<int>& labels, int times) {
	std::vector<std::vector<std::uint8_t>> r;
	std::vector<int> l;
	for (int t = 0; t < times; ++t) {
		r.insert(r.end(), rows.begin(), rows.end());
		l.insert(l.end(), labels.begin(), labels.end());
	}
	return make_data(r, l);
}

} // namespace

TEST_CASE("node-budget tuning") {
	// label equals feature 0; feature 1 is noise
	auto separable = replicate({ { 0, 0 }, { 0, 1 }, { 1, 0 }, { 1, 1 } }, { 0, 0, 1, 1 }, 5);
	CHECK(hypertune_nodes(accuracy_objective(), separable, 2, 1) == 1);

	auto pure = replicate({ { 0, 0 }, { 0, 1 }, { 1, 0 }, { 1, 1 } }, { 1, 1, 1, 1 }, 5);
	CHECK(hypertune_nodes(accuracy_objective(), pure, 2, 1) == 0);

	auto xor_many = replicate({ { 0, 0 }, { 0, 1 }, { 1, 0 }, { 1, 1 } }, { 0, 1, 1, 0 }, 5);
	auto t = hypertune(accuracy_objective(), xor_many, 2, 1);
	CHECK(t.best_budget == 3);
	CHECK(t.mean_scores.size() == 4);
	CHECK(t.mean_scores[3] == 0.0);

	CHECK_THROWS_AS(hypertune_nodes(accuracy_objective(), xor_data(), 2, 1), ContractError);
}
