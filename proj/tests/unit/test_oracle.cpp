#include <doctest.h>

#include <set>

#include "septree/oracle/oracle.h"
#include "support.h"

using namespace septree;
using namespace septree::testing;

TEST_CASE("tree counts") {
	CHECK(count_trees(3, 2, 0, 0) == 2);
	CHECK(count_trees(2, 2, 1, 1) == 10);
	CHECK(count_trees(2, 2, 2, 3) == 202);
	CHECK(count_trees_exact(2, 2, 2, 1) == 8);
	CHECK(count_trees_exact(2, 2, 1, 2) == 0);
	CHECK(count_trees(2, 2, 3, 7) > count_trees(2, 2, 2, 3));
	CHECK(count_trees(1000, 10, 20, 1000) == UINT64_MAX);
}

TEST_CASE("enumeration visits every counted tree once") {
	for (int F = 1; F <= 3; ++F)
		for (int K = 1; K <= 2; ++K)
			for (int d = 0; d <= 3; ++d)
				for (int n = 0; n <= std::min(4, (1 << d) - 1); ++n) {
					std::set<std::string> seen;
					std::uint64_t visits = 0;
					int last_nodes = 0;
					bool ordered = true;
					enumerate_trees(F, K, d, n, [&](const Tree& t) {
						++visits;
						seen.insert(t.serialize());
						if (t.branch_count() < last_nodes) ordered = false;
						last_nodes = t.branch_count();
						CHECK(t.depth() <= d);
						CHECK(t.branch_count() <= n);
					});
					CAPTURE(F);
					CAPTURE(K);
					CAPTURE(d);
					CAPTURE(n);
					CHECK(visits == count_trees(F, K, d, n));
					CHECK(seen.size() == visits);
					CHECK(ordered);
				}
}

TEST_CASE("enumeration limit reports the count") {
	try {
		enumerate_trees(4, 2, 3, 7, [](const Tree&) {}, 1000);
		FAIL("expected EnumerationLimitError");
	} catch (const EnumerationLimitError& e) {
		CHECK(e.count() == count_trees(4, 2, 3, 7));
		CHECK(std::string(e.what()).find(std::to_string(e.count())) != std::string::npos);
	}
	auto task = accuracy_task(xor_data());
	CHECK_THROWS_AS(brute_force_front(*task, 3, 7, 0, 10), EnumerationLimitError);
}

TEST_CASE("exhaustive front on XOR") {
	auto task = accuracy_task(xor_data());
	auto front = brute_force_front(*task, 2, 3);
	REQUIRE(front.size() == 1);
	CHECK(front[0].value[0] == 0);
	CHECK(brute_force_front(*task, 1, 1)[0].value[0] == 2);
	CHECK(brute_force_front(*task, 0, 0)[0].value[0] == 2);
}

TEST_CASE("value-set search agrees with full enumeration") {
	Rng rng(211);
	for (int trial = 0; trial < 8; ++trial) {
		auto data = random_dataset(rng, 4 + int(rng.below(10)), 2 + int(rng.below(2)), 2);
		for (const auto& [family, task] : task_families(data, rng)) {
			for (int d = 0; d <= 2; ++d)
				for (int n = 0; n <= (1 << d) - 1; ++n) {
					CAPTURE(family);
					CAPTURE(d);
					CAPTURE(n);
					auto fast = brute_force_front(*task, d, n);
					auto slow = naive_front(*task, d, n);
					CHECK_MESSAGE(same_values(fast, slow, task->order()), (describe(fast) + " vs " + describe(slow)));
					for (const auto& e : fast) CHECK(task->order().equal(tree_cost(e.tree, task->root_state(), *task), e.value));
				}
		}
	}
}

TEST_CASE("exhaustive front with leaf support") {
	Rng rng(223);
	for (int trial = 0; trial < 10; ++trial) {
		auto data = random_dataset(rng, 6 + int(rng.below(8)), 2, 2);
		auto task = accuracy_task(data);
		int support = 1 + int(rng.below(4));
		auto fast = brute_force_front(*task, 2, 3, support);
		auto slow = naive_front(*task, 2, 3, support);
		CHECK(same_values(fast, slow, task->order()));
	}
}
