#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "septree/cli/cli.h"
#include "septree/core/errors.h"

using namespace septree;
using namespace septree::cli;

namespace {

Table read(const std::string& text, ColumnSchema schema = {}) {
	std::istringstream in(text);
	return ingest(in, schema, "test.csv");
}

const char* kXor = "x0,x1,label\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n";

std::string error_of(const std::function<void()>& f) {
	try {
		f();
	} catch (const DataError& e) {
		return e.what();
	}
	return "";
}

std::string temp_path(const std::string& name) { return std::string(SEPTREE_TEST_WORK) + "/" + name; }

} // namespace

TEST_CASE("ingest a binary table") {
	auto t = read(kXor);
	CHECK(t.data->size() == 4);
	CHECK(t.data->feature_count() == 2);
	CHECK(t.feature_names == std::vector<std::string>{ "x0", "x1" });
	CHECK(t.data->label(1) == 1);
	CHECK(t.data->label_count() == 2);
}

TEST_CASE("ingest errors name the row and column") {
	auto msg = error_of([] { read("x0,x1,label\n0,0,0\n0,2,1\n"); });
	CHECK(msg.find("row 2") != std::string::npos);
	CHECK(msg.find("'x1'") != std::string::npos);
	CHECK(error_of([] { read("x0,label\n0\n"); }).find("row 1") != std::string::npos);
	CHECK(error_of([] { read("x0,x1\n0,1\n"); }).find("missing column 'label'") != std::string::npos);
	CHECK(error_of([] { read(""); }).find("empty") != std::string::npos);
	CHECK(error_of([] { read("x0,label\n"); }).find("no data rows") != std::string::npos);
	CHECK(error_of([] { read("x0,label\n1,-1\n"); }).find("label") != std::string::npos);
	CHECK(error_of([] { ingest("/nonexistent/file.csv", ColumnSchema{}); }).find("cannot open") != std::string::npos);
}

TEST_CASE("aux columns and prefixes") {
	ColumnSchema s;
	s.aux_columns = { "w" };
	s.aux_prefixes = { "v_" };
	auto t = read("a,w,v_0,label\n1,0.5,2,1\n0,1.5,3,0\n", s);
	CHECK(t.data->feature_count() == 1);
	CHECK(t.data->column("w")[1] == 1.5);
	CHECK(t.data->column("v_0")[0] == 2);
}

TEST_CASE("continuous columns become threshold features") {
	CHECK(equal_frequency_thresholds({ 4, 3, 2, 1 }, 2) == std::vector<double>{ 3 });
	std::string text = "v,label\n";
	for (int i = 0; i < 20; ++i) text += std::to_string(i) + "," + std::to_string(i % 2) + "\n";
	ColumnSchema s;
	s.continuous_columns = { "v" };
	auto t = read(text, s);
	CHECK(t.data->feature_count() == 9);
	CHECK(t.feature_names[0] == "v>=2");
	// value 5 passes thresholds 2 and 4 only
	CHECK(t.data->feature(5, 0));
	CHECK(t.data->feature(5, 1));
	CHECK_FALSE(t.data->feature(5, 2));
}

TEST_CASE("seeded splits") {
	auto [a, b] = split_rows(10, 0.3, 7);
	CHECK(a.size() == 7);
	CHECK(b.size() == 3);
	auto [c, d] = split_rows(10, 0.3, 7);
	CHECK(a == c);
	CHECK(b == d);
	CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("config JSON round trip") {
	RunConfig c;
	c.task = TaskKind::kFairness;
	c.fairness.delta = 0.2;
	c.max_depth = 2;
	c.tune = true;
	c.seed = 9;
	c.use_bounds = false;
	auto j = config_to_json(c);
	auto back = config_from_json(j);
	CHECK(config_to_json(back) == j);
	CHECK(back.tune);
	CHECK(back.fairness.delta == 0.2);
	CHECK_THROWS_AS(config_from_json(nlohmann::json{ { "depth", 2 } }), DataError);
	CHECK_THROWS_AS(config_from_json(nlohmann::json{ { "task", "nope" } }), DataError);
	CHECK_THROWS_AS(config_from_json(nlohmann::json{ { "max_nodes", "all" } }), DataError);
	CHECK_THROWS_AS(config_from_json(nlohmann::json{ { "max_depth", "two" } }), DataError);
}

TEST_CASE("run on XOR finds the exact tree") {
	RunConfig c;
	c.max_depth = 2;
	auto rep = run(c, read(kXor));
	CHECK(rep.status == RunStatus::kOptimal);
	CHECK(exit_code(rep.status) == 0);
	const auto& d = rep.document;
	CHECK(d["status"] == "optimal");
	CHECK(d["front"].size() == 1);
	CHECK(d["front"][0]["metrics"]["train"]["accuracy"] == 1.0);
	CHECK(d["front"][0]["selected"] == true);
	CHECK(rep.rendering.find("x0") != std::string::npos);
}

TEST_CASE("runs are deterministic apart from timing") {
	RunConfig c;
	c.task = TaskKind::kF1;
	c.test_fraction = 0.25;
	c.seed = 3;
	std::string text = "a,b,c,label\n";
	for (int i = 0; i < 32; ++i) text += std::to_string(i % 2) + "," + std::to_string((i / 2) % 2) + "," + std::to_string((i / 4) % 2) + "," + std::to_string((i * 7 / 5) % 2) + "\n";
	auto t = read(text);
	auto a = run(c, t).document;
	auto b = run(c, t).document;
	a.erase("timing");
	b.erase("timing");
	CHECK(a == b);
	CHECK(a["test_size"] == 8);
	int selected = 0;
	for (const auto& e : a["front"]) selected += e["selected"].get<bool>();
	CHECK(selected == 1);
	CHECK(a["front"][a["selected"].get<std::size_t>()]["selected"] == true);
}

TEST_CASE("fairness runs respect the bound") {
	RunConfig c;
	c.task = TaskKind::kFairness;
	c.fairness.delta = 0.1;
	c.max_depth = 2;
	auto t = ingest(std::string(SEPTREE_TEST_DATA) + "/fair.csv", c.effective_schema());
	auto rep = run(c, t);
	REQUIRE(rep.status == RunStatus::kOptimal);
	for (const auto& e : rep.document["front"]) CHECK(e["metrics"]["train"]["discrimination"].get<double>() <= 0.1 + 1e-9);
}

TEST_CASE("policy and cost-sensitive runs report their metrics") {
	RunConfig p;
	p.task = TaskKind::kPolicy;
	p.max_depth = 1;
	auto pt = ingest(std::string(SEPTREE_TEST_DATA) + "/policy.csv", p.effective_schema());
	auto rp = run(p, pt);
	CHECK(rp.document["front"][0]["metrics"]["train"].contains("policy_value"));

	RunConfig c;
	c.task = TaskKind::kCostSensitive;
	c.max_depth = 2;
	auto rc = run(c, read(kXor));
	CHECK(rc.document["front"][0]["metrics"]["train"].contains("normalized_cost"));
}

TEST_CASE("evaluate metrics") {
	auto t = read(kXor);
	RunConfig c;
	auto stump = Tree::branch(0, Tree::leaf(0), Tree::leaf(1));
	auto m = evaluate(stump, *t.data, c);
	CHECK(m["accuracy"] == 0.5);
	CHECK(m["misclassifications"] == 2);
	CHECK(m["tp"] == 1);
	CHECK(m["fp"] == 1);
	CHECK(m["fn"] == 1);
	CHECK(m["f1"].get<double>() == doctest::Approx(0.5));
	CHECK(evaluate(Tree::leaf(0), *t.data, c)["f1"] == 0.0);
	// no positives and none predicted: undefined
	auto negatives = read("x0,label\n0,0\n1,0\n");
	CHECK(evaluate(Tree::leaf(0), *negatives.data, c)["f1"].is_null());
	CHECK_THROWS_AS(evaluate(Tree::branch(5, Tree::leaf(0), Tree::leaf(1)), *t.data, c), DataError);
}

TEST_CASE("infeasible runs have exit code 3") {
	RunConfig c;
	c.max_depth = 2;
	c.min_leaf_support = 5;
	auto rep = run(c, read(kXor));
	CHECK(rep.status == RunStatus::kInfeasible);
	CHECK(exit_code(rep.status) == 3);
	CHECK(rep.document["selected"].is_null());
	CHECK(exit_code(RunStatus::kTimeout) == 2);
}

TEST_CASE("oracle and tuning entry points") {
	RunConfig c;
	c.max_depth = 2;
	auto t = read(kXor);
	auto o = oracle(c, t);
	CHECK(o.document["front"][0]["value"][0] == 0);
	std::string text = "a,b,label\n";
	for (int i = 0; i < 20; ++i) text += std::to_string(i % 2) + "," + std::to_string((i / 2) % 2) + "," + std::to_string(i % 2) + "\n";
	auto tuned = tune(c, read(text));
	CHECK(tuned["best_budget"] == 1);
	CHECK_THROWS_AS(tune(c, t), DataError);
}

TEST_CASE("load_tree reads reports and bare trees") {
	RunConfig c;
	c.max_depth = 2;
	auto rep = run(c, read(kXor));
	auto report_path = temp_path("report.json");
	std::ofstream(report_path) << rep.document.dump();
	auto tree = load_tree(report_path);
	CHECK(tree.serialize() == rep.document["front"][0]["tree"].dump());
	auto tree_path = temp_path("tree.json");
	std::ofstream(tree_path) << tree.serialize();
	CHECK(load_tree(tree_path) == tree);
	std::ofstream(tree_path) << "garbage";
	CHECK_THROWS_AS(load_tree(tree_path), DataError);
	CHECK_THROWS_AS(load_tree(temp_path("missing.json")), DataError);
	std::remove(report_path.c_str());
	std::remove(tree_path.c_str());
}
