#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "septree/cli/cli.h"
#include "septree/core/errors.h"
#include "septree/oracle/oracle.h"

namespace septree::cli {

using nlohmann::json;

TaskKind parse_task_kind(const std::string& s) {
	if (s == "accuracy") return TaskKind::kAccuracy;
	if (s == "cost-sensitive" || s == "cost") return TaskKind::kCostSensitive;
	if (s == "policy") return TaskKind::kPolicy;
	if (s == "f1") return TaskKind::kF1;
	if (s == "fairness") return TaskKind::kFairness;
	throw DataError("unknown task '" + s + "' (expected accuracy, cost-sensitive, policy, f1 or fairness)");
}

std::string to_string(TaskKind k) {
	switch (k) {
	case TaskKind::kAccuracy: return "accuracy";
	case TaskKind::kCostSensitive: return "cost-sensitive";
	case TaskKind::kPolicy: return "policy";
	case TaskKind::kF1: return "f1";
	case TaskKind::kFairness: return "fairness";
	}
	return "?";
}

std::string to_string(RunStatus s) {
	switch (s) {
	case RunStatus::kOptimal: return "optimal";
	case RunStatus::kTimeout: return "timeout-incumbent";
	case RunStatus::kInfeasible: return "infeasible";
	}
	return "?";
}

int exit_code(RunStatus s) {
	switch (s) {
	case RunStatus::kOptimal: return 0;
	case RunStatus::kTimeout: return 2;
	case RunStatus::kInfeasible: return 3;
	}
	return 1;
}

void RunConfig::validate() const {
	if (max_depth < 0 || max_depth > 20) throw DataError("max_depth must be in 0..20");
	if (!(time_limit >= 0.0)) throw DataError("time_limit must be non-negative");
	if (min_leaf_support < 0) throw DataError("min_leaf_support must be non-negative");
	if (!(test_fraction >= 0.0 && test_fraction < 1.0)) throw DataError("test_fraction must be in [0, 1)");
	if (schema.bins < 2) throw DataError("bins must be at least 2");
	if (!(fairness.delta >= 0.0)) throw DataError("fairness delta must be non-negative");
	if (!(cost.misclassification_fraction >= 0.0)) throw DataError("misclassification_fraction must be non-negative");
	if (!(cost.feature_cost >= 0.0)) throw DataError("feature_cost must be non-negative");
}

ColumnSchema RunConfig::effective_schema() const {
	ColumnSchema s = schema;
	auto add = [&](const std::string& c) {
		if (std::find(s.aux_columns.begin(), s.aux_columns.end(), c) == s.aux_columns.end()) s.aux_columns.push_back(c);
	};
	if (task == TaskKind::kPolicy) {
		add(policy.outcome_column);
		add(policy.propensity_column);
		s.aux_prefixes.push_back(policy.teacher_prefix);
	}
	if (task == TaskKind::kFairness) add(fairness.sensitive_column);
	return s;
}

SolverConfig RunConfig::solver_config() const {
	SolverConfig c;
	c.max_depth = max_depth;
	c.max_nodes = max_nodes;
	c.use_cache = use_cache;
	c.use_bounds = use_bounds;
	c.use_depth2 = use_depth2;
	c.time_limit = time_limit;
	c.min_leaf_support = min_leaf_support;
	return c;
}

namespace {

template <class T>
T get(const json& j, const char* key) {
	try {
		return j.at(key).get<T>();
	} catch (const json::exception& e) {
		throw DataError(std::string("config field '") + key + "': " + e.what());
	}
}

void check_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
	if (!j.is_object()) throw DataError(where + ": expected an object");
	for (const auto& [k, v] : j.items())
		if (!known.count(k)) throw DataError(where + ": unknown key '" + k + "'");
}

} // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
	check_keys(j,
	           { "data", "label_column", "aux_columns", "aux_prefixes", "continuous_columns", "bins", "delimiter", "task", "cost",
	             "policy", "fairness", "max_depth", "max_nodes", "seed", "time_limit", "use_cache", "use_bounds", "use_depth2",
	             "min_leaf_support", "test_fraction", "output" },
	           "config");
	if (j.contains("data")) c.data_path = get<std::string>(j, "data");
	if (j.contains("label_column")) c.schema.label_column = get<std::string>(j, "label_column");
	if (j.contains("aux_columns")) c.schema.aux_columns = get<std::vector<std::string>>(j, "aux_columns");
	if (j.contains("aux_prefixes")) c.schema.aux_prefixes = get<std::vector<std::string>>(j, "aux_prefixes");
	if (j.contains("continuous_columns")) c.schema.continuous_columns = get<std::vector<std::string>>(j, "continuous_columns");
	if (j.contains("bins")) c.schema.bins = get<int>(j, "bins");
	if (j.contains("delimiter")) {
		auto d = get<std::string>(j, "delimiter");
		if (d.size() != 1) throw DataError("config field 'delimiter' must be one character");
		c.schema.delimiter = d[0];
	}
	if (j.contains("task")) c.task = parse_task_kind(get<std::string>(j, "task"));
	if (j.contains("cost")) {
		const auto& k = j.at("cost");
		check_keys(k,
		           { "misclassification", "misclassification_fraction", "feature_costs", "feature_cost", "discounted_costs",
		             "groups" },
		           "config.cost");
		if (k.contains("misclassification")) c.cost.misclassification = get<std::vector<std::vector<double>>>(k, "misclassification");
		if (k.contains("misclassification_fraction")) c.cost.misclassification_fraction = get<double>(k, "misclassification_fraction");
		if (k.contains("feature_costs")) c.cost.feature_costs = get<std::vector<double>>(k, "feature_costs");
		if (k.contains("feature_cost")) c.cost.feature_cost = get<double>(k, "feature_cost");
		if (k.contains("discounted_costs")) c.cost.discounted_costs = get<std::vector<double>>(k, "discounted_costs");
		if (k.contains("groups")) c.cost.groups = get<std::vector<int>>(k, "groups");
	}
	if (j.contains("policy")) {
		const auto& p = j.at("policy");
		check_keys(p, { "method", "outcome_column", "propensity_column", "teacher_prefix" }, "config.policy");
		if (p.contains("method")) c.policy.method = parse_policy_method(get<std::string>(p, "method"));
		if (p.contains("outcome_column")) c.policy.outcome_column = get<std::string>(p, "outcome_column");
		if (p.contains("propensity_column")) c.policy.propensity_column = get<std::string>(p, "propensity_column");
		if (p.contains("teacher_prefix")) c.policy.teacher_prefix = get<std::string>(p, "teacher_prefix");
	}
	if (j.contains("fairness")) {
		const auto& f = j.at("fairness");
		check_keys(f, { "sensitive_column", "delta", "mode" }, "config.fairness");
		if (f.contains("sensitive_column")) c.fairness.sensitive_column = get<std::string>(f, "sensitive_column");
		if (f.contains("delta")) c.fairness.delta = get<double>(f, "delta");
		if (f.contains("mode")) c.fairness.mode = parse_fairness_mode(get<std::string>(f, "mode"));
	}
	if (j.contains("max_depth")) c.max_depth = get<int>(j, "max_depth");
	if (j.contains("max_nodes")) {
		if (j.at("max_nodes").is_string()) {
			if (j.at("max_nodes").get<std::string>() != "tune") throw DataError("config field 'max_nodes': expected an integer or \"tune\"");
			c.tune = true;
		} else {
			c.max_nodes = get<int>(j, "max_nodes");
			c.tune = false;
		}
	}
	if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
	if (j.contains("time_limit")) c.time_limit = get<double>(j, "time_limit");
	if (j.contains("use_cache")) c.use_cache = get<bool>(j, "use_cache");
	if (j.contains("use_bounds")) c.use_bounds = get<bool>(j, "use_bounds");
	if (j.contains("use_depth2")) c.use_depth2 = get<bool>(j, "use_depth2");
	if (j.contains("min_leaf_support")) c.min_leaf_support = get<int>(j, "min_leaf_support");
	if (j.contains("test_fraction")) c.test_fraction = get<double>(j, "test_fraction");
	if (j.contains("output")) c.output = get<std::string>(j, "output");
	return c;
}

json config_to_json(const RunConfig& c) {
	json j;
	j["data"] = c.data_path;
	j["label_column"] = c.schema.label_column;
	j["aux_columns"] = c.schema.aux_columns;
	j["aux_prefixes"] = c.schema.aux_prefixes;
	j["continuous_columns"] = c.schema.continuous_columns;
	j["bins"] = c.schema.bins;
	j["delimiter"] = std::string(1, c.schema.delimiter);
	j["task"] = to_string(c.task);
	if (c.task == TaskKind::kCostSensitive) {
		j["cost"] = { { "misclassification", c.cost.misclassification },
			          { "misclassification_fraction", c.cost.misclassification_fraction },
			          { "feature_costs", c.cost.feature_costs },
			          { "feature_cost", c.cost.feature_cost },
			          { "discounted_costs", c.cost.discounted_costs },
			          { "groups", c.cost.groups } };
	}
	if (c.task == TaskKind::kPolicy) {
		j["policy"] = { { "method", to_string(c.policy.method) },
			            { "outcome_column", c.policy.outcome_column },
			            { "propensity_column", c.policy.propensity_column },
			            { "teacher_prefix", c.policy.teacher_prefix } };
	}
	if (c.task == TaskKind::kFairness) {
		j["fairness"] = { { "sensitive_column", c.fairness.sensitive_column },
			              { "delta", c.fairness.delta },
			              { "mode", to_string(c.fairness.mode) } };
	}
	j["max_depth"] = c.max_depth;
	if (c.tune) j["max_nodes"] = "tune";
	else j["max_nodes"] = c.max_nodes;
	j["seed"] = c.seed;
	j["time_limit"] = c.time_limit;
	j["use_cache"] = c.use_cache;
	j["use_bounds"] = c.use_bounds;
	j["use_depth2"] = c.use_depth2;
	j["min_leaf_support"] = c.min_leaf_support;
	j["test_fraction"] = c.test_fraction;
	j["output"] = c.output;
	return j;
}

namespace {

CostSpec cost_spec(const RunConfig& config, const Dataset& data) {
	CostSpec spec;
	spec.feature_costs = config.cost.feature_costs;
	if (spec.feature_costs.empty()) spec.feature_costs.assign(std::size_t(data.feature_count()), config.cost.feature_cost);
	spec.misclassification = config.cost.misclassification;
	if (spec.misclassification.empty())
		spec.misclassification =
			frequency_scaled_costs(data, spec.total_feature_cost(), config.cost.misclassification_fraction);
	spec.discounted_costs = config.cost.discounted_costs;
	spec.groups = config.cost.groups;
	spec.validate(data.feature_count(), data.label_count());
	return spec;
}

// Fixes data-dependent cost parameters from the training data.
RunConfig resolve(RunConfig config, const Dataset& train) {
	if (config.task == TaskKind::kCostSensitive) {
		auto spec = cost_spec(config, train);
		config.cost.misclassification = spec.misclassification;
		config.cost.feature_costs = spec.feature_costs;
	}
	return config;
}

} // namespace

TaskPtr make_task(const RunConfig& config, DatasetPtr data) {
	switch (config.task) {
	case TaskKind::kAccuracy: return accuracy_task(data);
	case TaskKind::kCostSensitive: return cost_sensitive_task(data, cost_spec(config, *data));
	case TaskKind::kPolicy: return policy_task(data, config.policy);
	case TaskKind::kF1: return f1_task(data);
	case TaskKind::kFairness: return fairness_task(data, config.fairness);
	}
	throw ContractError("make_task: unknown task");
}

json evaluate(const Tree& tree, const Dataset& data, const RunConfig& config) {
	if (tree.max_feature() >= data.feature_count())
		throw DataError("tree uses feature " + std::to_string(tree.max_feature()) + " but the dataset has " +
		                std::to_string(data.feature_count()) + " features");
	json m;
	const std::size_t N = data.size();
	std::size_t correct = 0, tp = 0, fp = 0, fn = 0;
	for (std::size_t r = 0; r < N; ++r) {
		int p = tree.predict(data, int(r));
		int y = data.label(int(r));
		if (p == y) ++correct;
		if (p == 1 && y == 1) ++tp;
		if (p == 1 && y != 1) ++fp;
		if (p != 1 && y == 1) ++fn;
	}
	m["instances"] = N;
	m["misclassifications"] = N - correct;
	m["accuracy"] = N ? double(correct) / double(N) : 0.0;
	if (data.label_count() == 2) {
		double f1 = f1_score(double(tp), double(fp), double(fn));
		m["tp"] = tp;
		m["fp"] = fp;
		m["fn"] = fn;
		m["f1"] = std::isnan(f1) ? json(nullptr) : json(f1);
	}
	if (config.task == TaskKind::kCostSensitive) {
		auto spec = cost_spec(config, data);
		auto ptr = std::make_shared<const Dataset>(data);
		auto task = cost_sensitive_task(ptr, spec);
		double total = tree_cost(tree, task->root_state(), *task)[0];
		double standard = standard_cost(data, spec);
		m["cost"] = total;
		m["normalized_cost"] = (N && standard > 0.0) ? json(total / double(N) / standard) : json(nullptr);
	}
	if (config.task == TaskKind::kPolicy) m["policy_value"] = policy_value(tree, data, config.policy);
	if (config.task == TaskKind::kFairness) {
		try {
			m["discrimination"] = discrimination(tree, data, config.fairness);
		} catch (const DataError&) {
			m["discrimination"] = nullptr;
		}
	}
	return m;
}

namespace {

struct Splits {
	DatasetPtr train;
	DatasetPtr test;
};

Splits split_table(const RunConfig& config, const Table& table) {
	if (config.test_fraction <= 0.0) return { table.data, nullptr };
	auto [tr, te] = split_rows(table.data->size(), config.test_fraction, config.seed);
	return { std::make_shared<const Dataset>(table.data->subset(tr)), std::make_shared<const Dataset>(table.data->subset(te)) };
}

std::size_t select_entry(const RunConfig& config, const ParetoFront& front, const Dataset& train) {
	if (front.empty() || config.task != TaskKind::kF1) return 0;
	try {
		return f1_from_front(front, train.label_counts()[1]).index;
	} catch (const ContractError&) {
		return 0;
	}
}

TuneObjective tune_objective(const RunConfig& config) {
	TuneObjective obj;
	obj.make_task = [config](DatasetPtr d) { return make_task(config, std::move(d)); };
	if (config.task == TaskKind::kF1) {
		obj.select = [config](const ParetoFront& front, const OptimizationTask& task) -> std::optional<Tree> {
			if (front.empty()) return std::nullopt;
			return front[select_entry(config, front, task.data())].tree;
		};
		obj.score = [config](const Tree& tree, const DatasetPtr& valid) {
			auto f1 = evaluate(tree, *valid, config)["f1"];
			return f1.is_null() ? 0.0 : -f1.get<double>();
		};
	} else if (config.task == TaskKind::kFairness) {
		obj.score = [](const Tree& tree, const DatasetPtr& valid) {
			std::size_t wrong = 0;
			for (std::size_t r = 0; r < valid->size(); ++r)
				if (tree.predict(*valid, int(r)) != valid->label(int(r))) ++wrong;
			return double(wrong);
		};
	}
	return obj;
}

json tuning_json(const TuneResult& t) { return { { "best_budget", t.best_budget }, { "mean_scores", t.mean_scores } }; }

RunReport build_report(const RunConfig& config, const Table& table, const Splits& splits, const SolveResult& result,
                       const SolverConfig& solver, const json& tuning) {
	RunReport rep;
	rep.status = !result.optimal ? RunStatus::kTimeout : result.front.empty() ? RunStatus::kInfeasible : RunStatus::kOptimal;
	std::size_t selected = select_entry(config, result.front, *splits.train);
	json& d = rep.document;
	d["status"] = to_string(rep.status);
	d["task"] = to_string(config.task);
	d["config"] = config_to_json(config);
	auto norm = solver.normalized();
	d["max_depth"] = norm.max_depth;
	d["max_nodes"] = norm.max_nodes;
	if (!tuning.is_null()) d["tuning"] = tuning;
	d["features"] = table.feature_names;
	d["train_size"] = splits.train->size();
	d["test_size"] = splits.test ? splits.test->size() : 0;
	d["search"] = { { "recursions", result.stats.recursions },
		            { "cache_entries", result.stats.cache_entries },
		            { "cache_hits", result.stats.cache_hits },
		            { "lb_prunes", result.stats.lb_prunes },
		            { "depth2_calls", result.stats.depth2_calls },
		            { "similarity_bounds", result.stats.similarity_bounds } };
	d["timing"] = { { "seconds", result.stats.seconds } };
	json front = json::array();
	for (std::size_t i = 0; i < result.front.size(); ++i) {
		const auto& e = result.front[i];
		json entry;
		entry["value"] = std::vector<double>(e.value.components().begin(), e.value.components().end());
		entry["nodes"] = e.tree.branch_count();
		entry["depth"] = e.tree.depth();
		entry["tree"] = json::parse(e.tree.serialize());
		entry["metrics"]["train"] = evaluate(e.tree, *splits.train, config);
		if (splits.test) entry["metrics"]["test"] = evaluate(e.tree, *splits.test, config);
		entry["selected"] = i == selected;
		front.push_back(std::move(entry));
	}
	d["front"] = std::move(front);
	if (!result.front.empty()) {
		d["selected"] = selected;
		rep.rendering = result.front[selected].tree.render(table.feature_names);
	} else {
		d["selected"] = nullptr;
	}
	return rep;
}

} // namespace

RunReport run(const RunConfig& config) {
	if (config.data_path.empty()) throw DataError("no dataset given");
	return run(config, ingest(config.data_path, config.effective_schema()));
}

RunReport run(const RunConfig& raw, const Table& table) {
	raw.validate();
	auto splits = split_table(raw, table);
	RunConfig config = resolve(raw, *splits.train);
	SolverConfig solver = config.solver_config();
	json tuning;
	if (config.tune) {
		if (splits.train->size() < 10) throw DataError("node-budget tuning needs at least 10 training rows");
		auto t = hypertune(tune_objective(config), splits.train, config.max_depth, config.seed, solver);
		solver.max_nodes = t.best_budget;
		tuning = tuning_json(t);
	}
	auto task = make_task(config, splits.train);
	auto result = Solver(task, solver).solve();
	return build_report(config, table, splits, result, solver, tuning);
}

json tune(const RunConfig& raw, const Table& table) {
	raw.validate();
	auto splits = split_table(raw, table);
	RunConfig config = resolve(raw, *splits.train);
	if (splits.train->size() < 10) throw DataError("node-budget tuning needs at least 10 training rows");
	auto t = hypertune(tune_objective(config), splits.train, config.max_depth, config.seed, config.solver_config());
	return tuning_json(t);
}

RunReport oracle(const RunConfig& raw, const Table& table) {
	raw.validate();
	auto splits = split_table(raw, table);
	RunConfig config = resolve(raw, *splits.train);
	SolverConfig solver = config.solver_config().normalized();
	auto task = make_task(config, splits.train);
	SolveResult result;
	auto start = std::chrono::steady_clock::now();
	result.front = ParetoFront::from_entries(
		brute_force_front(*task, solver.max_depth, solver.max_nodes, solver.min_leaf_support), task->order());
	result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return build_report(config, table, splits, result, solver, json());
}

Tree load_tree(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw DataError("cannot open '" + path + "'");
	std::stringstream ss;
	ss << in.rdbuf();
	json j;
	try {
		j = json::parse(ss.str());
	} catch (const json::exception& e) {
		throw DataError(path + ": " + e.what());
	}
	if (j.is_object() && j.contains("front")) {
		const auto& front = j.at("front");
		if (!front.is_array() || front.empty()) throw DataError(path + ": report has no trees");
		std::size_t idx = j.contains("selected") && j.at("selected").is_number_unsigned() ? j.at("selected").get<std::size_t>() : 0;
		if (idx >= front.size()) throw DataError(path + ": selected entry out of range");
		return Tree::parse(front.at(idx).at("tree").dump());
	}
	return Tree::parse(j.dump());
}

} // namespace septree::cli
