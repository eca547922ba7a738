#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "septree/cli/cli.h"
#include "septree/core/errors.h"

using namespace septree;
using nlohmann::json;

namespace {

// Reads --config ahead of flag parsing; flags override its fields.
cli::RunConfig initial_config(int argc, char** argv) {
	std::string path;
	for (int i = 1; i < argc; ++i) {
		if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) path = argv[i + 1];
		else if (std::strncmp(argv[i], "--config=", 9) == 0) path = argv[i] + 9;
	}
	if (path.empty()) return {};
	std::ifstream in(path);
	if (!in) throw DataError("cannot open config '" + path + "'");
	json j;
	try {
		j = json::parse(in);
	} catch (const json::exception& e) {
		throw DataError("config '" + path + "': " + e.what());
	}
	return cli::config_from_json(j);
}

void add_run_options(CLI::App& app, cli::RunConfig& c, std::string& task, std::string& max_nodes, std::string& policy_method,
                     std::string& fairness_mode, std::string& delimiter, std::string& config_path) {
	app.add_option("--config", config_path, "JSON run configuration; flags override its fields");
	app.add_option("--data", c.data_path, "Dataset file with a header row");
	app.add_option("--label-column", c.schema.label_column, "Name of the label column");
	app.add_option("--aux", c.schema.aux_columns, "Extra float columns to keep beside the features");
	app.add_option("--aux-prefix", c.schema.aux_prefixes, "Columns with this prefix are kept as float columns");
	app.add_option("--continuous", c.schema.continuous_columns, "Continuous columns to bin into threshold features");
	app.add_option("--bins", c.schema.bins, "Equal-frequency bins per continuous column");
	app.add_option("--delimiter", delimiter, "Field delimiter");
	app.add_option("--task", task, "accuracy, cost-sensitive, policy, f1 or fairness");
	app.add_option("--max-depth,-d", c.max_depth, "Maximum tree depth");
	app.add_option("--max-nodes,-n", max_nodes, "Branching-node budget, or 'tune'");
	app.add_option("--seed", c.seed, "Seed for splitting and tuning");
	app.add_option("--time-limit", c.time_limit, "Seconds before returning the best trees found (0 = none)");
	app.add_flag("--cache,!--no-cache", c.use_cache, "Memoize subproblems");
	app.add_flag("--bounds,!--no-bounds", c.use_bounds, "Prune with upper and lower bounds");
	app.add_flag("--depth2,!--no-depth2", c.use_depth2, "Use the depth-two solver");
	app.add_option("--min-leaf-support", c.min_leaf_support, "Minimum instances per leaf");
	app.add_option("--test-fraction", c.test_fraction, "Fraction of rows held out for testing");
	app.add_option("--output,-o", c.output, "Write the JSON report here instead of stdout");
	app.add_option("--feature-cost", c.cost.feature_cost, "Cost of every feature (cost-sensitive)");
	app.add_option("--misclassification-fraction", c.cost.misclassification_fraction,
	               "Scale of the frequency-based misclassification costs (cost-sensitive)");
	app.add_option("--policy-method", policy_method, "dm, ipw or dr (policy)");
	app.add_option("--outcome-column", c.policy.outcome_column, "Observed outcome column (policy)");
	app.add_option("--propensity-column", c.policy.propensity_column, "Propensity column (policy)");
	app.add_option("--teacher-prefix", c.policy.teacher_prefix, "Prefix of teacher prediction columns (policy)");
	app.add_option("--sensitive-column", c.fairness.sensitive_column, "Sensitive group column (fairness)");
	app.add_option("--delta", c.fairness.delta, "Allowed discrimination (fairness)");
	app.add_option("--fairness-mode", fairness_mode, "demographic-parity or equal-opportunity (fairness)");
}

void finish_config(cli::RunConfig& c, const std::string& task, const std::string& max_nodes, const std::string& policy_method,
                   const std::string& fairness_mode, const std::string& delimiter) {
	if (!task.empty()) c.task = cli::parse_task_kind(task);
	if (!max_nodes.empty()) {
		if (max_nodes == "tune") {
			c.tune = true;
		} else {
			try {
				std::size_t used = 0;
				c.max_nodes = std::stoi(max_nodes, &used);
				if (used != max_nodes.size()) throw std::invalid_argument(max_nodes);
				c.tune = false;
			} catch (const std::logic_error&) {
				throw DataError("--max-nodes expects an integer or 'tune', got '" + max_nodes + "'");
			}
		}
	}
	if (!policy_method.empty()) c.policy.method = parse_policy_method(policy_method);
	if (!fairness_mode.empty()) c.fairness.mode = parse_fairness_mode(fairness_mode);
	if (!delimiter.empty()) {
		if (delimiter == "\\t" || delimiter == "tab") c.schema.delimiter = '\t';
		else if (delimiter.size() == 1) c.schema.delimiter = delimiter[0];
		else throw DataError("--delimiter expects one character");
	}
	c.validate();
}

void emit(const json& doc, const std::string& output) {
	if (output.empty()) {
		std::cout << doc.dump(2) << '\n';
		return;
	}
	std::ofstream out(output);
	if (!out) throw DataError("cannot write '" + output + "'");
	out << doc.dump(2) << '\n';
}

int report(const cli::RunReport& rep, const std::string& output) {
	emit(rep.document, output);
	std::ostream& human = output.empty() ? std::cerr : std::cout;
	human << "status: " << cli::to_string(rep.status) << ", " << rep.document["front"].size() << " front entries\n";
	if (!rep.rendering.empty()) human << rep.rendering;
	return cli::exit_code(rep.status);
}

cli::Table load(const cli::RunConfig& c) {
	if (c.data_path.empty()) throw DataError("no dataset given (--data)");
	return cli::ingest(c.data_path, c.effective_schema());
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{ "Optimal decision trees for separable objectives" };
	app.require_subcommand(1);
	cli::RunConfig config;
	try {
		config = initial_config(argc, argv);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	std::string task, max_nodes, policy_method, fairness_mode, delimiter, config_path, tree_path;

	auto* solve = app.add_subcommand("solve", "Find the optimal tree or Pareto front");
	auto* evaluate = app.add_subcommand("evaluate", "Recompute metrics of a saved tree on a dataset");
	auto* tune = app.add_subcommand("tune", "Pick a node budget by repeated hold-out validation");
	auto* oracle = app.add_subcommand("oracle", "Exhaustive search (small inputs only)");
	for (auto* sub : { solve, evaluate, tune, oracle })
		add_run_options(*sub, config, task, max_nodes, policy_method, fairness_mode, delimiter, config_path);
	evaluate->add_option("--tree", tree_path, "Tree or run report to evaluate")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e) == 0 ? 0 : 1;
	}

	try {
		finish_config(config, task, max_nodes, policy_method, fairness_mode, delimiter);
		if (solve->parsed()) return report(cli::run(config, load(config)), config.output);
		if (oracle->parsed()) return report(cli::oracle(config, load(config)), config.output);
		if (tune->parsed()) {
			emit(cli::tune(config, load(config)), config.output);
			return 0;
		}
		if (evaluate->parsed()) {
			auto table = load(config);
			auto tree = cli::load_tree(tree_path);
			json doc = { { "tree", json::parse(tree.serialize()) }, { "metrics", cli::evaluate(tree, *table.data, config) } };
			emit(doc, config.output);
			return 0;
		}
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 1;
}
