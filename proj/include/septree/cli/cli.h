#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "septree/core/dataset.h"
#include "septree/core/tree.h"
#include "septree/solver/solver.h"
#include "septree/tasks/tasks.h"

namespace septree::cli {

// ---------------------------------------------------------------------------
// Ingestion

struct ColumnSchema {
	std::string label_column = "label";
	/// Float columns kept beside the features (teacher scores, groups, ...).
	std::vector<std::string> aux_columns;
	/// Every column starting with one of these prefixes is an aux column.
	std::vector<std::string> aux_prefixes;
	/// Continuous columns turned into bins - 1 threshold features.
	std::vector<std::string> continuous_columns;
	int bins = 10;
	char delimiter = ',';
};

struct Table {
	DatasetPtr data;
	std::vector<std::string> feature_names;
};

/// Reads delimiter-separated text with a header row. Feature columns hold
/// only 0/1, the label column non-negative integers. Throws DataError naming
/// the row (1-based, header excluded) and column of a bad cell.
Table ingest(const std::string& path, const ColumnSchema& schema);
Table ingest(std::istream& in, const ColumnSchema& schema, const std::string& source = "<input>");

/// Equal-frequency cut points: sorted[floor(i N / bins)] for i = 1 .. bins-1.
/// A value v maps to feature i when v >= threshold i.
std::vector<double> equal_frequency_thresholds(std::vector<double> values, int bins);

/// Seeded uniform split; returns (train rows, test rows), both ascending.
std::pair<std::vector<int>, std::vector<int>> split_rows(std::size_t n, double test_fraction, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Configuration

enum class TaskKind { kAccuracy, kCostSensitive, kPolicy, kF1, kFairness };

TaskKind parse_task_kind(const std::string& s);
std::string to_string(TaskKind k);

struct CostOptions {
	/// Explicit matrix; when empty the matrix is frequency scaled.
	std::vector<std::vector<double>> misclassification;
	double misclassification_fraction = 1.0 / 3.0;
	/// Explicit per-feature costs; when empty every feature costs feature_cost.
	std::vector<double> feature_costs;
	double feature_cost = 1.0;
	std::vector<double> discounted_costs;
	std::vector<int> groups;
};

struct RunConfig {
	std::string data_path;
	ColumnSchema schema;
	TaskKind task = TaskKind::kAccuracy;
	CostOptions cost;
	PolicySpec policy;
	FairnessSpec fairness;
	int max_depth = 3;
	/// Negative means the full budget 2^d - 1.
	int max_nodes = -1;
	bool tune = false;
	std::uint64_t seed = 0;
	double time_limit = 0.0;
	bool use_cache = true;
	bool use_bounds = true;
	bool use_depth2 = true;
	int min_leaf_support = 0;
	double test_fraction = 0.0;
	std::string output;

	/// Throws DataError on inconsistent settings.
	void validate() const;
	/// Aux columns the selected task needs, added to the schema.
	ColumnSchema effective_schema() const;
	SolverConfig solver_config() const;
};

/// Missing keys keep the defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& c);

// ---------------------------------------------------------------------------
// Running and evaluation

/// The task a config describes, bound to `data`.
TaskPtr make_task(const RunConfig& config, DatasetPtr data);

/// Metrics of one tree on one dataset: accuracy and misclassifications
/// always; F1 for binary labels; normalized cost, policy value and
/// discrimination for their tasks.
nlohmann::json evaluate(const Tree& tree, const Dataset& data, const RunConfig& config);

enum class RunStatus { kOptimal, kTimeout, kInfeasible };
std::string to_string(RunStatus s);
int exit_code(RunStatus s);

struct RunReport {
	RunStatus status = RunStatus::kOptimal;
	nlohmann::json document;
	/// Rendering of the selected tree, empty when infeasible.
	std::string rendering;
};

RunReport run(const RunConfig& config);
RunReport run(const RunConfig& config, const Table& table);

/// Node-budget tuning on the training part of the configured data.
nlohmann::json tune(const RunConfig& config, const Table& table);

/// Brute-force front of the configured task (small inputs only).
RunReport oracle(const RunConfig& config, const Table& table);

/// Reads a tree from a serialized tree or from a run report (its selected entry).
Tree load_tree(const std::string& path);

} // namespace septree::cli
