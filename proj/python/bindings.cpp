#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "septree/cli/cli.h"
#include "septree/core/errors.h"
#include "septree/oracle/oracle.h"
#include "septree/solver/solver.h"
#include "septree/tasks/tasks.h"

namespace py = pybind11;
using namespace septree;

namespace {

struct PyTask {
	TaskPtr task;
};

DatasetPtr make_dataset(const std::vector<std::vector<std::uint8_t>>& rows, std::vector<int> labels, int label_count,
                        std::map<std::string, std::vector<double>> aux) {
	if (label_count < 0) {
		int top = 1;
		for (int l : labels) top = std::max(top, l + 1);
		label_count = top;
	}
	return std::make_shared<const Dataset>(rows, std::move(labels), label_count, std::move(aux));
}

py::list front_to_list(const std::vector<FrontEntry>& entries) {
	py::list out;
	for (const auto& e : entries) {
		std::vector<double> v(e.value.components().begin(), e.value.components().end());
		out.append(py::make_tuple(v, e.tree.serialize()));
	}
	return out;
}

} // namespace

PYBIND11_MODULE(_septree, m) {
	m.doc() = "Optimal decision trees for separable objectives";

	py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
	py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
	py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_ValueError);

	py::class_<Dataset, std::shared_ptr<Dataset>>(m, "Dataset")
		.def_property_readonly("size", &Dataset::size)
		.def_property_readonly("feature_count", &Dataset::feature_count)
		.def_property_readonly("label_count", &Dataset::label_count);

	m.def(
		"dataset",
		[](const std::vector<std::vector<std::uint8_t>>& rows, std::vector<int> labels, int label_count,
	       std::map<std::string, std::vector<double>> aux) {
			return std::const_pointer_cast<Dataset>(make_dataset(rows, std::move(labels), label_count, std::move(aux)));
		},
		py::arg("rows"), py::arg("labels"), py::arg("label_count") = -1, py::arg("aux") = std::map<std::string, std::vector<double>>{});

	py::class_<PyTask>(m, "Task")
		.def_property_readonly("name", [](const PyTask& t) { return t.task->name(); })
		.def_property_readonly("arity", [](const PyTask& t) { return t.task->arity(); })
		.def("tree_cost", [](const PyTask& t, const std::string& tree) {
			auto v = tree_cost(Tree::parse(tree), t.task->root_state(), *t.task);
			return std::vector<double>(v.components().begin(), v.components().end());
		});

	m.def("accuracy_task", [](std::shared_ptr<Dataset> d) { return PyTask{ accuracy_task(d) }; });
	m.def("f1_task", [](std::shared_ptr<Dataset> d) { return PyTask{ f1_task(d) }; });
	m.def(
		"cost_sensitive_task",
		[](std::shared_ptr<Dataset> d, std::vector<std::vector<double>> misclassification, std::vector<double> feature_costs) {
			CostSpec spec;
			spec.misclassification = std::move(misclassification);
			spec.feature_costs = std::move(feature_costs);
			return PyTask{ cost_sensitive_task(d, spec) };
		},
		py::arg("data"), py::arg("misclassification"), py::arg("feature_costs"));
	m.def(
		"policy_task",
		[](std::shared_ptr<Dataset> d, const std::string& method) {
			PolicySpec spec;
			spec.method = parse_policy_method(method);
			return PyTask{ policy_task(d, spec) };
		},
		py::arg("data"), py::arg("method") = "dr");
	m.def(
		"fairness_task",
		[](std::shared_ptr<Dataset> d, double delta, const std::string& mode, const std::string& column) {
			FairnessSpec spec;
			spec.delta = delta;
			spec.mode = parse_fairness_mode(mode);
			spec.sensitive_column = column;
			return PyTask{ fairness_task(d, spec) };
		},
		py::arg("data"), py::arg("delta") = 0.01, py::arg("mode") = "demographic-parity", py::arg("sensitive_column") = "group");

	m.def(
		"solve",
		[](const PyTask& t, int max_depth, int max_nodes, bool use_cache, bool use_bounds, bool use_depth2, double time_limit,
	       int min_leaf_support) {
			SolverConfig c{ max_depth, max_nodes, use_cache, use_bounds, use_depth2, time_limit, min_leaf_support };
			SolveResult r;
			{
				py::gil_scoped_release release;
				r = solve(t.task, c);
			}
			return py::make_tuple(front_to_list(r.front.entries()), r.optimal);
		},
		py::arg("task"), py::arg("max_depth") = 3, py::arg("max_nodes") = -1, py::arg("use_cache") = true,
		py::arg("use_bounds") = true, py::arg("use_depth2") = true, py::arg("time_limit") = 0.0, py::arg("min_leaf_support") = 0);

	m.def(
		"brute_force_front",
		[](const PyTask& t, int max_depth, int max_nodes) { return front_to_list(brute_force_front(*t.task, max_depth, max_nodes)); },
		py::arg("task"), py::arg("max_depth"), py::arg("max_nodes"));

	m.def("f1_score", &f1_score);
	m.def("render", [](const std::string& tree, const std::vector<std::string>& names) { return Tree::parse(tree).render(names); },
	      py::arg("tree"), py::arg("feature_names") = std::vector<std::string>{});

	m.def("run", [](const std::string& config_json) {
		auto config = cli::config_from_json(nlohmann::json::parse(config_json));
		auto report = cli::run(config);
		return report.document.dump();
	});
}
