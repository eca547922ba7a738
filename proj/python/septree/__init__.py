"""Optimal decision trees for separable objectives."""

import json

from ._septree import (
    CapabilityError,
    ContractError,
    DataError,
    Dataset,
    Task,
    accuracy_task,
    cost_sensitive_task,
    dataset,
    f1_score,
    f1_task,
    fairness_task,
    policy_task,
    render,
)
from . import _septree


def solve(task, max_depth=3, max_nodes=-1, **options):
    """Pareto front as a list of (value, tree) pairs, plus the optimality flag."""
    front, optimal = _septree.solve(task, max_depth, max_nodes, **options)
    return [(value, json.loads(tree)) for value, tree in front], optimal


def brute_force_front(task, max_depth, max_nodes):
    return [(value, json.loads(tree)) for value, tree in _septree.brute_force_front(task, max_depth, max_nodes)]


def tree_cost(task, tree):
    return task.tree_cost(json.dumps(tree, separators=(",", ":")))


def run(config):
    """Runs a configuration dict (same keys as the command-line --config file) and returns the report."""
    return json.loads(_septree.run(json.dumps(config)))


__all__ = [
    "CapabilityError",
    "ContractError",
    "DataError",
    "Dataset",
    "Task",
    "accuracy_task",
    "brute_force_front",
    "cost_sensitive_task",
    "dataset",
    "f1_score",
    "f1_task",
    "fairness_task",
    "policy_task",
    "render",
    "run",
    "solve",
    "tree_cost",
]
