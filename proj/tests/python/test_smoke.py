import json
import os

import pytest

import septree

XOR_ROWS = [[0, 0], [0, 1], [1, 0], [1, 1]]
XOR_LABELS = [0, 1, 1, 0]


def xor_task():
    return septree.accuracy_task(septree.dataset(XOR_ROWS, XOR_LABELS))


def test_xor_fronts():
    front, optimal = septree.solve(xor_task(), max_depth=2)
    assert optimal
    assert [v for v, _ in front] == [[0.0]]
    front, _ = septree.solve(xor_task(), max_depth=1)
    assert front[0][0] == [2.0]


def test_tree_cost_matches_front():
    task = xor_task()
    front, _ = septree.solve(task, max_depth=2)
    value, tree = front[0]
    assert septree.tree_cost(task, tree) == value
    assert "if not b:" in septree.render(json.dumps(tree), ["a", "b"])


def test_oracle_agrees_with_solver():
    data = septree.dataset([[0, 1], [1, 1], [1, 0], [0, 0], [1, 1]], [1, 1, 0, 0, 1])
    task = septree.f1_task(data)
    front, _ = septree.solve(task, max_depth=2)
    oracle = septree.brute_force_front(task, 2, 3)
    assert sorted(v for v, _ in front) == sorted(v for v, _ in oracle)


def test_fairness_and_errors():
    data = septree.dataset(XOR_ROWS, XOR_LABELS, aux={"group": [0, 1, 0, 1]})
    front, _ = septree.solve(septree.fairness_task(data, delta=0.1), max_depth=2)
    assert front
    with pytest.raises(ValueError):
        septree.dataset([[0, 2]], [0])
    with pytest.raises(ValueError):
        septree.policy_task(data, method="nope")


def test_run_config():
    path = os.path.join(os.environ.get("SEPTREE_TEST_DATA", "tests/data"), "xor.csv")
    report = septree.run({"data": path, "max_depth": 2})
    assert report["status"] == "optimal"
    assert report["front"][0]["metrics"]["train"]["accuracy"] == 1.0
    with pytest.raises(ValueError):
        septree.run({"data": path, "depth": 2})
