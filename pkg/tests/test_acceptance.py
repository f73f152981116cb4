"""Acceptance suite: the headline behaviors the artifact must reproduce.

Each criterion is one test that prints a PASS line with the measured
values (visible with ``pytest -s`` or on failure). Tolerances reflect that
several CPT columns in the bundled model are reconstructions of garbled
print rather than verbatim transcriptions.
"""

import time

import numpy as np
import pytest

from conftest import WORST_ROOTS, forward_sample, random_network
from roadrisk.climate import build_model_document, return_period_probability
from roadrisk.data import bundled_model_path
from roadrisk.inference import (
    all_posteriors,
    eliminate_posterior,
    enumerate_posterior,
)
from roadrisk.model_io import load_model, save_model
from roadrisk.scenarios import condition_gap, sweep

BLUE_LEVELS = ("low", "medium", "high")
GRADES = ("g1", "g2", "g3", "g4", "g5")


def _report(criterion: int, message: str) -> None:
    print(f"criterion {criterion} PASS: {message}")


def test_criterion_1_return_period_formula():
    value = return_period_probability(100, 100)
    assert value == pytest.approx(0.633968, abs=1e-5)
    assert round(value, 2) == 0.63
    _report(1, f"return_period_probability(100, 100) = {value:.6f}")


def test_criterion_2_elimination_matches_enumeration_oracle():
    rng = np.random.default_rng(2024)
    started = time.perf_counter()
    worst = 0.0
    networks = 0
    while networks < 200:
        net = random_network(rng, max_nodes=12, max_states=3)
        sample = forward_sample(net, rng)
        k = int(rng.integers(0, len(net.nodes)))
        observed = list(rng.choice(net.node_ids(), size=k, replace=False))
        evidence = {node_id: sample[node_id] for node_id in observed}
        free = [i for i in net.node_ids() if i not in evidence]
        if not free:
            continue
        targets = list(rng.choice(free, size=min(2, len(free)), replace=False))
        for dist in eliminate_posterior(net, evidence, targets):
            oracle = enumerate_posterior(net, evidence, dist.node)
            for state, p in dist.probabilities.items():
                worst = max(worst, abs(p - oracle[state]))
        networks += 1
    elapsed = time.perf_counter() - started
    assert worst <= 1e-9
    assert elapsed < 60.0
    _report(2, f"{networks} random DAGs, max |elimination - enumeration| = "
               f"{worst:.2e} in {elapsed:.1f}s")


@pytest.fixture(scope="module")
def shipped():
    return load_model(bundled_model_path().read_text(encoding="utf-8"))


def _outcome(net, evidence, node):
    return eliminate_posterior(net, evidence, [node])[0]["yes"]


def test_criterion_3_baseline_reproduction(shipped):
    started = time.perf_counter()
    rd = _outcome(shipped.network, {}, "road_deterioration")
    collapse = _outcome(shipped.network, {}, "collapse_of_culvert_bridge")
    elapsed = time.perf_counter() - started
    assert 0.29 <= rd <= 0.39
    assert 0.43 <= collapse <= 0.53
    assert elapsed < 1.0
    _report(3, f"baseline road_deterioration = {rd:.4f}, collapse = {collapse:.4f}")


def test_criterion_4_worst_case_reproduction(shipped):
    evidence = {**WORST_ROOTS, "road_condition": "poor", "bridge_condition": "g5"}
    rd = _outcome(shipped.network, evidence, "road_deterioration")
    collapse = _outcome(shipped.network, evidence, "collapse_of_culvert_bridge")
    assert rd == pytest.approx(0.73, abs=0.08)
    assert collapse == pytest.approx(0.86, abs=0.08)
    assert collapse > rd
    _report(4, f"worst case road_deterioration = {rd:.4f}, collapse = {collapse:.4f}, "
               f"collapse > deterioration")


def test_criterion_5_condition_gap_reproduction(shipped):
    summary = condition_gap(shipped.network, "collapse_of_culvert_bridge", "yes",
                            ("bridge_condition", "g5", "g1"),
                            ("blue_spot", None), WORST_ROOTS)
    quoted = {"low": 0.81 - 0.35, "medium": 0.83 - 0.38, "high": 0.86 - 0.44}
    for entry in summary.entries:
        assert entry.gap == pytest.approx(quoted[entry.conditioning_state], abs=0.10)
    assert summary.mean_gap == pytest.approx(0.44, abs=0.10)
    gaps = {e.conditioning_state: round(e.gap, 4) for e in summary.entries}
    _report(5, f"g5-g1 collapse gaps {gaps}, mean = {summary.mean_gap:.4f}")


def test_criterion_6_monotone_risk_in_asset_condition(shipped):
    collapse = sweep(shipped.network, "collapse_of_culvert_bridge", "yes",
                     [("blue_spot", list(BLUE_LEVELS)),
                      ("bridge_condition", list(GRADES))], WORST_ROOTS)
    grid = {(c.assignment["blue_spot"], c.assignment["bridge_condition"]):
            c.probability for c in collapse.cells}
    for blue in BLUE_LEVELS:
        row = [grid[(blue, g)] for g in GRADES]
        assert all(a <= b + 1e-12 for a, b in zip(row, row[1:])), (blue, row)

    deterioration = sweep(shipped.network, "road_deterioration", "yes",
                          [("blue_spot", list(BLUE_LEVELS)),
                           ("road_condition", ["good", "fair", "poor"])],
                          WORST_ROOTS)
    grid2 = {(c.assignment["blue_spot"], c.assignment["road_condition"]):
             c.probability for c in deterioration.cells}
    for blue in BLUE_LEVELS:
        row = [grid2[(blue, s)] for s in ("good", "fair", "poor")]
        assert all(a <= b + 1e-12 for a, b in zip(row, row[1:])), (blue, row)
    _report(6, "collapse nondecreasing over bridge grades and deterioration "
               "nondecreasing over road condition, for every blue spot level")


def test_criterion_7_model_round_trip(shipped):
    original = bundled_model_path().read_text(encoding="utf-8")
    saved = save_model(shipped)
    reloaded = load_model(saved)
    assert _values(shipped) == _values(reloaded)
    assert save_model(reloaded).encode("utf-8") == saved.encode("utf-8")
    # the committed file is itself canonical output
    assert saved == original
    _report(7, "load-save-load value-identical; second save byte-identical")


def test_criterion_7b_shipped_file_matches_builder():
    rebuilt = save_model(build_model_document())
    assert rebuilt == bundled_model_path().read_text(encoding="utf-8")
    _report(7, "committed model file reproduces the programmatic builder")


def test_criterion_8_performance(shipped):
    net = shipped.network
    all_posteriors(net, {})  # warm-up
    started = time.perf_counter()
    distributions = all_posteriors(net, {})
    full_set = time.perf_counter() - started
    assert len(distributions) == 28
    assert full_set < 0.100

    started = time.perf_counter()
    table = sweep(net, "collapse_of_culvert_bridge", "yes",
                  [("blue_spot", list(BLUE_LEVELS)),
                   ("bridge_condition", list(GRADES))], WORST_ROOTS)
    sweep_time = time.perf_counter() - started
    assert len(table.cells) == 15
    assert sweep_time < 1.0
    _report(8, f"28-node posterior set in {full_set*1000:.1f} ms, "
               f"15-cell sweep in {sweep_time*1000:.0f} ms")


def _values(doc):
    return [
        (n.id, n.label, tuple(n.states), tuple(n.parents),
         tuple(tuple(c) for c in n.cpt.columns), tuple(n.cpt.provenance))
        for n in doc.network.nodes
    ]
