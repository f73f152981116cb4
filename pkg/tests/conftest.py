"""Shared fixtures: deterministic random-network generation and the
bundled Danish model."""

from __future__ import annotations

import math
import os

import numpy as np
import pytest

from roadrisk.climate import build_danish_road_network
from roadrisk.network import Cpt, Network, Node

WORST_ROOTS = {
    "extreme_precipitation": "yes",
    "extreme_temperature": "yes",
    "sea_level_rise": "yes",
    "zero_crossing": "yes",
}

#: Gate for the long-running full-grid oracle checks.
RUN_SLOW = bool(os.environ.get("ROADRISK_SLOW"))

slow = pytest.mark.skipif(not RUN_SLOW, reason="set ROADRISK_SLOW=1 to run")


def random_network(
    rng: np.random.Generator,
    max_nodes: int = 12,
    max_states: int = 3,
    max_parents: int = 3,
    allow_zeros: bool = False,
) -> Network:
    """A random DAG with random CPTs.

    Parents are always earlier-declared nodes, so the result is acyclic by
    construction. With ``allow_zeros`` some CPT entries are hard zeros,
    which makes impossible evidence constructible.
    """
    n = int(rng.integers(2, max_nodes + 1))
    nodes: list[Node] = []
    for i in range(n):
        card = int(rng.integers(2, max_states + 1))
        k = int(rng.integers(0, min(i, max_parents) + 1))
        parent_ix = sorted(rng.choice(i, size=k, replace=False)) if k else []
        parents = [nodes[j].id for j in parent_ix]
        n_cols = math.prod(nodes[j].cardinality for j in parent_ix) if parent_ix else 1
        columns = []
        for _ in range(n_cols):
            v = rng.random(card)
            if allow_zeros and rng.random() < 0.3:
                v[int(rng.integers(card))] = 0.0
            if v.sum() == 0.0:
                v[0] = 1.0
            columns.append(list(v / v.sum()))
        nodes.append(Node(f"n{i}", f"node {i}", [f"s{j}" for j in range(card)],
                          parents, Cpt(columns)))
    return Network(nodes, name="random")


def forward_sample(net: Network, rng: np.random.Generator) -> dict[str, str]:
    """One full assignment drawn from the network's joint distribution.

    Sampled values always have nonzero probability, so any subset makes
    consistent evidence.
    """
    state_ix: dict[str, int] = {}
    assignment: dict[str, str] = {}
    for node in net.nodes:  # declaration order is topological in these nets
        col = net.column_index(node, (state_ix[p] for p in node.parents))
        probs = np.asarray(node.cpt.columns[col])
        ix = int(rng.choice(node.cardinality, p=probs / probs.sum()))
        state_ix[node.id] = ix
        assignment[node.id] = node.states[ix]
    return assignment


@pytest.fixture(scope="session")
def danish_network():
    return build_danish_road_network()


@pytest.fixture(scope="session")
def worst_roots():
    return dict(WORST_ROOTS)
