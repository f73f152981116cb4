"""Discrete Bayesian network representation and validation.

A network is a directed acyclic graph of chance nodes. Each node carries a
conditional probability table (CPT) stored as one probability vector per
combination of parent states. Combinations are enumerated row-major over the
declared parent order, first parent slowest-varying; root nodes have a single
column holding the prior.

Networks are value objects: nothing in this package mutates a network after
construction. Repairs (column normalization) produce a new network, returned
on the validation report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

#: Absolute tolerance for probability comparisons throughout the package.
PROB_TOL = 1e-9

#: A column whose sum deviates from 1 by more than this is considered a
#: transcription fault too large to repair by rescaling.
MAX_NORMALIZABLE_DEVIATION = 0.6

#: Allowed per-column provenance tags: values transcribed verbatim from the
#: source study versus values reconstructed to repair garbled print.
PROVENANCE_TAGS = ("paper", "reconstructed")

FATAL = "fatal"
WARNING = "warning"

#: Evidence is a partial assignment of node ids to observed state names.
Evidence = Mapping[str, str]


class BbnError(Exception):
    """Base class for errors raised by this package."""


class CycleError(BbnError):
    """The parent relation contains a directed cycle."""


class EvidenceError(BbnError):
    """An evidence map or assignment references an unknown node or state."""


@dataclass
class Cpt:
    """Conditional probability table for one node.

    ``columns[j][i]`` is the probability of the node's i-th state given the
    j-th parent-state combination. ``provenance[j]`` tags where column j's
    numbers came from ("paper" or "reconstructed").
    """

    columns: list[list[float]]
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.provenance:
            self.provenance = ["paper"] * len(self.columns)


@dataclass
class Node:
    id: str
    label: str
    states: list[str]
    parents: list[str]
    cpt: Cpt

    @property
    def cardinality(self) -> int:
        return len(self.states)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise EvidenceError(
                f"node '{self.id}' has no state '{state}' (states: {', '.join(self.states)})"
            ) from None


@dataclass
class Network:
    """An ordered collection of nodes forming a Bayesian network."""

    nodes: list[Node]
    name: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        # First declaration wins; duplicates are reported by validate_network.
        index: dict[str, Node] = {}
        for node in self.nodes:
            index.setdefault(node.id, node)
        self._by_id = index

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._by_id

    def node(self, node_id: str) -> Node:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise EvidenceError(f"unknown node '{node_id}'") from None

    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def declaration_rank(self) -> dict[str, int]:
        return {n.id: i for i, n in enumerate(self.nodes)}

    def joint_state_count(self) -> int:
        return math.prod(n.cardinality for n in self.nodes)

    def parent_cards(self, node: Node) -> list[int]:
        return [self.node(p).cardinality for p in node.parents]

    def column_index(self, node: Node, parent_states: Iterable[int]) -> int:
        """Flat CPT column index for the given parent state indices.

        Row-major over declared parent order: the first parent varies
        slowest. Roots always map to column 0.
        """
        idx = 0
        for card, state in zip(self.parent_cards(node), parent_states):
            idx = idx * card + state
        return idx


@dataclass
class Distribution:
    """A normalized distribution over one node's states."""

    node: str
    probabilities: dict[str, float]

    def __getitem__(self, state: str) -> float:
        return self.probabilities[state]

    @classmethod
    def point_mass(cls, node: Node, state: str) -> "Distribution":
        return cls(node.id, {s: (1.0 if s == state else 0.0) for s in node.states})


@dataclass
class Finding:
    severity: str
    node: str
    message: str

    def __str__(self) -> str:
        return f"[{self.severity}] {self.node}: {self.message}"


@dataclass
class ValidationReport:
    """Outcome of validate_network.

    ``network`` is the usable network: identical to the input unless
    normalization repaired columns, in which case it is a rescaled copy.
    ``normalized_columns`` records every repair as (node id, column index,
    original sum).
    """

    errors: list[Finding]
    normalized_columns: list[tuple[str, int, float]]
    network: Network

    @property
    def fatal(self) -> list[Finding]:
        return [f for f in self.errors if f.severity == FATAL]

    @property
    def is_valid(self) -> bool:
        return not self.fatal


def check_evidence(net: Network, evidence: Evidence) -> None:
    """Raise EvidenceError unless every evidence entry names a declared
    node and one of its declared states."""
    for node_id, state in evidence.items():
        net.node(node_id).state_index(state)


def _kahn(net: Network) -> tuple[list[str], list[str]]:
    """Kahn's algorithm with declaration-order tie-breaking.

    Returns (ordered ids, leftover ids); leftover is nonempty iff the
    parent relation has a cycle among resolvable nodes.
    """
    ids = [n.id for n in net.nodes]
    known = set(ids)
    pending: dict[str, set[str]] = {
        n.id: {p for p in n.parents if p in known} for n in net.nodes
    }
    children: dict[str, list[str]] = {i: [] for i in ids}
    for n in net.nodes:
        for p in n.parents:
            if p in known:
                children[p].append(n.id)

    order: list[str] = []
    placed: set[str] = set()
    while len(order) < len(ids):
        progressed = False
        for i in ids:
            if i in placed or pending[i] - placed:
                continue
            order.append(i)
            placed.add(i)
            progressed = True
        if not progressed:
            break
    leftover = [i for i in ids if i not in placed]
    return order, leftover


def topological_order(net: Network) -> list[str]:
    """Node ids ordered so every node follows all of its parents.

    Deterministic: among simultaneously-ready nodes, declaration order wins.
    Raises CycleError naming one member of a cycle if none exists.
    """
    order, leftover = _kahn(net)
    if leftover:
        raise CycleError(f"parent relation has a cycle involving node '{leftover[0]}'")
    return order


def validate_network(net: Network, normalize: bool = False) -> ValidationReport:
    """Check structural and probabilistic invariants of a network.

    All findings are collected into the report; nothing raises. Checks:
    duplicate ids, dangling parent references, cycles, state-list problems,
    CPT shape mismatches, entries outside [0, 1], and column sums outside
    [1 - 1e-9, 1 + 1e-9].

    With ``normalize`` set, a column whose sum is positive and within
    ``MAX_NORMALIZABLE_DEVIATION`` of 1 is rescaled to sum exactly 1 on a
    copy of the network, and the repair is logged in ``normalized_columns``.
    Columns summing to 0 are always fatal.
    """
    errors: list[Finding] = []
    normalized: list[tuple[str, int, float]] = []

    seen: set[str] = set()
    for node in net.nodes:
        if node.id in seen:
            errors.append(Finding(FATAL, node.id, "duplicate node id"))
        seen.add(node.id)

    repaired_nodes: dict[str, Node] = {}
    for node in net.nodes:
        if len(node.states) < 2:
            errors.append(Finding(FATAL, node.id, "fewer than 2 states"))
        if len(set(node.states)) != len(node.states):
            errors.append(Finding(FATAL, node.id, "states are not pairwise distinct"))

        dangling = [p for p in node.parents if p not in net]
        for p in dangling:
            errors.append(Finding(FATAL, node.id, f"parent '{p}' is not declared in the network"))
        if dangling:
            continue  # column-count check below would be meaningless

        expected_cols = math.prod(net.node(p).cardinality for p in node.parents)
        cpt = node.cpt
        if len(cpt.columns) != expected_cols:
            errors.append(Finding(
                FATAL, node.id,
                f"cpt has {len(cpt.columns)} columns, expected {expected_cols}",
            ))
            continue
        if len(cpt.provenance) != len(cpt.columns):
            errors.append(Finding(
                FATAL, node.id,
                f"cpt has {len(cpt.provenance)} provenance tags for {len(cpt.columns)} columns",
            ))
        for tag in cpt.provenance:
            if tag not in PROVENANCE_TAGS:
                errors.append(Finding(FATAL, node.id, f"unknown provenance tag '{tag}'"))
                break

        new_columns: list[list[float]] | None = None
        for j, col in enumerate(cpt.columns):
            if len(col) != len(node.states):
                errors.append(Finding(
                    FATAL, node.id,
                    f"column {j} has {len(col)} entries for {len(node.states)} states",
                ))
                continue
            if any(x < 0.0 or x > 1.0 for x in col):
                errors.append(Finding(FATAL, node.id, f"column {j} has entries outside [0, 1]"))
                continue
            s = math.fsum(col)
            if abs(s - 1.0) <= PROB_TOL:
                continue
            if normalize and s > 0.0 and abs(s - 1.0) <= MAX_NORMALIZABLE_DEVIATION:
                if new_columns is None:
                    new_columns = [list(c) for c in cpt.columns]
                new_columns[j] = [x / s for x in col]
                normalized.append((node.id, j, s))
            elif s == 0.0:
                errors.append(Finding(FATAL, node.id, f"column {j} sums to 0"))
            else:
                errors.append(Finding(FATAL, node.id, f"column {j} sum {s:g} is not 1"))
        if new_columns is not None:
            repaired_nodes[node.id] = replace(
                node, cpt=Cpt(new_columns, list(cpt.provenance))
            )

    _, leftover = _kahn(net)
    if leftover:
        errors.append(Finding(
            FATAL, leftover[0], f"parent relation has a cycle involving node '{leftover[0]}'"
        ))

    result = net
    if repaired_nodes:
        result = replace(
            net, nodes=[repaired_nodes.get(n.id, n) for n in net.nodes]
        )
    return ValidationReport(errors=errors, normalized_columns=normalized, network=result)
