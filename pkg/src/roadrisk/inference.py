"""Exact inference over discrete Bayesian networks.

Two independent query routes are provided:

* ``enumerate_posterior`` sums the fully factorized joint of every
  completion consistent with the evidence. It is simple enough to trust and
  serves as the oracle for the fast route, but its cost is the product of
  the free nodes' cardinalities.
* ``eliminate_posterior`` runs variable elimination with a min-fill
  ordering over evidence-reduced CPT factors. This is the route every
  higher layer (scenarios, service, CLI) uses.

Both return normalized distributions and both report evidence of
probability zero as ImpossibleEvidenceError rather than producing NaNs.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .factors import Factor, factor_marginalize, factor_product, factor_reduce
from .network import (
    BbnError,
    Distribution,
    Evidence,
    EvidenceError,
    Network,
    Node,
    check_evidence,
)

#: Default ceiling on a network's raw joint state count for enumeration.
#: Large models must raise it explicitly to acknowledge the cost.
DEFAULT_STATE_SPACE_CAP = 2 ** 24


class ImpossibleEvidenceError(BbnError):
    """The supplied evidence has probability zero under the network."""


class StateSpaceError(BbnError):
    """The network's joint state space exceeds the enumeration cap."""


def joint_probability(net: Network, assignment: Evidence) -> float:
    """Probability of one full assignment: the product over nodes of the
    CPT entry selected by the node's own state and its parents' states.

    The assignment must cover every node exactly once.
    """
    missing = [n.id for n in net.nodes if n.id not in assignment]
    if missing:
        raise EvidenceError(f"assignment is missing nodes: {', '.join(missing)}")
    extra = [k for k in assignment if k not in net]
    if extra:
        raise EvidenceError(f"assignment references unknown nodes: {', '.join(extra)}")

    state_of = {nid: net.node(nid).state_index(s) for nid, s in assignment.items()}
    p = 1.0
    for node in net.nodes:
        col = net.column_index(node, (state_of[pid] for pid in node.parents))
        p *= node.cpt.columns[col][state_of[node.id]]
    return p


def _enumeration_weights(
    net: Network, evidence: Evidence
) -> tuple[dict[str, np.ndarray | int], np.ndarray]:
    """Joint probability of every completion of ``evidence``.

    Free nodes are enumerated row-major in declaration order. Returns the
    per-node state indices (arrays for free nodes, ints for observed ones)
    and the weight vector, one entry per completion.
    """
    observed = {nid: net.node(nid).state_index(s) for nid, s in evidence.items()}
    free = [n for n in net.nodes if n.id not in observed]
    n_comp = math.prod(n.cardinality for n in free)

    # State index of each free node across completions: a repeat/tile
    # pattern, stored narrow to keep large enumerations affordable.
    state_of: dict[str, np.ndarray | int] = dict(observed)
    stride = n_comp
    for n in free:
        stride //= n.cardinality
        pattern = np.repeat(np.arange(n.cardinality, dtype=np.int8), stride)
        state_of[n.id] = np.tile(pattern, n_comp // (stride * n.cardinality))

    def as_index(x: np.ndarray | int) -> np.ndarray | int:
        return x.astype(np.int32) if isinstance(x, np.ndarray) else int(x)

    weights = np.ones(n_comp)
    for node in net.nodes:
        flat: np.ndarray | int = 0
        for pid, card in zip(node.parents, net.parent_cards(node)):
            flat = flat * card + as_index(state_of[pid])
        flat = flat * node.cardinality + as_index(state_of[node.id])
        table = np.asarray(node.cpt.columns).ravel()
        if isinstance(flat, np.ndarray):
            np.multiply(weights, table[flat], out=weights)
        else:
            weights *= table[flat]
    return state_of, weights


def enumerate_posterior(
    net: Network,
    evidence: Evidence,
    target: str,
    cap: int = DEFAULT_STATE_SPACE_CAP,
) -> Distribution:
    """Exact posterior of ``target`` by exhaustive summation.

    Sums the joint over every completion consistent with the evidence and
    renormalizes. Refuses networks whose raw joint state count exceeds
    ``cap``; raises ImpossibleEvidenceError when the evidence has
    probability zero.
    """
    check_evidence(net, evidence)
    node = net.node(target)
    total = net.joint_state_count()
    if total > cap:
        raise StateSpaceError(
            f"joint state space {total} exceeds enumeration cap {cap}; "
            "raise the cap to acknowledge the cost"
        )

    state_of, weights = _enumeration_weights(net, evidence)
    z = float(weights.sum())
    if z == 0.0:
        raise ImpossibleEvidenceError("evidence has probability 0")

    states = state_of[target]
    if isinstance(states, int):
        mass = np.zeros(node.cardinality)
        mass[states] = z
    else:
        mass = np.bincount(states.astype(np.int64), weights=weights,
                           minlength=node.cardinality)
    probs = mass / z
    return Distribution(target, {s: float(p) for s, p in zip(node.states, probs)})


def _reduced_cpt_factors(net: Network, evidence: Evidence) -> list[Factor]:
    observed = {nid: net.node(nid).state_index(s) for nid, s in evidence.items()}
    factors = []
    for node in net.nodes:
        cards = net.parent_cards(node) + [node.cardinality]
        values = np.asarray(node.cpt.columns).reshape(cards)
        f = Factor(tuple(node.parents) + (node.id,), values)
        for var in f.scope:
            if var in observed:
                f = factor_reduce(f, var, observed[var])
        factors.append(f)
    return factors


def min_fill_order(
    scopes: Iterable[Sequence[str]],
    to_eliminate: Iterable[str],
    rank: dict[str, int],
) -> list[str]:
    """Greedy min-fill elimination ordering.

    At each step, eliminates the variable whose removal adds the fewest
    fill edges to the interaction graph of the current factor scopes; ties
    are broken by declaration rank, so the ordering is deterministic.
    """
    neighbors: dict[str, set[str]] = {}
    for scope in scopes:
        for v in scope:
            neighbors.setdefault(v, set())
        for i, v in enumerate(scope):
            for w in scope[i + 1:]:
                neighbors[v].add(w)
                neighbors[w].add(v)

    remaining = set(to_eliminate)
    for v in remaining:
        neighbors.setdefault(v, set())

    def fill_count(v: str) -> int:
        nbrs = [w for w in neighbors[v] if w != v]
        count = 0
        for i, w in enumerate(nbrs):
            for u in nbrs[i + 1:]:
                if u not in neighbors[w]:
                    count += 1
        return count

    order: list[str] = []
    while remaining:
        best = min(remaining, key=lambda v: (fill_count(v), rank.get(v, len(rank))))
        order.append(best)
        remaining.discard(best)
        nbrs = neighbors.pop(best)
        for w in nbrs:
            neighbors[w].discard(best)
        nbrs = [w for w in nbrs]
        for i, w in enumerate(nbrs):
            for u in nbrs[i + 1:]:
                neighbors[w].add(u)
                neighbors[u].add(w)
    return order


def _eliminate(factors: list[Factor], var: str) -> list[Factor]:
    related = [f for f in factors if var in f.scope]
    if not related:
        return factors
    product = related[0]
    for f in related[1:]:
        product = factor_product(product, f)
    kept = [f for f in factors if var not in f.scope]
    kept.append(factor_marginalize(product, var))
    return kept


def _run_elimination(
    factors: list[Factor], elimination_order: Iterable[str]
) -> Factor:
    current = list(factors)
    for var in elimination_order:
        current = _eliminate(current, var)
    result = current[0]
    for f in current[1:]:
        result = factor_product(result, f)
    return result


def eliminate_posterior(
    net: Network,
    evidence: Evidence,
    targets: Sequence[str],
    order: Sequence[str] | None = None,
) -> list[Distribution]:
    """Exact posteriors of ``targets`` via variable elimination.

    CPT factors are first reduced by the evidence; for each target, every
    other unobserved variable is summed out (min-fill ordering unless
    ``order`` supplies one), and the surviving table over the target is
    renormalized. An observed target yields the point mass on its observed
    state. Numerically equal to enumerate_posterior within 1e-9.
    """
    check_evidence(net, evidence)
    target_nodes = [net.node(t) for t in targets]

    base = _reduced_cpt_factors(net, evidence)
    rank = net.declaration_rank()
    results: list[Distribution] = []
    evidence_z: float | None = None

    for node in target_nodes:
        if node.id in evidence:
            # Posterior of an observed node is its point mass, but the
            # evidence as a whole must still be possible.
            if evidence_z is None:
                to_sum = [i for i in net.node_ids() if i not in evidence]
                final = _run_elimination(base, order if order is not None else
                                         min_fill_order([f.scope for f in base], to_sum, rank))
                evidence_z = float(final.values)
            if evidence_z == 0.0:
                raise ImpossibleEvidenceError("evidence has probability 0")
            results.append(Distribution.point_mass(node, evidence[node.id]))
            continue

        to_sum = [i for i in net.node_ids() if i not in evidence and i != node.id]
        if order is not None:
            ordering = [v for v in order if v in set(to_sum)]
            if set(ordering) != set(to_sum):
                raise ValueError("supplied elimination order does not cover the free variables")
        else:
            ordering = min_fill_order([f.scope for f in base], to_sum, rank)

        final = _run_elimination(base, ordering)
        values = final.values if final.scope == (node.id,) else final.values.reshape(node.cardinality)
        z = float(values.sum())
        if z == 0.0:
            raise ImpossibleEvidenceError("evidence has probability 0")
        probs = values / z
        results.append(Distribution(node.id, {s: float(p) for s, p in zip(node.states, probs)}))
    return results


def posterior(
    net: Network, evidence: Evidence, target: str, order: Sequence[str] | None = None
) -> Distribution:
    """Single-target convenience wrapper around eliminate_posterior."""
    return eliminate_posterior(net, evidence, [target], order=order)[0]


def all_posteriors(net: Network, evidence: Evidence) -> list[Distribution]:
    """Posterior of every node in declaration order."""
    return eliminate_posterior(net, evidence, net.node_ids())
