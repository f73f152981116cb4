"""Scenario runs, state sweeps, and condition-gap summaries.

Everything here is a thin, deterministic layer over the inference engine:
a scenario is one posterior query, a sweep is one query per cell of a
state grid, and a gap summary contrasts two states of one node across the
states of another. Results carry the model's content hash so that any
number can be traced back to the exact model that produced it.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field

from .inference import (
    DEFAULT_STATE_SPACE_CAP,
    ImpossibleEvidenceError,
    eliminate_posterior,
    enumerate_posterior,
)
from .model_io import Scenario, model_hash
from .network import Distribution, Evidence, Network

ENGINE_ELIMINATION = "elimination"
ENGINE_ENUMERATION = "enumeration"


@dataclass
class PosteriorReport:
    scenario_id: str
    evidence: dict[str, str]
    distributions: list[Distribution]
    model_name: str
    model_hash: str
    engine: str = ENGINE_ELIMINATION

    def distribution(self, node_id: str) -> Distribution:
        for d in self.distributions:
            if d.node == node_id:
                return d
        raise KeyError(node_id)


@dataclass
class SweepCell:
    assignment: dict[str, str]
    probability: float | None
    error: str | None = None


@dataclass
class SweepTable:
    target_node: str
    target_state: str
    axes: list[tuple[str, list[str]]]
    fixed: dict[str, str]
    cells: list[SweepCell]
    model_name: str = ""
    model_hash: str = ""

    def cell(self, **states: str) -> SweepCell:
        for c in self.cells:
            if c.assignment == states:
                return c
        raise KeyError(states)


@dataclass
class GapEntry:
    conditioning_state: str
    p_worse: float | None
    p_better: float | None
    error: str | None = None

    @property
    def gap(self) -> float | None:
        if self.p_worse is None or self.p_better is None:
            return None
        return self.p_worse - self.p_better


@dataclass
class GapSummary:
    target_node: str
    target_state: str
    contrast_node: str
    worse_state: str
    better_state: str
    conditioning_node: str
    entries: list[GapEntry]
    fixed: dict[str, str] = field(default_factory=dict)
    model_hash: str = ""

    @property
    def mean_gap(self) -> float | None:
        gaps = [e.gap for e in self.entries if e.gap is not None]
        if not gaps:
            return None
        return sum(gaps) / len(gaps)


def run_scenario(
    net: Network,
    scenario: Scenario,
    engine: str = ENGINE_ELIMINATION,
    cap: int = DEFAULT_STATE_SPACE_CAP,
) -> PosteriorReport:
    """Posteriors for a scenario's targets (all nodes when none given).

    Impossible evidence propagates as ImpossibleEvidenceError; the caller
    decides how to surface it.
    """
    targets = list(scenario.targets) or net.node_ids()
    if engine == ENGINE_ENUMERATION:
        distributions = [enumerate_posterior(net, scenario.evidence, t, cap=cap)
                         for t in targets]
    elif engine == ENGINE_ELIMINATION:
        distributions = eliminate_posterior(net, scenario.evidence, targets)
    else:
        raise ValueError(f"unknown engine '{engine}'")
    return PosteriorReport(
        scenario_id=scenario.id,
        evidence=dict(scenario.evidence),
        distributions=distributions,
        model_name=net.name,
        model_hash=model_hash(net),
        engine=engine,
    )


def _check_axes(net: Network, axes, fixed: Evidence) -> None:
    # Axes may include the target itself (the cells degenerate to point
    # masses) but never fixed evidence or another axis.
    seen: set[str] = set()
    for node_id, states in axes:
        node = net.node(node_id)
        if node_id in fixed:
            raise ValueError(f"axis '{node_id}' is also fixed evidence")
        if node_id in seen:
            raise ValueError(f"axis '{node_id}' appears twice")
        seen.add(node_id)
        if not states:
            raise ValueError(f"axis '{node_id}' has no states")
        for s in states:
            node.state_index(s)


def sweep(
    net: Network,
    target_node: str,
    target_state: str,
    axes: list[tuple[str, list[str]]],
    fixed: Evidence | None = None,
) -> SweepTable:
    """Posterior of one target state over the grid of axis assignments.

    Cells are evaluated row-major over the axes (first axis slowest). A
    cell whose combined evidence is impossible is reported in place with an
    error marker instead of failing the whole sweep.
    """
    fixed = dict(fixed or {})
    net.node(target_node).state_index(target_state)
    if not axes:
        raise ValueError("sweep needs at least one axis")
    _check_axes(net, axes, fixed)

    cells: list[SweepCell] = []
    for combo in itertools.product(*(states for _, states in axes)):
        assignment = {node_id: state for (node_id, _), state in zip(axes, combo)}
        evidence = {**fixed, **assignment}
        try:
            dist = eliminate_posterior(net, evidence, [target_node])[0]
            cells.append(SweepCell(assignment, dist[target_state]))
        except ImpossibleEvidenceError as exc:
            cells.append(SweepCell(assignment, None, str(exc)))
    return SweepTable(
        target_node=target_node,
        target_state=target_state,
        axes=[(n, list(s)) for n, s in axes],
        fixed=fixed,
        cells=cells,
        model_name=net.name,
        model_hash=model_hash(net),
    )


def condition_gap(
    net: Network,
    target_node: str,
    target_state: str,
    contrast: tuple[str, str, str],
    conditioning: tuple[str, list[str] | None],
    fixed: Evidence | None = None,
) -> GapSummary:
    """Per-condition differences P(target | worse) - P(target | better),
    plus their arithmetic mean.

    ``contrast`` is (node, worse state, better state); ``conditioning``
    names the node whose states index the comparison (all declared states
    when none are given). Impossible combinations are reported per entry.
    """
    fixed = dict(fixed or {})
    contrast_node, worse_state, better_state = contrast
    cond_node, cond_states = conditioning
    node = net.node(contrast_node)
    node.state_index(worse_state)
    node.state_index(better_state)
    states = list(cond_states) if cond_states else list(net.node(cond_node).states)
    _check_axes(net, [(contrast_node, [worse_state, better_state]),
                      (cond_node, states)], fixed)
    net.node(target_node).state_index(target_state)

    entries: list[GapEntry] = []
    for c in states:
        sides: list[float | None] = []
        errors: list[str] = []
        for contrast_state in (worse_state, better_state):
            evidence = {**fixed, cond_node: c, contrast_node: contrast_state}
            try:
                dist = eliminate_posterior(net, evidence, [target_node])[0]
                sides.append(dist[target_state])
            except ImpossibleEvidenceError as exc:
                sides.append(None)
                errors.append(str(exc))
        entries.append(GapEntry(c, sides[0], sides[1], "; ".join(errors) or None))
    return GapSummary(
        target_node=target_node,
        target_state=target_state,
        contrast_node=contrast_node,
        worse_state=worse_state,
        better_state=better_state,
        conditioning_node=cond_node,
        entries=entries,
        fixed=fixed,
        model_hash=model_hash(net),
    )


def _fmt(p: float | None) -> str:
    return "" if p is None else f"{p:.6f}"


def export_table(table: SweepTable | PosteriorReport | GapSummary,
                 format: str = "csv") -> str:
    """Render a result as RFC-4180 CSV with a header row.

    Axis columns lead, probabilities carry six decimal places, and the
    byte output is deterministic for identical inputs.
    """
    if format != "csv":
        raise ValueError(f"unknown export format '{format}'")
    out = io.StringIO()
    writer = csv.writer(out)

    if isinstance(table, SweepTable):
        writer.writerow([n for n, _ in table.axes] + ["probability", "error"])
        for cell in table.cells:
            row = [cell.assignment[n] for n, _ in table.axes]
            writer.writerow(row + [_fmt(cell.probability), cell.error or ""])
    elif isinstance(table, PosteriorReport):
        writer.writerow(["node", "state", "probability"])
        for dist in table.distributions:
            for state, p in dist.probabilities.items():
                writer.writerow([dist.node, state, _fmt(p)])
    elif isinstance(table, GapSummary):
        writer.writerow([
            table.conditioning_node,
            f"p_{table.worse_state}", f"p_{table.better_state}", "gap",
        ])
        for e in table.entries:
            writer.writerow([e.conditioning_state, _fmt(e.p_worse),
                             _fmt(e.p_better), _fmt(e.gap)])
        writer.writerow(["mean", "", "", _fmt(table.mean_gap)])
    else:
        raise TypeError(f"cannot export {type(table).__name__}")
    return out.getvalue()
