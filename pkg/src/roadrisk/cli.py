"""Command-line interface.

    roadrisk validate [--normalize] [--model PATH]
    roadrisk infer [--evidence node=state ...] [--target node ...]
                   [--engine elim|enum] [--cap N] [--format text|csv|json]
    roadrisk scenario ID | --list
    roadrisk sweep --target node=state --axis node[=s1,s2] ... [--fixed ...]
    roadrisk gap --target node=state --contrast node=worse,better --by node
                 [--fixed ...]
    roadrisk return-period --T YEARS --r YEARS
    roadrisk serve [--host H] [--port P] [--static-dir DIR]

Exit codes: 0 success, 1 fatal validation or impossible evidence,
2 I/O, parse, usage, or unknown-reference errors. Evidence tokens use the
strict form node=state; --fixed additionally accepts a preset scenario id.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data import bundled_model_path
from .climate import return_period_probability
from .inference import DEFAULT_STATE_SPACE_CAP, ImpossibleEvidenceError
from .model_io import ModelDocument, Scenario, load_model, model_hash
from .network import EvidenceError, Network, validate_network
from .scenarios import (
    ENGINE_ELIMINATION,
    ENGINE_ENUMERATION,
    PosteriorReport,
    condition_gap,
    export_table,
    run_scenario,
    sweep,
)

DEFAULT_MODEL = "danish_road_climate.model"

OK, FATAL, USAGE = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE):
        super().__init__(message)
        self.code = code


def _resolve_model_path(value: str) -> Path:
    path = Path(value)
    if path.exists():
        return path
    if value == DEFAULT_MODEL:
        bundled = bundled_model_path()
        if bundled.exists():
            return bundled
    raise CliError(f"model file not found: {value}")


def _load(value: str, strict: bool = True) -> ModelDocument:
    path = _resolve_model_path(value)
    try:
        return load_model(path.read_text(encoding="utf-8"), strict=strict)
    except OSError as exc:
        raise CliError(f"cannot read model: {exc}")
    except Exception as exc:
        raise CliError(f"cannot load model: {exc}")


def _parse_evidence_tokens(tokens: list[str]) -> dict[str, str]:
    evidence: dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            raise CliError(f"evidence must be node=state, got '{token}'")
        node, _, state = token.partition("=")
        evidence[node] = state
    return evidence


def _parse_fixed(tokens: list[str], doc: ModelDocument) -> dict[str, str]:
    """Fixed evidence: node=state tokens, or a preset scenario id whose
    evidence is merged in."""
    evidence: dict[str, str] = {}
    presets = {s.id: s for s in doc.scenarios}
    for token in tokens:
        if "=" in token:
            node, _, state = token.partition("=")
            evidence[node] = state
        elif token in presets:
            evidence.update(presets[token].evidence)
        else:
            raise CliError(f"'{token}' is neither node=state nor a known scenario id")
    return evidence


def _print_report(report: PosteriorReport, fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(export_table(report))
    elif fmt == "json":
        from .service import report_payload

        print(json.dumps(report_payload(report), sort_keys=True, indent=2))
    else:
        width = max((len(d.node) for d in report.distributions), default=4)
        print(f"model {report.model_name}  hash {report.model_hash[:12]}  engine {report.engine}")
        if report.evidence:
            pairs = ", ".join(f"{k}={v}" for k, v in sorted(report.evidence.items()))
            print(f"evidence: {pairs}")
        for d in report.distributions:
            states = "  ".join(f"{s}={p:.6f}" for s, p in d.probabilities.items())
            print(f"  {d.node:<{width}}  {states}")


def cmd_validate(args: argparse.Namespace) -> int:
    # non-strict load: structural findings are this command's job to report
    doc = _load(args.model, strict=False)
    report = validate_network(doc.network, normalize=args.normalize)
    for finding in report.errors:
        print(finding)
    for node_id, col, original in report.normalized_columns:
        print(f"[normalized] {node_id}: column {col} rescaled from sum {original:g}")
    reconstructed = sum(
        1 for n in doc.network.nodes for t in n.cpt.provenance if t == "reconstructed"
    )
    total = sum(len(n.cpt.columns) for n in doc.network.nodes)
    print(f"{len(doc.network.nodes)} nodes, {total} cpt columns "
          f"({reconstructed} reconstructed)")
    if not report.is_valid:
        return FATAL
    print("model is valid")
    return OK


def cmd_infer(args: argparse.Namespace) -> int:
    doc = _load(args.model)
    evidence = _parse_evidence_tokens(args.evidence)
    engine = ENGINE_ENUMERATION if args.engine == "enum" else ENGINE_ELIMINATION
    scenario = Scenario("adhoc", "ad hoc query", evidence, list(args.target))
    report = run_scenario(doc.network, scenario, engine=engine, cap=args.cap)
    _print_report(report, args.format)
    return OK


def cmd_scenario(args: argparse.Namespace) -> int:
    doc = _load(args.model)
    if args.list:
        for s in doc.scenarios:
            print(f"{s.id}: {s.label} ({len(s.evidence)} evidence entries)")
        return OK
    if not args.id:
        raise CliError("scenario id required (or use --list)")
    presets = {s.id: s for s in doc.scenarios}
    if args.id not in presets:
        raise CliError(f"unknown scenario '{args.id}'")
    report = run_scenario(doc.network, presets[args.id])
    _print_report(report, args.format)
    return OK


def _parse_target(token: str) -> tuple[str, str]:
    if "=" not in token:
        raise CliError(f"target must be node=state, got '{token}'")
    node, _, state = token.partition("=")
    return node, state


def cmd_sweep(args: argparse.Namespace) -> int:
    doc = _load(args.model)
    node, state = _parse_target(args.target)
    axes: list[tuple[str, list[str]]] = []
    for token in args.axis:
        axis_node, _, states = token.partition("=")
        if states:
            axes.append((axis_node, states.split(",")))
        else:
            axes.append((axis_node, list(doc.network.node(axis_node).states)))
    fixed = _parse_fixed(args.fixed, doc)
    table = sweep(doc.network, node, state, axes, fixed)
    if args.format == "json":
        from .service import sweep_payload

        print(json.dumps(sweep_payload(table), sort_keys=True, indent=2))
    elif args.format == "text":
        print(f"P({node}={state}) over {' x '.join(n for n, _ in table.axes)}")
        for cell in table.cells:
            key = ", ".join(f"{k}={v}" for k, v in cell.assignment.items())
            value = f"{cell.probability:.6f}" if cell.probability is not None else f"error: {cell.error}"
            print(f"  {key}: {value}")
    else:
        sys.stdout.write(export_table(table))
    return OK


def cmd_gap(args: argparse.Namespace) -> int:
    doc = _load(args.model)
    node, state = _parse_target(args.target)
    contrast_node, _, pair = args.contrast.partition("=")
    worse, _, better = pair.partition(",")
    if not worse or not better:
        raise CliError("--contrast must be node=worse_state,better_state")
    fixed = _parse_fixed(args.fixed, doc)
    summary = condition_gap(doc.network, node, state,
                            (contrast_node, worse, better), (args.by, None), fixed)
    if args.format == "csv":
        sys.stdout.write(export_table(summary))
    else:
        for e in summary.entries:
            gap = f"{e.gap:.6f}" if e.gap is not None else f"error: {e.error}"
            print(f"  {summary.conditioning_node}={e.conditioning_state}: "
                  f"P(worse)={e.p_worse:.6f} P(better)={e.p_better:.6f} gap={gap}")
        mean = summary.mean_gap
        print(f"mean gap: {mean:.6f}" if mean is not None else "mean gap: undefined")
    return OK


def cmd_return_period(args: argparse.Namespace) -> int:
    try:
        value = return_period_probability(args.T, args.r)
    except ValueError as exc:
        raise CliError(str(exc))
    print(f"{value:.6f}")
    return OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    path = _resolve_model_path(args.model)
    static = args.static_dir
    if static is not None and not Path(static).is_dir():
        raise CliError(f"static directory not found: {static}")
    try:
        app = create_app(ServiceConfig(model_path=path, static_dir=static))
    except Exception as exc:
        raise CliError(f"cannot start service: {exc}")
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except OSError as exc:
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}")
    except SystemExit as exc:
        # uvicorn exits on startup failure (port busy) with its own code
        if exc.code not in (0, None):
            raise CliError(f"server failed to start on {args.host}:{args.port}")
        return OK
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roadrisk",
        description="Exact Bayesian-network risk queries over road asset models.",
    )
    parser.add_argument("--model", default=DEFAULT_MODEL,
                        help=f"model file (default: {DEFAULT_MODEL}, falling back "
                             "to the bundled copy)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("--normalize", action="store_true",
                   help="rescale slightly-off probability columns")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("infer", help="posterior query")
    p.add_argument("--evidence", action="append", default=[], metavar="NODE=STATE")
    p.add_argument("--target", action="append", default=[], metavar="NODE")
    p.add_argument("--engine", choices=["elim", "enum"], default="elim")
    p.add_argument("--cap", type=int, default=DEFAULT_STATE_SPACE_CAP,
                   help="joint state-space cap for --engine enum")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("scenario", help="run a preset scenario")
    p.add_argument("id", nargs="?", help="scenario id")
    p.add_argument("--list", action="store_true", help="list available scenarios")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("sweep", help="posterior grid over condition states")
    p.add_argument("--target", required=True, metavar="NODE=STATE")
    p.add_argument("--axis", action="append", required=True,
                   metavar="NODE[=S1,S2,...]")
    p.add_argument("--fixed", action="append", default=[],
                   metavar="NODE=STATE|SCENARIO")
    p.add_argument("--format", choices=["text", "csv", "json"], default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gap", help="risk gap between two states of one node")
    p.add_argument("--target", required=True, metavar="NODE=STATE")
    p.add_argument("--contrast", required=True, metavar="NODE=WORSE,BETTER")
    p.add_argument("--by", required=True, metavar="NODE",
                   help="conditioning node whose states index the comparison")
    p.add_argument("--fixed", action="append", default=[],
                   metavar="NODE=STATE|SCENARIO")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("return-period", help="occurrence probability over a window")
    p.add_argument("--T", type=float, required=True, help="return period in years")
    p.add_argument("--r", type=int, required=True, help="exposure window in years")
    p.set_defaults(func=cmd_return_period)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static-dir", default=None,
                   help="directory of UI assets to serve at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ImpossibleEvidenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FATAL
    except EvidenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
