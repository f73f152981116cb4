"""Load and save network model documents.

The on-disk format is UTF-8 JSON with a small, explicit schema:

    {
      "format_version": 1,
      "name": "...",
      "nodes": [
        {"id": "...", "label": "...", "states": [...], "parents": [...],
         "cpt": {"columns": [[p, ...], ...],
                 "provenance": ["paper" | "reconstructed", ...]}}
      ],
      "scenarios": [
        {"id": "...", "label": "...", "evidence": {"node": "state"},
         "targets": ["node", ...]}
      ],
      "notes": {"key": "free text", ...}
    }

CPT columns are ordered row-major over the declared parent order, first
parent slowest-varying. Serialization is canonical: keys sorted, nodes in
declaration order, floats rendered shortest round-trip, trailing newline.
Saving the result of a load is therefore byte-stable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .network import (
    BbnError,
    Cpt,
    Network,
    Node,
    ValidationReport,
    validate_network,
)

FORMAT_VERSION = 1


class ModelFormatError(BbnError):
    """The document is not a well-formed, valid model file."""


@dataclass
class Scenario:
    """A named evidence set with the nodes whose posteriors it asks for."""

    id: str
    label: str
    evidence: dict[str, str]
    targets: list[str]


@dataclass
class ModelDocument:
    network: Network
    scenarios: list[Scenario] = field(default_factory=list)
    notes: dict[str, str] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION
    validation: ValidationReport | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ModelFormatError(message)


def _parse_node(raw: object, pos: int) -> Node:
    _require(isinstance(raw, dict), f"nodes[{pos}] is not an object")
    assert isinstance(raw, dict)
    where = raw.get("id", f"nodes[{pos}]")
    for key in ("id", "label", "states", "parents", "cpt"):
        _require(key in raw, f"node '{where}' is missing key '{key}'")
    _require(isinstance(raw["id"], str), f"node '{where}': id must be a string")
    _require(isinstance(raw["states"], list) and all(isinstance(s, str) for s in raw["states"]),
             f"node '{where}': states must be a list of strings")
    _require(isinstance(raw["parents"], list) and all(isinstance(p, str) for p in raw["parents"]),
             f"node '{where}': parents must be a list of strings")
    cpt = raw["cpt"]
    _require(isinstance(cpt, dict) and "columns" in cpt and "provenance" in cpt,
             f"node '{where}': cpt must be an object with 'columns' and 'provenance'")
    columns = cpt["columns"]
    provenance = cpt["provenance"]
    _require(isinstance(columns, list) and all(
        isinstance(c, list) and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)
        for c in columns), f"node '{where}': cpt columns must be lists of numbers")
    _require(isinstance(provenance, list) and all(isinstance(t, str) for t in provenance),
             f"node '{where}': cpt provenance must be a list of strings")
    _require(len(provenance) == len(columns),
             f"node '{where}': {len(columns)} cpt columns but {len(provenance)} provenance tags")
    return Node(
        id=raw["id"],
        label=str(raw["label"]),
        states=list(raw["states"]),
        parents=list(raw["parents"]),
        cpt=Cpt([ [float(x) for x in col] for col in columns ], list(provenance)),
    )


def _parse_scenario(raw: object, pos: int, net: Network) -> Scenario:
    _require(isinstance(raw, dict), f"scenarios[{pos}] is not an object")
    assert isinstance(raw, dict)
    where = raw.get("id", f"scenarios[{pos}]")
    for key in ("id", "evidence", "targets"):
        _require(key in raw, f"scenario '{where}' is missing key '{key}'")
    evidence = raw["evidence"]
    targets = raw["targets"]
    _require(isinstance(evidence, dict), f"scenario '{where}': evidence must be an object")
    _require(isinstance(targets, list), f"scenario '{where}': targets must be a list")
    for node_id, state in evidence.items():
        _require(node_id in net, f"scenario '{where}': unknown node '{node_id}'")
        _require(state in net.node(node_id).states,
                 f"scenario '{where}': node '{node_id}' has no state '{state}'")
    for t in targets:
        _require(t in net, f"scenario '{where}': unknown target node '{t}'")
    return Scenario(
        id=str(raw["id"]),
        label=str(raw.get("label", raw["id"])),
        evidence={str(k): str(v) for k, v in evidence.items()},
        targets=[str(t) for t in targets],
    )


def load_model(text: str, strict: bool = True) -> ModelDocument:
    """Parse and validate a model document.

    Raises ModelFormatError on malformed JSON (with line/column), an
    unsupported format_version, or schema problems. Fatal validation
    findings also raise unless ``strict`` is off, in which case the
    document is returned with the findings attached (for diagnostic
    tooling). Normalization is never applied here.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc

    _require(isinstance(raw, dict), "top-level value must be an object")
    version = raw.get("format_version")
    _require(version == FORMAT_VERSION,
             f"unsupported format_version {version!r} (supported: {FORMAT_VERSION})")
    _require(isinstance(raw.get("nodes"), list), "'nodes' must be a list")

    nodes = [_parse_node(n, i) for i, n in enumerate(raw["nodes"])]
    notes = raw.get("notes", {})
    _require(isinstance(notes, dict) and all(isinstance(v, str) for v in notes.values()),
             "'notes' must be an object of strings")
    net = Network(nodes=nodes, name=str(raw.get("name", "")))

    report = validate_network(net, normalize=False)
    if strict and not report.is_valid:
        details = "; ".join(str(f) for f in report.fatal)
        raise ModelFormatError(f"model failed validation: {details}")

    scenarios = [_parse_scenario(s, i, net) for i, s in enumerate(raw.get("scenarios", []))]
    return ModelDocument(
        network=net,
        scenarios=scenarios,
        notes={str(k): str(v) for k, v in notes.items()},
        format_version=version,
        validation=report,
    )


def _network_payload(net: Network) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "name": net.name,
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "states": list(n.states),
                "parents": list(n.parents),
                "cpt": {
                    "columns": [list(col) for col in n.cpt.columns],
                    "provenance": list(n.cpt.provenance),
                },
            }
            for n in net.nodes
        ],
    }


def save_model(doc: ModelDocument) -> str:
    """Canonical serialization of a model document.

    Deterministic byte output: load(save(doc)) reproduces the document's
    values exactly, and save(load(text)) is byte-stable on its own output.
    """
    payload = _network_payload(doc.network)
    payload["scenarios"] = [
        {
            "id": s.id,
            "label": s.label,
            "evidence": dict(sorted(s.evidence.items())),
            "targets": list(s.targets),
        }
        for s in doc.scenarios
    ]
    payload["notes"] = dict(sorted(doc.notes.items()))
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def model_hash(net: Network) -> str:
    """Content hash of a network: sha256 over its canonical serialization.

    Scenario presets and notes do not affect the hash; only the structure
    and probabilities that determine inference results do.
    """
    canonical = json.dumps(_network_payload(net), sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
