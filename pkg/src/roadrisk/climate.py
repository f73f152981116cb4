"""The bundled Danish road-network climate risk model.

Builds the 28-node network relating four climate drivers (extreme
precipitation, extreme temperature, sea level rise, zero-crossing days)
through hydraulic and structural damage chains to two outcome nodes:
road deterioration and collapse of a culvert/bridge. Three context nodes
(flood-susceptibility level from the Blue Spot screening, road condition,
bridge condition) modulate the chains.

Probabilities are transcribed from the source study's printed tables where
those are legible and internally consistent; every such CPT column is
tagged ``paper``. Columns the print garbles, omits, or that contradict the
study's own reported posteriors are reconstructed here and tagged
``reconstructed``; the calibration targets and every repair are listed in
the model notes. See ``RECONSTRUCTED_COLUMNS`` for the exact set.
"""

from __future__ import annotations

import itertools

from .model_io import Scenario
from .network import Cpt, Network, Node

YN = ["yes", "no"]
BLUE_SPOT_STATES = ["low", "medium", "high"]
ROAD_CONDITION_STATES = ["good", "fair", "poor"]
BRIDGE_CONDITION_STATES = ["g1", "g2", "g3", "g4", "g5"]

MODEL_NAME = "danish_road_climate"

# ---------------------------------------------------------------------------
# Root priors. Precipitation and sea level rise come from the return-period
# formula with T = 100 years and r = 100 years; temperature and
# zero-crossing priors come from the Swedish meteorological projections the
# study cites.
# ---------------------------------------------------------------------------

EXTREME_PRECIPITATION_PRIOR = 0.63
SEA_LEVEL_RISE_PRIOR = 0.63
EXTREME_TEMPERATURE_PRIOR = 0.40
ZERO_CROSSING_PRIOR = 0.22
BLUE_SPOT_PRIOR = [0.30, 0.50, 0.20]

# The study prints a four-state road condition prior summing to 1.21 while
# the deterioration CPT that consumes the node uses three states. The two
# best printed grades are merged and the vector renormalized.
ROAD_CONDITION_PRIOR_RAW = [0.57, 0.57, 0.07]

# The bridge condition prior is not printed consistently (the four-state
# column sums to 1.51 against a five-grade CPT). Reconstructed as a
# monotone-decreasing vector calibrated so the no-evidence collapse
# posterior lands on the study's reported 48%.
BRIDGE_CONDITION_PRIOR = [0.62, 0.18, 0.10, 0.06, 0.04]

# ---------------------------------------------------------------------------
# Single-parent yes/no links, written as (P(yes | parent=yes),
# P(yes | parent=no)). Most pairs are legible in the printed tables. For
# four links on the landslide/pothole chains the printed no-cause column is
# incompatible with the study's reported baseline risk (it puts a hard
# floor of ~0.46 under road deterioration, against a reported 0.34); those
# leak values are reconstructed downward, consistent with the 0.00/0.01
# leaks the same tables print for sibling links, and tagged accordingly.
# ---------------------------------------------------------------------------

CHAIN_LINKS: dict[str, tuple[str, float, float, bool]] = {
    # child: (parent, p_yes_given_yes, p_yes_given_no, leak_reconstructed)
    "mudslides": ("extreme_precipitation", 0.20, 0.00, False),
    "early_melting_of_snow": ("extreme_temperature", 0.90, 0.00, False),
    "sediment_deposition": ("mudslides", 0.70, 0.10, False),
    "hydraulic_capacity_shortage": ("flooding", 0.60, 0.10, False),
    "scouring_at_bridge_culvert": ("flooding", 0.60, 0.10, False),
    "increase_in_thermal_strain": ("extreme_temperature", 0.30, 0.01, False),
    "culvert_clogging": ("sediment_deposition", 0.40, 0.01, False),
    "premature_pavement_deterioration": ("extreme_temperature", 0.30, 0.20, False),
    "road_embankment_landslide": ("embankment_erosion", 0.80, 0.015, True),
    "displacement_of_bridge_component": ("scouring_at_bridge_culvert", 0.70, 0.30, False),
    "structural_deterioration": ("increase_in_thermal_strain", 0.40, 0.30, False),
    "increase_in_freeze_thaw_cycles": ("zero_crossing", 0.70, 0.30, False),
    "potholes_on_road_structures": ("increase_in_freeze_thaw_cycles", 0.40, 0.02, True),
    "natural_slope_instability": ("increase_in_freeze_thaw_cycles", 0.40, 0.03, True),
    "natural_landslide": ("natural_slope_instability", 0.90, 0.015, True),
}

# ---------------------------------------------------------------------------
# Flooding: no legible CPT column exists in print. Noisy-OR over the three
# hydraulic causes, with the Blue Spot level scaling both the per-cause
# activation strengths and the leak. Calibrated against the study's
# reported baseline and worst-case posteriors. All 24 columns are
# reconstructed.
# ---------------------------------------------------------------------------

FLOOD_PARENTS = ["extreme_precipitation", "early_melting_of_snow", "sea_level_rise"]
FLOOD_CAUSE_STRENGTH = {
    "extreme_precipitation": 0.22,
    "early_melting_of_snow": 0.14,
    "sea_level_rise": 0.11,
}
FLOOD_BLUE_SPOT_FACTOR = {"low": 0.75, "medium": 1.00, "high": 1.25}
FLOOD_LEAK = {"low": 0.01, "medium": 0.015, "high": 0.03}

# ---------------------------------------------------------------------------
# Two-parent tables where the print shows only the first two of four
# columns (yes-rows 0.70/0.60 for embankment erosion, 0.99/0.90 for
# overtopping). The missing columns are filled keeping the printed
# dominance of the first parent; fills are reconstructed.
# ---------------------------------------------------------------------------

EMBANKMENT_EROSION_YES = [0.70, 0.60, 0.25, 0.02]   # (flooding, mudslides) = yy, yn, ny, nn
OVERTOPPING_YES = [0.99, 0.90, 0.90, 0.01]          # (hydraulic shortage, clogging)

# Pavement damage: the full 8-column yes-row is printed.
# Parents (overtopping, premature pavement deterioration, sea level rise),
# row-major, first parent slowest.
PAVEMENT_DAMAGE_YES = [0.7, 0.7, 0.3, 0.3, 0.2, 0.2, 0.01, 0.01]

# ---------------------------------------------------------------------------
# Road deterioration: all 48 printed columns are legible and carried as-is.
# Parents (pavement damage, road embankment landslide, natural landslide,
# potholes, road condition), row-major, first parent slowest; each triple
# spans road condition (good, fair, poor).
# ---------------------------------------------------------------------------

ROAD_DETERIORATION_YES = [
    # pavement damage = yes
    0.99, 0.99, 0.99,  0.90, 0.95, 0.99,  0.90, 0.95, 0.99,  0.90, 0.95, 0.99,
    0.70, 0.80, 0.99,  0.60, 0.70, 0.90,  0.40, 0.60, 0.90,  0.30, 0.50, 0.80,
    # pavement damage = no
    0.95, 0.99, 0.99,  0.90, 0.99, 0.99,  0.95, 0.99, 0.99,  0.90, 0.99, 0.99,
    0.70, 0.80, 0.90,  0.60, 0.70, 0.80,  0.20, 0.50, 0.60,  0.01, 0.10, 0.50,
]

# ---------------------------------------------------------------------------
# Collapse of culvert/bridge. Parents (displacement of bridge component,
# structural deterioration, bridge condition grade g1..g5). Only the
# both-causes row is printed cleanly (0.2 .. 0.99 across grades); the other
# three parent contexts are garbled in print and reconstructed as flatter
# monotone rows whose scale is pinned by the study's reported grade gap
# (roughly 44 points between g5 and g1 under the worst-case climate).
# ---------------------------------------------------------------------------

COLLAPSE_YES = {
    ("yes", "yes"): [0.20, 0.40, 0.60, 0.80, 0.99],   # printed
    ("yes", "no"): [0.52, 0.63, 0.74, 0.85, 0.97],    # reconstructed
    ("no", "yes"): [0.42, 0.54, 0.66, 0.79, 0.92],    # reconstructed
    ("no", "no"): [0.38, 0.47, 0.55, 0.64, 0.72],     # reconstructed
}

OUTCOME_NODES = ["road_deterioration", "collapse_of_culvert_bridge"]

#: Expected reconstructed column indices per node, used to guard against
#: silent drift of the provenance tagging. Nodes not listed are fully
#: paper-tagged.
RECONSTRUCTED_COLUMNS: dict[str, list[int]] = {
    "road_condition": [0],
    "bridge_condition": [0],
    "flooding": list(range(24)),
    "embankment_erosion": [2, 3],
    "overtopping": [2, 3],
    "road_embankment_landslide": [1],
    "potholes_on_road_structures": [1],
    "natural_slope_instability": [1],
    "natural_landslide": [1],
    "collapse_of_culvert_bridge": list(range(5, 20)),
}


def return_period_probability(T: float, r: int) -> float:
    """Probability that an event with return period ``T`` years occurs at
    least once in an exposure window of ``r`` years: 1 - (1 - 1/T)^r.

    Strictly decreasing in T for fixed r and strictly increasing in r for
    fixed T; equals 1 when T == 1.
    """
    if T < 1:
        raise ValueError(f"return period T must be >= 1 year, got {T}")
    if r < 1:
        raise ValueError(f"exposure window r must be >= 1 year, got {r}")
    return 1.0 - (1.0 - 1.0 / T) ** r


def _root(node_id: str, label: str, states: list[str], prior: list[float],
          provenance: str = "paper") -> Node:
    return Node(node_id, label, list(states), [], Cpt([list(prior)], [provenance]))


def _yn_root(node_id: str, label: str, p_yes: float) -> Node:
    return _root(node_id, label, YN, [p_yes, 1.0 - p_yes])


def _yn_link(node_id: str, label: str, parent: str, p_yy: float, p_yn: float,
             leak_reconstructed: bool) -> Node:
    provenance = ["paper", "reconstructed" if leak_reconstructed else "paper"]
    return Node(node_id, label, YN, [parent],
                Cpt([[p_yy, 1.0 - p_yy], [p_yn, 1.0 - p_yn]], provenance))


def _yes_columns(yes_row: list[float], provenance: list[str]) -> Cpt:
    return Cpt([[y, 1.0 - y] for y in yes_row], provenance)


def _flooding_node() -> Node:
    columns = []
    for ep, ems, slr in itertools.product(YN, YN, YN):
        present = [cause for cause, value in
                   zip(FLOOD_PARENTS, (ep, ems, slr)) if value == "yes"]
        for blue in BLUE_SPOT_STATES:
            survive = 1.0 - FLOOD_LEAK[blue]
            for cause in present:
                survive *= 1.0 - FLOOD_BLUE_SPOT_FACTOR[blue] * FLOOD_CAUSE_STRENGTH[cause]
            columns.append([1.0 - survive, survive])
    return Node(
        "flooding", "Flooding", YN, FLOOD_PARENTS + ["blue_spot"],
        Cpt(columns, ["reconstructed"] * len(columns)),
    )


def _label(node_id: str) -> str:
    overrides = {
        "blue_spot": "Blue Spot flood level",
        "collapse_of_culvert_bridge": "Collapse of culvert/bridge",
        "scouring_at_bridge_culvert": "Scouring at bridge/culvert",
        "increase_in_freeze_thaw_cycles": "Increase in freeze-thaw cycles",
    }
    if node_id in overrides:
        return overrides[node_id]
    return node_id.replace("_", " ").capitalize()


def build_danish_road_network() -> Network:
    """Construct the 28-node model. The returned network validates with no
    fatal findings and no pending normalization."""
    road_prior_sum = sum(ROAD_CONDITION_PRIOR_RAW)
    nodes = [
        _yn_root("extreme_precipitation", _label("extreme_precipitation"),
                 EXTREME_PRECIPITATION_PRIOR),
        _yn_root("extreme_temperature", _label("extreme_temperature"),
                 EXTREME_TEMPERATURE_PRIOR),
        _yn_root("sea_level_rise", _label("sea_level_rise"), SEA_LEVEL_RISE_PRIOR),
        _yn_root("zero_crossing", _label("zero_crossing"), ZERO_CROSSING_PRIOR),
        _root("blue_spot", _label("blue_spot"), BLUE_SPOT_STATES, BLUE_SPOT_PRIOR),
        _root("road_condition", "Road condition", ROAD_CONDITION_STATES,
              [x / road_prior_sum for x in ROAD_CONDITION_PRIOR_RAW], "reconstructed"),
        _root("bridge_condition", "Bridge condition (g1 proper .. g5 not usable)",
              BRIDGE_CONDITION_STATES, BRIDGE_CONDITION_PRIOR, "reconstructed"),
        _flooding_node(),
        Node("embankment_erosion", _label("embankment_erosion"), YN,
             ["flooding", "mudslides"],
             _yes_columns(EMBANKMENT_EROSION_YES,
                          ["paper", "paper", "reconstructed", "reconstructed"])),
        Node("overtopping", _label("overtopping"), YN,
             ["hydraulic_capacity_shortage", "culvert_clogging"],
             _yes_columns(OVERTOPPING_YES,
                          ["paper", "paper", "reconstructed", "reconstructed"])),
        Node("pavement_damage", _label("pavement_damage"), YN,
             ["overtopping", "premature_pavement_deterioration", "sea_level_rise"],
             _yes_columns(PAVEMENT_DAMAGE_YES, ["paper"] * 8)),
        Node("road_deterioration", _label("road_deterioration"), YN,
             ["pavement_damage", "road_embankment_landslide", "natural_landslide",
              "potholes_on_road_structures", "road_condition"],
             _yes_columns(ROAD_DETERIORATION_YES, ["paper"] * 48)),
        Node("collapse_of_culvert_bridge", _label("collapse_of_culvert_bridge"), YN,
             ["displacement_of_bridge_component", "structural_deterioration",
              "bridge_condition"],
             _yes_columns(
                 [p for ctx in itertools.product(YN, YN) for p in COLLAPSE_YES[ctx]],
                 ["paper"] * 5 + ["reconstructed"] * 15)),
    ]
    for child, (parent, p_yy, p_yn, leak_rec) in CHAIN_LINKS.items():
        nodes.append(_yn_link(child, _label(child), parent, p_yy, p_yn, leak_rec))

    # Keep a stable declaration order: roots, context, then the causal
    # chains in rough topological groups, outcomes last.
    order = [
        "extreme_precipitation", "extreme_temperature", "sea_level_rise",
        "zero_crossing", "blue_spot", "road_condition", "bridge_condition",
        "mudslides", "early_melting_of_snow", "flooding", "sediment_deposition",
        "hydraulic_capacity_shortage", "scouring_at_bridge_culvert",
        "increase_in_thermal_strain", "culvert_clogging",
        "premature_pavement_deterioration", "embankment_erosion",
        "road_embankment_landslide", "displacement_of_bridge_component",
        "structural_deterioration", "increase_in_freeze_thaw_cycles",
        "potholes_on_road_structures", "natural_slope_instability",
        "natural_landslide", "overtopping", "pavement_damage",
        "road_deterioration", "collapse_of_culvert_bridge",
    ]
    by_id = {n.id: n for n in nodes}
    return Network(nodes=[by_id[i] for i in order], name=MODEL_NAME)


def preset_scenarios() -> list[Scenario]:
    """The what-if presets shipped with the model."""
    worst_roots = {
        "extreme_precipitation": "yes",
        "extreme_temperature": "yes",
        "sea_level_rise": "yes",
        "zero_crossing": "yes",
    }
    return [
        Scenario("baseline", "Baseline (no evidence)", {}, list(OUTCOME_NODES)),
        Scenario("worst_case_roots", "All climate drivers on",
                 dict(worst_roots), list(OUTCOME_NODES)),
        Scenario("worst_case_full", "Climate drivers on, worst asset condition",
                 {**worst_roots, "road_condition": "poor", "bridge_condition": "g5"},
                 list(OUTCOME_NODES)),
    ]


def model_notes() -> dict[str, str]:
    """Provenance notes embedded in the shipped model file."""
    return {
        "edges": (
            "The arc set follows the study's narrative description; the "
            "figure rendering of the graph was not usable as a source."
        ),
        "road_condition_prior": (
            "Printed prior has four states summing to 1.21 while the "
            "consuming CPT uses three; the two best grades were merged to "
            "(0.57, 0.57, 0.07) and the vector normalized. Reconstructed."
        ),
        "bridge_condition_prior": (
            "Printed prior is four states summing to 1.51 against a "
            "five-grade CPT. Reconstructed as a monotone-decreasing vector "
            "calibrated to the reported 48% baseline collapse risk."
        ),
        "flooding_cpt": (
            "No legible printed column. Noisy-OR over precipitation, early "
            "snow melt and sea level rise, with the Blue Spot level scaling "
            "activation strengths and leak. Reconstructed and calibrated."
        ),
        "chain_leaks": (
            "The printed no-cause columns for road_embankment_landslide, "
            "potholes_on_road_structures, natural_slope_instability and "
            "natural_landslide (0.10/0.20/0.30/0.10) are incompatible with "
            "the reported baseline posteriors: they alone force road "
            "deterioration above 0.46 with every other input at its floor. "
            "Reconstructed as small leaks in line with the 0.00/0.01 leaks "
            "printed for neighbouring links."
        ),
        "embankment_overtopping_fills": (
            "Only two of four columns printed for embankment_erosion and "
            "overtopping; missing columns filled preserving first-parent "
            "dominance. Reconstructed."
        ),
        "collapse_cpt": (
            "Only the displacement+deterioration row is printed cleanly "
            "(0.2..0.99 over grades g1..g5). The other three contexts are "
            "reconstructed as flatter monotone rows scaled to the reported "
            "g5-g1 risk gap of about 44 points under worst-case climate."
        ),
        "calibration_targets": (
            "No-evidence outcomes near 0.34 (road deterioration) and 0.48 "
            "(collapse); worst-case scenario near 0.73 and 0.86; mean g5-g1 "
            "collapse gap near 0.44 across Blue Spot levels."
        ),
    }


def build_model_document():
    """Complete shippable document: network, presets, and notes."""
    from .model_io import ModelDocument

    return ModelDocument(
        network=build_danish_road_network(),
        scenarios=preset_scenarios(),
        notes=model_notes(),
    )
