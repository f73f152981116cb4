"""Exact inference for discrete Bayesian networks, bundled with a
climate-risk model of a national road network and tooling to run
what-if scenarios over it."""

from .climate import (
    build_danish_road_network,
    preset_scenarios,
    return_period_probability,
)
from .factors import Factor, factor_marginalize, factor_product, factor_reduce, unit_factor
from .inference import (
    DEFAULT_STATE_SPACE_CAP,
    ImpossibleEvidenceError,
    StateSpaceError,
    all_posteriors,
    eliminate_posterior,
    enumerate_posterior,
    joint_probability,
    min_fill_order,
    posterior,
)
from .model_io import (
    ModelDocument,
    ModelFormatError,
    Scenario,
    load_model,
    model_hash,
    save_model,
)
from .network import (
    BbnError,
    Cpt,
    CycleError,
    Distribution,
    Evidence,
    EvidenceError,
    Network,
    Node,
    ValidationReport,
    check_evidence,
    topological_order,
    validate_network,
)
from .scenarios import (
    GapSummary,
    PosteriorReport,
    SweepTable,
    condition_gap,
    export_table,
    run_scenario,
    sweep,
)

__version__ = "0.1.0"
