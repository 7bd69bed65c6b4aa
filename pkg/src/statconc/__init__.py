"""statconc: exact simulator of statistics-driven entanglement concentration.

Two partially entangled n-particle pairs are converted into one more
entangled pair using nothing but particle statistics: spin flips, 50/50
beam splitters, and post-selected path measurements.  The package tracks
sparse second-quantized states exactly (fermions and bosons), reproduces
the protocol's closed-form probabilities and limits, and ships analysis
and Monte Carlo validation tools plus a CLI (`statconc`).
"""

from .analysis import EfficiencyRow, McReport, efficiency_table, monte_carlo
from .fock import (
    Location,
    Mode,
    Pair,
    Party,
    SparseState,
    Spin,
    Statistics,
    annihilate,
    create,
    from_modes,
    inner_product,
    normalize,
    scale_add,
    vacuum,
)
from .optics import (
    DetectorModel,
    MeasurementResult,
    OutcomeKind,
    PathOutcome,
    beam_splitter,
    flip_spins,
    measure_path,
    post_select,
)
from .protocol import (
    ProtocolConfig,
    ProtocolReport,
    RoundRecord,
    build_pair_state,
    build_total_state,
    closed_form_cumulative,
    closed_form_efficiency,
    closed_form_p1,
    limit_state_check,
    run_protocol,
)
from .schmidt import entanglement_entropy

__all__ = [
    "DetectorModel",
    "EfficiencyRow",
    "Location",
    "McReport",
    "MeasurementResult",
    "Mode",
    "OutcomeKind",
    "Pair",
    "Party",
    "PathOutcome",
    "ProtocolConfig",
    "ProtocolReport",
    "RoundRecord",
    "SparseState",
    "Spin",
    "Statistics",
    "annihilate",
    "beam_splitter",
    "build_pair_state",
    "build_total_state",
    "closed_form_cumulative",
    "closed_form_efficiency",
    "closed_form_p1",
    "create",
    "efficiency_table",
    "entanglement_entropy",
    "flip_spins",
    "from_modes",
    "inner_product",
    "limit_state_check",
    "measure_path",
    "monte_carlo",
    "normalize",
    "post_select",
    "run_protocol",
    "scale_add",
    "vacuum",
]

__version__ = "0.1.0"
