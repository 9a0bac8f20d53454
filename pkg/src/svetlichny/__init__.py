"""Tripartite entanglement (3-tangle) versus genuine tripartite nonlocality
(Svetlichny inequality violation) for 3-qubit pure states."""

from .bell import (
    DPrimeSetting,
    Direction,
    SvetlichnySetting,
    bb_from_dd,
    chsh_operator,
    expectation,
    svetlichny_operator,
)
from .entanglement import (
    EntanglementSummary,
    concurrence_one_vs_rest,
    concurrence_pair,
    summary,
    three_tangle,
)
from .maximize import (
    BoundReport,
    OptResult,
    chsh_max_pair,
    gghz_xy_setting,
    maximize_svetlichny,
    optimal_setting_gghz,
    optimal_setting_ms,
    smax_gghz_analytic,
    smax_ms_analytic,
    verify_family_bounds,
)
from .shots import (
    CorrelatorEstimate,
    TauEstimate,
    estimate_correlator,
    estimate_svetlichny,
    estimate_tau_gghz,
    sample_outcomes,
)
from .states import (
    Family,
    FamilyParams,
    PureState3,
    from_amplitudes,
    gghz,
    make_state,
    maximal_slice,
    states_equal,
    swap_qubits,
    three_param,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CorrelatorEstimate",
    "DPrimeSetting",
    "Direction",
    "EntanglementSummary",
    "Family",
    "FamilyParams",
    "OptResult",
    "PureState3",
    "SvetlichnySetting",
    "TauEstimate",
    "bb_from_dd",
    "chsh_max_pair",
    "chsh_operator",
    "concurrence_one_vs_rest",
    "concurrence_pair",
    "estimate_correlator",
    "estimate_svetlichny",
    "estimate_tau_gghz",
    "expectation",
    "from_amplitudes",
    "gghz",
    "gghz_xy_setting",
    "make_state",
    "maximal_slice",
    "maximize_svetlichny",
    "optimal_setting_gghz",
    "optimal_setting_ms",
    "sample_outcomes",
    "smax_gghz_analytic",
    "smax_ms_analytic",
    "states_equal",
    "summary",
    "svetlichny_operator",
    "swap_qubits",
    "three_param",
    "three_tangle",
    "verify_family_bounds",
]
