"""Witness engine for monochromatic arithmetic structure in colorings of the
positive integers: exact van der Waerden numbers, interval towers,
constructive cube extraction, direct cube search, and stabilized window
streams over infinite colorings."""

from .core import (
    ColorOracle,
    ConstantOracle,
    CubeWitness,
    DomainError,
    EventuallyPeriodicOracle,
    FiniteColoring,
    Interval,
    InvariantViolationError,
    LimitError,
    MaterializationLimitError,
    PeriodicOracle,
    PrefixOracle,
    SeededRandomOracle,
    ThueMorseOracle,
    cube_positions,
    find_violation,
    materialize,
    translate,
    verify_witness,
)
from .cubesearch import CapExceededError, SearchBounds, cube_number, find_cube
from .extractor import CompressedColoring, compress, extract, extract_nonuniform
from .streamer import (
    StreamOutcome,
    StreamState,
    WindowFailureError,
    WindowWitness,
    next_window,
    run_stream,
    solve_window,
    stabilize,
)
from .tower import (
    TowerParams,
    TowerUncomputableError,
    block,
    build_tower_interval,
    check_translation_identity,
    tower_params,
    tower_params_seq,
    tower_report,
)
from .wnumbers import (
    SearchLimitError,
    WNumberResult,
    find_ap,
    vdw_number,
    vdw_number_by_search,
    vdw_value,
    verify_ap_free,
)

__all__ = [
    "CapExceededError",
    "ColorOracle",
    "CompressedColoring",
    "ConstantOracle",
    "CubeWitness",
    "DomainError",
    "EventuallyPeriodicOracle",
    "FiniteColoring",
    "Interval",
    "InvariantViolationError",
    "LimitError",
    "MaterializationLimitError",
    "PeriodicOracle",
    "PrefixOracle",
    "SearchBounds",
    "SearchLimitError",
    "SeededRandomOracle",
    "StreamOutcome",
    "StreamState",
    "ThueMorseOracle",
    "TowerParams",
    "TowerUncomputableError",
    "WNumberResult",
    "WindowFailureError",
    "WindowWitness",
    "block",
    "build_tower_interval",
    "check_translation_identity",
    "compress",
    "cube_number",
    "cube_positions",
    "extract",
    "extract_nonuniform",
    "find_ap",
    "find_cube",
    "find_violation",
    "materialize",
    "next_window",
    "run_stream",
    "solve_window",
    "stabilize",
    "tower_params",
    "tower_params_seq",
    "tower_report",
    "translate",
    "vdw_number",
    "vdw_number_by_search",
    "vdw_value",
    "verify_ap_free",
    "verify_witness",
]
