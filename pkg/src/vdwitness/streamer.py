"""Window streams over infinite colorings and pigeonhole stabilization.

A run harvests one monochromatic cube witness per window and then fixes a
color and a difference sequence shared by infinitely many windows in the
idealized setting -- here, by maximum-multiplicity selection with
deterministic tie-breaks. Survivor sets are nested: S_0 keeps the windows
of the majority color, and S_t refines S_{t-1} to the windows agreeing on
the t-th difference. The reported anchor at depth t comes from the earliest
surviving window, so every depth-t cube is a sub-cube of a single window's
witness and must verify against the oracle directly.

Two window geometries are supported. Proof mode follows the tower
construction: window 1 is [1, W_1], and window m+1 is the stage-m tower over
the W_1-sized interval right after window m, so windows are consecutive,
disjoint, and grow by a factor W_m each step. Search mode uses consecutive
fixed-size windows and solves each by direct cube search under per-dimension
caps. In both modes window m is solved at dimension min(available, depth):
proof-mode window m is a stage-(m-1) tower (stage 1 for m = 1) and deeper
stages than the requested depth are never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    ColorOracle,
    CubeWitness,
    DomainError,
    Interval,
    InvariantViolationError,
    cube_positions,
    materialize,
    verify_witness,
)
from .cubesearch import SearchBounds, find_cube
from .extractor import extract_nonuniform
from .tower import TowerParams, build_tower_interval, tower_params_seq

PROOF = "proof"
SEARCH = "search"


class WindowFailureError(RuntimeError):
    """A window produced no witness; the stream cannot continue soundly."""

    def __init__(self, m: int, window: Interval):
        super().__init__(
            f"window {m} = [{window.lo}, {window.hi}] yielded no witness"
        )
        self.m = m
        self.window = window


@dataclass(frozen=True)
class WindowWitness:
    """One window's monochromatic cube: anchor e, differences ls, color gamma.

    The number of differences equals the dimension the window was solved at,
    which never exceeds the window index."""

    m: int
    e: int
    ls: tuple[int, ...]
    gamma: int
    window: Interval

    @property
    def dim(self) -> int:
        return len(self.ls)


@dataclass(frozen=True)
class StreamState:
    """Stabilized witness stream: nested survivor sets and the fixed color and
    differences they agree on.

    survivor_sets[t] is S_t as a sorted tuple of window indices; sources[t-1]
    is min S_t and anchors[t-1] the corresponding window anchor. The achieved
    depth is len(ds) and can fall short of the request when a survivor set
    runs empty -- that is data, not an error."""

    witnesses: tuple[WindowWitness, ...]
    survivor_sets: tuple[tuple[int, ...], ...]
    gamma: int
    ds: tuple[int, ...]
    anchors: tuple[int, ...]
    sources: tuple[int, ...]

    @property
    def achieved_depth(self) -> int:
        return len(self.ds)


@dataclass(frozen=True)
class DepthRecord:
    n: int
    a: int
    s: int
    positions: tuple[int, ...]
    verified: bool


@dataclass(frozen=True)
class StreamOutcome:
    mode: str
    ks: tuple[int, ...]
    windows: int
    state: StreamState
    depths: tuple[DepthRecord, ...]
    conforming: bool
    skipped: tuple[int, ...]

    def report(self) -> dict:
        return {
            "mode": self.mode,
            "gamma": self.state.gamma,
            "ds": list(self.state.ds),
            "depths": [
                {
                    "n": r.n,
                    "a": r.a,
                    "s": r.s,
                    "positions": list(r.positions),
                    "verified": r.verified,
                }
                for r in self.depths
            ],
            "survivor_sizes": [len(s) for s in self.state.survivor_sets],
            "windows": self.windows,
            "conforming": self.conforming,
        }


def next_window(m: int, prev: Interval, params: TowerParams) -> tuple[Interval, Interval]:
    """Successor geometry: the W_1-sized interval right after window m, and the
    stage-m tower over it, which is window m+1."""
    w1 = params.w(1)
    j_star = Interval(prev.hi + 1, prev.hi + w1)
    return j_star, build_tower_interval(j_star, m, params)


def _proof_stage(m: int) -> int:
    """Tower stage of proof-mode window m (window 1 is the bare base interval)."""
    return 1 if m == 1 else m - 1


def solve_window(
    oracle: ColorOracle,
    window: Interval,
    m: int,
    mode: str,
    *,
    depth: int,
    ks: tuple[int, ...],
    params: TowerParams | None = None,
    base: Interval | None = None,
    caps: SearchBounds | None = None,
    max_cells: int | None = None,
    checked: bool = False,
) -> WindowWitness:
    """Solve one window at dimension min(available, depth).

    Proof mode materializes the dimension-deep prefix of the window's tower
    and runs the block-compression extraction over it (base and params
    required). Search mode runs the direct cube search over the whole window
    under the caps. Raises WindowFailureError when search mode finds nothing.
    """
    if mode == PROOF:
        if params is None or base is None:
            raise DomainError("proof mode needs tower parameters and a base interval")
        dim = min(_proof_stage(m), depth)
        prefix = build_tower_interval(base, dim, params)
        coloring = materialize(oracle, prefix, max_cells)
        w = extract_nonuniform(
            coloring, base, dim, params.ks[:dim], params, checked=checked
        )
    elif mode == SEARCH:
        dim = min(m, depth)
        coloring = materialize(oracle, window, max_cells)
        sub_caps = SearchBounds(caps.caps[:dim]) if caps is not None else None
        w = find_cube(coloring, ks[:dim], sub_caps)
        if w is None:
            raise WindowFailureError(m, window)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    if w.a < window.lo or w.max_position() > window.hi:
        raise InvariantViolationError(
            f"window {m} witness escapes [{window.lo}, {window.hi}]"
        )
    return WindowWitness(m, w.a, w.ds, w.gamma, window)


def stabilize(witnesses: Sequence[WindowWitness], depth: int) -> StreamState:
    """Nested maximum-multiplicity selection over a finite witness stream.

    S_0 keeps the most common witness color (ties to the smaller color); S_t
    keeps, among surviving windows that carry a t-th difference, the most
    common value of it (ties to the smaller value). Selection stops at the
    first empty candidate pool; the achieved depth is however far it got.
    """
    witnesses = tuple(witnesses)
    if not witnesses:
        raise DomainError("cannot stabilize an empty witness stream")
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    by_index = {w.m: w for w in witnesses}
    if len(by_index) != len(witnesses):
        raise DomainError("duplicate window indices in witness stream")

    def majority(items: list[tuple[int, int]]) -> int:
        # items: (value, window index); most frequent value, ties to smaller.
        counts: dict[int, int] = {}
        for value, _ in items:
            counts[value] = counts.get(value, 0) + 1
        return min(counts, key=lambda v: (-counts[v], v))

    gamma = majority([(w.gamma, w.m) for w in witnesses])
    survivors = tuple(sorted(w.m for w in witnesses if w.gamma == gamma))
    sets = [survivors]
    ds: list[int] = []
    for t in range(1, depth + 1):
        pool = [m for m in sets[-1] if by_index[m].dim >= t]
        if not pool:
            break
        value = majority([(by_index[m].ls[t - 1], m) for m in pool])
        sets.append(tuple(m for m in pool if by_index[m].ls[t - 1] == value))
        ds.append(value)
    sources = tuple(s[0] for s in sets[1:])
    anchors = tuple(by_index[s].e for s in sources)
    return StreamState(
        witnesses=witnesses,
        survivor_sets=tuple(sets),
        gamma=gamma,
        ds=tuple(ds),
        anchors=anchors,
        sources=sources,
    )


def run_stream(
    oracle: ColorOracle,
    ks: int | Sequence[int],
    c: int,
    depth: int,
    windows: int,
    mode: str,
    *,
    window_size: int | None = None,
    caps: Sequence[int] | SearchBounds | None = None,
    skip_failures: bool = False,
    search_limit: int | None = None,
    max_bits: int | None = None,
    max_cells: int | None = None,
    checked: bool = False,
) -> StreamOutcome:
    """Drive a full stream: build windows, solve each, stabilize, re-verify.

    ks is one uniform side length or one length per depth (nondecreasing).
    Every reported depth is re-verified against the oracle positionwise, so
    a successful outcome carries its own evidence.
    """
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    if windows < depth:
        raise DomainError(f"{windows} windows cannot reach depth {depth}")
    if isinstance(ks, int):
        ks_seq = (ks,) * depth
    else:
        ks_seq = tuple(ks)
    if len(ks_seq) != depth:
        raise DomainError(f"{len(ks_seq)} side lengths for depth {depth}")
    if oracle.c != c:
        raise DomainError(f"oracle has {oracle.c} colors, expected {c}")
    bounds = SearchBounds.of(caps)
    if mode not in (PROOF, SEARCH):
        raise DomainError(f"unknown mode {mode!r}")
    if mode == SEARCH and (window_size is None or window_size < 1):
        raise DomainError("search mode needs a window size >= 1")

    params: TowerParams | None = None
    if mode == PROOF:
        # Geometry needs stages up to windows-1; extraction never goes past
        # the requested depth. Pad per-stage lengths with the last one, which
        # keeps them nondecreasing.
        stages = max(1, windows - 1, depth)
        padded = ks_seq + (ks_seq[-1],) * (stages - depth)
        params = tower_params_seq(
            padded, c, search_limit=search_limit, max_bits=max_bits
        )

    witnesses: list[WindowWitness] = []
    skipped: list[int] = []
    window: Interval | None = None
    base: Interval | None = None
    for m in range(1, windows + 1):
        if mode == PROOF:
            assert params is not None
            if m == 1:
                base = Interval(1, params.w(1))
                window = base
            else:
                assert window is not None
                base, window = next_window(m - 1, window, params)
        else:
            size = window_size
            assert size is not None
            window = Interval((m - 1) * size + 1, m * size)
        try:
            witnesses.append(
                solve_window(
                    oracle,
                    window,
                    m,
                    mode,
                    depth=depth,
                    ks=ks_seq,
                    params=params,
                    base=base,
                    caps=bounds,
                    max_cells=max_cells,
                    checked=checked,
                )
            )
        except WindowFailureError:
            if not skip_failures:
                raise
            skipped.append(m)
    if not witnesses:
        raise WindowFailureError(windows, window if window is not None else Interval(1, 1))

    state = stabilize(witnesses, depth)
    records = []
    for t in range(1, state.achieved_depth + 1):
        w = CubeWitness(state.gamma, state.anchors[t - 1], state.ds[:t], ks_seq[:t])
        records.append(
            DepthRecord(
                n=t,
                a=state.anchors[t - 1],
                s=state.sources[t - 1],
                positions=cube_positions(w),
                verified=verify_witness(oracle, w),
            )
        )
    return StreamOutcome(
        mode=mode,
        ks=ks_seq,
        windows=windows,
        state=state,
        depths=tuple(records),
        conforming=not skipped,
        skipped=tuple(skipped),
    )
