"""Shared domain model: intervals, finite colorings, infinite coloring oracles,
and monochromatic cube witnesses.

Positions are 1-based positive integers throughout; colors are 1-based
integers drawn from [1..c]. Every type here is immutable after construction
and every operation is a pure function.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_MAX_CELLS = 1 << 26


class DomainError(ValueError):
    """A malformed input or an out-of-domain access (distinct from a negative result)."""


class LimitError(RuntimeError):
    """A configured resource limit was reached before the computation resolved."""


class MaterializationLimitError(LimitError):
    """Refusing to build a dense coloring larger than the cell limit."""


class InvariantViolationError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


def max_cells_limit(explicit: int | None = None) -> int:
    """Cell cap for dense colorings: explicit argument, else VDW_MAX_CELLS, else 2^26."""
    if explicit is not None:
        if explicit < 1:
            raise DomainError(f"cell limit must be >= 1, got {explicit}")
        return explicit
    env = os.environ.get("VDW_MAX_CELLS")
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise DomainError(f"VDW_MAX_CELLS is not an integer: {env!r}") from exc
        if value < 1:
            raise DomainError(f"VDW_MAX_CELLS must be >= 1, got {value}")
        return value
    return DEFAULT_MAX_CELLS


@dataclass(frozen=True)
class Interval:
    """Contiguous range [lo, hi] of positive integers with 1-based element access."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1:
            raise DomainError(f"interval start must be >= 1, got {self.lo}")
        if self.hi < self.lo:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    def size(self) -> int:
        return self.hi - self.lo + 1

    def element(self, i: int) -> int:
        """The i-th element, 1 <= i <= size()."""
        if not 1 <= i <= self.size():
            raise DomainError(f"index {i} outside [1, {self.size()}]")
        return self.lo + i - 1

    def __contains__(self, p: int) -> bool:
        return self.lo <= p <= self.hi


def translate(iv: Interval, b: int) -> Interval:
    """Shift an interval upward by b >= 0."""
    if b < 0:
        raise DomainError(f"translation must be non-negative, got {b}")
    return Interval(iv.lo + b, iv.hi + b)


@dataclass(frozen=True)
class FiniteColoring:
    """A c-coloring of an interval, stored densely by domain position."""

    c: int
    domain: Interval
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.c < 1:
            raise DomainError(f"number of colors must be >= 1, got {self.c}")
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != self.domain.size():
            raise DomainError(
                f"{len(self.colors)} colors for a domain of {self.domain.size()} cells"
            )
        if min(self.colors) < 1 or max(self.colors) > self.c:
            raise DomainError(f"colors must lie in [1, {self.c}]")

    def color_at(self, p: int) -> int:
        if p not in self.domain:
            raise DomainError(
                f"position {p} outside domain [{self.domain.lo}, {self.domain.hi}]"
            )
        return self.colors[p - self.domain.lo]

    def restrict(self, iv: Interval) -> "FiniteColoring":
        """The same coloring on a sub-interval of the domain."""
        if iv.lo not in self.domain or iv.hi not in self.domain:
            raise DomainError(
                f"[{iv.lo}, {iv.hi}] is not inside [{self.domain.lo}, {self.domain.hi}]"
            )
        off = iv.lo - self.domain.lo
        return FiniteColoring(self.c, iv, self.colors[off : off + iv.size()])


class ColorOracle:
    """A deterministic coloring of all positive integers with finitely many colors.

    Subclasses implement _color(p); repeated queries at the same position always
    return the same value, so oracles are safe to query in any order.
    """

    c: int

    def color_at(self, p: int) -> int:
        if p < 1:
            raise DomainError(f"positions start at 1, got {p}")
        return self._color(p)

    def _color(self, p: int) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantOracle(ColorOracle):
    gamma: int
    c: int | None = None

    def __post_init__(self) -> None:
        if self.gamma < 1:
            raise DomainError(f"color must be >= 1, got {self.gamma}")
        if self.c is None:
            object.__setattr__(self, "c", self.gamma)
        elif self.c < self.gamma:
            raise DomainError(f"constant color {self.gamma} exceeds palette size {self.c}")

    def _color(self, p: int) -> int:
        return self.gamma


@dataclass(frozen=True)
class PeriodicOracle(ColorOracle):
    pattern: tuple[int, ...]
    c: int | None = None

    def __post_init__(self) -> None:
        pattern = tuple(self.pattern)
        object.__setattr__(self, "pattern", pattern)
        if not pattern:
            raise DomainError("empty period pattern")
        if min(pattern) < 1:
            raise DomainError("pattern colors must be >= 1")
        if self.c is None:
            object.__setattr__(self, "c", max(pattern))
        elif self.c < max(pattern):
            raise DomainError(f"pattern uses colors beyond palette size {self.c}")

    def _color(self, p: int) -> int:
        return self.pattern[(p - 1) % len(self.pattern)]


@dataclass(frozen=True)
class EventuallyPeriodicOracle(ColorOracle):
    prefix: tuple[int, ...]
    pattern: tuple[int, ...]
    c: int | None = None

    def __post_init__(self) -> None:
        prefix = tuple(self.prefix)
        pattern = tuple(self.pattern)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "pattern", pattern)
        if not pattern:
            raise DomainError("empty period pattern")
        used = max(pattern) if not prefix else max(max(prefix), max(pattern))
        if (prefix and min(prefix) < 1) or min(pattern) < 1:
            raise DomainError("colors must be >= 1")
        if self.c is None:
            object.__setattr__(self, "c", used)
        elif self.c < used:
            raise DomainError(f"colors beyond palette size {self.c}")

    def _color(self, p: int) -> int:
        if p <= len(self.prefix):
            return self.prefix[p - 1]
        return self.pattern[(p - 1 - len(self.prefix)) % len(self.pattern)]


@dataclass(frozen=True)
class ThueMorseOracle(ColorOracle):
    """Color 1 + (popcount(p-1) mod 2): the Thue-Morse word over two colors."""

    c: int = 2

    def __post_init__(self) -> None:
        if self.c != 2:
            raise DomainError("the Thue-Morse oracle uses exactly 2 colors")

    def _color(self, p: int) -> int:
        return 1 + ((p - 1).bit_count() & 1)


_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeededRandomOracle(ColorOracle):
    """Pseudo-random coloring keyed by (seed, position) so queries are order-independent."""

    seed: int
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise DomainError(f"number of colors must be >= 1, got {self.c}")

    def _color(self, p: int) -> int:
        x = _splitmix64(self.seed & _MASK64)
        q = p - 1
        while True:
            x = _splitmix64(x ^ (q & _MASK64))
            q >>= 64
            if not q:
                break
        return 1 + x % self.c


@dataclass(frozen=True)
class PrefixOracle(ColorOracle):
    """A finite coloring on its own domain, a fixed default color everywhere else."""

    coloring: FiniteColoring
    default: int
    c: int | None = None

    def __post_init__(self) -> None:
        if self.default < 1:
            raise DomainError(f"default color must be >= 1, got {self.default}")
        used = max(self.coloring.c, self.default)
        if self.c is None:
            object.__setattr__(self, "c", used)
        elif self.c < used:
            raise DomainError(f"colors beyond palette size {self.c}")

    def _color(self, p: int) -> int:
        if p in self.coloring.domain:
            return self.coloring.color_at(p)
        return self.default


@dataclass(frozen=True)
class CubeWitness:
    """A monochromatic combinatorial cube: color gamma on {a + sum j_i*d_i : 0 <= j_i <= k_i-1}.

    Coinciding position sums are allowed and collapse; the witness set is
    whatever the expansion actually hits.
    """

    gamma: int
    a: int
    ds: tuple[int, ...]
    ks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ds", tuple(self.ds))
        object.__setattr__(self, "ks", tuple(self.ks))
        if self.gamma < 1:
            raise DomainError(f"color must be >= 1, got {self.gamma}")
        if self.a < 1:
            raise DomainError(f"anchor must be >= 1, got {self.a}")
        if len(self.ds) != len(self.ks) or not self.ds:
            raise DomainError("ds and ks must be nonempty and of equal length")
        if min(self.ds) < 1:
            raise DomainError("all differences must be >= 1")
        if min(self.ks) < 2:
            raise DomainError("all side lengths must be >= 2")

    @property
    def dim(self) -> int:
        return len(self.ds)

    def positions(self) -> tuple[int, ...]:
        return cube_positions(self)

    def max_position(self) -> int:
        return self.a + sum((k - 1) * d for d, k in zip(self.ds, self.ks))


def cube_positions(w: CubeWitness) -> tuple[int, ...]:
    """Sorted, deduplicated expansion of the cube set."""
    pts = {w.a}
    for d, k in zip(w.ds, w.ks):
        pts = {p + j * d for p in pts for j in range(k)}
    return tuple(sorted(pts))


def find_violation(
    source: FiniteColoring | ColorOracle, w: CubeWitness
) -> tuple[int, int] | None:
    """First cube position (in sorted order) whose color differs from w.gamma.

    For a finite coloring, every cube position must lie inside the domain;
    an out-of-domain position raises DomainError rather than counting as a
    mismatch.
    """
    pts = cube_positions(w)
    if isinstance(source, FiniteColoring):
        dom = source.domain
        for p in pts:
            if p not in dom:
                raise DomainError(
                    f"cube position {p} outside domain [{dom.lo}, {dom.hi}]"
                )
    for p in pts:
        col = source.color_at(p)
        if col != w.gamma:
            return (p, col)
    return None


def verify_witness(source: FiniteColoring | ColorOracle, w: CubeWitness) -> bool:
    """True iff every cube position has color w.gamma under the source."""
    return find_violation(source, w) is None


def materialize(
    oracle: ColorOracle, interval: Interval, max_cells: int | None = None
) -> FiniteColoring:
    """Evaluate an oracle over an interval as a dense coloring, subject to the cell cap."""
    limit = max_cells_limit(max_cells)
    if interval.size() > limit:
        raise MaterializationLimitError(
            f"{interval.size()} cells exceed the materialization limit {limit}"
        )
    colors = tuple(oracle.color_at(p) for p in range(interval.lo, interval.hi + 1))
    return FiniteColoring(oracle.c, interval, colors)
