"""Direct search for monochromatic cubes, and minimal cube numbers.

This module is the independent oracle for the tower extraction: it knows
nothing about towers or block compression and simply enumerates witnesses
(a, d_1, ..., d_n) in lexicographic order. When all side lengths are equal
the cube set is symmetric in its dimensions, so the enumeration restricts
to nondecreasing difference vectors without losing any cube.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import CubeWitness, DomainError, FiniteColoring, LimitError, cube_positions


@dataclass(frozen=True)
class SearchBounds:
    """Per-dimension caps on the differences d_i; absent caps mean domain-bounded."""

    caps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "caps", tuple(self.caps))
        if self.caps and min(self.caps) < 1:
            raise DomainError("difference caps must be >= 1")

    @classmethod
    def of(cls, caps: Sequence[int] | "SearchBounds" | None) -> "SearchBounds | None":
        if caps is None:
            return None
        if isinstance(caps, SearchBounds):
            return caps
        return cls(tuple(caps))

    def cap(self, i: int) -> int | None:
        """Cap for dimension i (0-based); None past the end of the list."""
        return self.caps[i] if i < len(self.caps) else None


class CapExceededError(LimitError):
    """The cube number is not determined within the interval cap."""

    def __init__(self, ks: tuple[int, ...], c: int, cap: int):
        super().__init__(
            f"cube number for sides {list(ks)} with {c} colors exceeds cap {cap}"
        )
        self.ks = ks
        self.c = c
        self.cap = cap


def _validate_ks(ks: Sequence[int]) -> tuple[int, ...]:
    ks = tuple(ks)
    if not ks:
        raise DomainError("need at least one side length")
    if min(ks) < 2:
        raise DomainError("side lengths must be >= 2")
    return ks


def find_cube(
    coloring: FiniteColoring,
    ks: Sequence[int],
    bounds: Sequence[int] | SearchBounds | None = None,
    *,
    distinct: bool = False,
) -> CubeWitness | None:
    """Least monochromatic cube witness, ordered by (a, d_1, ..., d_n).

    With uniform side lengths the differences are enumerated nondecreasing
    (a symmetry cut, not a restriction); distinct=True additionally demands
    strictly increasing differences. Returns None when no witness exists
    within the domain and caps.
    """
    ks = _validate_ks(ks)
    bounds = SearchBounds.of(bounds)
    colors = coloring.colors
    lo, hi = coloring.domain.lo, coloring.domain.hi
    n = len(ks)
    uniform = len(set(ks)) == 1

    def descend(i: int, pts: list[int], prev_d: int, reach: int) -> tuple[int, ...] | None:
        if i == n:
            return ()
        k = ks[i]
        if distinct:
            d_lo = prev_d + 1
        elif uniform:
            d_lo = max(prev_d, 1)
        else:
            d_lo = 1
        d_hi = (hi - reach) // (k - 1)
        cap = bounds.cap(i) if bounds is not None else None
        if cap is not None:
            d_hi = min(d_hi, cap)
        gamma = colors[pts[0] - lo]
        for d in range(d_lo, d_hi + 1):
            grown = list(pts)
            ok = True
            for p in pts:
                for j in range(1, k):
                    q = p + j * d
                    if q > hi or colors[q - lo] != gamma:
                        ok = False
                        break
                    grown.append(q)
                if not ok:
                    break
            if ok:
                rest = descend(i + 1, grown, d, reach + (k - 1) * d)
                if rest is not None:
                    return (d, *rest)
        return None

    for a in range(lo, hi + 1):
        ds = descend(0, [a], 0, a)
        if ds is not None:
            return CubeWitness(colors[a - lo], a, ds, ks)
    return None


def _difference_vectors(span: int, ks: tuple[int, ...], uniform: bool):
    """All difference vectors with total reach sum((k_i-1)*d_i) <= span,
    nondecreasing when the side lengths are uniform."""
    n = len(ks)
    out: list[tuple[int, ...]] = []

    def rec(i: int, prev_d: int, left: int, acc: tuple[int, ...]) -> None:
        if i == n:
            out.append(acc)
            return
        k = ks[i]
        d_lo = prev_d if uniform else 1
        for d in range(max(d_lo, 1), left // (k - 1) + 1):
            rec(i + 1, d, left - (k - 1) * d, acc + (d,))

    rec(0, 1, span, ())
    return out


def _cube_masks(limit: int, ks: tuple[int, ...]) -> list[tuple[int, ...]]:
    """masks[p] = bitmasks of the other positions of every cube whose maximum is p.

    Built through the generic cube expansion so this path shares no structure
    with the progression-tail pruning used for W(k, c).
    """
    uniform = len(set(ks)) == 1
    masks: list[tuple[int, ...]] = [()]
    for p in range(1, limit + 1):
        row = set()
        for ds in _difference_vectors(p - 1, ks, uniform):
            a = p - sum((k - 1) * d for d, k in zip(ds, ks))
            m = 0
            for q in cube_positions(CubeWitness(1, a, ds, ks)):
                m |= 1 << q
            row.add(m & ~(1 << p))
        masks.append(tuple(sorted(row)))
    return masks


def cube_number(ks: Sequence[int], c: int, cap: int) -> int:
    """Least N <= cap such that every c-coloring of [1, N] has a monochromatic
    cube with side lengths ks.

    Exhaustive over colorings up to color renaming: the depth-first extension
    enumerates canonical colorings (colors first used in increasing order)
    and prunes any prefix completing a monochromatic cube at its newest
    position. Raises CapExceededError when a cube-free coloring of the full
    cap length exists. Practical only for small N; the state space is c^N.
    """
    ks = _validate_ks(ks)
    if c < 1:
        raise DomainError(f"number of colors must be >= 1, got {c}")
    if cap < 1:
        raise DomainError(f"cap must be >= 1, got {cap}")
    masks = _cube_masks(cap, ks)
    color = [0] * (cap + 2)
    colmask = [0] * (c + 2)
    used = 0
    best_len = 0
    p = 1
    while p >= 1:
        cand = color[p] + 1
        top = used + 1 if used < c else c
        row = masks[p]
        chosen = 0
        while cand <= top:
            m = colmask[cand]
            for t in row:
                if m & t == t:
                    break
            else:
                chosen = cand
                break
            cand += 1
        if chosen:
            color[p] = chosen
            colmask[chosen] |= 1 << p
            if chosen > used:
                used = chosen
            if p > best_len:
                best_len = p
            if p == cap:
                raise CapExceededError(ks, c, cap)
            p += 1
            color[p] = 0
        else:
            color[p] = 0
            p -= 1
            if p >= 1:
                prev = color[p]
                colmask[prev] &= ~(1 << p)
                if prev == used and colmask[prev] == 0:
                    used -= 1
    return best_len + 1
