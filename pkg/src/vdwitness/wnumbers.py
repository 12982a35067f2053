"""Exact van der Waerden numbers W(k, c) with extremal certificate colorings.

W(k, c) is the least n such that every c-coloring of [1, n] contains a
monochromatic k-term arithmetic progression. The search is a depth-first
extension of colorings position by position, pruning any prefix that
completes a monochromatic k-AP at its newest position, restricted to
canonical colorings (colors appear in order of first use). Canonical
restriction is exhaustive up to renaming and the lexicographically least
AP-free coloring is itself canonical, so the first coloring the search
reaches at the extremal length is the lexicographically least one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import DomainError, FiniteColoring, Interval, LimitError

DEFAULT_SEARCH_LIMIT = 128

# (k, c) -> (value, certificate colors); filled by searches in this process.
_MEMO: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}


class SearchLimitError(LimitError):
    """The search reached the position limit without resolving W(k, c)."""

    def __init__(self, k: int, c: int, limit: int):
        super().__init__(
            f"W({k},{c}) not resolved within {limit} positions: an AP-free "
            f"coloring of that length exists"
        )
        self.k = k
        self.c = c
        self.limit = limit


@dataclass(frozen=True)
class WNumberResult:
    k: int
    c: int
    value: int
    certificate: FiniteColoring

    def certificate_colors(self) -> tuple[int, ...]:
        return self.certificate.colors


def search_limit_default(explicit: int | None = None) -> int:
    if explicit is not None:
        if explicit < 1:
            raise DomainError(f"search limit must be >= 1, got {explicit}")
        return explicit
    env = os.environ.get("VDW_WNUMBER_LIMIT")
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise DomainError(f"VDW_WNUMBER_LIMIT is not an integer: {env!r}") from exc
        if value < 1:
            raise DomainError(f"VDW_WNUMBER_LIMIT must be >= 1, got {value}")
        return value
    return DEFAULT_SEARCH_LIMIT


def _ap_tail_masks(k: int, limit: int) -> list[tuple[int, ...]]:
    """tails[p] = bitmasks of the k-1 earlier members of every k-AP ending at p."""
    tails: list[tuple[int, ...]] = [()]
    for p in range(1, limit + 1):
        row = []
        d = 1
        while p - (k - 1) * d >= 1:
            m = 0
            q = p - d
            for _ in range(k - 1):
                m |= 1 << q
                q -= d
            row.append(m)
            d += 1
        tails.append(tuple(row))
    return tails


def _max_ap_free(k: int, c: int, limit: int) -> tuple[bool, int, tuple[int, ...]]:
    """Depth-first search for the longest AP-free canonical c-coloring.

    Returns (reached_limit, best_length, prefix), where prefix is the
    lexicographically least AP-free coloring of best_length. If the search
    reaches the limit, prefix is the first coloring of that full length
    and nothing is proved about longer colorings.
    """
    tails = _ap_tail_masks(k, limit)
    color = [0] * (limit + 2)
    # Canonical colorings never use more colors than positions, so huge
    # palettes need no huge mask table.
    masks = [0] * (min(c, limit + 1) + 2)
    used = 0
    best_len = 0
    best: tuple[int, ...] = ()
    p = 1
    while p >= 1:
        cand = color[p] + 1
        top = used + 1 if used < c else c
        row = tails[p]
        chosen = 0
        while cand <= top:
            m = masks[cand]
            for t in row:
                if m & t == t:
                    break
            else:
                chosen = cand
                break
            cand += 1
        if chosen:
            color[p] = chosen
            masks[chosen] |= 1 << p
            if chosen > used:
                used = chosen
            if p > best_len:
                best_len = p
                best = tuple(color[1 : p + 1])
            if p == limit:
                return True, best_len, best
            p += 1
            color[p] = 0
        else:
            color[p] = 0
            p -= 1
            if p >= 1:
                prev = color[p]
                masks[prev] &= ~(1 << p)
                if prev == used and masks[prev] == 0:
                    used -= 1
    return False, best_len, best


def _closed_form(k: int, c: int) -> tuple[int, tuple[int, ...]] | None:
    if c == 1:
        return k, (1,) * (k - 1)
    if k == 2:
        # Any two equal colors form a 2-AP, so extremal colorings are injective.
        return c + 1, tuple(range(1, c + 1))
    return None


def vdw_number(
    k: int, c: int, search_limit: int | None = None, *, use_cache: bool = True
) -> WNumberResult:
    """The exact van der Waerden number with its lexicographically least certificate.

    Raises SearchLimitError if the answer is not determined within
    search_limit positions.
    """
    if k < 2:
        raise DomainError(f"progression length must be >= 2, got {k}")
    if c < 1:
        raise DomainError(f"number of colors must be >= 1, got {c}")
    closed = _closed_form(k, c)
    if closed is not None:
        value, cert = closed
        certificate = FiniteColoring(c, Interval(1, value - 1), cert)
        return WNumberResult(k, c, value, certificate)
    limit = search_limit_default(search_limit)
    if use_cache and (k, c) in _MEMO:
        value, cert = _MEMO[(k, c)]
        # A fresh search resolves W only when limit >= W; keep cached results
        # indistinguishable from fresh ones.
        if value > limit:
            raise SearchLimitError(k, c, limit)
        if not cert:
            # Value came from a cache file; rebuild the certificate by a
            # descent to the extremal length. Failure means the advisory
            # value was wrong, so drop it and search from scratch.
            reached, _, cert = _max_ap_free(k, c, value - 1)
            if reached:
                _MEMO[(k, c)] = (value, cert)
            else:
                del _MEMO[(k, c)]
        if (k, c) in _MEMO:
            certificate = FiniteColoring(c, Interval(1, value - 1), cert)
            return WNumberResult(k, c, value, certificate)
    reached, best_len, cert = _max_ap_free(k, c, limit)
    if reached:
        raise SearchLimitError(k, c, limit)
    value = best_len + 1
    _MEMO[(k, c)] = (value, cert)
    certificate = FiniteColoring(c, Interval(1, value - 1), cert)
    return WNumberResult(k, c, value, certificate)


def vdw_value(k: int, c: int, search_limit: int | None = None, *, use_cache: bool = True) -> int:
    """The number alone, skipping certificate construction.

    Materially cheaper than vdw_number for closed forms with huge palettes
    (W(2, c) = c + 1 would otherwise build a c-cell certificate)."""
    if k < 2:
        raise DomainError(f"progression length must be >= 2, got {k}")
    if c < 1:
        raise DomainError(f"number of colors must be >= 1, got {c}")
    if c == 1:
        return k
    if k == 2:
        return c + 1
    limit = search_limit_default(search_limit)
    if use_cache and (k, c) in _MEMO:
        value = _MEMO[(k, c)][0]
        if value > limit:
            raise SearchLimitError(k, c, limit)
        return value
    reached, best_len, cert = _max_ap_free(k, c, limit)
    if reached:
        raise SearchLimitError(k, c, limit)
    _MEMO[(k, c)] = (best_len + 1, cert)
    return best_len + 1


def vdw_number_by_search(k: int, c: int, search_limit: int | None = None) -> WNumberResult:
    """vdw_number without closed forms or the cache; cross-check path."""
    if k < 2 or c < 1:
        raise DomainError("need progression length >= 2 and colors >= 1")
    limit = search_limit_default(search_limit)
    reached, best_len, cert = _max_ap_free(k, c, limit)
    if reached:
        raise SearchLimitError(k, c, limit)
    return WNumberResult(k, c, best_len + 1, FiniteColoring(c, Interval(1, best_len), cert))


def verify_ap_free(coloring: FiniteColoring, k: int) -> bool:
    """True iff the coloring has no monochromatic k-term arithmetic progression.

    Enumerates progressions difference-major, independently of the search
    above and of find_ap, so certificates are checked through a separate
    code path.
    """
    if k < 2:
        raise DomainError(f"progression length must be >= 2, got {k}")
    colors = coloring.colors
    n = len(colors)
    for d in range(1, (n - 1) // (k - 1) + 1):
        for a0 in range(n - (k - 1) * d):
            first = colors[a0]
            for j in range(1, k):
                if colors[a0 + j * d] != first:
                    break
            else:
                return False
    return True


def find_ap(coloring: FiniteColoring, k: int) -> tuple[int, int] | None:
    """Least (a, d), ordered by a then d, with a monochromatic k-AP at a, a+d, ...

    a is an absolute position in the coloring's domain. Returns None when no
    such progression exists (guaranteed present once the domain reaches
    W(k, coloring.c) cells).
    """
    if k < 2:
        raise DomainError(f"progression length must be >= 2, got {k}")
    colors = coloring.colors
    n = len(colors)
    lo = coloring.domain.lo
    for a0 in range(n - k + 1):
        gamma = colors[a0]
        for d in range(1, (n - 1 - a0) // (k - 1) + 1):
            for j in range(1, k):
                if colors[a0 + j * d] != gamma:
                    break
            else:
                return (lo + a0, d)
    return None


def cached_values() -> dict[tuple[int, int], int]:
    """Snapshot of the in-process value cache."""
    return {kc: vc[0] for kc, vc in _MEMO.items()}


def load_cache(path: str) -> int:
    """Merge `k c W` triples from a text file into the in-process cache.

    Cached values are advisory: certificates are recomputed on use, and a
    value is ignored whenever resolving it would exceed the search limit.
    Returns the number of entries loaded.
    """
    count = 0
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise DomainError(f"bad cache line: {line!r}")
            try:
                k, c, value = (int(x) for x in parts)
            except ValueError as exc:
                raise DomainError(f"bad cache line: {line!r}") from exc
            if k < 2 or c < 1 or value < 2:
                raise DomainError(f"bad cache entry: {line!r}")
            if (k, c) not in _MEMO:
                _MEMO[(k, c)] = (value, ())
            count += 1
    return count


def save_cache(path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (k, c), (value, _) in sorted(_MEMO.items()):
            fh.write(f"{k} {c} {value}\n")
