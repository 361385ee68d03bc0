"""Index sets and sequences on the integer lattice.

Three interval families are used throughout:

* symmetric intervals  S(m, N) = {k : |k - m| <= N}, cardinality 2N + 1;
* dyadic intervals     I(N, j) = {(j-1)*2^N + 1, ..., j*2^N}, cardinality 2^N,
  which tile the integers at every level and nest across levels;
* plain index intervals J = {lo, ..., hi}.

Sequences are sparse (index, value) lists with finite support.  All range
sums are answered in O(1) from anchored prefix tables: the cumulative is
anchored at a caller-chosen index so that the sum over any fixed interval
is bit-for-bit reproducible no matter how far the table extends.  That
reproducibility is what lets the norm searches assert *exact* equality
when a scan region is enlarged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError

#: Hard ceiling on dense window size materialised by a prefix table.
MAX_WINDOW_POINTS = 1 << 26


@dataclass(frozen=True, order=True)
class IndexInterval:
    """Integers {lo, lo+1, ..., hi} with lo <= hi."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise DomainError(f"empty index interval [{self.lo}, {self.hi}]")

    @property
    def cardinality(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def contains_interval(self, other: "IndexInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def members(self) -> range:
        return range(self.lo, self.hi + 1)

    def intersect(self, other: "IndexInterval") -> "IndexInterval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return IndexInterval(lo, hi) if lo <= hi else None

    def hull(self, other: "IndexInterval") -> "IndexInterval":
        return IndexInterval(min(self.lo, other.lo), max(self.hi, other.hi))


@dataclass(frozen=True)
class SymmetricInterval:
    """S(m, N) = {k : |k - m| <= N}; center m, radius N >= 0."""

    center: int
    radius: int

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise DomainError(f"negative radius {self.radius}")

    @property
    def lo(self) -> int:
        return self.center - self.radius

    @property
    def hi(self) -> int:
        return self.center + self.radius

    @property
    def cardinality(self) -> int:
        return 2 * self.radius + 1

    def __contains__(self, k: int) -> bool:
        return abs(k - self.center) <= self.radius

    def as_index_interval(self) -> IndexInterval:
        return IndexInterval(self.lo, self.hi)


def interval_members(s: SymmetricInterval) -> list[int]:
    """Ordered members {m-N, ..., m+N} of a symmetric interval."""
    return list(range(s.lo, s.hi + 1))


def dilate(s: SymmetricInterval, lam: int) -> SymmetricInterval:
    """lam * S(m, N) = S(m, lam*N) for an integer dilation factor lam >= 1."""
    if lam < 1:
        raise DomainError(f"dilation factor must be a positive integer, got {lam}")
    return SymmetricInterval(s.center, lam * s.radius)


@dataclass(frozen=True)
class DyadicInterval:
    """I(N, j) = {(j-1)*2^N + 1, ..., j*2^N}; level N >= 0, position j."""

    level: int
    pos: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise DomainError(f"negative dyadic level {self.level}")

    @property
    def lo(self) -> int:
        return (self.pos - 1) * (1 << self.level) + 1

    @property
    def hi(self) -> int:
        return self.pos * (1 << self.level)

    @property
    def cardinality(self) -> int:
        return 1 << self.level

    def __contains__(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def as_index_interval(self) -> IndexInterval:
        return IndexInterval(self.lo, self.hi)


def dyadic_parent(i: DyadicInterval) -> DyadicInterval:
    """The unique level-(N+1) dyadic interval containing I(N, j).

    As an index set the parent equals the left doubling of I when j is even
    and the right doubling when j is odd.
    """
    # ceil(j / 2) in floor-division arithmetic, valid for all signs of j
    return DyadicInterval(i.level + 1, (i.pos + 1) // 2)


def dyadic_children(i: DyadicInterval) -> tuple[DyadicInterval, DyadicInterval]:
    """The two disjoint level-(N-1) halves of a level-N dyadic interval."""
    if i.level == 0:
        raise DomainError("level-0 dyadic interval (a singleton) has no children")
    return (DyadicInterval(i.level - 1, 2 * i.pos - 1),
            DyadicInterval(i.level - 1, 2 * i.pos))


def dyadic_cover(k: int, level: int) -> DyadicInterval:
    """The unique level-N dyadic interval containing the index k."""
    if level < 0:
        raise DomainError(f"negative dyadic level {level}")
    # k in I(N, j)  <=>  j = ceil(k / 2^N)
    return DyadicInterval(level, -((-k) >> level))


def dyadic_expand(i: DyadicInterval, n: int = 2) -> IndexInterval:
    """The (2n-1)-fold expansion {(j-n)*2^N + 1, ..., (j+n-1)*2^N} of I(N, j).

    For n = 2 this is the 3I neighbourhood used by the level-set covering
    argument: I together with its left and right same-length extensions.
    """
    if n < 2:
        raise DomainError(f"expansion parameter must satisfy n >= 2, got {n}")
    size = 1 << i.level
    return IndexInterval((i.pos - n) * size + 1, (i.pos + n - 1) * size)


class LatticeSequence:
    """A finitely supported real sequence x = {x(k)} on the integers.

    Stored sparsely as strictly increasing indices with nonzero finite
    values; zeros are never stored.
    """

    __slots__ = ("indices", "values")

    def __init__(self, indices: Iterable[int], values: Iterable[float]):
        idx = np.asarray(list(indices), dtype=np.int64)
        val = np.asarray(list(values), dtype=np.float64)
        if idx.shape != val.shape:
            raise DomainError("indices and values must have equal length")
        if idx.size:
            if np.any(np.diff(idx) <= 0):
                raise DomainError("indices must be strictly increasing")
            if not np.all(np.isfinite(val)):
                raise DomainError("sequence values must be finite")
        keep = val != 0.0
        self.indices = idx[keep]
        self.values = val[keep]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "LatticeSequence":
        pairs = list(pairs)
        return cls([p[0] for p in pairs], [p[1] for p in pairs])

    @classmethod
    def from_dict(cls, mapping: dict[int, float]) -> "LatticeSequence":
        items = sorted(mapping.items())
        return cls([k for k, _ in items], [v for _, v in items])

    @classmethod
    def delta(cls, k: int = 0, value: float = 1.0) -> "LatticeSequence":
        return cls([k], [value])

    @classmethod
    def indicator(cls, interval: IndexInterval | SymmetricInterval) -> "LatticeSequence":
        if isinstance(interval, SymmetricInterval):
            interval = interval.as_index_interval()
        return cls(list(interval.members()), [1.0] * interval.cardinality)

    @property
    def is_zero(self) -> bool:
        return self.indices.size == 0

    @property
    def support_lo(self) -> int:
        if self.is_zero:
            return 0
        return int(self.indices[0])

    @property
    def support_hi(self) -> int:
        if self.is_zero:
            return 0
        return int(self.indices[-1])

    def support_hull(self) -> IndexInterval | None:
        if self.is_zero:
            return None
        return IndexInterval(self.support_lo, self.support_hi)

    def value_at(self, k: int) -> float:
        pos = np.searchsorted(self.indices, k)
        if pos < self.indices.size and self.indices[pos] == k:
            return float(self.values[pos])
        return 0.0

    def abs(self) -> "LatticeSequence":
        return LatticeSequence(self.indices, np.abs(self.values))

    def scale(self, c: float) -> "LatticeSequence":
        if c == 0.0:
            return LatticeSequence([], [])
        return LatticeSequence(self.indices, c * self.values)

    def add(self, other: "LatticeSequence") -> "LatticeSequence":
        acc: dict[int, float] = {}
        for k, v in zip(self.indices.tolist(), self.values.tolist()):
            acc[k] = acc.get(k, 0.0) + v
        for k, v in zip(other.indices.tolist(), other.values.tolist()):
            acc[k] = acc.get(k, 0.0) + v
        return LatticeSequence.from_dict(acc)

    def restrict(self, window: IndexInterval) -> "LatticeSequence":
        keep = (self.indices >= window.lo) & (self.indices <= window.hi)
        return LatticeSequence(self.indices[keep], self.values[keep])

    def pairs(self) -> list[tuple[int, float]]:
        return [(int(k), float(v)) for k, v in zip(self.indices, self.values)]

    def max_abs(self) -> float:
        if self.is_zero:
            return 0.0
        return float(np.max(np.abs(self.values)))

    def dense_on(self, window: IndexInterval) -> np.ndarray:
        """Dense value array over a window (zeros off the support)."""
        out = np.zeros(window.cardinality, dtype=np.float64)
        keep = (self.indices >= window.lo) & (self.indices <= window.hi)
        out[self.indices[keep] - window.lo] = self.values[keep]
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeSequence):
            return NotImplemented
        return (self.indices.shape == other.indices.shape
                and bool(np.all(self.indices == other.indices))
                and bool(np.all(self.values == other.values)))

    def __hash__(self) -> None:  # type: ignore[override]
        raise TypeError("LatticeSequence is not hashable")

    def __repr__(self) -> str:
        if self.is_zero:
            return "LatticeSequence(zero)"
        return f"LatticeSequence({self.pairs()!r})"


class PrefixTable:
    """Anchored cumulative sums of a dense term array over a window.

    The cumulative F satisfies  sum over {u..v} = F[v] - F[u-1]  for every
    subinterval of the window, where F accumulates rightward from the
    anchor and (negatively) leftward from it.  Entries of F depend only on
    the terms between the anchor and the entry's index, never on the window
    extent, so extending the window leaves all existing range sums
    bit-identical.
    """

    __slots__ = ("window", "anchor", "_cum", "_offset")

    def __init__(self, window: IndexInterval, terms: np.ndarray, anchor: int | None = None):
        if window.cardinality > MAX_WINDOW_POINTS:
            raise ResourceLimitError(
                f"window of {window.cardinality} points exceeds the "
                f"{MAX_WINDOW_POINTS}-point ceiling")
        terms = np.asarray(terms, dtype=np.float64)
        if terms.shape != (window.cardinality,):
            raise DomainError("terms array must match the window cardinality")
        if anchor is None:
            anchor = min(max(0, window.lo), window.hi + 1)
        if not (window.lo <= anchor <= window.hi + 1):
            raise DomainError("anchor must lie inside the window (or one past its end)")
        self.window = window
        self.anchor = anchor
        # F is indexed window.lo - 1 .. window.hi
        n = window.cardinality + 1
        cum = np.empty(n, dtype=np.float64)
        self._offset = window.lo - 1
        a = anchor - self._offset          # position of index `anchor` in F
        cum[a - 1] = 0.0
        right = terms[anchor - window.lo:]
        if right.size:
            cum[a:] = np.cumsum(right)
        left = terms[:anchor - window.lo]
        if left.size:
            cum[:a - 1] = -np.cumsum(left[::-1])[::-1]
        self._cum = cum

    def range_sum(self, lo: int, hi: int) -> float:
        """Sum of the terms over {lo..hi} (must lie inside the window)."""
        if lo > hi:
            return 0.0
        if lo < self.window.lo or hi > self.window.hi:
            raise DomainError(
                f"range [{lo}, {hi}] escapes the table window "
                f"[{self.window.lo}, {self.window.hi}]")
        return float(self._cum[hi - self._offset] - self._cum[lo - 1 - self._offset])

    def range_sum_arrays(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Vectorised range sums; callers guarantee indices lie in-window."""
        return self._cum[hi - self._offset] - self._cum[lo - 1 - self._offset]

    def cum_at(self, i: int) -> float:
        """Anchored cumulative F[i] for window.lo - 1 <= i <= window.hi."""
        return float(self._cum[i - self._offset])


def build_prefix(x: LatticeSequence, transform: str, omega, window: IndexInterval,
                 p: float = 1.0, anchor: int | None = None) -> PrefixTable:
    """Prefix table of a derived sequence over a window.

    transform is one of "abs" (|x(k)|), "abs_pow_weight" (|x(k)|^p * w(k)),
    or "weight" (w(k)).  Weight-only tables evaluate w on the whole window;
    the x-derived tables evaluate w only on the support points.
    """
    if transform == "weight":
        terms = omega.values_on_window(window)
    elif transform in ("abs", "abs_pow_weight"):
        if transform == "abs_pow_weight" and p < 1.0:
            raise DomainError(f"abs_pow_weight requires p >= 1, got {p}")
        terms = np.zeros(window.cardinality, dtype=np.float64)
        keep = (x.indices >= window.lo) & (x.indices <= window.hi)
        idx = x.indices[keep]
        mag = np.abs(x.values[keep])
        if transform == "abs_pow_weight":
            mag = mag ** p * omega.values_on_indices(idx)
        terms[idx - window.lo] = mag
    else:
        raise DomainError(f"unknown prefix transform {transform!r}")
    return PrefixTable(window, terms, anchor=anchor)
