"""Strip sets: integer sets cut into residue columns, and planar patterns.

An integer ``n`` is identified with the point ``(x, y)`` of the plane modulo
the relation ``(x, y) ~ (x + m, y - 1)``, i.e. ``n = x + m*y``.  A StripSet
stores one ZSet of heights per residue ``0 <= x < m``; a Pattern is a finite
family of columns at arbitrary x positions, projected onto a StripSet by
carrying ``x // m`` into the height.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .zset import ZSet, _make, _resolve_cap, disjoint_union, shift


@dataclass(frozen=True)
class StripSet:
    m: int
    cols: tuple[ZSet, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"period must be positive, got {self.m}")
        if len(self.cols) != self.m:
            raise ValueError(f"expected {self.m} columns, got {len(self.cols)}")
        if len({c.cap for c in self.cols}) > 1:
            raise ValueError("columns carry different caps")

    @classmethod
    def empty(cls, m: int, cap: int | None = None) -> StripSet:
        return cls(m, (ZSet.empty(cap),) * m)

    @classmethod
    def full(cls, m: int, cap: int | None = None) -> StripSet:
        return cls(m, (ZSet.full(cap),) * m)

    @classmethod
    def from_columns(cls, m: int, cols: Mapping[int, ZSet], cap: int | None = None) -> StripSet:
        """Columns keyed by residue (missing residues are empty)."""
        cap = _resolve_cap(cap) if not cols else next(iter(cols.values())).cap
        out = [ZSet.empty(cap)] * m
        for r, c in cols.items():
            if not 0 <= r < m:
                raise ValueError(f"residue {r} outside [0, {m})")
            out[r] = c
        return cls(m, tuple(out))

    @classmethod
    def from_integers(cls, m: int, points: Iterable[int], cap: int | None = None) -> StripSet:
        cols: dict[int, list[int]] = {}
        for n in points:
            cols.setdefault(n % m, []).append(n // m)
        return cls.from_columns(m, {r: ZSet.finite(hs, cap) for r, hs in cols.items()}, cap)

    @property
    def cap(self) -> int:
        return self.cols[0].cap

    def col(self, residue: int) -> ZSet:
        return self.cols[residue % self.m]

    def mult_at(self, n: int) -> int:
        return self.cols[n % self.m].mult_at(n // self.m)

    def __contains__(self, n: int) -> bool:
        return self.mult_at(n) > 0

    def is_empty(self) -> bool:
        return all(c.is_empty() for c in self.cols)

    def is_plain(self) -> bool:
        return all(c.is_plain() for c in self.cols)

    def residues(self) -> list[int]:
        return [r for r, c in enumerate(self.cols) if not c.is_empty()]

    def union(self, other: StripSet) -> StripSet:
        """Union of supports (plain-set union)."""
        _same_period(self, other)
        return StripSet(self.m, tuple(a | b for a, b in zip(self.cols, other.cols)))

    def disjoint_union(self, other: StripSet) -> StripSet:
        _same_period(self, other)
        return StripSet(self.m, tuple(disjoint_union(a, b) for a, b in zip(self.cols, other.cols)))

    def minus(self, other: StripSet) -> StripSet:
        _same_period(self, other)
        return StripSet(self.m, tuple(a - b for a, b in zip(self.cols, other.cols)))

    def support(self) -> StripSet:
        return StripSet(self.m, tuple(c.support() for c in self.cols))

    def translate(self, k: int) -> StripSet:
        """The integer set shifted by ``k``."""
        out = [None] * self.m
        for r, c in enumerate(self.cols):
            t = r + k
            out[t % self.m] = shift(c, t // self.m)
        return StripSet(self.m, tuple(out))

    def integers_in(self, lo: int, hi: int) -> list[int]:
        """Points of the support inside ``[lo, hi]``."""
        return [n for n in range(lo, hi + 1) if self.mult_at(n)]

    def with_period(self, m: int) -> StripSet:
        """Same integer set at another period; ``m`` must be a multiple of self.m
        or every column must be empty or full."""
        if m == self.m:
            return self
        if m % self.m == 0:
            k = m // self.m
            cols: dict[int, ZSet] = {}
            for r, c in enumerate(self.cols):
                # heights y of residue r become residues r + m0*(y mod k) at height y // k
                for j in range(k):
                    cols[r + self.m * j] = _subsample(c, k, j)
            return StripSet.from_columns(m, cols, self.cap)
        if all(c.is_empty() or (c.is_full() and c.is_plain()) for c in self.cols):
            full = {r for r, c in enumerate(self.cols) if not c.is_empty()}
            return StripSet.from_columns(m, {r: ZSet.full(self.cap) for r in range(m) if r % self.m in full}, self.cap)
        raise ValueError(f"cannot re-express a period-{self.m} set at period {m}")


def _subsample(c: ZSet, k: int, j: int) -> ZSet:
    """Heights ``y' `` with ``k*y' + j`` in ``c``."""
    start, stop = c.window()
    lo = (start - j) // k - 1
    hi = (stop - j) // k + 1
    core = [c.mult_at(k * y + j) for y in range(lo, hi + 1)]
    return _make(c.neg_tail, lo, core, c.pos_tail, c.cap)


def _same_period(a: StripSet, b: StripSet) -> None:
    if a.m != b.m:
        raise ValueError(f"period mismatch: {a.m} vs {b.m}")


def monomial(heights: ZSet, exponent: int, m: int) -> StripSet:
    """The integer set ``m*heights + exponent`` (any integer exponent)."""
    cols = {exponent % m: shift(heights, exponent // m)}
    return StripSet.from_columns(m, cols, heights.cap)


def union_all(m: int, parts: Iterable[StripSet], cap: int | None = None) -> StripSet:
    out = StripSet.empty(m, cap)
    for p in parts:
        out = out.union(p)
    return out


@dataclass(frozen=True)
class Pattern:
    """Finitely many columns in the plane, keyed by x coordinate."""

    columns: Mapping[int, ZSet]

    def __post_init__(self):
        object.__setattr__(self, "columns", {x: c for x, c in sorted(self.columns.items()) if not c.is_empty()})

    def __hash__(self):
        return hash(tuple(self.columns.items()))

    def __eq__(self, other):
        return isinstance(other, Pattern) and self.columns == other.columns

    def negated(self) -> Pattern:
        """Point reflection ``(x, y) -> (-x, -y)``, which negates the integers."""
        return Pattern({-x: c.reflect() for x, c in self.columns.items()})

    def union(self, other: Pattern) -> Pattern:
        cols = dict(self.columns)
        for x, c in other.columns.items():
            cols[x] = disjoint_union(cols[x], c) if x in cols else c
        return Pattern(cols)


def project(p: Pattern, m: int, cap: int | None = None) -> tuple[StripSet, bool]:
    """Project a pattern to period ``m``; also report whether columns collided."""
    if m < 1:
        raise ValueError(f"period must be positive, got {m}")
    cap = _resolve_cap(cap) if not p.columns else next(iter(p.columns.values())).cap
    cols = [ZSet.empty(cap)] * m
    used = [False] * m
    collided = False
    for x, c in p.columns.items():
        r = x % m
        if used[r]:
            collided = True
        used[r] = True
        cols[r] = disjoint_union(cols[r], shift(c, x // m))
    return StripSet(m, tuple(cols)), collided


def lift(s: StripSet) -> Pattern:
    return Pattern({r: c for r, c in enumerate(s.cols)})


def x_support(p: Pattern) -> list[int]:
    return sorted(p.columns)


def blocks(xs: Iterable[int]) -> list[list[int]]:
    """Maximal runs of consecutive integers, left to right."""
    out: list[list[int]] = []
    for x in sorted(set(xs)):
        if out and x == out[-1][-1] + 1:
            out[-1].append(x)
        else:
            out.append([x])
    return out


def inner_outer_range(xs: Iterable[int]) -> tuple[int, int]:
    """(innerrange, outerrange) of a finite set, innerrange clamped at 0."""
    bs = blocks(xs)
    if not bs:
        raise ValueError("inner_outer_range needs a nonempty set")
    outer = bs[-1][-1] - bs[0][0]
    inner = max(bs[-1][0] - bs[0][-1], 0)
    return inner, outer


@dataclass(frozen=True)
class LWitness:
    ell: int
    shifts: tuple[int, ...]


def fitting_shifts(xs: list[int], ell: int) -> list[int]:
    """Shifts q with ``xs + q`` inside ``[0, ell - 1]``."""
    return list(range(-min(xs), ell - max(xs)))


def min_consecutive_length(xs: Iterable[int]) -> LWitness:
    """Smallest ell such that xs + Q is exactly ``[0, ell-1]`` for some Q.

    For a fixed ell, a suitable Q exists iff the union of all fitting translates
    fills the interval, so the search over ell is complete.  The shift set is
    then thinned to an irredundant one, leftmost shift first.
    """
    xs = sorted(set(xs))
    if not xs:
        raise ValueError("min_consecutive_length needs a nonempty set")
    ell = max(xs) - min(xs) + 1
    while True:
        qs = fitting_shifts(xs, ell)
        covered = {x + q for q in qs for x in xs}
        if len(covered) == ell:
            break
        ell += 1
    counts = {}
    for q in qs:
        for x in xs:
            counts[x + q] = counts.get(x + q, 0) + 1
    kept = list(qs)
    for q in reversed(qs):
        if all(counts[x + q] > 1 for x in xs):
            kept.remove(q)
            for x in xs:
                counts[x + q] -= 1
    return LWitness(ell, tuple(kept))


def shape_list(s: StripSet) -> list[tuple[ZSet, int]]:
    return [(c, r) for r, c in enumerate(s.cols) if not c.is_empty()]
