"""Weighted, eventually-constant subsets of the integers.

A ZSet assigns a multiplicity to every integer.  Outside a finite core the
multiplicity is constant on each side, so the whole thing is described by two
tails and a finite run of values.  Multiplicities are plain ints in
``[0, cap]`` where the value ``cap`` stands for "at least cap"; arithmetic
saturates there.  The cap travels with every value so mixing caps is caught.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

DEFAULT_CAP = 4

_cap_var: contextvars.ContextVar[int] = contextvars.ContextVar("macforge_cap", default=DEFAULT_CAP)


class CapAmbiguous(ArithmeticError):
    """An exact answer would need multiplicities hidden behind the cap."""


def current_cap() -> int:
    return _cap_var.get()


@contextlib.contextmanager
def use_cap(cap: int) -> Iterator[int]:
    """Set the cap for ZSets built inside the block (context-local)."""
    if cap < 2:
        raise ValueError(f"cap must be at least 2, got {cap}")
    token = _cap_var.set(cap)
    try:
        yield cap
    finally:
        _cap_var.reset(token)


def _resolve_cap(cap: int | None) -> int:
    cap = current_cap() if cap is None else cap
    if cap < 2:
        raise ValueError(f"cap must be at least 2, got {cap}")
    return cap


@dataclass(frozen=True)
class ZSet:
    """Canonical eventually-constant multiplicity function on the integers.

    ``mult_at(n)`` is ``neg_tail`` for ``n < lo``, ``core[n - lo]`` inside the
    core and ``pos_tail`` past it.  In canonical form the first core value
    differs from ``neg_tail`` and the last from ``pos_tail``.  With an empty
    core, ``lo`` is the step point if the tails differ and 0 otherwise.
    """

    neg_tail: int
    lo: int
    core: tuple[int, ...]
    pos_tail: int
    cap: int

    # -- construction -------------------------------------------------

    @classmethod
    def empty(cls, cap: int | None = None) -> ZSet:
        return _make(0, 0, (), 0, _resolve_cap(cap))

    @classmethod
    def constant(cls, value: int, cap: int | None = None) -> ZSet:
        cap = _resolve_cap(cap)
        return _make(value, 0, (), value, cap)

    @classmethod
    def full(cls, cap: int | None = None) -> ZSet:
        return cls.constant(1, cap)

    @classmethod
    def up_ray(cls, start: int, cap: int | None = None) -> ZSet:
        """``{start, start+1, ...}``."""
        return _make(0, start, (), 1, _resolve_cap(cap))

    @classmethod
    def down_ray(cls, end: int, cap: int | None = None) -> ZSet:
        """``{..., end-1, end}``."""
        return _make(1, end + 1, (), 0, _resolve_cap(cap))

    @classmethod
    def interval(cls, a: int, b: int, cap: int | None = None) -> ZSet:
        """Closed interval ``[a, b]``; empty when ``b < a``."""
        if b < a:
            return cls.empty(cap)
        return _make(0, a, (1,) * (b - a + 1), 0, _resolve_cap(cap))

    @classmethod
    def finite(cls, points: Iterable[int] | Mapping[int, int], cap: int | None = None) -> ZSet:
        """Finite multiset; repeated points (or mapping values) add up."""
        cap = _resolve_cap(cap)
        counts: dict[int, int] = {}
        if isinstance(points, Mapping):
            for p, c in points.items():
                counts[p] = counts.get(p, 0) + c
        else:
            for p in points:
                counts[p] = counts.get(p, 0) + 1
        counts = {p: c for p, c in counts.items() if c}
        if not counts:
            return cls.empty(cap)
        lo, hi = min(counts), max(counts)
        return _make(0, lo, tuple(counts.get(n, 0) for n in range(lo, hi + 1)), 0, cap)

    # -- inspection ---------------------------------------------------

    @property
    def hi(self) -> int:
        """Last core position (``lo - 1`` for an empty core)."""
        return self.lo + len(self.core) - 1

    def mult_at(self, n: int) -> int:
        if n < self.lo:
            return self.neg_tail
        if n > self.hi:
            return self.pos_tail
        return self.core[n - self.lo]

    def __contains__(self, n: int) -> bool:
        return self.mult_at(n) > 0

    def is_saturated_at(self, n: int) -> bool:
        return self.mult_at(n) >= self.cap

    def is_empty(self) -> bool:
        return self.neg_tail == 0 and self.pos_tail == 0 and not self.core

    def is_finite(self) -> bool:
        return self.neg_tail == 0 and self.pos_tail == 0

    def is_full(self) -> bool:
        """Every integer has multiplicity at least 1."""
        return self.neg_tail > 0 and self.pos_tail > 0 and all(self.core)

    def is_plain(self) -> bool:
        """All multiplicities are 0 or 1."""
        return self.neg_tail <= 1 and self.pos_tail <= 1 and all(v <= 1 for v in self.core)

    def bounded_below(self) -> bool:
        return self.neg_tail == 0

    def bounded_above(self) -> bool:
        return self.pos_tail == 0

    def window(self) -> tuple[int, int]:
        """Half-open range ``[start, stop)`` outside which the tails rule."""
        return self.lo, self.lo + len(self.core)

    def points(self) -> list[int]:
        """Points of a finite set, each listed once per multiplicity."""
        if not self.is_finite():
            raise ValueError("points() needs a finite ZSet")
        out = []
        for i, v in enumerate(self.core):
            out.extend([self.lo + i] * v)
        return out

    def support_points_in(self, start: int, stop: int) -> list[int]:
        return [n for n in range(start, stop) if self.mult_at(n)]

    def mass(self) -> int | None:
        """Total multiplicity, or None when infinite."""
        if not self.is_finite():
            return None
        return sum(self.core)

    def min_point(self) -> int | None:
        """Smallest point of the support; None if unbounded below or empty."""
        if self.neg_tail:
            return None
        for i, v in enumerate(self.core):
            if v:
                return self.lo + i
        return self.hi + 1 if self.pos_tail else None

    def max_point(self) -> int | None:
        if self.pos_tail:
            return None
        for i in range(len(self.core) - 1, -1, -1):
            if self.core[i]:
                return self.lo + i
        return self.lo - 1 if self.neg_tail else None

    def any_point(self) -> int | None:
        """Some point of the support, preferring the core; None if empty."""
        for i, v in enumerate(self.core):
            if v:
                return self.lo + i
        if self.pos_tail:
            return self.hi + 1
        if self.neg_tail:
            return self.lo - 1
        return None

    def dense(self, start: int, stop: int) -> np.ndarray:
        """Multiplicities on ``[start, stop)`` as an int64 array."""
        n = np.arange(start, stop)
        out = np.where(n < self.lo, self.neg_tail, self.pos_tail).astype(np.int64)
        a, b = max(start, self.lo), min(stop, self.lo + len(self.core))
        if a < b:
            out[a - start : b - start] = self.core[a - self.lo : b - self.lo]
        return out

    # -- derived sets -------------------------------------------------

    def support(self) -> ZSet:
        return self.map(lambda v: 1 if v else 0)

    def exactly_once(self) -> ZSet:
        """Points of multiplicity exactly 1."""
        return self.map(lambda v: 1 if v == 1 else 0)

    def complement(self) -> ZSet:
        """Points of multiplicity 0."""
        return self.map(lambda v: 0 if v else 1)

    def reflect(self) -> ZSet:
        """``n -> -n``."""
        return _make(self.pos_tail, -self.hi, tuple(reversed(self.core)), self.neg_tail, self.cap)

    def map(self, f) -> ZSet:
        return _make(f(self.neg_tail), self.lo, tuple(f(v) for v in self.core), f(self.pos_tail), self.cap)

    def __and__(self, other: ZSet) -> ZSet:
        """Intersection of supports."""
        return pointwise(lambda a, b: 1 if a and b else 0, self, other)

    def __or__(self, other: ZSet) -> ZSet:
        """Union of supports."""
        return pointwise(lambda a, b: 1 if a or b else 0, self, other)

    def __sub__(self, other: ZSet) -> ZSet:
        """Support of self minus support of other."""
        return pointwise(lambda a, b: 1 if a and not b else 0, self, other)

    def same_support(self, other: ZSet) -> bool:
        return self.support() == other.support()

    def issubset(self, other: ZSet) -> bool:
        return (self - other).is_empty()

    def __repr__(self) -> str:
        return f"ZSet<{describe(self)}>"


def _check_caps(*sets: ZSet) -> int:
    caps = {s.cap for s in sets}
    if len(caps) != 1:
        raise ValueError(f"ZSets with different caps cannot be combined: {sorted(caps)}")
    return caps.pop()


def _make(neg: int, lo: int, core: tuple[int, ...] | list[int], pos: int, cap: int) -> ZSet:
    """Clip to the cap and tighten the boundaries."""
    neg, pos = min(max(neg, 0), cap), min(max(pos, 0), cap)
    vals = [min(max(v, 0), cap) for v in core]
    start, stop = 0, len(vals)
    while start < stop and vals[start] == neg:
        start += 1
    while stop > start and vals[stop - 1] == pos:
        stop -= 1
    lo += start
    vals = vals[start:stop]
    if not vals and neg == pos:
        lo = 0
    return ZSet(neg, lo, tuple(vals), pos, cap)


def canonicalize(
    neg_tail: int,
    neg_boundary: int,
    core: Iterable[int],
    pos_boundary: int,
    pos_tail: int,
    cap: int | None = None,
) -> ZSet:
    """Build a canonical ZSet from raw boundary data.

    ``core`` lists the multiplicities on ``[neg_boundary, pos_boundary]``.
    """
    core = tuple(core)
    if pos_boundary - neg_boundary + 1 != len(core):
        raise ValueError(
            f"core length {len(core)} does not match boundaries [{neg_boundary}, {pos_boundary}]"
        )
    if min((neg_tail, pos_tail, *core)) < 0:
        raise ValueError("multiplicities must be non-negative")
    return _make(neg_tail, neg_boundary, core, pos_tail, _resolve_cap(cap))


def pointwise(f, *sets: ZSet) -> ZSet:
    """Combine multiplicities pointwise with ``f`` (result is clipped to the cap)."""
    cap = _check_caps(*sets)
    start = min(s.lo for s in sets)
    stop = max(s.lo + len(s.core) for s in sets)
    core = [f(*(s.mult_at(n) for s in sets)) for n in range(start, stop)]
    return _make(f(*(s.neg_tail for s in sets)), start, core, f(*(s.pos_tail for s in sets)), cap)


def mult_at(s: ZSet, n: int) -> int:
    return s.mult_at(n)


def disjoint_union(*sets: ZSet) -> ZSet:
    """Pointwise saturating sum (the ⊔ of multisets)."""
    if not sets:
        return ZSet.empty()
    if len(sets) == 1:
        return sets[0]
    cap = _check_caps(*sets)
    return pointwise(lambda *vs: min(sum(vs), cap), *sets)


def shift(s: ZSet, k: int) -> ZSet:
    if not s.core and s.neg_tail == s.pos_tail:
        return s
    return ZSet(s.neg_tail, s.lo + k, s.core, s.pos_tail, s.cap)


def minkowski(a: ZSet, b: ZSet) -> ZSet:
    """Minkowski sum with multiplicities: ``mult(n) = sum_k a(k) b(n-k)``, capped."""
    _check_caps(a, b)
    return _minkowski(a, b)


@lru_cache(maxsize=65536)
def _minkowski(a: ZSet, b: ZSet) -> ZSet:
    cap = a.cap
    if a.is_empty() or b.is_empty():
        return ZSet.empty(cap)
    # An up-tail meeting a down-tail gives infinitely many representations everywhere.
    if (a.pos_tail and b.neg_tail) or (a.neg_tail and b.pos_tail):
        return ZSet.constant(cap, cap)
    if len(a.core) < len(b.core):
        a, b = b, a

    def limit(ta: int, tb: int, other_a: ZSet, other_b: ZSet) -> int:
        if ta and tb:
            return cap
        if ta:
            return min(cap, ta * other_b.mass())
        if tb:
            return min(cap, tb * other_a.mass())
        return 0

    neg = limit(a.neg_tail, b.neg_tail, a, b)
    pos = limit(a.pos_tail, b.pos_tail, a, b)
    # Inside [a.lo + b.lo - d, a.hi + b.hi + d] the truncated convolution is exact
    # once each array extends ext cells past its core; beyond it the tails rule.
    d = cap + 2
    ext = d + len(a.core) + len(b.core) + 1
    a_start, b_start = a.lo - ext, b.lo - ext
    av = a.dense(a_start, a.lo + len(a.core) + ext)
    bv = b.dense(b_start, b.lo + len(b.core) + ext)
    conv = np.minimum(np.convolve(av, bv), cap)
    origin = a_start + b_start
    w_lo, w_hi = a.lo + b.lo - d, a.hi + b.hi + d
    vals = conv[w_lo - origin : w_hi - origin + 1]
    return _make(neg, w_lo, vals.tolist(), pos, cap)


def subtract(b: ZSet, a: ZSet) -> ZSet:
    """Pointwise truncated difference ``max(b - a, 0)``.

    Raises CapAmbiguous where ``b`` is saturated and ``a`` is positive: the
    true difference is hidden behind the cap there.
    """
    cap = _check_caps(a, b)

    def diff(x: int, y: int) -> int:
        if x >= cap and y > 0:
            raise CapAmbiguous("difference hidden behind the saturation cap")
        return max(x - y, 0)

    return pointwise(diff, b, a)


def dominates(b: ZSet, a: ZSet) -> bool | None:
    """Whether ``b >= a`` pointwise: True, False, or None when the cap hides it."""
    cap = _check_caps(a, b)
    if a == b:
        return True
    unknown = False
    for x, y in _pairs(b, a):
        if y >= cap:
            if x < cap:
                return False
            unknown = True
        elif x < y:
            return False
    return None if unknown else True


def _pairs(b: ZSet, a: ZSet) -> Iterator[tuple[int, int]]:
    start = min(a.lo, b.lo)
    stop = max(a.lo + len(a.core), b.lo + len(b.core))
    yield b.neg_tail, a.neg_tail
    yield b.pos_tail, a.pos_tail
    for n in range(start, stop):
        yield b.mult_at(n), a.mult_at(n)


def cover_points(s: ZSet) -> Iterator[int]:
    """Representative points: the core window plus one point per tail."""
    start, stop = s.window()
    yield start - 1
    yield from range(start, stop)
    yield stop


def describe(s: ZSet) -> str:
    """Short human-readable rendering, e.g. ``{-3,-2} u [0,inf)``."""
    if s.is_empty():
        return "{}"
    if not s.core and s.neg_tail == s.pos_tail:
        return "Z" if s.neg_tail == 1 else f"Z*{s.neg_tail}"
    parts = []
    if s.neg_tail:
        parts.append(f"(-inf,{s.lo - 1}]" + (f"*{s.neg_tail}" if s.neg_tail > 1 else ""))
    pts = []
    for i, v in enumerate(s.core):
        if v == 1:
            pts.append(str(s.lo + i))
        elif v > 1:
            pts.append(f"{s.lo + i}*{v}" + ("+" if v >= s.cap else ""))
    if pts:
        parts.append("{" + ",".join(pts) + "}")
    if s.pos_tail:
        parts.append(f"[{s.hi + 1},inf)" + (f"*{s.pos_tail}" if s.pos_tail > 1 else ""))
    return " u ".join(parts)


def fitting_translates(f: ZSet, target: ZSet) -> ZSet:
    """All w with ``f + w`` inside the support of ``target`` (f finite, nonempty).

    Any W with ``f + W == target`` is a subset of this set, so a cover exists
    iff the union of these translates is the whole target.
    """
    if not f.is_finite() or f.is_empty():
        raise ValueError("fitting_translates needs a finite nonempty f")
    t = target.support()
    out = ZSet.full(t.cap)
    for p in sorted(set(f.points())):
        out = out & shift(t, -p)
    return out
