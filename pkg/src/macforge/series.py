"""Truncated power series in x with ZSet coefficients, reduced by x^m = q^1.

The coefficient of x^i is the column of residue i; multiplying two series
multiplies the underlying integer multisets (Minkowski sum with multiplicity).
"""

from __future__ import annotations

from dataclasses import dataclass

from .strip import StripSet
from .zset import ZSet, disjoint_union, dominates, minkowski, shift


@dataclass(frozen=True)
class XiSeries:
    m: int
    coeffs: tuple[ZSet, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, m: int, cap: int | None = None) -> XiSeries:
        return cls(m, (ZSet.empty(cap),) * m)

    @classmethod
    def one(cls, m: int, cap: int | None = None) -> XiSeries:
        return cls.monomial(ZSet.finite([0], cap), 0, m)

    @classmethod
    def monomial(cls, coeff: ZSet, exponent: int, m: int) -> XiSeries:
        """``q^coeff * x^exponent`` for any integer exponent."""
        cols = [ZSet.empty(coeff.cap)] * m
        cols[exponent % m] = shift(coeff, exponent // m)
        return cls(m, tuple(cols))

    def __mul__(self, other: XiSeries) -> XiSeries:
        return mul(self, other)

    def __add__(self, other: XiSeries) -> XiSeries:
        return add(self, other)

    def to_strip(self) -> StripSet:
        return StripSet(self.m, self.coeffs)


def from_strip(s: StripSet) -> XiSeries:
    return XiSeries(s.m, s.cols)


def _same_period(a: XiSeries, b: XiSeries) -> None:
    if a.m != b.m:
        raise ValueError(f"period mismatch: {a.m} vs {b.m}")


def mul(a: XiSeries, b: XiSeries) -> XiSeries:
    _same_period(a, b)
    m = a.m
    acc: list[list[ZSet]] = [[] for _ in range(m)]
    for i, ai in enumerate(a.coeffs):
        if ai.is_empty():
            continue
        for j, bj in enumerate(b.coeffs):
            if bj.is_empty():
                continue
            carry, r = divmod(i + j, m)
            assert carry <= 1
            acc[r].append(shift(minkowski(ai, bj), carry))
    cap = a.coeffs[0].cap
    return XiSeries(m, tuple(disjoint_union(*terms) if terms else ZSet.empty(cap) for terms in acc))


def add(a: XiSeries, b: XiSeries) -> XiSeries:
    _same_period(a, b)
    return XiSeries(a.m, tuple(disjoint_union(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def coeff(a: XiSeries, i: int) -> ZSet:
    if not 0 <= i < a.m:
        raise IndexError(f"residue {i} outside [0, {a.m})")
    return a.coeffs[i]


def range_of(a: XiSeries) -> set[int]:
    """Exponents carrying a nonzero coefficient."""
    return {i for i, c in enumerate(a.coeffs) if not c.is_empty()}


def dominates_series(a: XiSeries, b: XiSeries) -> bool | None:
    """Coefficientwise ``a >= b``: True, False, or None when the cap hides it."""
    _same_period(a, b)
    unknown = False
    for x, y in zip(a.coeffs, b.coeffs):
        d = dominates(x, y)
        if d is False:
            return False
        if d is None:
            unknown = True
    return None if unknown else True


def sumset(a: StripSet, b: StripSet) -> StripSet:
    """Minkowski sum with multiplicity of two strip sets."""
    return mul(from_strip(a), from_strip(b)).to_strip()
