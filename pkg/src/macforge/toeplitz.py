"""The Toeplitz system behind inverses in the quotient series ring.

Coefficients here are exact finite multisets of integers (no cap).  ``q^A``
times ``q^B`` is ``q^(A ⊕ B)`` and a sum of monomials is a formal integer
combination.  Sending ``q^A`` to the Laurent polynomial ``sum_{a in A} t^a``
turns ⊕ into multiplication and ⊔ into addition, and it is injective on
multisets, so a combination is zero exactly when its image is.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

MAX_SYMBOLIC = 6

Multiset = tuple[int, ...]  # sorted, repeats allowed


def multiset(elements: Iterable[int]) -> Multiset:
    return tuple(sorted(elements))


def msum(*parts: Multiset) -> Multiset:
    """Minkowski sum with multiplicity ``A ⊕ B ⊕ ...``."""
    out: Multiset = (0,)
    for p in parts:
        out = tuple(sorted(a + b for a, b in product(out, p)))
    return out


def laurent(A: Multiset) -> dict[int, int]:
    """Image of ``q^A``: exponent -> coefficient."""
    return dict(Counter(A))


class SizeLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class QPoly:
    """Integer combination of monomials ``q^A`` keyed by sorted multisets."""

    terms: Mapping[Multiset, int]

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.terms.items()) if v}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, A: Iterable[int], coeff: int = 1) -> QPoly:
        return cls({multiset(A): coeff})

    def __add__(self, other: QPoly) -> QPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return QPoly(out)

    def __neg__(self) -> QPoly:
        return QPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: QPoly) -> QPoly:
        return self + (-other)

    def __mul__(self, other: QPoly) -> QPoly:
        out: dict[Multiset, int] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = msum(ka, kb)
                out[k] = out.get(k, 0) + va * vb
        return QPoly(out)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def laurent(self) -> dict[int, int]:
        """Image under ``q^A -> sum t^a``; zero coefficients dropped."""
        out: dict[int, int] = {}
        for k, v in self.terms.items():
            for e, c in Counter(k).items():
                out[e] = out.get(e, 0) + v * c
        return {e: c for e, c in sorted(out.items()) if c}

    def is_zero(self) -> bool:
        return not self.laurent()

    def evaluate(self, t: Fraction | int) -> Fraction:
        t = Fraction(t)
        return sum((c * t**e for e, c in self.laurent().items()), Fraction(0))

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, v in self.terms.items():
            mono = "q^{" + ",".join(map(str, k)) + "}"
            sign = "-" if v < 0 else "+"
            mag = "" if abs(v) == 1 else f"{abs(v)}"
            pieces.append((sign, mag + mono))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class ToeplitzT:
    m: int
    entries: tuple[tuple[Multiset, ...], ...]  # monomial exponents

    def entry(self, i: int, j: int) -> QPoly:
        return QPoly.monomial(self.entries[i][j])


def build_T(A: Sequence[Iterable[int]]) -> ToeplitzT:
    """``q^(A_{i-j})`` on and below the diagonal, ``q^(A_{m+i-j} ⊕ {1})`` above."""
    As = [multiset(a) for a in A]
    m = len(As)
    if m < 1:
        raise ValueError("need at least one multiset")
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i >= j:
                row.append(As[i - j])
            else:
                row.append(tuple(a + 1 for a in As[m + i - j]))
        rows.append(tuple(row))
    return ToeplitzT(m, tuple(rows))


def _parity(perm: Sequence[int]) -> int:
    seen, sign = [False] * len(perm), 1
    for start in range(len(perm)):
        length, k = 0, start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


def symbolic_det(T: ToeplitzT) -> QPoly:
    """Leibniz expansion; monomial products are multiset sums."""
    if T.m > MAX_SYMBOLIC:
        raise SizeLimitExceeded(f"symbolic determinant limited to m <= {MAX_SYMBOLIC}, got {T.m}")
    out: dict[Multiset, int] = {}
    for perm in permutations(range(T.m)):
        k = msum(*(T.entries[i][perm[i]] for i in range(T.m)))
        out[k] = out.get(k, 0) + _parity(perm)
    return QPoly(out)


def bareiss_det(M: Sequence[Sequence[int | Fraction]]) -> Fraction:
    """Exact determinant by fraction-free elimination (pivoting on zeros)."""
    a = [[Fraction(x) for x in row] for row in M]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def evaluated_matrix(T: ToeplitzT, t: Fraction | int) -> list[list[Fraction]]:
    return [[T.entry(i, j).evaluate(t) for j in range(T.m)] for i in range(T.m)]


def size_matrix(sizes: Sequence[int]) -> list[list[int]]:
    m = len(sizes)
    return [[sizes[(i - j) % m] for j in range(m)] for i in range(m)]


def size_matrix_det(sizes: Sequence[int]) -> int:
    """Determinant of the circulant matrix with entries ``|A_{(i-j) mod m}|``."""
    if not sizes:
        raise ValueError("need at least one size")
    d = bareiss_det(size_matrix(sizes))
    assert d.denominator == 1
    return int(d)


def gershgorin_unique_inverse(sizes: Sequence[int]) -> bool:
    """Diagonal dominance ``|A_0| > sum of the other sizes``."""
    if not sizes:
        raise ValueError("need at least one size")
    return sizes[0] > sum(sizes[1:])


def min_element_nonzero_check(A: Sequence[Iterable[int]]) -> bool:
    """Whether the symbolic determinant is nonzero (expected for m <= 3)."""
    As = [multiset(a) for a in A]
    if len(As) not in (2, 3):
        raise ValueError("the minimum-element argument covers m = 2 and m = 3 only")
    if any(not a for a in As):
        raise ValueError("all multisets must be nonempty")
    return not symbolic_det(build_T(As)).is_zero()
