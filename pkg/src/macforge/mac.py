"""Checking additive complements and their minimality.

``C`` is a complement of ``W`` when every integer lies in ``C + W``.  It is a
minimal one when in addition every ``c`` in ``C`` has a dependent: a point
``c + w`` that no other element of ``C`` reaches.  A certificate partitions
``C`` into pieces and names, for each piece, one ``w`` whose translate of the
piece lands on points covered exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .series import from_strip, mul
from .strip import StripSet, monomial
from .zset import ZSet, disjoint_union, fitting_translates, minkowski, shift


@dataclass(frozen=True)
class Part:
    piece: ZSet  # heights inside column piece_residue of C
    piece_residue: int
    w: int
    target_residue: int


@dataclass(frozen=True)
class MacCertificate:
    m: int
    C: StripSet
    W: StripSet
    parts: tuple[Part, ...]


@dataclass(frozen=True)
class Failure:
    kind: str  # uncovered | not-unique | no-dependent | partition | residue | not-in-W | not-plain
    residue: int
    point: int | None  # an integer witnessing the failure


@dataclass
class VerifyReport:
    covered: bool
    minimal: bool
    failures: list[Failure] = field(default_factory=list)
    window: tuple[int, int] | None = None  # set when only a window was examined

    @property
    def ok(self) -> bool:
        return self.covered and self.minimal

    @property
    def window_bounded(self) -> bool:
        return self.window is not None


def product(C: StripSet, W: StripSet) -> StripSet:
    """``C + W`` with multiplicities, one column per residue."""
    if C.m != W.m:
        raise ValueError(f"period mismatch: {C.m} vs {W.m}")
    return _product(C, W)


@lru_cache(maxsize=256)
def _product(C: StripSet, W: StripSet) -> StripSet:
    return mul(from_strip(C), from_strip(W)).to_strip()


def _integer(m: int, residue: int, height: int) -> int:
    return residue + m * height


def uncovered(C: StripSet, W: StripSet) -> list[Failure]:
    P = product(C, W)
    out = []
    for r, col in enumerate(P.cols):
        hole = col.complement().any_point()
        if hole is not None:
            out.append(Failure("uncovered", r, _integer(C.m, r, hole)))
    return out


def is_complement(C: StripSet, W: StripSet) -> bool:
    return not uncovered(C, W)


def guarded(C: StripSet, W: StripSet) -> StripSet:
    """Elements of ``C`` that have a dependent, computed exactly.

    ``c`` has a dependent iff ``c + w`` is covered exactly once for some ``w``,
    i.e. iff ``c`` lies in ``U - W`` where ``U`` is the exactly-once part of
    ``C + W``.  Column by column this is a Minkowski sum with a reflected
    column of ``W``.
    """
    P = product(C, W)
    m = C.m
    once = [col.exactly_once() for col in P.cols]
    out = []
    for rho, c_col in enumerate(C.cols):
        if c_col.is_empty():
            out.append(c_col)
            continue
        reach = []
        for sigma, w_col in enumerate(W.cols):
            if w_col.is_empty():
                continue
            carry, tau = divmod(rho + sigma, m)
            if once[tau].is_empty():
                continue
            reach.append(shift(minkowski(once[tau], w_col.reflect()), -carry).support())
        hit = disjoint_union(*reach).support() if reach else ZSet.empty(c_col.cap)
        out.append(c_col.support() & hit)
    return StripSet(m, tuple(out))


def decide_minimal(C: StripSet, W: StripSet) -> list[Failure]:
    """Elements of ``C`` without a dependent (empty list: every element has one)."""
    g = guarded(C, W)
    out = []
    for r, (c_col, g_col) in enumerate(zip(C.cols, g.cols)):
        bad = (c_col - g_col).any_point()
        if bad is not None:
            out.append(Failure("no-dependent", r, _integer(C.m, r, bad)))
    return out


def decide_mac(C: StripSet, W: StripSet) -> VerifyReport:
    """Exact verdict for plain ``C`` and ``W`` without a certificate."""
    fails = [Failure("not-plain", r, None) for r, c in enumerate(C.cols + W.cols) if not c.is_plain()]
    cov = uncovered(C, W)
    mins = decide_minimal(C, W) if not cov else []
    fails += cov + mins
    return VerifyReport(covered=not cov, minimal=not fails, failures=fails)


def check_certificate(cert: MacCertificate) -> VerifyReport:
    """Coverage plus the per-part exactly-once condition.

    Structural problems (pieces not partitioning C, residue arithmetic off,
    a ``w`` missing from W, non-plain inputs) are reported as failures and make ``minimal`` false.
    """
    C, W, m = cert.C, cert.W, cert.m
    fails: list[Failure] = []
    if C.m != m or W.m != m:
        raise ValueError(f"certificate period {m} does not match C ({C.m}) and W ({W.m})")
    for r, col in enumerate(C.cols):
        if not col.is_plain():
            fails.append(Failure("not-plain", r, None))
    for r, col in enumerate(W.cols):
        if not col.is_plain():
            fails.append(Failure("not-plain", r, None))

    cov = uncovered(C, W)
    structure: list[Failure] = []
    pieces: dict[int, list[ZSet]] = {}
    for part in cert.parts:
        if not 0 <= part.piece_residue < m or (part.piece_residue + part.w) % m != part.target_residue:
            structure.append(Failure("residue", part.piece_residue, None))
            continue
        if not W.mult_at(part.w):
            structure.append(Failure("not-in-W", part.w % m, part.w))
        pieces.setdefault(part.piece_residue, []).append(part.piece)
    for r, col in enumerate(C.cols):
        total = disjoint_union(*pieces.get(r, [])) if pieces.get(r) else ZSet.empty(col.cap)
        if total != col:
            witness = _first_difference(total, col)
            structure.append(Failure("partition", r, _integer(m, r, witness)))

    P = product(C, W)
    unique: list[Failure] = []
    for part in cert.parts:
        t = part.piece_residue + part.w
        tau = t % m
        if tau != part.target_residue:
            continue
        landed = shift(part.piece.support(), t // m)
        bad = (landed & P.cols[tau].map(lambda v: 0 if v == 1 else 1)).any_point()
        if bad is not None:
            unique.append(Failure("not-unique", tau, _integer(m, tau, bad)))

    fails += cov + structure + unique
    return VerifyReport(covered=not cov, minimal=not fails, failures=fails)


def _first_difference(a: ZSet, b: ZSet) -> int:
    start = min(a.lo, b.lo) - 1
    stop = max(a.lo + len(a.core), b.lo + len(b.core)) + 1
    for n in range(start, stop):
        if a.mult_at(n) != b.mult_at(n):
            return n
    return start


def window_oracle(C: StripSet, W: StripSet, lo: int, hi: int) -> VerifyReport:
    """Brute-force check on the integers of ``[lo, hi]``.

    ``C`` is truncated to ``[lo - span, hi + span]``; dependents are searched in
    the same range.  A pass is evidence on the window, not a proof.
    """
    if lo >= hi:
        raise ValueError("window needs lo < hi")
    span = hi - lo
    a, b = lo - span, hi + span
    c_arr = _indicator(C, a, b + 1)
    w_lo, w_hi = a - b, b - a
    w_arr = _indicator(W, w_lo, w_hi + 1)
    conv = np.convolve(c_arr, w_arr)
    origin = a + w_lo
    counts = conv[a - origin : b - origin + 1]  # counts[n - a] for n in [a, b]
    fails: list[Failure] = []
    for n in range(lo, hi + 1):
        if counts[n - a] == 0:
            fails.append(Failure("uncovered", n % C.m, n))
    cov = not fails
    once = counts == 1
    deltas = np.arange(a, b + 1)
    for c in range(lo, hi + 1):
        if not c_arr[c - a]:
            continue
        reach = w_arr[deltas - c - w_lo].astype(bool)
        if not np.any(reach & once):
            fails.append(Failure("no-dependent", c % C.m, c))
    return VerifyReport(covered=cov, minimal=not fails, failures=fails, window=(lo, hi))


def _indicator(s: StripSet, start: int, stop: int) -> np.ndarray:
    m = s.m
    n = np.arange(start, stop)
    out = np.zeros(len(n), dtype=np.int64)
    for r, col in enumerate(s.cols):
        if col.is_empty():
            continue
        idx = np.nonzero(n % m == r)[0]
        heights = n[idx] // m
        out[idx] = col.dense(int(heights.min()), int(heights.max()) + 1)[heights - heights.min()]
    return out


def find_certificate(C: StripSet, W: StripSet, reach: int = 8) -> MacCertificate | None:
    """Greedy search for a finite partition certificate.

    For each column of C, candidate elements ``w`` of W are taken from a window
    of ``reach`` heights around the cores involved; pieces are chosen greedily,
    preferring ones that swallow infinite tails.  Returns None if the greedy
    pass leaves something unguarded (which proves nothing).
    """
    if not is_complement(C, W):
        return None
    m = C.m
    P = product(C, W)
    once = [col.exactly_once() for col in P.cols]
    parts: list[Part] = []
    for rho, c_col in enumerate(C.cols):
        remaining = c_col.support()
        if remaining.is_empty():
            continue
        options: list[tuple[ZSet, int, int]] = []
        for sigma, w_col in enumerate(W.cols):
            if w_col.is_empty():
                continue
            carry, tau = divmod(rho + sigma, m)
            u = once[tau]
            if u.is_empty():
                continue
            lo = min(w_col.lo, u.lo - c_col.hi - 1) - reach
            hi = max(w_col.hi, u.hi - c_col.lo + 1) + reach
            for h in range(lo, hi + 1):
                if not w_col.mult_at(h):
                    continue
                good = remaining & shift(u, -(h + carry))
                if not good.is_empty():
                    options.append((good, sigma + m * h, tau))
        while not remaining.is_empty():
            best = None
            best_score = None
            for good, w, tau in options:
                gain = good & remaining
                if gain.is_empty():
                    continue
                score = (bool(gain.neg_tail) + bool(gain.pos_tail), sum(gain.core))
                if best_score is None or score > best_score:
                    best, best_score = (gain, w, tau), score
            if best is None:
                return None
            gain, w, tau = best
            parts.append(Part(gain, rho, w, tau))
            remaining = remaining - gain
    return MacCertificate(m, C, W, tuple(parts))


@dataclass(frozen=True)
class M2Verdict:
    found: bool
    witness: StripSet | None  # W with F + W equal to the even complement of 2N u B
    reason: str


def m2_criterion(C: StripSet) -> M2Verdict:
    """Decide the period-2 criterion: is ``2Z - (2N u B)`` of the form ``F + W``?

    ``C`` must have an even column (2N u B) and a finite nonempty odd column F.
    The decision is exact: a suitable W exists iff the union of all translates
    of F that fit inside the target is the whole target.  An empty target is
    rejected because F would then have nothing to guard.
    """
    if C.m != 2:
        raise ValueError("m2_criterion needs period 2")
    even, odd = C.cols
    if not odd.is_finite() or odd.is_empty() or not even.is_plain() or not odd.is_plain():
        raise ValueError("expected 2N u B in the even column and a finite nonempty odd column")
    target = even.complement()  # heights y with 2y missing from C
    if target.is_empty():
        return M2Verdict(False, None, "even column is all of 2Z: no room for dependents of F")
    # F = 2F' + 1 and W = 2X + 1 give F + W = 2(F' + X + 1).
    ys = fitting_translates(odd, target)
    if not minkowski(odd, ys).same_support(target):
        return M2Verdict(False, None, "no translates of F tile the even complement exactly")
    W = monomial(shift(ys, -1), 1, 2)
    return M2Verdict(True, W, "covered by translates of F")
