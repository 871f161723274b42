"""Explicit complements that make a given set a minimal additive complement.

Every builder assembles a candidate complement V, writes a certificate (a
partition of C together with the translate that guards each piece) and runs
the checker on it before returning.  A failing self-check raises
VerificationFailed; that would be a bug, never a silent success.

Heights and residues follow the strip picture: the integer ``m*y + r`` sits at
height ``y`` in column ``r``.  A "monomial" ``(S, e)`` is the integer set
``m*S + e`` for an arbitrary integer exponent ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .mac import MacCertificate, Part, VerifyReport, check_certificate, decide_mac, find_certificate
from .strip import Pattern, StripSet, min_consecutive_length, monomial, project, shape_list, union_all
from .zset import ZSet, disjoint_union, fitting_translates, minkowski, shift


class ConstructionError(Exception):
    """Base class for builder failures."""


class BoundViolated(ConstructionError):
    def __init__(self, formula: str, bound: int, m: int):
        super().__init__(f"period {m} is below the bound {formula} = {bound}")
        self.formula, self.bound, self.m = formula, bound, m


class HypothesisFailed(ConstructionError):
    pass


class NotCoverable(HypothesisFailed):
    pass


class CoverEquationFailed(HypothesisFailed):
    pass


class AssemblyCollision(ConstructionError):
    pass


class NotAMac(ConstructionError):
    pass


class VerificationFailed(ConstructionError):
    def __init__(self, report: VerifyReport):
        super().__init__(f"self-check failed: {report.failures[:3]}")
        self.report = report


@dataclass
class Construction:
    V: StripSet
    cert: MacCertificate
    report: VerifyReport
    bound: int | None = None
    # named pieces of V as (heights, exponent) monomials, for inspection
    blocs: dict[str, list[tuple[ZSet, int]]] = field(default_factory=dict)

    @property
    def shape(self) -> list[tuple[ZSet, int]]:
        return shape_list(self.V)


def _verified(cert: MacCertificate, **kw) -> Construction:
    report = check_certificate(cert)
    if not report.ok:
        raise VerificationFailed(report)
    return Construction(cert.W, cert, report, **kw)


# -- one-dimensional engines ---------------------------------------------


def cover_by_translates(F: ZSet, target: ZSet) -> ZSet:
    """A set W with ``F + W`` equal to the support of ``target``.

    Returns the largest such W (every translate of F fitting inside the
    target).  No other W can cover more, so failure here is definitive.
    """
    w = fitting_translates(F, target)
    if not minkowski(F, w).same_support(target):
        raise NotCoverable("translates of F fitting inside the target miss some of it")
    return w


def _holes_complement(F: ZSet, anchor: int) -> tuple[ZSet, dict[int, tuple[int, int]]]:
    """Complement of finite F in Z where each element owns a private point.

    For the elements f_1 < ... < f_k put ``x_i = anchor - i*(2*diam + 1)``.
    Removing every translate that reaches some x_i still covers all other
    integers; adding back ``x_i - f_i`` covers x_i through f_i alone.
    Returns W and ``{f_i: (w_i, x_i)}``.
    """
    fs = sorted(set(F.points()))
    diam = fs[-1] - fs[0]
    gap = 2 * diam + 1
    holes = [anchor - i * gap for i in range(len(fs))]
    removed = ZSet.finite({x - f for x in holes for f in fs}, F.cap)
    added = {f: x - f for f, x in zip(fs, holes)}
    w = (ZSet.full(F.cap) - removed) | ZSet.finite(set(added.values()), F.cap)
    return w, {f: (added[f], x) for f, x in zip(fs, holes)}


def finite_mac_complement(F: ZSet, anchor: int = 0) -> tuple[ZSet, MacCertificate, dict[int, tuple[int, int]]]:
    """W with ``F + W = Z`` and F minimal, plus its period-1 certificate.

    Also returns ``{f: (w, dependent)}``.
    """
    if not F.is_finite() or F.is_empty() or not F.is_plain():
        raise ValueError("finite_mac_complement needs a finite nonempty plain set")
    w, deps = _holes_complement(F, anchor)
    C1 = StripSet(1, (F,))
    W1 = StripSet(1, (w,))
    parts = tuple(Part(ZSet.finite([f], F.cap), 0, wf, 0) for f, (wf, _) in deps.items())
    cert = MacCertificate(1, C1, W1, parts)
    report = check_certificate(cert)
    if not report.ok:
        raise VerificationFailed(report)
    return w, cert, deps


def tiling_complement(F: ZSet, max_period: int | None = None) -> StripSet | None:
    """Periodic R + PZ with F + (R + PZ) = Z covering every integer once.

    Searches periods up to ``max_period`` (default ``4*diam + 4``), placing a
    translate on the leftmost uncovered residue first.  Returns the set at
    period P, or None if F tiles no such period.
    """
    fs = sorted(set(F.points()))
    diam = fs[-1] - fs[0]
    limit = max_period or 4 * diam + 4
    for P in range(len(fs), limit + 1):
        if P % len(fs):
            continue
        if len({f % P for f in fs}) < len(fs):
            continue
        found = _tile_cycle(fs, P)
        if found is not None:
            return StripSet.from_columns(P, {r: ZSet.full(F.cap) for r in found}, F.cap)
    return None


def _tile_cycle(fs: list[int], P: int) -> list[int] | None:
    covered = [False] * P
    chosen: list[int] = []

    def solve() -> bool:
        try:
            hole = covered.index(False)
        except ValueError:
            return True
        for f in fs:
            r = (hole - f) % P
            cells = [(f2 + r) % P for f2 in fs]
            if any(covered[c] for c in cells):
                continue
            for c in cells:
                covered[c] = True
            chosen.append(r)
            if solve():
                return True
            chosen.pop()
            for c in cells:
                covered[c] = False
        return False

    return chosen if solve() else None


def _top_of_down_run(t: ZSet) -> int | None:
    """Largest y with ``(-inf, y]`` inside t (None when t is everything)."""
    gap = t.complement().min_point()
    return None if gap is None else gap - 1


def bl_minimize(F: ZSet, target: ZSet, threshold: int) -> tuple[ZSet, dict[int, tuple[int, int]]]:
    """W with ``F + W`` equal to ``target`` and a dependent below ``threshold`` for each f.

    The target must contain a down-ray.  Far down, W follows a hole-style
    complement of F (which hands every f a private point); higher up it takes
    every fitting translate.  Returns W and ``{f: (w, dependent)}``.
    """
    if not target.neg_tail:
        raise ValueError("bl_minimize needs a target containing a down-ray")
    target = target.support()
    wmax = cover_by_translates(F, target)
    fs = sorted(set(F.points()))
    fmin, diam = fs[0], fs[-1] - fs[0]
    top = _top_of_down_run(target)
    if top is None:
        top = max(threshold, target.lo + len(target.core)) + 2 * diam
    s = min(top - 2 * diam, threshold - 1)
    f0 = shift(F, -fmin)
    low, deps0 = _holes_complement(f0, s)
    w0 = (shift(wmax, fmin) & ZSet.up_ray(s + 1, F.cap)) | (low & ZSet.down_ray(s, F.cap))
    w = shift(w0, -fmin)
    deps = {f0p + fmin: (wp - fmin, x) for f0p, (wp, x) in deps0.items()}
    sums = minkowski(F, w)
    assert sums.same_support(target), "bl_minimize lost coverage"
    assert all(sums.mult_at(x) == 1 for _, x in deps.values()), "bl_minimize lost a dependent"
    return w, deps


# -- bounds ----------------------------------------------------------------


def thm4_bound(f_res: int, n: int) -> int:
    """``f + 2f*floor(n/f) + (n mod f)`` for residue f and cover size n."""
    if f_res < 1 or n < 1:
        raise ValueError("thm4_bound needs f_res >= 1 and n >= 1")
    return f_res + 2 * f_res * (n // f_res) + n % f_res


def thm7_bound(ell: int, t: int, cover_sizes: Sequence[int]) -> int:
    if ell < 1:
        raise ValueError("ell must be positive")
    return (ell + 1) * (t + sum(cover_sizes))


def thm6_bound(ell: int, a: int, b: int, fcols: int) -> int:
    if ell < 1:
        raise ValueError("ell must be positive")
    return (ell + 1) * (a + b + fcols)


# -- one infinite column plus one finite column -------------------------------


@dataclass(frozen=True)
class Thm4Input:
    """``C = K u F`` with K in residue 0 and F finite in residue ``f_res``.

    ``K`` and ``F`` are height sets; ``cover`` lists height sets whose union
    is K.  ``W`` optionally gives, per cover set, heights with ``F + W``
    equal to the complement of that set.
    """

    m: int
    K: ZSet
    F: ZSet
    f_res: int
    cover: tuple[ZSet, ...]
    W: tuple[ZSet, ...] | None = None

    @classmethod
    def from_set(cls, C: StripSet, cover: Sequence[ZSet] | None = None, W=None) -> Thm4Input:
        others = [r for r in C.residues() if r != 0]
        if C.cols[0].is_empty() or len(others) != 1:
            raise HypothesisFailed("expected a nonempty column 0 and exactly one other nonempty column")
        f_res = others[0]
        K = C.cols[0]
        return cls(C.m, K, C.cols[f_res], f_res, tuple(cover) if cover else (K,), tuple(W) if W else None)

    def strip(self) -> StripSet:
        return StripSet.from_columns(self.m, {0: self.K, self.f_res: self.F})

    def validate(self) -> None:
        if not (1 <= self.f_res < self.m):
            raise HypothesisFailed(f"finite column residue {self.f_res} must lie in [1, {self.m - 1}]")
        if not self.K.is_plain() or not self.F.is_plain():
            raise HypothesisFailed("C must be a plain set")
        if self.F.is_empty() or not self.F.is_finite():
            raise HypothesisFailed("the finite part F must be nonempty and finite")
        if not self.K.pos_tail:
            raise HypothesisFailed("column 0 must contain an up-ray")
        if not self.cover:
            raise HypothesisFailed("empty cover")
        union = ZSet.empty(self.K.cap)
        for s in self.cover:
            if not s.issubset(self.K):
                raise HypothesisFailed("a cover set is not inside column 0")
            union = union | s
        if not union.same_support(self.K):
            raise HypothesisFailed("cover sets do not union to column 0")


def trivial_cover(K: ZSet) -> list[ZSet]:
    """Rays plus singletons: the maximal tail rays of K and each remaining point."""
    K = K.support()
    gaps = K.complement()
    if gaps.is_empty():
        return [K]
    pieces = []
    if K.pos_tail:
        pieces.append(ZSet.up_ray(gaps.max_point() + 1, K.cap))
    if K.neg_tail:
        pieces.append(ZSet.down_ray(gaps.min_point() - 1, K.cap))
    rest = K
    for ray in pieces:
        rest = rest - ray
    pieces.extend(ZSet.finite([p], K.cap) for p in rest.points())
    return pieces


def _disjoint_pieces(sets: Sequence[ZSet]) -> list[ZSet]:
    out, seen = [], None
    for s in sets:
        piece = s.support() if seen is None else s.support() - seen
        out.append(piece)
        seen = piece if seen is None else seen | s.support()
    return out


def _slot_layout(f_res: int, n: int) -> list[tuple[int, int, int]]:
    """(car i, position j, dependent column v) for passengers 1..n."""
    out = []
    for s in range(n):
        i, j = s // f_res + 1, s % f_res + 1
        out.append((i, j, (2 * i - 1) * f_res + j - 1))
    return out


def _filler_exponents(f_res: int, n: int, m: int) -> list[int]:
    k, r = divmod(n, f_res)
    first = [2 * k * f_res + j - 1 for j in range(r + 1, f_res + 1)]
    return first + list(range((2 * k + 2) * f_res, m))


def build_thm4_witness(inp: Thm4Input) -> Construction:
    """Complement for ``C = K u F`` with K bounded below (finite B).

    Passenger s of the cover rides in car i at position j and owns the
    dependent column ``v = (2i-1)f + j - 1``: V holds the point v (so K lands
    there once) and ``W_s`` at exponent ``v - f`` (so F fills the rest of
    that column).  Full filler columns take care of every other residue.
    """
    inp.validate()
    if inp.K.neg_tail:
        raise HypothesisFailed("column 0 is unbounded below; use build_thm8_witness")
    m, f_res, cap = inp.m, inp.f_res, inp.K.cap
    n = len(inp.cover)
    bound = thm4_bound(f_res, n)
    if m < bound:
        raise BoundViolated("f + 2f*floor(n/f) + (n mod f)", bound, m)
    threshold = inp.K.min_point()
    ws = []
    for idx, s in enumerate(inp.cover):
        target = s.complement()
        if inp.W is not None:
            if not minkowski(inp.F, inp.W[idx]).same_support(target):
                raise HypothesisFailed(f"supplied W for cover set {idx} does not satisfy F + W = complement")
        try:
            ws.append(bl_minimize(inp.F, target, threshold))
        except NotCoverable as e:
            raise HypothesisFailed(f"cover set {idx} is not coverable by translates of F") from e

    slots = _slot_layout(f_res, n)
    points = [({0}, v) for _, _, v in slots]
    w_terms = [(w, v - f_res) for (w, _), (_, _, v) in zip(ws, slots)]
    fillers = [(ZSet.full(cap), e) for e in _filler_exponents(f_res, n, m)]
    blocs = {
        "intervals": [(ZSet.finite(p, cap), e) for p, e in points],
        "passengers": w_terms,
        "fillers": fillers,
    }
    V = union_all(m, (monomial(h, e, m) for bloc in blocs.values() for h, e in bloc), cap)

    parts = []
    for piece, (_, _, v) in zip(_disjoint_pieces(inp.cover), slots):
        if not piece.is_empty():
            parts.append(Part(piece, 0, v, v % m))
    v1 = slots[0][2]
    for f, (w, _) in ws[0][1].items():
        parts.append(Part(ZSet.finite([f], cap), f_res, m * w + v1 - f_res, v1 % m))
    cert = MacCertificate(m, inp.strip(), V, tuple(parts))
    return _verified(cert, bound=bound, blocs=blocs)


def build_thm8_witness(inp: Thm4Input) -> Construction:
    """Variant for column 0 unbounded below (infinite B).

    F becomes one more passenger with its own dependent column: it rides in
    the last slot with a full complement of F (``F + W_F = Z``), and the point
    of V at that slot is dropped so K never reaches the column.
    """
    inp.validate()
    if not inp.K.neg_tail:
        raise HypothesisFailed("column 0 is bounded below (finite B); use build_thm4_witness")
    m, f_res, cap = inp.m, inp.f_res, inp.K.cap
    n = len(inp.cover)
    bound = thm4_bound(f_res, n + 1)
    if m < bound:
        raise BoundViolated("f + 2f*floor((n+1)/f) + ((n+1) mod f)", bound, m)
    ws = []
    for idx, s in enumerate(inp.cover):
        target = s.complement()
        if inp.W is not None:
            w = inp.W[idx]
            if not minkowski(inp.F, w).same_support(target):
                raise HypothesisFailed(f"supplied W for cover set {idx} does not satisfy F + W = complement")
        else:
            try:
                w = cover_by_translates(inp.F, target) if not target.is_empty() else ZSet.empty(cap)
            except NotCoverable as e:
                raise HypothesisFailed(f"cover set {idx} is not coverable by translates of F") from e
        ws.append(w)
    wf, _, deps = finite_mac_complement(inp.F)

    slots = _slot_layout(f_res, n + 1)
    points = [({0}, v) for _, _, v in slots[:-1]]
    w_terms = [(w, v - f_res) for w, (_, _, v) in zip(ws + [wf], slots)]
    fillers = [(ZSet.full(cap), e) for e in _filler_exponents(f_res, n + 1, m)]
    blocs = {
        "intervals": [(ZSet.finite(p, cap), e) for p, e in points],
        "passengers": w_terms,
        "fillers": fillers,
    }
    V = union_all(m, (monomial(h, e, m) for bloc in blocs.values() for h, e in bloc), cap)

    parts = []
    for piece, (_, _, v) in zip(_disjoint_pieces(inp.cover), slots):
        if not piece.is_empty():
            parts.append(Part(piece, 0, v, v % m))
    vf = slots[-1][2]
    for f, (w, _) in deps.items():
        parts.append(Part(ZSet.finite([f], cap), f_res, m * w + vf - f_res, vf % m))
    cert = MacCertificate(m, inp.strip(), V, tuple(parts))
    return _verified(cert, bound=bound, blocs=blocs)


# -- a single element in the finite column ----------------------------------


def build_prop1_witness(m: int, B: ZSet, f: int) -> Construction:
    """Complement for ``C = mN u B u {f}`` with B a set of heights in column 0.

    Finite B goes through the one-column construction (or, at m = 2, the
    direct ``{0} u W`` complement).  Infinite B follows the explicit formulas;
    ``mN u B = mZ`` at m = 2 raises NotAMac.
    """
    f_res, phi = f % m, f // m
    if f_res == 0:
        raise ValueError("f must not be divisible by m")
    if not B.is_plain():
        raise ValueError("B must be a plain set of heights")
    cap = B.cap
    K = ZSet.up_ray(0, cap) | B
    C = StripSet.from_columns(m, {0: K, f_res: ZSet.finite([phi], cap)})
    if not K.neg_tail:
        if m == 2:
            # {f} + W' is the even part missing from C; K + W' fills the odd column.
            gaps = K.complement()
            V = StripSet.from_integers(2, [0], cap).union(monomial(shift(gaps, -phi - 1), 1, 2))
            return _certified(C, V, None)
        return build_thm4_witness(Thm4Input(m, K, ZSet.finite([phi], cap), f_res, (K,)))
    holes = K.complement()
    if holes.is_empty():
        if m == 2:
            raise NotAMac("2N u B = 2Z with a single odd element cannot be a minimal complement")
        V = StripSet.from_integers(m, [i + i * m for i in range(m - 1)], cap)
        V = V.union(monomial(ZSet.full(cap), m - 1 - f_res, m))
        return _certified(C, V, None)
    if m == 2:
        # Residue m - f_res is then the only odd residue, and K + W_f alone
        # leaves a point of it uncovered whatever the holes are.
        raise HypothesisFailed("infinite B with gaps needs m >= 3 for the explicit formula")
    # f + W_f hits exactly the multiples of m missing from C.
    V = StripSet.from_integers(m, [0], cap).union(monomial(shift(holes, -phi - 1), m - f_res, m))
    for i in range(1, m):
        if i != m - f_res:
            V = V.union(monomial(ZSet.full(cap), i, m))
    return _certified(C, V, None)


def _certified(C: StripSet, V: StripSet, bound: int | None) -> Construction:
    cert = find_certificate(C, V)
    if cert is None:
        report = decide_mac(C, V)
        if report.ok:
            report = VerifyReport(covered=True, minimal=False, failures=[])
        raise VerificationFailed(report)
    return _verified(cert, bound=bound)


# -- patterns: several columns ----------------------------------------------


@dataclass(frozen=True)
class CoverSet:
    """One piece S of an infinite column, with translates covering its complement.

    ``via_finite[x]`` are heights W with ``F_x + W`` inside the complement of S;
    ``via_infinite[x]`` the same for infinite columns.  Together they must
    cover the complement exactly.
    """

    S: ZSet
    via_finite: Mapping[int, ZSet] = field(default_factory=dict)
    via_infinite: Mapping[int, ZSet] = field(default_factory=dict)


@dataclass(frozen=True)
class Thm7Input:
    pattern: Pattern
    m: int
    covers: Mapping[int, Sequence[CoverSet]] | None = None  # keyed by x of infinite column


def _trivial_cover_sets(pattern: Pattern, finite_x: list[int], x: int) -> list[CoverSet]:
    out = []
    for s in trivial_cover(pattern.columns[x]):
        out.append(_cover_with_finite(pattern, finite_x, s))
    return out


def _cover_with_finite(pattern: Pattern, finite_x: list[int], s: ZSet) -> CoverSet:
    target = s.complement()
    if target.is_empty():
        return CoverSet(s)
    for fx in finite_x:
        try:
            return CoverSet(s, {fx: cover_by_translates(pattern.columns[fx], target)})
        except NotCoverable:
            continue
    raise HypothesisFailed("no finite column covers the complement of a cover set")


def single_set_covers(pattern: Pattern) -> dict[int, list[CoverSet]]:
    """Each infinite column covered by itself, complement handled by a finite column."""
    finite_x = [x for x, c in pattern.columns.items() if c.is_finite()]
    return {
        x: [_cover_with_finite(pattern, finite_x, c)] for x, c in pattern.columns.items() if not c.is_finite()
    }


def build_thm7_witness(inp: Thm7Input) -> Construction:
    """Complement for a horizontally bounded pattern projected at period m.

    Each finite column and each cover set is a passenger alpha = 1..N with
    dependent column ``alpha*ell + alpha - 1``; the block of passenger alpha
    starts at ``(alpha-1)(ell+1)`` and carries full columns at the shifts Q
    that make the x-support fill ``ell`` consecutive residues.
    """
    p, m = inp.pattern, inp.m
    cols = p.columns
    if not cols:
        raise HypothesisFailed("empty pattern")
    for x, c in cols.items():
        if not c.is_plain():
            raise HypothesisFailed(f"column {x} has multiplicities above 1")
    finite_x = [x for x, c in cols.items() if c.is_finite()]
    infinite_x = [x for x, c in cols.items() if not c.is_finite()]
    if not finite_x:
        raise HypothesisFailed("the constructions need at least one finite column")
    lw = min_consecutive_length(list(cols))
    ell, shifts = lw.ell, lw.shifts
    if inp.covers is None:
        covers = {x: _trivial_cover_sets(p, finite_x, x) for x in infinite_x}
    else:
        covers = {x: list(inp.covers.get(x, ())) for x in infinite_x}
    _check_cover_equations(p, covers)

    t = len(finite_x)
    N = t + sum(len(v) for v in covers.values())
    bound = thm7_bound(ell, t, [len(v) for v in covers.values()])
    if m < bound:
        raise BoundViolated("(ell + 1) * N", bound, m)
    C, collided = project(p, m)
    if collided:
        raise HypothesisFailed("pattern columns collide at this period")
    cap = C.cap

    # terms: (heights, exponent, passenger, designated column x or None)
    terms: list[tuple[ZSet, int, int, int | None]] = []
    full = ZSet.full(cap)
    parts: list[Part] = []

    def dep_col(alpha: int) -> int:
        return alpha * ell + alpha - 1

    def add_q(base: int, alpha: int) -> None:
        for q in shifts:
            terms.append((full, base + q, alpha, None))

    def part_for(x: int, heights: ZSet, w: int, alpha: int) -> None:
        parts.append(Part(shift(heights, x // m), x % m, w, (x + w) % m))
        assert (x + w) % m == dep_col(alpha) % m

    alpha = 0
    for x in finite_x:
        alpha += 1
        base = (alpha - 1) * (ell + 1)
        w, _, deps = finite_mac_complement(cols[x])
        e = base + ell - x
        terms.append((w, e, alpha, x))
        add_q(base, alpha)
        for f, (wf, _) in deps.items():
            part_for(x, ZSet.finite([f], cap), m * wf + e, alpha)
    for x in infinite_x:
        for cs, piece in zip(covers[x], _disjoint_pieces([c.S for c in covers[x]])):
            alpha += 1
            base = (alpha - 1) * (ell + 1)
            e = base + ell - x
            terms.append((ZSet.finite([0], cap), e, alpha, x))
            for fx, w in cs.via_finite.items():
                if not w.is_empty():
                    terms.append((w, base + ell - fx, alpha, fx))
            for kx, u in cs.via_infinite.items():
                if not u.is_empty():
                    terms.append((u, base + ell - kx, alpha, kx))
            add_q(base, alpha)
            if not piece.is_empty():
                part_for(x, piece, e, alpha)
    for e in range(N * (ell + 1), m):
        for q in shifts:
            terms.append((full, e + q, 0, None))

    deps_cols = {dep_col(a) % m for a in range(1, N + 1)}
    for heights, e, a, owner in terms:
        for x in cols:
            r = (x + e) % m
            if owner == x:
                if r != dep_col(a) % m:
                    raise AssemblyCollision(f"passenger {a} misses its dependent column")
            elif r in deps_cols:
                raise AssemblyCollision(f"column {x} times exponent {e} lands on dependent column {r}")

    V = union_all(m, (monomial(h, e, m) for h, e, _, _ in terms), cap)
    blocs = {
        "passengers": [(h, e) for h, e, a, o in terms if a and o is not None],
        "fillers": [(h, e) for h, e, a, o in terms if o is None],
    }
    cert = MacCertificate(m, C, V, tuple(parts))
    return _verified(cert, bound=bound, blocs=blocs)


def _check_cover_equations(p: Pattern, covers: Mapping[int, Sequence[CoverSet]]) -> None:
    for x, sets in covers.items():
        col = p.columns[x]
        union = ZSet.empty(col.cap)
        for cs in sets:
            if not cs.S.issubset(col):
                raise CoverEquationFailed(f"a cover set of column {x} is not inside the column")
            union = union | cs.S
            reached = [minkowski(p.columns[fx], w) for fx, w in cs.via_finite.items()]
            reached += [minkowski(p.columns[kx], u) for kx, u in cs.via_infinite.items()]
            got = disjoint_union(*reached).support() if reached else ZSet.empty(col.cap)
            if not got.same_support(cs.S.complement()):
                raise CoverEquationFailed(f"translates for a cover set of column {x} miss its complement")
        if not union.same_support(col):
            raise CoverEquationFailed(f"cover sets of column {x} do not union to the column")


def pattern_counts(p: Pattern) -> tuple[int, int, int]:
    """(|A|, |B|, |F_/|) for the trivial cover: infinite columns, their extra points, finite columns."""
    a = b = f = 0
    for c in p.columns.values():
        if c.is_finite():
            f += 1
        else:
            pieces = trivial_cover(c)
            rays = sum(1 for s in pieces if not s.is_finite())
            a += rays
            b += len(pieces) - rays
    return a, b, f


def build_thm6_witness(C0: StripSet | Pattern, m: int) -> Construction:
    """Eventually periodic set (given at its own period, or as a pattern) re-cut at period m."""
    p = C0 if isinstance(C0, Pattern) else Pattern({r: c for r, c in enumerate(C0.cols)})
    return build_thm7_witness(Thm7Input(p, m))
