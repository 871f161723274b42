import dataclasses
import random

import pytest

from macforge.mac import (
    MacCertificate,
    Part,
    check_certificate,
    decide_mac,
    find_certificate,
    is_complement,
    m2_criterion,
    window_oracle,
)
from macforge.strip import StripSet
from macforge.witness import Thm4Input, build_thm4_witness, finite_mac_complement
from macforge.zset import ZSet
from oracles import brute_mac_window, random_strip

N = ZSet.up_ray(0)
Z = ZSet.full()
THREE_N_ONE = StripSet.from_columns(3, {0: N, 1: ZSet.finite([0])})


@pytest.fixture(scope="module")
def thm4():
    return build_thm4_witness(Thm4Input.from_set(THREE_N_ONE))


def kinds(report):
    return {f.kind for f in report.failures}


def test_is_complement_examples(thm4):
    assert is_complement(StripSet.full(2), StripSet.from_integers(2, [0]))
    assert not is_complement(StripSet.from_columns(2, {0: Z}), StripSet.from_integers(2, [0]))
    assert is_complement(THREE_N_ONE, thm4.V)


def test_certificate_round_trip_passes(thm4):
    rep = check_certificate(thm4.cert)
    assert rep.covered and rep.minimal and rep.failures == []


def test_deleted_part_is_a_partition_failure(thm4):
    cert = dataclasses.replace(thm4.cert, parts=thm4.cert.parts[1:])
    rep = check_certificate(cert)
    assert not rep.minimal and "partition" in kinds(rep)


def test_wrong_residue_arithmetic_reported(thm4):
    p = thm4.cert.parts[0]
    bad = dataclasses.replace(p, target_residue=(p.target_residue + 1) % 3)
    rep = check_certificate(dataclasses.replace(thm4.cert, parts=(bad, *thm4.cert.parts[1:])))
    assert "residue" in kinds(rep)


def test_shifted_w_is_rejected_or_genuinely_valid(thm4):
    # w + m keeps the residue; the checker must either refuse it or be right
    for i, p in enumerate(thm4.cert.parts):
        for k in (-2, -1, 1, 2):
            moved = dataclasses.replace(p, w=p.w + k * 3)
            parts = list(thm4.cert.parts)
            parts[i] = moved
            cert = dataclasses.replace(thm4.cert, parts=tuple(parts))
            rep = check_certificate(cert)
            if moved.w not in thm4.V:
                assert "not-in-W" in kinds(rep)
            elif rep.ok:
                assert window_oracle(cert.C, cert.W, -30, 30).ok


def test_w_landing_on_a_doubly_covered_column_is_not_unique(thm4):
    p = thm4.cert.parts[0]  # 3N guarded through column 1
    assert 2 in thm4.V
    other = Part(p.piece, p.piece_residue, 2, 2)
    rep = check_certificate(dataclasses.replace(thm4.cert, parts=(other, *thm4.cert.parts[1:])))
    assert "not-unique" in kinds(rep) and not rep.minimal and rep.covered


def test_window_oracle_examples(thm4):
    rep = window_oracle(StripSet.full(1), StripSet.from_integers(1, [0]), -20, 20)
    assert rep.ok and rep.window_bounded
    rep = window_oracle(StripSet(1, (N,)), StripSet(1, (Z,)), -10, 10)
    assert rep.covered and not rep.minimal
    assert window_oracle(THREE_N_ONE, thm4.V, -30, 30).ok
    with pytest.raises(ValueError):
        window_oracle(THREE_N_ONE, thm4.V, 3, 3)


def test_window_oracle_matches_brute_force():
    rng = random.Random(21)
    for _ in range(60):
        m = rng.randint(1, 4)
        C = random_strip(rng, m, -6, 6, plain=True)
        W = random_strip(rng, m, -6, 6, plain=True)
        lo, hi = -8, 8
        span = hi - lo
        reach = range(lo - 3 * span, hi + 3 * span + 1)
        c_pts = {n for n in reach if n in C and lo - span <= n <= hi + span}
        w_pts = {n for n in reach if n in W}
        rep = window_oracle(C, W, lo, hi)
        cov = all(any((n - c) in w_pts for c in c_pts) for n in range(lo, hi + 1))
        assert rep.covered == cov
        if cov:
            counts = {}
            for c in c_pts:
                for w in w_pts:
                    counts[c + w] = counts.get(c + w, 0) + 1
            no_dep = {
                c for c in c_pts if lo <= c <= hi
                and not any(counts.get(c + w) == 1 and lo - span <= c + w <= hi + span for w in w_pts)
            }
            assert {f.point for f in rep.failures if f.kind == "no-dependent"} == no_dep


def test_decide_mac_agrees_with_window_evidence(thm4):
    rng = random.Random(22)
    checked = 0
    known = [(THREE_N_ONE, thm4.V), (StripSet.full(2), StripSet.from_integers(2, [0]))]
    randoms = [
        (random_strip(rng, m, -5, 5, plain=True), random_strip(rng, m, -5, 5, plain=True))
        for m in (rng.randint(1, 3) for _ in range(150))
    ]
    for C, W in known + randoms:
        exact = decide_mac(C, W)
        # an exact pass must survive any window; an exact coverage failure is a concrete hole
        if exact.ok:
            assert window_oracle(C, W, -25, 25).ok
            checked += 1
        holes = [f.point for f in exact.failures if f.kind == "uncovered"]
        for n in holes:
            pts = range(n - 200, n + 201)
            c_pts = {x for x in pts if x in C}
            w_pts = {x for x in range(-400, 401) if x in W}
            assert not brute_mac_window(c_pts, w_pts, n, n)[0]
    assert checked > 0


def test_finite_set_decisions():
    for F in ([0], [0, 1], [0, 2], [0, 1, 3]):
        w, cert, deps = finite_mac_complement(ZSet.finite(F))
        C = StripSet(1, (ZSet.finite(F),))
        assert decide_mac(C, StripSet(1, (w,))).ok
        assert window_oracle(C, StripSet(1, (w,)), -40, 40).ok
    # N + Z covers but nothing is guarded
    rep = decide_mac(StripSet(1, (N,)), StripSet(1, (Z,)))
    assert rep.covered and not rep.minimal


def test_is_complement_is_monotone_in_w():
    rng = random.Random(23)
    for _ in range(80):
        m = rng.randint(1, 4)
        C = random_strip(rng, m, plain=True)
        W = random_strip(rng, m, plain=True)
        extra = random_strip(rng, m, plain=True)
        if is_complement(C, W):
            assert is_complement(C, W.union(extra))


def test_removing_a_certified_point_breaks_its_target_column(thm4):
    C, W = thm4.cert.C, thm4.cert.W
    for part in thm4.cert.parts:
        for h in [h for h in range(0, 10) if part.piece.mult_at(h)][:4]:
            c = part.piece_residue + 3 * h
            smaller = C.minus(StripSet.from_integers(3, [c]))
            holes = {f.residue for f in decide_mac(smaller, W).failures if f.kind == "uncovered"}
            assert part.target_residue in holes and not is_complement(smaller, W)


def test_find_certificate_on_verified_pair(thm4):
    cert = find_certificate(THREE_N_ONE, thm4.V)
    assert cert is not None and check_certificate(cert).ok


def odd_sums_equal_even_gap(C, W, lo=-60, hi=60):
    """F + W equals the even integers missing from C, checked on a window."""
    odd = [n for n in range(lo - 60, hi + 60) if n % 2 and n in C]
    ws = [n for n in range(2 * lo, 2 * hi) if n in W]
    sums = {f + w for f in odd for w in ws}
    return all((n in sums) == (n not in C) for n in range(lo, hi + 1, 2) if n % 2 == 0)


def test_m2_criterion_examples():
    C = StripSet.from_columns(2, {0: N, 1: ZSet.finite([0])})
    found = m2_criterion(C)
    assert found.found and odd_sums_equal_even_gap(C, found.witness)
    blocked = m2_criterion(StripSet.from_columns(2, {0: Z, 1: ZSet.finite([0])}))
    assert not blocked.found and blocked.witness is None
    C = StripSet.from_columns(2, {0: N | ZSet.finite([-1]), 1: ZSet.finite([0])})
    found = m2_criterion(C)
    assert found.found and odd_sums_equal_even_gap(C, found.witness)
    with pytest.raises(ValueError):
        m2_criterion(THREE_N_ONE)
    with pytest.raises(ValueError):
        m2_criterion(StripSet.from_columns(2, {0: N, 1: N}))
