"""One test per acceptance criterion; each prints a single PASS or FAIL line."""

import json
import random
import time
from fractions import Fraction
from math import lcm

import pytest

from macforge.mac import check_certificate, decide_mac, find_certificate, window_oracle
from macforge.series import from_strip, mul
from macforge.setlang import (
    certificate_from_json,
    certificate_to_json,
    from_stripset,
    normalize_certificate_json,
    parse,
    render,
    to_stripset,
)
from macforge.strip import Pattern, StripSet, blocks, inner_outer_range, min_consecutive_length, project
from macforge.toeplitz import (
    build_T,
    gershgorin_unique_inverse,
    min_element_nonzero_check,
    size_matrix_det,
    symbolic_det,
)
from macforge.witness import (
    NotAMac,
    Thm4Input,
    Thm7Input,
    build_prop1_witness,
    build_thm4_witness,
    build_thm6_witness,
    build_thm7_witness,
    pattern_counts,
    single_set_covers,
    thm4_bound,
    thm6_bound,
    thm7_bound,
    trivial_cover,
)
from macforge.zset import ZSet
from oracles import brute_strip_sum, displayed_det, exhaustive_ell, lp_eval, random_strip
from test_setlang import random_certificate


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")

    return emit


def test_criterion_1_series_law(verdict):
    rng = random.Random(101)
    start = time.perf_counter()
    bad = []
    trials = 200
    for _ in range(trials):
        m = rng.randint(2, 8)
        a, b = random_strip(rng, m), random_strip(rng, m)
        got = mul(from_strip(a), from_strip(b)).to_strip()
        want = brute_strip_sum(a, b, -40, 40)
        if any(got.mult_at(n) != want[n] for n in range(-40, 41)):
            bad.append((a, b))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(1, ok, f"series product vs brute-force convolution, {trials} pairs, {len(bad)} mismatches, {elapsed:.2f}s")
    assert ok


def test_criterion_2_one_column_construction(verdict):
    rng = random.Random(102)
    start = time.perf_counter()
    cases = bad = 0
    for f_res in range(1, 5):
        for size_b in range(0, 4):
            for _ in range(3):
                heights = rng.sample(range(-8, 0), size_b)
                K = ZSet.up_ray(0) | ZSet.finite(heights)
                cover = trivial_cover(K)
                m = thm4_bound(f_res, len(cover))
                F = ZSet.finite(rng.sample(range(-3, 4), rng.randint(1, 3)))
                C = StripSet.from_columns(m, {0: K, f_res: F})
                con = build_thm4_witness(Thm4Input.from_set(C, cover))
                cases += 1
                cert_ok = check_certificate(con.cert).ok
                window_ok = window_oracle(C, con.V, -10 * m, 10 * m).ok
                bad += not (cert_ok and window_ok)
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30
    verdict(2, ok, f"one-column construction at its bound, {cases} cases, {bad} failures, {elapsed:.2f}s")
    assert ok


def random_pattern(rng):
    n_fin, n_inf = rng.randint(1, 3), rng.randint(0, 2)
    xs = rng.sample(range(-3, 6), n_fin + n_inf)
    cols = {}
    for x in xs[:n_fin]:
        cols[x] = ZSet.finite(rng.sample(range(-3, 4), rng.randint(1, 3)))
    for x in xs[n_fin:]:
        shape = rng.choice(["up", "down", "full", "two"])
        if shape == "up":
            col = ZSet.up_ray(rng.randint(-2, 2))
        elif shape == "down":
            col = ZSet.down_ray(rng.randint(-2, 2))
        elif shape == "full":
            col = ZSet.full()
        else:
            col = ZSet.up_ray(rng.randint(2, 4)) | ZSet.down_ray(rng.randint(-4, -2))
        extra = ZSet.finite(rng.sample(range(-6, 7), rng.randint(0, 2)))
        cols[x] = col | extra
    return Pattern(cols)


def test_criterion_3_pattern_construction(verdict):
    rng = random.Random(103)
    start = time.perf_counter()
    failures = []
    count = 0
    # random horizontally bounded patterns, trivial covers, m = (ell + 1) * N
    for _ in range(60):
        p = random_pattern(rng)
        ell = exhaustive_ell(sorted(p.columns))
        t = sum(1 for c in p.columns.values() if c.is_finite())
        sizes = [len(trivial_cover(c)) for c in p.columns.values() if not c.is_finite()]
        m = (ell + 1) * (t + sum(sizes))
        con = build_thm7_witness(Thm7Input(p, m))
        count += 1
        if con.bound != m or not decide_mac(project(p, m)[0], con.V).ok:
            failures.append(p)
    # the union of a set and a reflected set, both with empty B
    for f1, f2, x1, x2 in [(1, 3, 0, 1), (2, 2, 0, 1), (1, 2, 0, 2)]:
        C1 = Pattern({x1: ZSet.up_ray(0), f1: ZSet.finite([0])})
        C2 = Pattern({x2: ZSet.up_ray(0), f2 + x2: ZSet.finite([1])})
        p = C1.union(C2.negated())
        ell = exhaustive_ell(sorted(p.columns))
        m = (ell + 1) * (1 + 1 + 1 + 1)  # |F1| + |F2| + |A1| + |A2|
        con = build_thm7_witness(Thm7Input(p, m))
        count += 1
        if con.bound != m or not decide_mac(project(p, m)[0], con.V).ok:
            failures.append(p)
    # an infinite-B column covered by itself together with one point: bound (2f + 1) * 2
    for f in (1, 2, 3):
        p = Pattern({0: ZSet.full() - ZSet.finite([-3]), f: ZSet.finite([0])})
        m = (2 * f + 1) * 2
        con = build_thm7_witness(Thm7Input(p, m, single_set_covers(p)))
        count += 1
        if con.bound != m or m != thm7_bound(min_consecutive_length([0, f]).ell, 1, [1]) or not con.report.ok:
            failures.append(p)
    # eventually periodic sets re-cut at the bound (|A| + |B| + |F_/|) * (ell + 1)
    for C0 in [
        StripSet.from_columns(2, {0: ZSet.full(), 1: ZSet.finite([0])}),
        StripSet.from_columns(3, {0: ZSet.up_ray(0) | ZSet.finite([-2]), 2: ZSet.finite([0, 1])}),
        StripSet.from_columns(4, {0: ZSet.up_ray(1), 1: ZSet.down_ray(0), 3: ZSet.finite([2])}),
    ]:
        p = Pattern({r: c for r, c in enumerate(C0.cols)})
        a, b, fcols = pattern_counts(p)
        m = thm6_bound(exhaustive_ell(sorted(p.columns)), a, b, fcols)
        con = build_thm6_witness(C0, m)
        count += 1
        if not con.report.ok or con.bound != m:
            failures.append(p)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    verdict(3, ok, f"pattern constructions at (ell+1)N, {count} cases, {len(failures)} failures, {elapsed:.2f}s")
    assert ok


def test_criterion_4_ell_exactness(verdict):
    start = time.perf_counter()
    bad = []
    checked = 0
    for mask in range(1, 1 << 7):
        xs = [i for i in range(7) if mask >> i & 1]
        ell = min_consecutive_length(xs).ell
        if ell != exhaustive_ell(xs):
            bad.append(xs)
        if len(blocks(xs)) >= 2:
            inner, outer = inner_outer_range(xs)
            if ell > outer + inner:
                bad.append(xs)
        checked += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(4, ok, f"ell matches exhaustive search on {checked} supports in [0,6], {len(bad)} failures, {elapsed:.2f}s")
    assert ok


def test_criterion_5_toeplitz_formulas(verdict):
    rng = random.Random(105)
    bad = 0
    for m in (2, 3, 4):
        for _ in range(50):
            As = [[rng.randint(-4, 6) for _ in range(rng.randint(1, 3))] for _ in range(m)]
            det = symbolic_det(build_T(As))
            want = displayed_det(As)
            same_poly = det.laurent() == want
            same_values = all(det.evaluate(t) == lp_eval(want, t) for t in (2, 3, Fraction(-1, 2)))
            bad += not (same_poly and same_values)
    ok = bad == 0
    verdict(5, ok, f"symbolic determinants for m = 2, 3, 4 match the closed formulas on 150 inputs, {bad} mismatches")
    assert ok


def test_criterion_6_small_m_determinants_nonzero(verdict):
    rng = random.Random(106)
    zeros = []
    for _ in range(500):
        m = rng.choice([2, 3])
        As = [[rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] for _ in range(m)]
        if not min_element_nonzero_check(As):
            zeros.append(As)
    ok = not zeros
    verdict(6, ok, f"500 random instances at m in {{2, 3}}, {len(zeros)} vanishing determinants")
    assert ok


def test_criterion_7_gershgorin(verdict):
    rng = random.Random(107)
    bad = dominant = 0
    for _ in range(500):
        m = rng.randint(1, 6)
        rest = [rng.randint(1, 5) for _ in range(m - 1)]
        head = rng.randint(1, 2 * sum(rest) + 2)
        sizes = [head, *rest]
        if gershgorin_unique_inverse(sizes):
            dominant += 1
            bad += size_matrix_det(sizes) == 0
    ok = bad == 0 and dominant > 0
    verdict(7, ok, f"500 size vectors, {dominant} diagonally dominant, {bad} with zero determinant")
    assert ok


def test_criterion_8_negative_control(verdict):
    not_a_mac = 0
    for f in (1, 3, -1, 5):
        with pytest.raises(NotAMac):
            build_prop1_witness(2, ZSet.down_ray(-1), f)
        not_a_mac += 1
    passing = []
    templates = 0
    f = 1
    for P in range(1, 9):
        period = lcm(2, P)
        C = StripSet.from_columns(period, {r: ZSet.full() for r in range(0, period, 2)}).union(
            StripSet.from_integers(period, [f])
        )
        for mask in range(1, 1 << P):
            R = [r for r in range(P) if mask >> r & 1]
            W = StripSet.from_columns(period, {r: ZSet.full() for r in range(period) if r % P in R})
            templates += 1
            exact = decide_mac(C, W)
            cert = find_certificate(C, W)
            cert_ok = cert is not None and check_certificate(cert).ok
            window_ok = window_oracle(C, W, -64, 64).ok
            if exact.ok or cert_ok or window_ok:
                passing.append(R)
    ok = not passing and not_a_mac == 4
    verdict(
        8,
        ok,
        f"m = 2 with 2N u B = 2Z: NotAMac for 4 choices of f; {templates} periodic templates (period <= 8, "
        f"window [-64, 64]) give {len(passing)} passing; bounded evidence, not a proof",
    )
    assert ok


def random_expression_text(rng, m):
    terms = []
    divisors = [k for k in range(1, m + 1) if m % k == 0]
    for _ in range(rng.randint(1, 4)):
        kind = rng.choice(["finite", "up", "down", "class"])
        k = rng.choice(divisors)
        a = rng.randint(-12, 12)
        if kind == "finite":
            terms.append("{" + ",".join(str(rng.randint(-15, 15)) for _ in range(rng.randint(0, 4))) + "}")
        elif kind == "up":
            terms.append(f"{k}N{a:+d}")
        elif kind == "down":
            terms.append(f"-{k}N{a:+d}")
        else:
            terms.append(f"{k}Z{a:+d}")
    return " u ".join(terms)


def test_criterion_9_round_trips(verdict):
    rng = random.Random(109)
    bad_dsl = bad_json = 0
    for _ in range(200):
        m = rng.randint(1, 6)
        text = random_expression_text(rng, m)
        s = to_stripset(parse(text), m)
        canon = render(from_stripset(s))
        again = render(from_stripset(to_stripset(parse(canon), m)))
        bad_dsl += not (again == canon and to_stripset(parse(canon), m) == s and render(parse(canon)) == canon)
    for _ in range(200):
        cert, report = random_certificate(rng)
        text = certificate_to_json(cert, report)
        compact = json.dumps(json.loads(text), sort_keys=True)
        once = normalize_certificate_json(compact)
        back, back_report = certificate_from_json(once)
        bad_json += not (once == text and normalize_certificate_json(once) == once and back == cert and back_report == report)
    ok = bad_dsl == 0 and bad_json == 0
    verdict(9, ok, f"200 expressions and 200 certificates round-trip byte-stably, {bad_dsl + bad_json} mismatches")
    assert ok
