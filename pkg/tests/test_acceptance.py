"""Acceptance suite: eleven end-to-end checks, each exact.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.  ``python tests/test_acceptance.py``
prints the same lines without pytest.
"""

import random
import time
from fractions import Fraction
from math import isqrt

from vieta.conic_core import (
    Conic,
    Verdict,
    chain,
    classify,
    contains,
    flat,
    imo_certify,
    recurrence_seq,
    sharp,
)
from vieta.oracle import box_search, imo_scan, norm_scan, solvable_norms, verify_final_prop
from vieta.pell import C4, PELL3, act, c4_to_pell, pell_to_c4, regen_table1
from vieta.qfield import (
    QuadElt,
    RdFamily,
    davenport_min_norms,
    rd_delta,
    rd_unit,
    small_norm_classify,
)
from vieta.rational_param import (
    on_pell_vieta_conic,
    on_square_conic,
    pell_point_from_t,
    point_from_t,
    t_from_point,
)

WORKERS = 8
RESULTS: dict[int, str] = {}


def _is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def record(number, title, ok, detail=""):
    line = f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_ac01_imo_quotients_are_squares():
    t0 = time.perf_counter()
    report = imo_scan(500, workers=WORKERS)
    elapsed = time.perf_counter() - t0
    bad = [h for h in report.hits if not _is_square(h[2])]
    for a, b, k in report.hits:
        cert, root = imo_certify(a, b)
        if not cert.verify() or root * root != k:
            bad.append((a, b, k))
    ok = elapsed < 10 and not bad and report.counterexamples == ()
    record(1, "imo_scan(500): every quotient a square, every certificate replays", ok,
           f"{len(report.hits)} hits, {elapsed:.2f}s, {len(bad)} bad")


def test_ac02_tm1_grid():
    t0 = time.perf_counter()
    mismatches = []
    for p in range(3, 41):
        for q in range(1, p + 2):
            found = bool(box_search(Conic(p, q), 2000, workers=1).hits)
            verdict = classify(p, q)
            if found != _is_square(q):
                mismatches.append((p, q, "box"))
            expected = Verdict.SQUARE if _is_square(q) else Verdict.UNSOLVABLE
            if verdict.tag is not expected or verdict.theorem_id != "TM1":
                mismatches.append((p, q, verdict.tag.value))
    elapsed = time.perf_counter() - t0
    record(2, "0 < q <= p+1: solvable exactly for square q, classify agrees",
           not mismatches and elapsed < 60, f"{elapsed:.2f}s, mismatches {mismatches[:5]}")


def test_ac03_thpq_grid():
    problems = []
    for p in range(4, 41):
        for q in range(3 - p, 0):
            if box_search(Conic(p, q), 2000, workers=1).hits:
                problems.append((p, q, "hits"))
            if classify(p, q).tag is not Verdict.UNSOLVABLE:
                problems.append((p, q, "classify"))
        c = Conic(p, 2 - p)
        hits = set(box_search(c, 2000, workers=1).hits)
        generated = set()
        for seed in ((1, 1), (-1, -1)):
            generated |= {P for P in chain(c, seed, 10, 10) if max(abs(P[0]), abs(P[1])) <= 2000}
        if hits != generated:
            problems.append((p, 2 - p, "chain"))
    record(3, "3-p <= q < 0 unsolvable; q = 2-p hits all lie on the chain", not problems,
           f"problems {problems[:5]}")


def test_ac04_fibonacci_pairs():
    bound = 10**4
    hits = {P for P in box_search(Conic(3, -1), bound, workers=WORKERS).hits if P[0] > 0 and P[1] > 0}
    fib = [1, 1]
    while fib[-1] <= bound:
        fib.append(fib[-1] + fib[-2])
    # (F_{2n-1}, F_{2n+1}) with F_1 = F_2 = 1, both orders, plus (1, 1)
    pairs = {(1, 1)}
    for i in range(0, len(fib) - 2, 2):
        a, b = fib[i], fib[i + 2]
        if b <= bound:
            pairs |= {(a, b), (b, a)}
    ok = hits == pairs and (233, 610) in hits
    record(4, "x^2 - 3xy + y^2 = -1: positive hits are odd-indexed Fibonacci pairs", ok,
           f"{len(hits)} hits, largest {max(hits)}")


def test_ac05_table1():
    rows = regen_table1()
    by_key = {(r.sign, r.exponent): r for r in rows}
    left_ok = all(not by_key[(1, j)].erratum for j in range(-2, 3))
    r3 = by_key[(1, 3)]
    row3_ok = r3.point == (112, 30) and r3.erratum and tuple(r3.printed) == (82, 30)
    right_ok = all(contains(C4, by_key[(-1, j)].point) for j in range(-2, 4))
    ok = len(rows) == 12 and all(r.on_conic for r in rows) and left_ok and row3_ok and right_ok
    record(5, "C_4 table regenerated; (112, 30) replaces printed (82, 30)", ok,
           f"{sum(r.erratum for r in rows)} errata")


def test_ac06_davenport_bounds():
    t0 = time.perf_counter()
    problems = []
    for t in range(2, 61):
        d = davenport_min_norms(t)
        if (d.plus, d.plus_witness, d.minus, d.minus_witness) != (2 * t + 2, (t + 1, 1), 2 * t - 2, (t - 1, 1)):
            problems.append((t, "minima"))
        report = norm_scan(t * t - 1, 2 * t + 2, workers=1)
        plus, minus = solvable_norms(report, 1), solvable_norms(report, -1)
        below = [nu for nu in plus if nu < 2 * t + 2] + [nu for nu in minus if nu < 2 * t - 2]
        if any(not _is_square(nu) for nu in below):
            problems.append((t, "non-square below bound", below))
        if 2 * t + 2 not in plus or 2 * t - 2 not in minus:
            problems.append((t, "bound not attained"))
    elapsed = time.perf_counter() - t0
    record(6, "m = t^2 - 1: norms below 2t+2 (+) and 2t-2 (-) are squares, bounds attained",
           not problems and elapsed < 30, f"{elapsed:.2f}s, problems {problems[:5]}")


def _family_violations(kind, ns, half=False):
    bad = []
    for n in ns:
        f = RdFamily(kind, n)
        threshold = small_norm_classify(f, 1).threshold
        report = norm_scan(f.radicand, threshold - 1, half=half, workers=1)
        for nu in solvable_norms(report):
            if not small_norm_classify(f, nu).admits():
                bad.append((kind, n, nu, "half" if half else "int"))
    return bad


def test_ac07_small_norm_theorems():
    bad = (_family_violations("NsqMinus1", range(2, 51))
           + _family_violations("NsqMinus4", range(7, 50, 2))
           + _family_violations("NsqMinus4", range(7, 50, 2), half=True)
           + _family_violations("NsqPlus2", range(5, 51)))
    record(7, "every solvable norm below each family threshold has the forced shape", not bad,
           f"violations {bad[:5]}")


def test_ac08_algebraic_invariants():
    rng = random.Random(8)
    problems = []
    for m in (2, 3, 5):
        a = recurrence_seq(m, 1002)
        if any(a[n] * a[n + 2] != a[n + 1] ** 2 - m * m for n in range(1000)):
            problems.append(("recurrence", m))

    checked = 0
    while checked < 10**4:
        p = rng.randint(-20, 20)
        x, y = rng.randint(-10**3, 10**3), rng.randint(-10**3, 10**3)
        q = x * x - p * x * y + y * y
        if q == 0:
            continue
        c = Conic(p, q)
        for P in chain(c, (x, y), 2, 2):
            if sharp(c, sharp(c, P)) != P or flat(c, flat(c, P)) != P:
                problems.append(("involution", p, q, P))
            checked += 1

    pools = {k: chain(Conic(k, k), (r, 0), 6, 6) for k, r in ((4, 2), (9, 3), (16, 4))}
    for _ in range(10**5 // 2):
        k = rng.choice((4, 9, 16))
        P = rng.choice(pools[k])
        j = rng.randint(-8, 8)
        if act(k, act(k, P, j), -j) != P:
            problems.append(("act", k, P, j))

    eps = QuadElt(2, 1, 3)
    for j in range(-250, 250):
        for sign in (1, -1):
            e = eps**j * sign
            P = pell_to_c4((e.u, e.v))
            if not contains(C4, P) or c4_to_pell(P) != (e.u, e.v) or not PELL3.contains((e.u, e.v)):
                problems.append(("c4", j, sign))

    for n in range(1, 101):
        d = rd_delta(n)
        if d * d != 2 * rd_unit(RdFamily("NsqPlus2", n)):
            problems.append(("delta", n))
    record(8, "recurrence, involutions, unit action, C_4 <-> Pell, delta^2 = 2 eps", not problems,
           f"problems {problems[:5]}")


def test_ac09_parametrization_roundtrip():
    rng = random.Random(9)
    problems = []
    for m in (2, 3, 5):
        for _ in range(1000):
            den = rng.choice([d for d in range(-100, 101) if d])
            t = Fraction(rng.randint(-100, 100), den)
            P = point_from_t(m, t)
            if not on_square_conic(m, P) or t_from_point(m, P) != t:
                problems.append((m, t))
    for _ in range(1000):
        den = rng.choice([d for d in range(-100, 101) if d])
        t = Fraction(rng.randint(-100, 100), den)
        if not on_pell_vieta_conic(pell_point_from_t(t)):
            problems.append(("pell", t))
    record(9, "slope parametrization roundtrips; Pell-form points lie on the conic", not problems,
           f"problems {problems[:5]}")


def test_ac10_final_proposition():
    t0 = time.perf_counter()
    report = verify_final_prop(300, workers=WORKERS)
    elapsed = time.perf_counter() - t0
    ok = report.counterexamples == () and elapsed < 20
    record(10, "(x^2 + 2y^2)/(2xy + 1) is a square or twice a square up to 300", ok,
           f"{len(report.hits)} hits, {elapsed:.2f}s")


def test_ac11_ellipse_cycle():
    c = Conic(1, 1)
    pts = set(box_search(c, 2, workers=1).hits)
    expected = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}
    start = (1, 0)
    P, orbit, op = start, [], sharp
    for _ in range(6):
        orbit.append(P)
        P = op(c, P)
        op = flat if op is sharp else sharp
    ok = pts == expected and P == start and set(orbit) == expected
    record(11, "x^2 - xy + y^2 = 1: six points in one closed jump cycle", ok, f"cycle {orbit}")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    raise SystemExit(1 if failures else 0)
