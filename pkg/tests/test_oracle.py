from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vieta.conic_core import Conic, Verdict, chain, classify
from vieta.errors import FactorizationTooLarge, InputError, NonSquareRequired
from vieta.oracle import (
    box_search,
    factorize,
    imo_scan,
    norm_scan,
    norm_witnesses,
    rep_c2_plus_3d2,
    solvable_norms,
    two_square_rep,
    verify_final_prop,
)
from vieta.qfield import find_unit

from conftest import brute_points


def brute_norms(m, nu_max, ymax, half=False):
    """Naive table of least (y, x) per (nu, sign), x, y >= 0."""
    scale = 4 if half else 1
    best = {}
    for y in range(ymax + 1):
        for x in range(0, int((m * y * y + scale * nu_max) ** 0.5) + 2):
            if half and (x - y) % 2:
                continue
            val = x * x - m * y * y
            if val == 0 or val % scale or abs(val) // scale > nu_max:
                continue
            best.setdefault((abs(val) // scale, 1 if val > 0 else -1), (y, x))
    return sorted((nu, s, x, y) for (nu, s), (y, x) in best.items())


@settings(max_examples=150, deadline=None)
@given(st.integers(-8, 8), st.integers(-30, 30).filter(bool), st.integers(1, 25))
def test_box_search_matches_double_loop(p, q, bound):
    assert list(box_search(Conic(p, q), bound, workers=1).hits) == brute_points(p, q, bound)


def test_box_search_examples():
    hits = set(box_search(Conic(3, -1), 13, workers=1).hits)
    assert {(1, 1), (1, 2), (2, 5), (5, 13), (2, 1), (-1, -1), (-5, -2)} <= hits
    assert box_search(Conic(5, 5), 1000, workers=1).hits == ()
    hits = box_search(Conic(2, 9), 5, workers=1).hits
    assert hits and all(abs(x - y) == 3 for x, y in hits)
    assert len(hits) == len([(x, y) for x in range(-5, 6) for y in range(-5, 6) if abs(x - y) == 3])
    with pytest.raises(InputError):
        box_search(Conic(3, 1), 0)


def _orbit_in_box(c, seed, bound):
    out = set()
    for s in (seed, (seed[1], seed[0]), (-seed[0], -seed[1]), (-seed[1], -seed[0])):
        out |= {P for P in chain(c, s, 12, 12) if max(map(abs, P)) <= bound}
    return out


def test_box_search_agrees_with_chains():
    bound = 10**5
    for p in range(3, 12):
        c = Conic(p, 2 - p)
        assert set(box_search(c, bound, workers=1).hits) == _orbit_in_box(c, (1, 1), bound)
        c = Conic(p, p + 2)
        hits = set(box_search(c, bound, workers=1).hits)
        generated = _orbit_in_box(c, (1, -1), bound)
        # a square p + 2 adds the orbit of (sqrt q, 0)
        if isqrt(p + 2) ** 2 == p + 2:
            generated |= _orbit_in_box(c, (isqrt(p + 2), 0), bound)
        assert hits == generated


def test_parallel_determinism():
    c = Conic(7, 9)
    one = box_search(c, 30_000, workers=1)
    many = box_search(c, 30_000, workers=3)
    assert one == many
    assert imo_scan(200, workers=1) == imo_scan(200, workers=2)
    assert norm_scan(3, 5000, workers=1) == norm_scan(3, 5000, workers=2)


def test_imo_scan_examples():
    assert imo_scan(1, workers=1).hits == ((1, 1, 1),)
    hits = imo_scan(250, workers=1).hits
    assert (8, 30, 4) in hits and (27, 240, 9) in hits
    assert all(a <= b for a, b, _ in hits)


def test_norm_scan_examples():
    r = norm_scan(3, 7, workers=1)
    w = norm_witnesses(r)
    assert w[2][-1] == (1, 1) and w[6][1] == (3, 1)
    assert solvable_norms(r) == {1, 2, 3, 4, 6}
    r = norm_scan(24, 11, workers=1)
    assert {nu for nu in solvable_norms(r) if nu < 8} == {1, 4}
    assert norm_witnesses(r)[8][-1] == (4, 1)
    assert norm_witnesses(norm_scan(27, 2, workers=1))[2][-1] == (5, 1)
    with pytest.raises(NonSquareRequired):
        norm_scan(16, 5)
    with pytest.raises(InputError):
        norm_scan(3, 5, half=True)


@pytest.mark.parametrize("m, nu_max", [(3, 40), (8, 60), (15, 50), (24, 80), (27, 90), (7, 40)])
def test_norm_scan_matches_naive(m, nu_max):
    r = norm_scan(m, nu_max, workers=1)
    T = find_unit(m).trace()
    ymax = int((nu_max * (T + 2) / (4 * m)) ** 0.5)
    assert list(r.hits) == brute_norms(m, nu_max, ymax)


@pytest.mark.parametrize("m", [3, 8, 15, 24, 27])
def test_norm_scan_bound_is_complete(m):
    nu_max = 60
    T = find_unit(m).trace()
    ymax = int((nu_max * (T + 2) / (4 * m)) ** 0.5)
    doubled = {(nu, s) for nu, s, _, _ in brute_norms(m, nu_max, 2 * ymax + 2)}
    assert doubled == {(nu, s) for nu, s, _, _ in norm_scan(m, nu_max, workers=1).hits}


@pytest.mark.parametrize("m", [5, 13, 21, 45, 77])
def test_half_norm_scan(m):
    r = norm_scan(m, 40, half=True, workers=1)
    T = find_unit(m, integral=False).trace()
    ymax = int((40 * (T + 2) / m) ** 0.5)
    assert list(r.hits) == brute_norms(m, 40, ymax, half=True)
    doubled = {(nu, s) for nu, s, _, _ in brute_norms(m, 40, 2 * ymax + 2, half=True)}
    assert doubled == {(nu, s) for nu, s, _, _ in r.hits}


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}
    assert factorize(2**80) == {2: 80}
    with pytest.raises(FactorizationTooLarge):
        factorize(10**12 + 39)


def test_representations():
    assert two_square_rep(5) == (1, 2)
    assert two_square_rep(3) is None
    assert two_square_rep(25) == (3, 4)
    assert rep_c2_plus_3d2(28) == (5, 1)
    assert rep_c2_plus_3d2(8) is None


@given(st.integers(1, 5000))
def test_representations_brute(n):
    sq = [(a, b) for a in range(1, 80) for b in range(0, 80) if a * a + b * b == n]
    assert two_square_rep(n) == (min(sq) if sq else None)
    reps = [(d, c) for d in range(0, 50) for c in range(0, 80) if c * c + 3 * d * d == n]
    assert rep_c2_plus_3d2(n) == ((min(reps)[1], min(reps)[0]) if reps else None)


def test_verify_final_prop():
    r = verify_final_prop(1, workers=1)
    assert r.hits == ((1, 1, 1),) and r.counterexamples == ()
    r = verify_final_prop(100, workers=1)
    assert r.counterexamples == ()
    assert all(h[:2] != (2, 1) for h in r.hits)


def test_classify_against_box_grid():
    for p in range(3, 10):
        for q in range(1, p + 2):
            v = classify(p, q)
            found = bool(box_search(Conic(p, q), 500, workers=1).hits)
            assert found == (v.tag is Verdict.SQUARE)
