"""Brute-force searches used to check the theorems independently.

Every scan splits its outer range into contiguous chunks, optionally runs
them in a process pool, and merges the results into a sorted list, so the
output does not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

from ._arith import exact_sqrt, is_square, is_twice_square
from .conic_core import Conic, IntPoint
from .qfield import find_unit
from .errors import FactorizationTooLarge, InputError, InvariantViolation, NonSquareRequired

FACTOR_LIMIT = 10**12

# below this many outer iterations a pool costs more than it saves
_PARALLEL_MIN_WORK = 20_000


@dataclass(frozen=True)
class ScanReport:
    parameters: dict
    hits: tuple
    note: str
    counterexamples: tuple = field(default=())


def default_workers() -> int:
    return os.cpu_count() or 1


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split the inclusive range [lo, hi] into at most ``parts`` pieces."""
    total = hi - lo + 1
    if total <= 0:
        return []
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    out, start = [], lo
    for i in range(parts):
        end = start + size + (i < extra) - 1
        out.append((start, end))
        start = end + 1
    return out


def _map_chunks(func, lo, hi, extra, workers, work):
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise InputError("workers must be positive")
    if workers == 1 or work < _PARALLEL_MIN_WORK:
        return [func(lo, hi, *extra)]
    pieces = _chunks(lo, hi, workers * 4)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, a, b, *extra) for a, b in pieces]
        return [f.result() for f in futures]


# -- integral points in a box --------------------------------------------------

def _box_columns(x_lo, x_hi, p, q, bound):
    out = []
    for x in range(x_lo, x_hi + 1):
        # y^2 - p x y + (x^2 - q) = 0
        s = exact_sqrt((p * p - 4) * x * x + 4 * q)
        if s is None:
            continue
        for num in {p * x + s, p * x - s}:
            if num % 2 == 0 and abs(num // 2) <= bound:
                out.append((x, num // 2))
    return out


def box_search(c: Conic, bound: int, workers: int | None = None) -> ScanReport:
    """All integral points of ``c`` with |x|, |y| <= bound."""
    if bound < 1:
        raise InputError("bound must be at least 1")
    parts = _map_chunks(_box_columns, -bound, bound, (c.p, c.q, bound), workers, 2 * bound + 1)
    hits = sorted(IntPoint(*pt) for part in parts for pt in part)
    return ScanReport({"p": c.p, "q": c.q, "bound": bound}, tuple(hits),
                      "every column x solved exactly via the discriminant (p^2-4)x^2+4q")


# -- (a^2 + b^2) / (ab + 1) --------------------------------------------------------

def _imo_rows(a_lo, a_hi, bound):
    out = []
    for a in range(a_lo, a_hi + 1):
        aa = a * a
        for b in range(a, bound + 1):
            num, den = aa + b * b, a * b + 1
            if num % den == 0:
                out.append((a, b, num // den))
    return out


def imo_scan(bound: int, workers: int | None = None) -> ScanReport:
    """All 1 <= a <= b <= bound with ab + 1 dividing a^2 + b^2."""
    if bound < 1:
        raise InputError("bound must be at least 1")
    parts = _map_chunks(_imo_rows, 1, bound, (bound,), workers, bound * bound // 2)
    hits = sorted(h for part in parts for h in part)
    bad = tuple(h for h in hits if not is_square(h[2]))
    return ScanReport({"bound": bound}, tuple(hits), "exhaustive over 1 <= a <= b <= bound", bad)


# -- small norms -------------------------------------------------------------------

def _norm_rows(y_lo, y_hi, m, nu_max, half):
    scale = 4 if half else 1
    best = {}
    for y in range(y_lo, y_hi + 1):
        my2 = m * y * y
        x_lo = isqrt(max(0, my2 - scale * nu_max))
        x_hi = isqrt(my2 + scale * nu_max)
        for x in range(x_lo, x_hi + 1):
            if half and (x - y) % 2:
                continue
            val = x * x - my2
            if val == 0 or val % scale:
                continue
            nu = abs(val) // scale
            if nu > nu_max:
                continue
            key = (nu, 1 if val > 0 else -1)
            if key not in best:
                best[key] = (y, x)
    return best


def norm_scan(m: int, nu_max: int, unit=None, half: bool = False,
              workers: int | None = None) -> ScanReport:
    """Which 1 <= nu <= nu_max occur as |x^2 - m y^2| (or |x^2 - m y^2|/4 with ``half``).

    Completeness: any element of norm +-nu is a unit multiple of one with
    4 m b^2 <= nu (T + 2), T the trace of the unit, b the sqrt(m)
    coefficient.  Scanning y up to that bound for nu_max is exhaustive.
    Hits are (nu, sign, x, y) with the least y, then least x >= 0.
    """
    if m < 2 or is_square(m):
        raise NonSquareRequired(f"m must be a positive non-square, got {m}")
    if nu_max < 1:
        raise InputError("nu_max must be at least 1")
    if half and m % 4 != 1:
        raise InputError("half-integral scan needs m = 1 (mod 4)")
    if unit is None:
        unit = find_unit(m, integral=not half)
    if unit.norm() != 1 or unit.m != m:
        raise InputError("unit must have norm +1 and the same radicand")
    if not half and unit.d != 1:
        raise InputError("integral scan needs a unit in Z[sqrt m]")
    T = unit.trace()
    # b = y (integral) or y/2 (half): 4 m b^2 <= nu (T + 2)
    y_max = isqrt(nu_max * (T + 2) // (m if half else 4 * m))
    parts = _map_chunks(_norm_rows, 0, y_max, (m, nu_max, half), workers,
                        (y_max + 1) * (isqrt(nu_max) + 1))
    best = {}
    for part in parts:
        for key, val in part.items():
            if key not in best or val < best[key]:
                best[key] = val
    hits = tuple(sorted((nu, sign, x, y) for (nu, sign), (y, x) in best.items()))
    note = (f"|y| <= {y_max} from 4 m b^2 <= nu_max (T + 2), unit {unit}, T = {T}"
            + ("; elements (x + y sqrt m)/2" if half else ""))
    return ScanReport({"m": m, "nu_max": nu_max, "half": half}, hits, note)


def solvable_norms(report: ScanReport, sign: int | None = None) -> set[int]:
    return {h[0] for h in report.hits if sign is None or h[1] == sign}


def norm_witnesses(report: ScanReport) -> dict:
    """Map nu -> {sign: (x, y)}."""
    out: dict = {}
    for nu, sign, x, y in report.hits:
        out.setdefault(nu, {})[sign] = IntPoint(x, y)
    return out


# -- representations by x^2 + y^2 and x^2 + 3y^2 ---------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Trial division; the odd part of n must not exceed 10^12."""
    if n < 1:
        raise InputError("n must be positive")
    twos = (n & -n).bit_length() - 1
    n >>= twos
    if n > FACTOR_LIMIT:
        raise FactorizationTooLarge(f"odd part {n} exceeds {FACTOR_LIMIT}")
    out: dict[int, int] = {2: twos} if twos else {}
    while n % 3 == 0:
        out[3] = out.get(3, 0) + 1
        n //= 3
    p, step = 5, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _search_pair(n: int, weight: int, start: int) -> tuple[int, int] | None:
    """Least a >= start with n - weight * a^2 a square: returns (a, b)."""
    a = start
    while weight * a * a <= n:
        b = exact_sqrt(n - weight * a * a)
        if b is not None:
            return a, b
        a += 1
    return None


def two_square_rep(q: int) -> tuple[int, int] | None:
    """(A, B) with A^2 + B^2 = q and A >= 1 least, or None."""
    if q < 1:
        raise InputError("q must be positive")
    ok = all(e % 2 == 0 for p, e in factorize(q).items() if p % 4 == 3)
    found = _search_pair(q, 1, 1)
    if ok != (found is not None):
        raise InvariantViolation(f"prime criterion and search disagree for {q}")
    return found


def rep_c2_plus_3d2(n: int) -> tuple[int, int] | None:
    """(c, d) with c^2 + 3 d^2 = n and d >= 0 least, or None."""
    if n < 1:
        raise InputError("n must be positive")
    ok = all(e % 2 == 0 for p, e in factorize(n).items() if p % 3 == 2)
    found = _search_pair(n, 3, 0)
    if ok != (found is not None):
        raise InvariantViolation(f"prime criterion and search disagree for {n}")
    return None if found is None else (found[1], found[0])


# -- (x^2 + 2y^2) / (2xy + 1) ----------------------------------------------------------

def _final_rows(x_lo, x_hi, bound):
    out = []
    for x in range(x_lo, x_hi + 1):
        xx = x * x
        for y in range(1, bound + 1):
            num, den = xx + 2 * y * y, 2 * x * y + 1
            if num % den == 0:
                out.append((x, y, num // den))
    return out


def verify_final_prop(bound: int, workers: int | None = None) -> ScanReport:
    """Every integral (x^2 + 2y^2)/(2xy + 1), 1 <= x, y <= bound, should be a square or twice one."""
    if bound < 1:
        raise InputError("bound must be at least 1")
    parts = _map_chunks(_final_rows, 1, bound, (bound,), workers, bound * bound)
    hits = sorted(h for part in parts for h in part)
    bad = tuple(h for h in hits if not (is_square(h[2]) or is_twice_square(h[2])))
    return ScanReport({"bound": bound}, tuple(hits), "exhaustive over 1 <= x, y <= bound", bad)
