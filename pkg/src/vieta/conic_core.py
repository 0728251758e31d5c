"""Vieta jumping on the conics x^2 - p*x*y + y^2 = q.

Points are plain integer pairs (``IntPoint`` is a NamedTuple, so it compares
equal to an ordinary tuple).  The two jump operators fix one coordinate and
replace the other by the second root of the resulting quadratic::

    sharp(x, y) = (x, p*x - y)
    flat(x, y)  = (p*y - x, y)

Both are involutions on the integral points of the conic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from ._arith import exact_sqrt
from .errors import (
    FactorizationTooLarge,
    InputError,
    InvariantViolation,
    NonterminatingGuard,
    NotDivisible,
    PointNotOnConic,
    UnsupportedRange,
)

MAX_DESCENT_STEPS = 10**6


class IntPoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Conic:
    """The conic x^2 - p*x*y + y^2 = q with q != 0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q == 0:
            raise InputError("q must be nonzero")

    def __str__(self):
        return f"x^2 - ({self.p})xy + y^2 = {self.q}"


def evaluate(c: Conic, P) -> int:
    x, y = P
    return x * x - c.p * x * y + y * y


def contains(c: Conic, P) -> bool:
    return evaluate(c, P) == c.q


def _require(c: Conic, P) -> IntPoint:
    P = IntPoint(*P)
    if not contains(c, P):
        raise PointNotOnConic(f"{tuple(P)} is not on {c}")
    return P


def sharp(c: Conic, P) -> IntPoint:
    x, y = _require(c, P)
    return IntPoint(x, c.p * x - y)


def flat(c: Conic, P) -> IntPoint:
    x, y = _require(c, P)
    return IntPoint(c.p * y - x, y)


STEP_TAGS = ("sharp", "flat", "negate-both", "swap")


def _apply(c: Conic, tag: str, P: IntPoint) -> IntPoint:
    x, y = P
    if tag == "sharp":
        return IntPoint(x, c.p * x - y)
    if tag == "flat":
        return IntPoint(c.p * y - x, y)
    if tag == "negate-both":
        return IntPoint(-x, -y)
    if tag == "swap":
        return IntPoint(y, x)
    raise ValueError(f"unknown step tag {tag!r}")


def _downhill(c: Conic, P: IntPoint) -> tuple[str, IntPoint]:
    """The jump that moves the larger coordinate (the descent direction)."""
    tag = "sharp" if P.y > P.x else "flat"
    return tag, _apply(c, tag, P)


@dataclass(frozen=True)
class DescentCertificate:
    """Replayable record of a descent from ``start`` to ``terminal``."""

    conic: Conic
    start: IntPoint
    steps: tuple[tuple[str, IntPoint], ...] = ()
    terminal: IntPoint = field(default=None)

    @property
    def axis_root(self) -> int | None:
        """|A| when the terminal is (A, 0) or (0, A); then q = A^2."""
        x, y = self.terminal
        if x == 0:
            return abs(y)
        if y == 0:
            return abs(x)
        return None

    @property
    def points(self) -> list[IntPoint]:
        return [self.start] + [pt for _, pt in self.steps]

    def replay(self) -> None:
        """Re-derive every step; raise InvariantViolation on any mismatch."""
        c = self.conic
        cur = IntPoint(*self.start)
        if not contains(c, cur):
            raise InvariantViolation("start point is off the conic")
        for tag, pt in self.steps:
            nxt = _apply(c, tag, cur)
            if nxt != pt:
                raise InvariantViolation(f"step {tag} from {cur} gives {nxt}, recorded {pt}")
            if not contains(c, nxt):
                raise InvariantViolation(f"{nxt} is off the conic")
            if (tag in ("sharp", "flat") and min(cur) >= 0 and min(nxt) >= 0
                    and sum(nxt) >= sum(cur)):
                raise InvariantViolation(f"coordinate sum did not drop at {cur} -> {nxt}")
            cur = nxt
        if cur != self.terminal:
            raise InvariantViolation("terminal does not match the last step")
        if min(cur) < 0:
            raise InvariantViolation("terminal is not in the closed first quadrant")
        if cur.x != 0 and cur.y != 0 and cur.x != cur.y:
            _, nxt = _downhill(c, cur)
            if min(nxt) >= 0:
                raise InvariantViolation("terminal still admits a descent step")

    def verify(self) -> bool:
        try:
            self.replay()
        except InvariantViolation:
            return False
        return True


def descend(c: Conic, P, max_steps: int = MAX_DESCENT_STEPS) -> DescentCertificate:
    """Descend from ``P`` by Vieta jumps until no jump stays in the first quadrant.

    Only defined for p > 2 and q > 0.  The terminal point is on an axis (then
    q is a square), has equal coordinates, or lies in the reduced box where
    the next jump would leave the closed first quadrant.
    """
    start = _require(c, P)
    if c.p <= 2 or c.q <= 0:
        raise UnsupportedRange(f"descent needs p > 2 and q > 0, got p={c.p}, q={c.q}")
    steps = []
    cur = start
    if cur.x <= 0 and cur.y <= 0:
        cur = _apply(c, "negate-both", cur)
        steps.append(("negate-both", cur))
    elif cur.x < 0 or cur.y < 0:
        # mixed signs: the jump of the negative coordinate lands in the quadrant
        tag = "sharp" if cur.y < 0 else "flat"
        cur = _apply(c, tag, cur)
        steps.append((tag, cur))
    while cur.x != 0 and cur.y != 0 and cur.x != cur.y:
        tag, nxt = _downhill(c, cur)
        if min(nxt) < 0:
            break
        cur = nxt
        steps.append((tag, cur))
        if len(steps) > max_steps:
            raise NonterminatingGuard(f"descent exceeded {max_steps} steps")
    return DescentCertificate(c, start, tuple(steps), cur)


def chain(c: Conic, start, n_back: int = 0, n_fwd: int = 0) -> list[IntPoint]:
    """Points reached by alternating jumps in both directions from ``start``.

    Forward alternation begins with sharp when x >= y and with flat
    otherwise; the backward direction begins with the other operator.
    """
    start = _require(c, start)
    first = "sharp" if start.x >= start.y else "flat"
    other = {"sharp": "flat", "flat": "sharp"}

    def walk(tag, count):
        out, cur = [], start
        for _ in range(count):
            cur = _apply(c, tag, cur)
            out.append(cur)
            tag = other[tag]
        return out

    back = walk(other[first], n_back)
    return back[::-1] + [start] + walk(first, n_fwd)


def recurrence_seq(m: int, count: int) -> list[int]:
    """a_1 = 0, a_2 = m, a_{n+2} = m^2 a_{n+1} - a_n."""
    if count < 2:
        raise InputError("count must be at least 2")
    seq = [0, m]
    while len(seq) < count:
        seq.append(m * m * seq[-1] - seq[-2])
    return seq


def fibonacci_solutions(count: int) -> list[IntPoint]:
    """(F_{2n-1}, F_{2n+1}) for n = 1..count; all lie on x^2 - 3xy + y^2 = -1."""
    if count < 1:
        raise InputError("count must be at least 1")
    out = []
    a, b = 1, 2  # F_1, F_3
    for _ in range(count):
        out.append(IntPoint(a, b))
        a, b = b, 3 * b - a
    return out


# -- classification -------------------------------------------------------

class Verdict(str, Enum):
    UNSOLVABLE = "UnsolvableByTheorem"
    SQUARE = "SolvableSquare"
    FAMILY = "SolvableFamily"
    REPRESENTATION = "SolvableRepresentation"
    UNSUPPORTED = "UnsupportedRange"


@dataclass(frozen=True)
class ClassificationVerdict:
    p: int
    q: int
    tag: Verdict
    witnesses: tuple[IntPoint, ...] = ()
    theorem_id: str = ""
    notes: str = ""

    @property
    def solvable(self) -> bool | None:
        if self.tag is Verdict.UNSOLVABLE:
            return False
        if self.tag is Verdict.UNSUPPORTED:
            return None
        return True


def _family_seed(p: int, q: int, seed: IntPoint, theorem_id: str, note: str):
    pts = tuple(chain(Conic(p, q), seed, 0, 3))
    return ClassificationVerdict(p, q, Verdict.FAMILY, pts, theorem_id, note)


def classify(p: int, q: int) -> ClassificationVerdict:
    """Theorem-backed answer to: does x^2 - p*x*y + y^2 = q have integral points?"""
    from . import oracle

    if q == 0:
        return ClassificationVerdict(p, q, Verdict.UNSUPPORTED, notes="q = 0 is excluded")
    if p < 0:
        v = classify(-p, q)
        flipped = tuple(IntPoint(x, -y) for x, y in v.witnesses)
        return ClassificationVerdict(p, q, v.tag, flipped, v.theorem_id,
                                     f"reflected y -> -y from p={-p}; {v.notes}".rstrip("; "))
    if p == 2:
        r = exact_sqrt(q)
        if r is None:
            return ClassificationVerdict(p, q, Verdict.UNSOLVABLE, (), "p=2",
                                         "(x - y)^2 = q needs q to be a square")
        return ClassificationVerdict(p, q, Verdict.SQUARE, (IntPoint(r, 0),), "p=2")
    if p in (0, 1):
        if q < 0:
            return ClassificationVerdict(p, q, Verdict.UNSOLVABLE, (), f"p={p}",
                                         "positive definite form")
        try:
            if p == 0:
                rep = oracle.two_square_rep(q)
                wit = rep and IntPoint(*rep)
                note = "sum of two squares"
            else:
                rep = oracle.rep_c2_plus_3d2(4 * q)
                wit = rep and IntPoint((rep[0] + rep[1]) // 2, rep[1])
                note = "(2x - y)^2 + 3y^2 = 4q"
        except FactorizationTooLarge as exc:
            return ClassificationVerdict(p, q, Verdict.UNSUPPORTED, notes=str(exc))
        if wit is None:
            return ClassificationVerdict(p, q, Verdict.UNSOLVABLE, (), f"p={p}",
                                         note + ": prime condition fails")
        return ClassificationVerdict(p, q, Verdict.REPRESENTATION, (wit,), f"p={p}", note)

    # p >= 3
    if 0 < q <= p + 1:
        r = exact_sqrt(q)
        if r is None:
            return ClassificationVerdict(p, q, Verdict.UNSOLVABLE, (), "TM1",
                                         "0 < q <= p+1 and q is not a square")
        return ClassificationVerdict(p, q, Verdict.SQUARE, (IntPoint(r, 0),), "TM1")
    if q == p + 2:
        return _family_seed(p, q, IntPoint(1, -1), "TM1-sharp", "chain through (1,-1)")
    if 3 - p <= q < 0:
        return ClassificationVerdict(p, q, Verdict.UNSOLVABLE, (), "Thpq",
                                     "3-p <= q < 0")
    if q == 2 - p:
        return _family_seed(p, q, IntPoint(1, 1), "Thpq-boundary", "chain through (1,1)")
    r = exact_sqrt(q)
    if r is not None:
        return ClassificationVerdict(p, q, Verdict.SQUARE, (IntPoint(r, 0),), "witness",
                                     "q is a square; (sqrt q, 0) is on the conic")
    return ClassificationVerdict(p, q, Verdict.UNSUPPORTED,
                                 notes="outside the proven ranges; use a box search")


# -- the 1988 quotient ----------------------------------------------------

def imo_quotient(a: int, b: int) -> int | None:
    """(a^2 + b^2) / (ab + 1) when exact, else None."""
    if a < 1 or b < 1:
        raise InputError("a and b must be positive")
    num, den = a * a + b * b, a * b + 1
    return num // den if num % den == 0 else None


def imo_certify(a: int, b: int) -> tuple[DescentCertificate, int]:
    """Certificate that the quotient k is a square, together with its root A."""
    k = imo_quotient(a, b)
    if k is None:
        raise NotDivisible(f"{a * b + 1} does not divide {a * a + b * b}")
    c = Conic(k, k)
    if k == 1:
        # x^2 - xy + y^2 = 1 with x, y >= 1 forces (1, 1)
        cert = DescentCertificate(c, IntPoint(a, b), (), IntPoint(a, b))
        cert.replay()
        return cert, 1
    cert = descend(c, (a, b))
    cert.replay()
    root = cert.axis_root
    if root is None or root * root != k:
        raise InvariantViolation(f"descent on C_{k} from {(a, b)} did not reach an axis")
    return cert, root

