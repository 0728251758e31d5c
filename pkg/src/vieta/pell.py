"""Pell conics, the unit action on C_k, and the chord group law."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ._arith import is_square
from .conic_core import Conic, IntPoint, contains
from .errors import (
    DegenerateConstruction,
    InputError,
    InvalidFamily,
    OddCoordinate,
    PointNotOnConic,
)
from .qfield import QuadElt, RdFamily, rd_unit
from .rational_param import RatPoint


@dataclass(frozen=True)
class PellConic:
    """x^2 - m y^2 = rhs with rhs = +-1."""

    m: int
    rhs: int = 1

    def __post_init__(self):
        if self.m < 2 or is_square(self.m):
            raise InputError(f"m must be a positive non-square, got {self.m}")
        if self.rhs not in (1, -1):
            raise InputError("rhs must be +1 or -1")

    def contains(self, P) -> bool:
        x, y = P
        return x * x - self.m * y * y == self.rhs


def rd_fundamental(f: RdFamily) -> IntPoint:
    """Least power of the family unit that lies in Z[sqrt m], as (t, u)."""
    if not isinstance(f, RdFamily):
        raise InvalidFamily(f"expected an RdFamily, got {f!r}")
    eps = rd_unit(f)
    power = eps
    while power.d != 1:
        power = power * eps
    return IntPoint(power.u, power.v)


# -- unit action on C_k -----------------------------------------------------

def _mat_mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _mat_pow(M, j):
    R = ((1, 0), (0, 1))
    while j:
        if j & 1:
            R = _mat_mul(R, M)
        M = _mat_mul(M, M)
        j >>= 1
    return R


def act(k: int, P, j: int) -> IntPoint:
    """Apply the norm-one unit j times: (x, y) -> (kx - y, x), inverse (y, ky - x)."""
    c = Conic(k, k)
    if not contains(c, P):
        raise PointNotOnConic(f"{tuple(P)} is not on C_{k}")
    M = ((k, -1), (1, 0)) if j >= 0 else ((0, 1), (-1, k))
    (a, b), (cc, d) = _mat_pow(M, abs(j))
    x, y = P
    return IntPoint(a * x + b * y, cc * x + d * y)


C4 = Conic(4, 4)
PELL3 = PellConic(3, 1)


def c4_to_pell(P) -> IntPoint:
    if not contains(C4, P):
        raise PointNotOnConic(f"{tuple(P)} is not on C_4")
    a, b = P
    if a % 2 or b % 2:
        raise OddCoordinate(f"{tuple(P)} has an odd coordinate")
    A, B = a // 2, b // 2
    return IntPoint(A - 2 * B, B)


def pell_to_c4(P) -> IntPoint:
    if not PELL3.contains(P):
        raise PointNotOnConic(f"{tuple(P)} is not on x^2 - 3y^2 = 1")
    x, y = P
    return IntPoint(2 * x + 4 * y, 2 * y)


# -- group law ----------------------------------------------------------------

def _form(conic):
    """Coefficients (A, B, C, D) of A x^2 + B xy + C y^2 = D."""
    if isinstance(conic, PellConic):
        return 1, 0, -conic.m, conic.rhs
    if isinstance(conic, Conic):
        return 1, -conic.p, 1, conic.q
    raise TypeError(f"unsupported conic {conic!r}")


def group_add(conic, N, P, Q) -> RatPoint:
    """P + Q with neutral element N: the parallel to PQ through N meets the conic again there.

    When P == Q the tangent direction at P is used.  A parallel tangent at N
    yields N itself.
    """
    A, B, C, D = _form(conic)
    N, P, Q = (RatPoint(Fraction(pt[0]), Fraction(pt[1])) for pt in (N, P, Q))

    def on(pt):
        x, y = pt
        return A * x * x + B * x * y + C * y * y == D

    for pt in (N, P, Q):
        if not on(pt):
            raise PointNotOnConic(f"({pt.x}, {pt.y}) is not on the conic")
    if P == Q:
        gx, gy = 2 * A * P.x + B * P.y, B * P.x + 2 * C * P.y
        dx, dy = -gy, gx
    else:
        dx, dy = Q.x - P.x, Q.y - P.y
    quad = A * dx * dx + B * dx * dy + C * dy * dy
    if quad == 0:
        raise DegenerateConstruction("chord direction is asymptotic")
    lin = (2 * A * N.x + B * N.y) * dx + (B * N.x + 2 * C * N.y) * dy
    s = -lin / quad
    return RatPoint(N.x + s * dx, N.y + s * dy)


# -- Vieta forms of Pell equations ----------------------------------------------

@dataclass(frozen=True)
class VietaForm:
    """x^2 + 2c xy + (c^2 - m) y^2 = rhs, the shear X = x + c y of X^2 - m y^2 = rhs."""

    m: int
    c: int
    rhs: int = 1

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return 1, 2 * self.c, self.c * self.c - self.m

    def evaluate(self, P) -> int:
        a, b, cc = self.coefficients
        x, y = P
        return a * x * x + b * x * y + cc * y * y

    def contains(self, P) -> bool:
        return self.evaluate(P) == self.rhs

    def to_pell(self, P) -> IntPoint:
        x, y = P
        return IntPoint(x + self.c * y, y)

    def from_pell(self, P) -> IntPoint:
        X, y = P
        return IntPoint(X - self.c * y, y)

    def jump_x(self, P) -> IntPoint:
        """Second root in x for fixed y."""
        if not self.contains(P):
            raise PointNotOnConic(f"{tuple(P)} is not on the form")
        x, y = P
        return IntPoint(-2 * self.c * y - x, y)

    def jump_y(self, P) -> IntPoint:
        """Second root in y for fixed x; integral only when c^2 - m divides 2cx."""
        if not self.contains(P):
            raise PointNotOnConic(f"{tuple(P)} is not on the form")
        x, y = P
        lead = self.c * self.c - self.m
        if (2 * self.c * x) % lead:
            raise InputError("second y-root is not integral")
        return IntPoint(x, -2 * self.c * x // lead - y)


def vieta_form(m: int, rhs: int = 1) -> VietaForm:
    """Shear by the integer nearest to sqrt(m)."""
    PellConic(m, rhs)
    c = isqrt(m)
    if 4 * m > (2 * c + 1) ** 2:
        c += 1
    return VietaForm(m, c, rhs)


# -- regenerated table of integral points on C_4 -----------------------------------

# points as printed, keyed by (sign, exponent)
PRINTED_TABLE1 = {
    (1, -2): (-2, -8), (1, -1): (0, -2), (1, 0): (2, 0),
    (1, 1): (8, 2), (1, 2): (30, 8), (1, 3): (82, 30),
    (-1, -2): (-30, 8), (-1, -1): (-8, 2), (-1, 0): (-2, 0),
    (-1, 1): (0, -2), (-1, 2): (2, -8), (-1, 3): (8, -30),
}


@dataclass(frozen=True)
class Table1Row:
    exponent: int
    sign: int
    element: QuadElt
    point: IntPoint
    on_conic: bool
    printed: IntPoint
    printed_on_conic: bool

    @property
    def erratum(self) -> bool:
        return self.point != self.printed


def regen_table1() -> list[Table1Row]:
    eps = QuadElt(2, 1, 3)
    rows = []
    for sign in (1, -1):
        for j in range(-2, 4):
            elt = eps**j * sign
            point = pell_to_c4((elt.u, elt.v))
            printed = IntPoint(*PRINTED_TABLE1[(sign, j)])
            rows.append(Table1Row(j, sign, elt, point, contains(C4, point),
                                  printed, contains(C4, printed)))
    return rows


def table1_errata(rows=None) -> list[str]:
    rows = regen_table1() if rows is None else rows
    out = []
    for r in rows:
        if r.erratum:
            status = "on" if r.printed_on_conic else "off"
            out.append(f"{'+' if r.sign > 0 else '-'}eps^{r.exponent}: printed "
                       f"{tuple(r.printed)} ({status} C_4), regenerated {tuple(r.point)}")
    return out
