"""Exact arithmetic in Z[sqrt m] and its half-integer extension.

Elements are (u + v*sqrt(m)) / d with d in {1, 2}.  Every comparison between
elements is decided exactly (signs of u + v*sqrt(m) follow from comparing
u^2 with m*v^2); floating point only seeds the search for unit exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ._arith import exact_sqrt, is_square, is_twice_square
from .conic_core import Conic, IntPoint, contains
from .errors import (
    DegenerateK,
    InputError,
    InvalidFamily,
    InvariantViolation,
    NotAUnit,
    ParameterOutOfTheoremRange,
    PointNotOnConic,
    PreconditionViolated,
    RadicandMismatch,
    ZeroElement,
)


def _sign_of(u: int, v: int, m: int) -> int:
    """Sign of u + v*sqrt(m) for non-square m > 0."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if v > 0 else -1
    if (u > 0) == (v > 0):
        return 1 if u > 0 else -1
    # opposite signs: the larger magnitude wins (never equal, m non-square)
    if u * u > m * v * v:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


@dataclass(frozen=True)
class QuadElt:
    """The number (u + v*sqrt(m)) / d."""

    u: int
    v: int
    m: int
    d: int = 1

    def __post_init__(self):
        if self.m < 2 or is_square(self.m):
            raise InputError(f"radicand must be a positive non-square, got {self.m}")
        if self.d not in (1, 2):
            raise InputError("denominator must be 1 or 2")
        if self.d == 2:
            if (self.u - self.v) % 2:
                raise InputError("half-integral element needs u = v (mod 2)")
            if self.u % 2 == 0:
                object.__setattr__(self, "u", self.u // 2)
                object.__setattr__(self, "v", self.v // 2)
                object.__setattr__(self, "d", 1)
            elif self.m % 4 != 1:
                raise InputError("half-integral elements need m = 1 (mod 4)")

    @classmethod
    def _from_scaled(cls, u: int, v: int, m: int, d: int) -> "QuadElt":
        while d > 2 or (d == 2 and u % 2 == 0 and v % 2 == 0):
            if u % 2 or v % 2:
                raise InvariantViolation(f"({u} + {v}*sqrt{m})/{d} is not integral")
            u, v, d = u // 2, v // 2, d // 2
        return cls(u, v, m, d)

    def _check(self, other: "QuadElt"):
        if not isinstance(other, QuadElt):
            raise TypeError(f"cannot combine QuadElt with {type(other).__name__}")
        if other.m != self.m:
            raise RadicandMismatch(f"sqrt {self.m} vs sqrt {other.m}")

    def _lift(self, other):
        if isinstance(other, int):
            return QuadElt(other, 0, self.m)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        d = self.d * other.d
        return QuadElt._from_scaled(self.u * other.d + other.u * self.d,
                                    self.v * other.d + other.v * self.d, self.m, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.u, -self.v, self.m, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        u = self.u * other.u + self.m * self.v * other.v
        v = self.u * other.v + self.v * other.u
        return QuadElt._from_scaled(u, v, self.m, self.d * other.d)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == 0 and self.d == 1 and self.u == other
        if not isinstance(other, QuadElt):
            return NotImplemented
        return (self.u, self.v, self.m, self.d) == (other.u, other.v, other.m, other.d)

    def __hash__(self):
        if self.v == 0 and self.d == 1:
            return hash(self.u)
        return hash((self.u, self.v, self.m, self.d))

    def conj(self) -> "QuadElt":
        return QuadElt(self.u, -self.v, self.m, self.d)

    def norm(self) -> int:
        num = self.u * self.u - self.m * self.v * self.v
        return num // (self.d * self.d)

    def trace(self) -> int:
        return 2 * self.u // self.d

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def sign(self) -> int:
        return _sign_of(self.u, self.v, self.m)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def inverse(self) -> "QuadElt":
        """Inverse of a unit (norm +-1)."""
        n = self.norm()
        if n not in (1, -1):
            raise NotAUnit(f"{self} has norm {n}")
        return self.conj() if n == 1 else -self.conj()

    def __pow__(self, j: int):
        base = self
        if j < 0:
            base, j = self.inverse(), -j
        result = QuadElt(1, 0, self.m)
        while j:
            if j & 1:
                result = result * base
            base = base * base
            j >>= 1
        return result

    def log_abs(self) -> float:
        """ln|self|, accurate enough to seed an exponent search."""
        if self.is_zero():
            raise ZeroElement("log of zero")
        u, v = self.u, self.v
        if u and v and (u > 0) != (v > 0):
            # cancellation: go through the conjugate, |a| = |N a| / |a'|
            return math.log(abs(self.norm())) - self.conj().log_abs()
        u, v = abs(u), abs(v)
        shift = max(0, max(u, v).bit_length() - 900)
        approx = (u >> shift) + (v >> shift) * math.sqrt(self.m)
        return math.log(approx) + shift * math.log(2) - math.log(self.d)

    def __float__(self):
        return (self.u + self.v * math.sqrt(self.m)) / self.d

    def __str__(self):
        body = f"{self.u} {'+' if self.v >= 0 else '-'} {abs(self.v)}*sqrt({self.m})"
        return f"({body})/2" if self.d == 2 else body


def mul(a: QuadElt, b: QuadElt) -> QuadElt:
    return a * b


def conj(a: QuadElt) -> QuadElt:
    return a.conj()


def norm(a: QuadElt) -> int:
    return a.norm()


# -- Richaud-Degert families ----------------------------------------------

class RdKind(str, Enum):
    NSQ_MINUS_1 = "NsqMinus1"
    NSQ_MINUS_4 = "NsqMinus4"
    NSQ_PLUS_2 = "NsqPlus2"


@dataclass(frozen=True)
class RdFamily:
    kind: RdKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", RdKind(self.kind))
        if self.n < 1:
            raise InvalidFamily("n must be positive")
        if self.kind is RdKind.NSQ_MINUS_4 and self.n % 2 == 0:
            raise InvalidFamily("n^2 - 4 family needs odd n")
        m = self.radicand
        if m < 2 or is_square(m):
            raise InvalidFamily(f"radicand {m} is not a positive non-square")

    @property
    def radicand(self) -> int:
        offset = {RdKind.NSQ_MINUS_1: -1, RdKind.NSQ_MINUS_4: -4, RdKind.NSQ_PLUS_2: 2}
        return self.n * self.n + offset[self.kind]


def rd_unit(f: RdFamily) -> QuadElt:
    n, m = f.n, f.radicand
    if f.kind is RdKind.NSQ_MINUS_1:
        return QuadElt(n, 1, m)
    if f.kind is RdKind.NSQ_MINUS_4:
        return QuadElt(n, 1, m, 2)
    return QuadElt(n * n + 1, n, m)


def rd_delta(n: int) -> QuadElt:
    """n + sqrt(n^2 + 2), of norm -2 with square 2*eps."""
    if n < 1:
        raise InputError("n must be positive")
    return QuadElt(n, 1, n * n + 2)


def rd_family_of(m: int) -> RdFamily | None:
    """Recognise m as n^2 - 1, n^2 - 4 (n odd) or n^2 + 2."""
    r = exact_sqrt(m + 1)
    if r is not None and r >= 2:
        return RdFamily(RdKind.NSQ_MINUS_1, r)
    r = exact_sqrt(m + 4)
    if r is not None and r % 2 == 1 and r >= 3:
        return RdFamily(RdKind.NSQ_MINUS_4, r)
    r = exact_sqrt(m - 2)
    if r is not None and r >= 1:
        return RdFamily(RdKind.NSQ_PLUS_2, r)
    return None


def find_unit(m: int, integral: bool = True, search_limit: int = 10**6) -> QuadElt:
    """A unit > 1 of norm +1 for radicand m.

    Closed forms are used for the three families.  With ``integral`` the
    smallest power lying in Z[sqrt m] is returned.  Other radicands fall back
    to a bounded brute-force search for the least solution.
    """
    f = rd_family_of(m)
    if f is not None:
        eps = rd_unit(f)
        if integral:
            power = eps
            while power.d != 1:
                power = power * eps
            return power
        return eps
    if is_square(m):
        raise InputError(f"{m} is a square")
    half = not integral and m % 4 == 1
    for y in range(1, search_limit):
        if half:
            x = exact_sqrt(m * y * y + 4)
            if x is not None:
                return QuadElt(x, y, m, 2)
        else:
            x = exact_sqrt(m * y * y + 1)
            if x is not None:
                return QuadElt(x, y, m)
    raise InputError(f"no unit found for m={m} with y < {search_limit}")


# -- reduction by a unit ----------------------------------------------------

def th2_bounds_hold(elt: QuadElt, unit: QuadElt, nu: int, strict: bool = True) -> bool:
    """Check |a| < (sqrt(nu)/2) B and |b| < sqrt(nu)/(2 sqrt m) B exactly.

    elt = a + b*sqrt(m), B = sqrt(eps) + 1/sqrt(eps), so B^2 = trace(eps) + 2.
    Squared and cleared of denominators the tests read
    4u^2 < d^2 nu (T + 2) and 4 m v^2 < d^2 nu (T + 2).
    """
    rhs = elt.d * elt.d * nu * (unit.trace() + 2)
    lhs_a = 4 * elt.u * elt.u
    lhs_b = 4 * elt.m * elt.v * elt.v
    if strict:
        return lhs_a < rhs and lhs_b < rhs
    return lhs_a <= rhs and lhs_b <= rhs


@dataclass(frozen=True)
class ReductionResult:
    exponent: int
    reduced: QuadElt
    unit: QuadElt
    nu: int
    bound_formula: str = "B = sqrt(eps) + 1/sqrt(eps), B^2 = trace(eps) + 2"

    @property
    def bound_squared(self) -> int:
        return self.unit.trace() + 2

    def within_bounds(self, strict: bool = True) -> bool:
        return th2_bounds_hold(self.reduced, self.unit, self.nu, strict)

    @property
    def on_window_edge(self) -> bool:
        """True when reduced^2 == nu * eps, where the bound is only attained."""
        sq = self.reduced * self.reduced
        return sq == self.unit * self.nu


def _check_unit(eps: QuadElt):
    if eps.norm() != 1 or not eps > 1:
        raise NotAUnit(f"{eps} is not a unit > 1 of norm +1")


def _seed_exponent(xi: QuadElt, eps: QuadElt, target_log: float) -> int:
    return round((target_log - xi.log_abs()) / eps.log_abs())


def reduce_by_unit(xi: QuadElt, eps: QuadElt) -> ReductionResult:
    """Multiply xi by the power of eps that makes both coordinates small.

    The exponent j is the unique one with nu/eps < (xi eps^j)^2 <= nu*eps,
    nu = |N xi|.  On that window the coordinate bounds hold with <=, and
    strictly except when (xi eps^j)^2 == nu*eps.
    """
    if xi.is_zero():
        raise ZeroElement("cannot reduce zero")
    xi._check(eps)
    _check_unit(eps)
    nu = abs(xi.norm())
    j = _seed_exponent(xi, eps, 0.5 * math.log(nu))
    alpha = xi * eps**j
    upper = eps * nu
    for _ in range(64):
        sq = alpha * alpha
        if sq > upper:
            j, alpha = j - 1, alpha * eps.conj()
        elif sq * eps <= nu:
            j, alpha = j + 1, alpha * eps
        else:
            break
    else:
        raise InvariantViolation("exponent search did not settle")
    result = ReductionResult(j, alpha, eps, nu)
    if not result.within_bounds(strict=False):
        raise InvariantViolation(f"reduction of {xi} violates the coordinate bounds")
    return result


@dataclass(frozen=True)
class Plus2Reduction:
    """xi * eps^j, optionally times delta, for the n^2 + 2 family."""

    exponent: int
    used_delta: bool
    reduced: QuadElt
    nu: int
    n: int

    @property
    def reduced_norm(self) -> int:
        return abs(self.reduced.norm())

    def b_bound_holds(self) -> bool:
        """|2 b sqrt m| <= sqrt(nu') (eps^(1/4) + eps^(-1/4)), nu' = |N reduced|.

        Squared: 4 m b^2 <= nu' (sqrt(2n^2 + 4) + 2), decided exactly.
        """
        r = self.reduced
        nu2 = self.reduced_norm
        lhs = 4 * r.m * r.v * r.v - 2 * nu2 * r.d * r.d
        if lhs <= 0:
            return True
        rhs2 = (nu2 * r.d * r.d) ** 2 * (2 * self.n * self.n + 4)
        return lhs * lhs <= rhs2


def reduce_plus2(xi: QuadElt, n: int) -> Plus2Reduction:
    """Two-window reduction for m = n^2 + 2 using delta = n + sqrt m.

    Choose j with nu^2/eps^3 <= (xi eps^j)^4 < nu^2 eps.  In the upper part
    [nu^2/eps, nu^2 eps) the element is kept; in the lower part it is
    multiplied by delta, which doubles the norm and lands in the upper window
    for 2 nu.
    """
    if xi.is_zero():
        raise ZeroElement("cannot reduce zero")
    f = RdFamily(RdKind.NSQ_PLUS_2, n)
    eps, delta = rd_unit(f), rd_delta(n)
    xi._check(eps)
    nu = abs(xi.norm())
    nu2 = nu * nu
    j = _seed_exponent(xi, eps, 0.5 * math.log(nu) - 0.25 * eps.log_abs())
    alpha = xi * eps**j
    eps3 = eps * eps * eps
    for _ in range(64):
        p4 = alpha * alpha
        p4 = p4 * p4
        if p4 >= eps * nu2:
            j, alpha = j - 1, alpha * eps.conj()
        elif p4 * eps3 < nu2:
            j, alpha = j + 1, alpha * eps
        else:
            break
    else:
        raise InvariantViolation("exponent search did not settle")
    p4 = alpha * alpha
    p4 = p4 * p4
    if p4 * eps >= nu2:
        return Plus2Reduction(j, False, alpha, nu, n)
    return Plus2Reduction(j, True, alpha * delta, nu, n)


# -- small norms -------------------------------------------------------------

class SmallNormKind(str, Enum):
    FORCED_SQUARE = "ForcedSquare"
    FORCED_EXCEPTIONAL = "ForcedExceptional"
    NO_CONSTRAINT = "NoConstraint"


@dataclass(frozen=True)
class SmallNormVerdict:
    kind: SmallNormKind
    family: RdFamily
    nu: int
    threshold: int
    exceptional: int | None = None
    square_classes: tuple[int, ...] = (1,)

    def admits(self, nu: int | None = None) -> bool:
        """Whether a solvable norm nu has the shape the theorem allows."""
        nu = self.nu if nu is None else nu
        if nu >= self.threshold:
            return True
        if nu == self.exceptional:
            return True
        if is_square(nu):
            return True
        return 2 in self.square_classes and is_twice_square(nu)


_THEOREMS = {
    # kind: (minimal n, threshold(n), exceptional(n), square classes)
    RdKind.NSQ_MINUS_1: (2, lambda n: 2 * n - 2, lambda n: None, (1,)),
    RdKind.NSQ_MINUS_4: (7, lambda n: n + 2, lambda n: n - 2, (1,)),
    RdKind.NSQ_PLUS_2: (5, lambda n: 2 * n + 1, lambda n: 2 * n - 1, (1, 2)),
}


def small_norm_classify(f: RdFamily, nu: int) -> SmallNormVerdict:
    """Shape forced on a solvable |x^2 - m y^2| = nu below the family threshold."""
    if nu < 1:
        raise InputError("nu must be positive")
    n_min, threshold, exceptional, classes = _THEOREMS[f.kind]
    if f.n < n_min:
        raise ParameterOutOfTheoremRange(f"{f.kind.value} needs n >= {n_min}")
    bound = threshold(f.n)
    exc = exceptional(f.n)
    if nu >= bound:
        kind = SmallNormKind.NO_CONSTRAINT
    elif nu == exc:
        kind = SmallNormKind.FORCED_EXCEPTIONAL
    else:
        kind = SmallNormKind.FORCED_SQUARE
    return SmallNormVerdict(kind, f, nu, bound, exc, classes)


@dataclass(frozen=True)
class DavenportMinima:
    """Norm bounds for m = t^2 - 1 on each sign side, with attaining points.

    Every |x^2 - m y^2| below ``plus`` on the + side (below ``minus`` on the
    - side) is a perfect square.  The bounds themselves are attained and may
    be squares (t = 3 gives minus = 4).
    """

    t: int
    plus: int
    plus_witness: IntPoint
    minus: int
    minus_witness: IntPoint


def davenport_min_norms(t: int) -> DavenportMinima:
    """Bounds 2t+2 (+ side) and 2t-2 (- side) for m = t^2 - 1, checked exactly.

    Up to units, every element of norm at most 2t+2 in absolute value has
    |y| <= 1 (coordinate bound with B^2 = 2t + 2), so only y in {0, 1}
    need be examined; y = 0 gives squares.
    """
    if t < 2:
        raise InputError("t must be at least 2")
    m = t * t - 1
    eps = QuadElt(t, 1, m)
    plus, minus = 2 * t + 2, 2 * t - 2
    if 4 * m > plus * (eps.trace() + 2):
        raise InvariantViolation("|y| <= 1 reduction does not apply")
    for x in range(0, t + 3):
        value = x * x - m
        bound = plus if value > 0 else minus
        if 0 < abs(value) < bound and not is_square(abs(value)):
            raise InvariantViolation(f"non-square norm {value} below the bound for t={t}")
    pw, mw = IntPoint(t + 1, 1), IntPoint(t - 1, 1)
    if pw.x ** 2 - m != plus or mw.x ** 2 - m != -minus:
        raise InvariantViolation(f"bounds not attained for t={t}")
    return DavenportMinima(t, plus, pw, minus, mw)


# -- points of C_k as field elements -------------------------------------------

def _k_radicand(k: int) -> int:
    if abs(k) <= 2:
        raise DegenerateK(f"|k| must exceed 2, got {k}")
    return (k // 2) ** 2 - 1 if k % 2 == 0 else k * k - 4


def point_to_element(k: int, P) -> QuadElt:
    """(x, y) on x^2 - kxy + y^2 = k to an element of norm k."""
    m = _k_radicand(k)
    x, y = P
    if not contains(Conic(k, k), P):
        raise PointNotOnConic(f"{tuple(P)} is not on C_{k}")
    if k % 2 == 0:
        return QuadElt(x - (k // 2) * y, y, m)
    return QuadElt(2 * x - k * y, y, m, 2)


def element_to_point(k: int, alpha: QuadElt) -> IntPoint:
    m = _k_radicand(k)
    if alpha.m != m:
        raise RadicandMismatch(f"C_{k} uses sqrt {m}, got sqrt {alpha.m}")
    if k % 2 == 0:
        if alpha.d != 1:
            raise PointNotOnConic("element is not in Z[sqrt m]")
        y = alpha.v
        P = IntPoint(alpha.u + (k // 2) * y, y)
    else:
        u, y = alpha.u * (2 // alpha.d), alpha.v * (2 // alpha.d)
        if (u + k * y) % 2:
            raise PointNotOnConic("element does not correspond to an integral point")
        P = IntPoint((u + k * y) // 2, y)
    if not contains(Conic(k, k), P):
        raise PointNotOnConic(f"element has norm {alpha.norm()}, not {k}")
    return P


def cassels_combine(x, y, s, t) -> bool:
    """x + y <= s + t/s for 0 <= x, y <= s and x*y <= t."""
    x, y, s, t = (Fraction(v) for v in (x, y, s, t))
    if s <= 0 or min(x, y, t) < 0 or x > s or y > s or x * y > t:
        raise PreconditionViolated("need 0 <= x, y <= s, x*y <= t, s > 0")
    return x + y <= s + t / s
