"""Small exact integer helpers."""

from math import isqrt


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def exact_sqrt(n: int) -> int | None:
    """Return the nonnegative integer root of ``n`` or None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_twice_square(n: int) -> bool:
    return n > 0 and n % 2 == 0 and is_square(n // 2)
