"""Exact integer and rational primitives.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is involved anywhere. Powers go through :func:`checked_pow`,
which refuses to build integers wider than a configurable bit width instead
of letting an accidental large exponent run away.
"""

from __future__ import annotations

import math
from fractions import Fraction

from cardtrick.errors import IntegerOverflow, InvalidArgument

# Fraction already keeps den > 0 and lowest terms on construction, which is
# exactly the invariant we want for b and t.
Rational = Fraction

DEFAULT_MAX_BITS = 4096


def _require_int(name: str, value: object) -> int:
    if type(value) is int:
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidArgument(f"{name} must be an integer, got {value!r}")
    return value


def ceil_div(a: int, d: int) -> int:
    """Return the ceiling of ``a / d`` for a positive denominator ``d``."""
    _require_int("a", a)
    if _require_int("d", d) <= 0:
        raise InvalidArgument(f"denominator must be positive, got {d}")
    return -((-a) // d)


def floor_div(a: int, d: int) -> int:
    """Return the floor of ``a / d`` for a positive denominator ``d``."""
    _require_int("a", a)
    if _require_int("d", d) <= 0:
        raise InvalidArgument(f"denominator must be positive, got {d}")
    return a // d


def gcd(a: int, b: int) -> int:
    _require_int("a", a)
    _require_int("b", b)
    if a < 0 or b < 0:
        raise InvalidArgument(f"gcd arguments must be non-negative, got ({a}, {b})")
    if a == 0 and b == 0:
        raise InvalidArgument("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    _require_int("a", a)
    _require_int("b", b)
    if a < 1 or b < 1:
        raise InvalidArgument(f"lcm arguments must be positive, got ({a}, {b})")
    return a // math.gcd(a, b) * b


def divisors_gt1(C: int) -> list[int]:
    """All divisors of ``C`` greater than 1, ascending (empty for ``C == 1``)."""
    if _require_int("C", C) < 1:
        raise InvalidArgument(f"C must be positive, got {C}")
    small: list[int] = []
    large: list[int] = []
    for d in range(1, math.isqrt(C) + 1):
        if C % d == 0:
            small.append(d)
            if d != C // d:
                large.append(C // d)
    return [d for d in small + large[::-1] if d > 1]


def checked_pow(n: int, k: int, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Exact ``n ** k``, raising :class:`IntegerOverflow` past ``max_bits``.

    The width test is on ``bit_length`` of the result, so ``2 ** 200`` (201
    bits) overflows for any ``max_bits <= 200``.
    """
    if _require_int("n", n) < 1:
        raise InvalidArgument(f"base must be positive, got {n}")
    if _require_int("k", k) < 0:
        raise InvalidArgument(f"exponent must be non-negative, got {k}")
    # n >= 2**(bit_length - 1), so this lower bound on the width is exact
    # enough to reject hopeless exponents before materialising them.
    if (n.bit_length() - 1) * k + 1 > max_bits:
        raise IntegerOverflow(n, k, max_bits)
    result = n**k
    if result.bit_length() > max_bits:
        raise IntegerOverflow(n, k, max_bits)
    return result


def rational_parts(r: Fraction) -> tuple[int, Fraction]:
    """Split ``r`` into ``(floor, frac)`` with ``0 <= frac < 1``."""
    if not isinstance(r, Fraction):
        raise InvalidArgument(f"expected a Fraction, got {r!r}")
    whole = r.numerator // r.denominator
    return whole, r - whole
