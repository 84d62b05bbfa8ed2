"""Trick parameters and the deck-id recurrence.

Positions are 1-based from the top of the deck everywhere. One iteration
deals the deck round-robin into ``n`` stacks and regathers them with ``j``
stacks above the one holding the tracked card, so

    s_k = ceil(d_{k-1} / n)        (row of the card in its stack)
    d_k = m * j + s_k              (position after regathering)

with ``m = C / n`` cards per stack. :func:`closed_form_deck_id` evaluates
``d_k`` directly without stepping through the recurrence.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from cardtrick.errors import InvalidArgument, SpecError
from cardtrick.exactmath import ceil_div, checked_pow, rational_parts


@dataclass(frozen=True, order=True)
class TrickSpec:
    """The triple (C, n, j): C cards, n stacks, j stacks placed on top."""

    C: int
    n: int
    j: int

    def __post_init__(self) -> None:
        for name in ("C", "n", "j"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise SpecError("integer", f"{name} must be an integer, got {value!r}")
        if self.C < 1:
            raise SpecError("cards-positive", f"C must be at least 1, got {self.C}")
        if not 1 <= self.n <= self.C:
            raise SpecError(
                "stacks-range", f"n must satisfy 1 <= n <= C={self.C}, got {self.n}"
            )
        if self.C % self.n:
            raise SpecError(
                "stacks-divide-cards", f"n={self.n} does not divide C={self.C}"
            )
        if not 0 <= self.j < self.n:
            raise SpecError(
                "on-top-range", f"j must satisfy 0 <= j <= n-1={self.n - 1}, got {self.j}"
            )

    @property
    def m(self) -> int:
        return self.C // self.n

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.C, self.n, self.j)

    def __str__(self) -> str:
        return f"({self.C}, {self.n}, {self.j})"


def validate_spec(C: int, n: int, j: int) -> TrickSpec:
    return TrickSpec(C, n, j)


@dataclass(frozen=True)
class DerivedParams:
    """Exact quantities derived from a spec.

    ``b`` and its parts are ``None`` when ``n == 1``. ``t`` is only set for
    the interior case ``0 < j < n - 1`` when ``b`` is not an integer, since
    otherwise one of its denominators vanishes.
    """

    m: int
    b: Fraction | None
    b_floor: int | None
    b_frac: Fraction | None
    t: Fraction | None


def derive_params(spec: TrickSpec) -> DerivedParams:
    m = spec.m
    if spec.n == 1:
        return DerivedParams(m, None, None, None, None)
    b = Fraction(m * spec.j, spec.n - 1)
    b_floor, b_frac = rational_parts(b)
    t = None
    if 0 < spec.j < spec.n - 1 and b_frac != 0:
        bn = b * spec.n
        t = max((spec.C - bn) / (1 - b_frac), (bn - 1) / b_frac)
    return DerivedParams(m, b, b_floor, b_frac, t)


@dataclass(frozen=True)
class TrickState:
    """Tracked-card state after ``iteration`` iterations.

    ``stack_id`` is ``None`` only before the first deal.
    """

    deck_id: int
    stack_id: int | None
    iteration: int

    def __post_init__(self) -> None:
        if self.deck_id < 1:
            raise InvalidArgument(f"deck_id must be positive, got {self.deck_id}")
        if self.iteration < 0:
            raise InvalidArgument(f"iteration must be non-negative, got {self.iteration}")
        if (self.stack_id is None) != (self.iteration == 0):
            raise InvalidArgument("stack_id is defined exactly when iteration >= 1")
        if self.stack_id is not None and self.stack_id < 1:
            raise InvalidArgument(f"stack_id must be positive, got {self.stack_id}")


def stack_id(d_prev: int, n: int) -> int:
    """Row of the tracked card after dealing a deck where it sits at ``d_prev``."""
    if d_prev < 1 or n < 1:
        raise InvalidArgument(f"stack_id needs positive inputs, got ({d_prev}, {n})")
    return ceil_div(d_prev, n)


def gather_deck_id(s: int, m: int, j: int) -> int:
    if m < 1 or j < 0:
        raise InvalidArgument(f"need m >= 1 and j >= 0, got m={m}, j={j}")
    if not 1 <= s <= m:
        raise InvalidArgument(f"stack id {s} outside [1, {m}]")
    return m * j + s


def _check_start(spec: TrickSpec, d0: int) -> None:
    if isinstance(d0, bool) or not isinstance(d0, int) or not 1 <= d0 <= spec.C:
        raise InvalidArgument(f"start position must lie in [1, {spec.C}], got {d0!r}")


def trick_states(spec: TrickSpec, d0: int, k: int) -> Iterator[TrickState]:
    """Yield the tracked-card state for iterations ``0..k``."""
    _check_start(spec, d0)
    if k < 0:
        raise InvalidArgument(f"iteration count must be non-negative, got {k}")
    d = d0
    yield TrickState(d, None, 0)
    for i in range(1, k + 1):
        s = stack_id(d, spec.n)
        d = gather_deck_id(s, spec.m, spec.j)
        yield TrickState(d, s, i)


def iterate_deck_id(spec: TrickSpec, d0: int, k: int) -> int:
    _check_start(spec, d0)
    if k < 0:
        raise InvalidArgument(f"iteration count must be non-negative, got {k}")
    d = d0
    for _ in range(k):
        d = gather_deck_id(stack_id(d, spec.n), spec.m, spec.j)
    return d


def closed_form_deck_id(spec: TrickSpec, d0: int, k: int) -> int:
    """``d_k`` in one shot, for ``k >= 1``.

    For ``n > 1``::

        d_k = mj + ceil((mjn * (n^(k-1) - 1)/(n - 1) + d0) / n^k)

    The geometric sum ``(n^(k-1) - 1)/(n - 1)`` is an exact integer and is
    divided out before multiplying by ``mjn``.
    """
    _check_start(spec, d0)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidArgument(f"closed form needs k >= 1, got {k!r}")
    n = spec.n
    if n == 1:
        return d0
    mj = spec.m * spec.j
    geometric = (checked_pow(n, k - 1) - 1) // (n - 1)
    return mj + ceil_div(mj * n * geometric + d0, checked_pow(n, k))
