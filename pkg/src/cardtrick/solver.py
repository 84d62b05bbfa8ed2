"""Solvability classification, final position and iteration bounds.

A trick (C, n, j) is solvable when some number of iterations sends every
starting position to one final position ``l``. :func:`classify` decides this
from the parameters alone; :func:`k_star_empirical` measures the true
minimum number of iterations by pushing the whole set of start positions
through the recurrence. :func:`solve` runs both and refuses to return an
outcome on which they disagree.

All logarithmic bounds are evaluated as integer power comparisons.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from cardtrick.errors import CrossCheckError, InvalidArgument
from cardtrick.exactmath import checked_pow
from cardtrick.trick_core import (
    DerivedParams,
    TrickSpec,
    derive_params,
    gather_deck_id,
    iterate_deck_id,
    stack_id,
)


class Verdict(str, enum.Enum):
    SOLVABLE = "Solvable"
    NOT_SOLVABLE = "NotSolvable"


class Reason(str, enum.Enum):
    """Which classification rule decided the verdict."""

    SINGLE_CARD = "Step3_SingleCard"
    ONE_STACK = "Step4_OneStack"
    J_ZERO = "Step5_JZero"
    J_MAX = "Step6_JMax"
    DIVISIBILITY_PASS = "Step7_Divisibility_Pass"
    DIVISIBILITY_FAIL = "Step7_Divisibility_Fail"

    @property
    def label(self) -> str:
        return _REASON_LABELS[self]


_REASON_LABELS = {
    Reason.SINGLE_CARD: "single-card",
    Reason.ONE_STACK: "one-stack",
    Reason.J_ZERO: "j-zero",
    Reason.J_MAX: "j-max",
    Reason.DIVISIBILITY_PASS: "divisibility-pass",
    Reason.DIVISIBILITY_FAIL: "divisibility-fail",
}


@dataclass(frozen=True)
class SolveOutcome:
    """Verdict plus the values that go with it.

    ``k_paper`` is the smallest k meeting the sufficient logarithmic bound,
    ``k_star`` the smallest k at which all start positions actually agree.
    For unsolvable tricks ``k_checked`` records how far non-convergence was
    confirmed; it is ``None`` on outcomes straight from :func:`classify`.
    """

    spec: TrickSpec
    verdict: Verdict
    reason: Reason
    l: int | None
    k_paper: int | None
    k_star: int | None
    params: DerivedParams
    k_checked: int | None = None

    @property
    def solvable(self) -> bool:
        return self.verdict is Verdict.SOLVABLE

    def check(self) -> None:
        """Raise :class:`CrossCheckError` if the outcome is internally inconsistent."""
        present = (self.l, self.k_paper, self.k_star)
        if self.solvable:
            if any(v is None for v in present):
                raise CrossCheckError(
                    f"solvable trick {self.spec} is missing l/k_paper/k_star",
                    self.spec.as_tuple(),
                )
            if not 1 <= self.l <= self.spec.C:
                raise CrossCheckError(f"l={self.l} outside deck for {self.spec}", self.spec.as_tuple())
            if self.k_star > self.k_paper:
                raise CrossCheckError(
                    f"k_star={self.k_star} exceeds k_paper={self.k_paper} for {self.spec}",
                    self.spec.as_tuple(),
                )
        elif any(v is not None for v in present):
            raise CrossCheckError(
                f"unsolvable trick {self.spec} carries solution values", self.spec.as_tuple()
            )


def smallest_power_reaching(n: int, target: int, *, start: int = 1) -> int:
    """Smallest ``k >= start`` with ``n**k >= target`` (``n >= 2``)."""
    if n < 2:
        raise InvalidArgument(f"power search needs n >= 2, got {n}")
    k = start
    while checked_pow(n, k) < target:
        k += 1
    return k


def k_paper_bound(spec: TrickSpec, params: DerivedParams | None = None) -> int:
    """Smallest k >= 1 meeting the sufficient iteration bound.

    j = 0 needs ``k >= log_n C``, i.e. ``n**k >= C``. j = n-1 needs
    ``k > log_n(C-1)``, i.e. ``n**k > C-1``, the same integer test.

    For 0 < j < n-1 write q = n-1, p = mj, r = p mod q (so r > 0 when
    solvable). Then b = p/q, frac(b) = r/q, 1 - frac(b) = (q-r)/q and
    bn = pn/q, so the two candidates for the threshold t become

        (C - bn) / (1 - frac(b)) = (Cq - pn) / (q - r)
        (bn - 1) / frac(b)       = (pn - q) / r

    Both denominators are positive, so ``n**k > t`` is exactly

        n**k * (q - r) > C*q - p*n   and   n**k * r > p*n - q.
    """
    C, n, j = spec.C, spec.n, spec.j
    if C == 1:
        return 1
    if n == 1:
        raise InvalidArgument(f"{spec} is not solvable; no iteration bound exists")
    if j == 0 or j == n - 1:
        return smallest_power_reaching(n, C)
    q, p = n - 1, spec.m * j
    r = p % q
    if r == 0:
        raise InvalidArgument(f"{spec} is not solvable; no iteration bound exists")
    k = 1
    while True:
        nk = checked_pow(n, k)
        if nk * (q - r) > C * q - p * n and nk * r > p * n - q:
            return k
        k += 1


def classify(spec: TrickSpec) -> SolveOutcome:
    """Decide solvability from the parameters; ``k_star`` is left unset."""
    params = derive_params(spec)
    C, n, j = spec.C, spec.n, spec.j

    def solvable(reason: Reason, l: int) -> SolveOutcome:
        return SolveOutcome(
            spec, Verdict.SOLVABLE, reason, l, k_paper_bound(spec, params), None, params
        )

    def unsolvable(reason: Reason) -> SolveOutcome:
        return SolveOutcome(spec, Verdict.NOT_SOLVABLE, reason, None, None, None, params)

    if C == 1:
        return solvable(Reason.SINGLE_CARD, 1)
    if n == 1:
        return unsolvable(Reason.ONE_STACK)
    if j == 0:
        return solvable(Reason.J_ZERO, 1)
    if j == n - 1:
        return solvable(Reason.J_MAX, C)
    if (spec.m * j) % (n - 1) == 0:
        return unsolvable(Reason.DIVISIBILITY_FAIL)
    return solvable(Reason.DIVISIBILITY_PASS, spec.m * j + params.b_floor + 1)


def default_k_cap(spec: TrickSpec) -> int:
    """Search cap for unsolvable tricks: ceil(log_n C) + 3.

    With one stack the deck never moves, so any cap shows non-convergence;
    3 is used there.
    """
    if spec.n == 1:
        return 3
    return smallest_power_reaching(spec.n, spec.C, start=0) + 3


def image_after(spec: TrickSpec, positions: set[int]) -> set[int]:
    """Apply one iteration of the recurrence to a set of positions."""
    n, m, j = spec.n, spec.m, spec.j
    return {gather_deck_id(stack_id(d, n), m, j) for d in positions}


def k_star_empirical(spec: TrickSpec, k_cap: int) -> int | None:
    """Smallest k <= k_cap at which every start position lands on one spot.

    The image of all starts after k iterations is the image of the previous
    image, so the set is pushed forward rather than re-run from each start.
    """
    if k_cap < 1:
        raise InvalidArgument(f"k_cap must be positive, got {k_cap}")
    image = set(range(1, spec.C + 1))
    for k in range(1, k_cap + 1):
        image = image_after(spec, image)
        if len(image) == 1:
            return k
    return None


def solve(spec: TrickSpec) -> SolveOutcome:
    outcome = classify(spec)
    if outcome.solvable:
        k_star = k_star_empirical(spec, outcome.k_paper)
        if k_star is None:
            raise CrossCheckError(
                f"{spec} classified solvable but start positions do not converge "
                f"by k={outcome.k_paper}",
                spec.as_tuple(),
            )
        landed = iterate_deck_id(spec, 1, k_star)
        if landed != outcome.l:
            raise CrossCheckError(
                f"{spec} predicted l={outcome.l} but start positions converge to {landed}",
                spec.as_tuple(),
            )
        outcome = replace(outcome, k_star=k_star)
    else:
        cap = default_k_cap(spec)
        found = k_star_empirical(spec, cap)
        if found is not None:
            raise CrossCheckError(
                f"{spec} classified unsolvable but converges at k={found}", spec.as_tuple()
            )
        outcome = replace(outcome, k_checked=cap)
    outcome.check()
    return outcome
