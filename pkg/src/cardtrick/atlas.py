"""Enumerate every trick for a deck size, count the solvable ones, export CSV.

Rows are always produced in (C, n, j) order so exports are byte-stable.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable
from dataclasses import dataclass, field

from cardtrick.errors import CrossCheckError, InvalidArgument
from cardtrick.exactmath import divisors_gt1, gcd
from cardtrick.simulator import run_trick, sweep_all_starts
from cardtrick.solver import (
    Reason,
    SolveOutcome,
    Verdict,
    classify,
    default_k_cap,
    k_star_empirical,
    solve,
)
from cardtrick.trick_core import TrickSpec, closed_form_deck_id, iterate_deck_id

CSV_HEADER = ("C", "n", "j", "solvable", "reason", "l", "k_paper", "k_star")

# (C, n, j, k, l) for the published list of 15 solvable tricks.
REFERENCE_TRICKS: tuple[tuple[int, int, int, int, int], ...] = (
    (20, 4, 2, 3, 14),
    (21, 7, 5, 2, 18),
    (24, 6, 4, 3, 20),
    (25, 5, 3, 3, 19),
    (27, 3, 1, 4, 14),
    (28, 4, 2, 3, 19),
    (30, 5, 3, 3, 23),
    (32, 4, 2, 3, 22),
    (33, 3, 1, 4, 17),
    (35, 5, 3, 3, 27),
    (36, 6, 4, 3, 29),
    (36, 9, 3, 2, 14),
    (39, 3, 1, 4, 20),
    (40, 4, 2, 3, 27),
    (40, 8, 5, 2, 29),
)


@dataclass(frozen=True)
class AtlasRow:
    C: int
    n: int
    j: int
    verdict: Verdict
    reason: Reason
    l: int | None
    k_paper: int | None
    k_star: int | None

    @classmethod
    def from_outcome(cls, outcome: SolveOutcome) -> AtlasRow:
        s = outcome.spec
        return cls(
            s.C, s.n, s.j, outcome.verdict, outcome.reason,
            outcome.l, outcome.k_paper, outcome.k_star,
        )

    @property
    def spec(self) -> TrickSpec:
        return TrickSpec(self.C, self.n, self.j)

    @property
    def solvable(self) -> bool:
        return self.verdict is Verdict.SOLVABLE

    def csv_fields(self) -> list[str]:
        def opt(v: int | None) -> str:
            return "" if v is None else str(v)

        return [
            str(self.C), str(self.n), str(self.j),
            "true" if self.solvable else "false",
            self.reason.value,
            opt(self.l), opt(self.k_paper), opt(self.k_star),
        ]


@dataclass(frozen=True)
class CountResult:
    C: int
    p_formula: int
    p_enumerated: int

    @property
    def agrees(self) -> bool:
        return self.p_formula == self.p_enumerated


def valid_specs(C: int) -> list[TrickSpec]:
    """Every valid (C, n, j), ordered by n then j."""
    if C < 1:
        raise InvalidArgument(f"C must be positive, got {C}")
    return [TrickSpec(C, n, j) for n in [1, *divisors_gt1(C)] for j in range(n)]


def count_formula(C: int) -> int:
    """sum over divisors n > 1 of C of (n + 1 - gcd(C/n, n-1)); 1 for C = 1."""
    if C < 1:
        raise InvalidArgument(f"C must be positive, got {C}")
    if C == 1:
        return 1
    return sum(n + 1 - gcd(C // n, n - 1) for n in divisors_gt1(C))


def enumerate_tricks(C: int) -> list[AtlasRow]:
    return [AtlasRow.from_outcome(solve(spec)) for spec in valid_specs(C)]


def count_solvable(C: int) -> CountResult:
    enumerated = sum(row.solvable for row in enumerate_tricks(C))
    return CountResult(C, count_formula(C), enumerated)


def atlas_range(C_max: int, *, cross_check: bool = True) -> list[AtlasRow]:
    """All rows for C = 1..C_max.

    With ``cross_check`` each solvable row is replayed on the deck simulator
    from every start at ``k_paper``; anything but ``{l}`` raises.
    """
    if C_max < 1:
        raise InvalidArgument(f"C_max must be positive, got {C_max}")
    rows: list[AtlasRow] = []
    for C in range(1, C_max + 1):
        for row in enumerate_tricks(C):
            if cross_check and row.solvable:
                finals = sweep_all_starts(row.spec, row.k_paper)
                if finals != {row.l}:
                    raise CrossCheckError(
                        f"{row.spec}: simulator gives {sorted(finals)} at "
                        f"k={row.k_paper}, expected {{{row.l}}}",
                        (row.C, row.n, row.j),
                    )
            rows.append(row)
    return rows


def rows_to_csv(rows: Iterable[AtlasRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


@dataclass(frozen=True)
class ReferenceCheck:
    C: int
    n: int
    j: int
    k: int
    l_expected: int
    l_computed: int | None
    k_paper: int | None
    finals: frozenset[int]

    @property
    def ok(self) -> bool:
        return (
            self.l_computed == self.l_expected
            and self.k_paper == self.k
            and self.finals == {self.l_expected}
        )


def check_reference_tricks() -> list[ReferenceCheck]:
    """Recompute each published trick and certify it by a full simulator sweep."""
    checks = []
    for C, n, j, k, l in REFERENCE_TRICKS:
        spec = TrickSpec(C, n, j)
        outcome = solve(spec)
        finals = frozenset(sweep_all_starts(spec, k))
        checks.append(ReferenceCheck(C, n, j, k, l, outcome.l, outcome.k_paper, finals))
    return checks


@dataclass
class VerifyReport:
    """Pass/fail tallies per check, with the first failing triple of each."""

    C_max: int
    passed: dict[str, int] = field(default_factory=dict)
    failed: dict[str, int] = field(default_factory=dict)
    first_failure: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def record(self, check: str, ok: bool, where: tuple[int, ...]) -> None:
        self.passed.setdefault(check, 0)
        self.failed.setdefault(check, 0)
        if ok:
            self.passed[check] += 1
        else:
            self.failed[check] += 1
            self.first_failure.setdefault(check, where)

    @property
    def total_failures(self) -> int:
        return sum(self.failed.values())


VERIFY_MAX_K = 8


def verify(C_max: int) -> VerifyReport:
    """Run every oracle comparison for all valid specs with C <= C_max.

    Checks: closed form vs recurrence vs simulator for k in 1..8 and all
    starts; the verdict vs empirical convergence; stability of ``l`` for
    k_paper..k_paper+3; and the counting formula vs enumeration.
    """
    report = VerifyReport(C_max)
    for C in range(1, C_max + 1):
        solvable_count = 0
        for spec in valid_specs(C):
            t = spec.as_tuple()
            for d0 in range(1, C + 1):
                trace = run_trick(spec, d0, VERIFY_MAX_K)
                simulated = trace.positions
                ok = all(
                    closed_form_deck_id(spec, d0, k) == iterate_deck_id(spec, d0, k) == simulated[k]
                    for k in range(1, VERIFY_MAX_K + 1)
                )
                report.record("oracle-equivalence", ok, (*t, d0))

            outcome = classify(spec)
            cap = max(outcome.k_paper or 0, default_k_cap(spec))
            k_star = k_star_empirical(spec, cap)
            report.record("iff-criterion", (k_star is not None) == outcome.solvable, t)

            if outcome.solvable:
                solvable_count += 1
                stable = all(
                    iterate_deck_id(spec, d0, k) == outcome.l
                    for k in range(outcome.k_paper, outcome.k_paper + 4)
                    for d0 in range(1, C + 1)
                )
                report.record("stability", stable, t)
                report.record("k-star-bound", k_star is not None and k_star <= outcome.k_paper, t)
        report.record("counting", count_formula(C) == solvable_count, (C,))
    return report
