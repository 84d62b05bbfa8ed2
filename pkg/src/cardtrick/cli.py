"""Command-line interface.

Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
1 when two computations that must agree do not, 2 on invalid input and 3
when an exact power outgrows the integer width.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from cardtrick import __version__
from cardtrick.atlas import (
    AtlasRow,
    CSV_HEADER,
    atlas_range,
    check_reference_tricks,
    count_solvable,
    rows_to_csv,
    verify,
)
from cardtrick.errors import CrossCheckError, IntegerOverflow, InvalidArgument
from cardtrick.simulator import Trace, run_trick
from cardtrick.solver import SolveOutcome, solve
from cardtrick.trick_core import TrickSpec, closed_form_deck_id, validate_spec

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_OVERFLOW = 3

VERIFY_ENV = "CARDTRICK_VERIFY_MAX_CARDS"
DEFAULT_VERIFY_MAX = 60
DEFAULT_ATLAS_MAX = 60


def rational_json(r: Fraction | None) -> dict[str, int] | None:
    return None if r is None else {"num": r.numerator, "den": r.denominator}


def rational_text(r: Fraction | None) -> str:
    if r is None:
        return "-"
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def outcome_json(outcome: SolveOutcome) -> dict[str, Any]:
    p = outcome.params
    return {
        "verdict": outcome.verdict.value,
        "reason": outcome.reason.value,
        "l": outcome.l,
        "k_paper": outcome.k_paper,
        "k_star": outcome.k_star,
        "k_checked": outcome.k_checked,
        "params": {
            "m": p.m,
            "b": rational_json(p.b),
            "b_floor": p.b_floor,
            "b_frac": rational_json(p.b_frac),
            "t": rational_json(p.t),
        },
    }


def envelope(command: str, inputs: dict[str, Any], result: Any) -> str:
    doc = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "artifact_version": __version__,
    }
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def certify_at(spec: TrickSpec, k: int) -> list[int]:
    """Distinct final positions over all starts after ``k`` iterations (closed form)."""
    return sorted({closed_form_deck_id(spec, d0, k) for d0 in range(1, spec.C + 1)})


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _spec_from(args: argparse.Namespace) -> TrickSpec:
    return validate_spec(args.cards, args.stacks, args.on_top)


def cmd_solve(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    outcome = solve(spec)
    finals = None
    if args.k is not None:
        if args.k < 1:
            raise InvalidArgument(f"--k must be at least 1, got {args.k}")
        finals = certify_at(spec, args.k)

    if args.format == "machine":
        result = outcome_json(outcome)
        if finals is not None:
            result["at_k"] = {"k": args.k, "certified": len(finals) == 1, "finals": finals}
        inputs = {"cards": spec.C, "stacks": spec.n, "on_top": spec.j, "k": args.k}
        _emit(envelope("solve", inputs, result))
    elif args.format == "csv":
        _emit(rows_to_csv([AtlasRow.from_outcome(outcome)]))
    else:
        p = outcome.params
        lines = [f"trick {spec}: {'solvable' if outcome.solvable else 'not solvable'} "
                 f"({outcome.reason.label})"]
        lines.append(
            f"  m = {p.m}, b = {rational_text(p.b)}, floor(b) = "
            f"{'-' if p.b_floor is None else p.b_floor}, frac(b) = {rational_text(p.b_frac)}, "
            f"t = {rational_text(p.t)}"
        )
        if outcome.solvable:
            lines.append(f"  l = {outcome.l}")
            lines.append(f"  k_paper = {outcome.k_paper}, k_star = {outcome.k_star}")
        else:
            lines.append(f"  no convergence for any k <= {outcome.k_checked} (checked)")
        if finals is not None:
            verdict = "certified" if len(finals) == 1 else "not certified"
            lines.append(
                f"  at k = {args.k}: {verdict} (final positions {', '.join(map(str, finals))})"
            )
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _trace_text(trace: Trace, show_trace: bool) -> str:
    lines = []
    if show_trace:
        lines.append(f"iteration 0: position {trace.initial.position}")
        lines.append("  deck: " + ",".join(map(str, trace.initial.cards)))
        for i, s in enumerate(trace.steps, start=1):
            lines.append(
                f"iteration {i}: chosen stack {s.chosen}, row {s.row}, position {s.deck.position}"
            )
            lines.append("  deck: " + ",".join(map(str, s.deck.cards)))
    lines.append(f"final position: {trace.final_position}")
    return "\n".join(lines) + "\n"


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    if not 1 <= args.start <= spec.C:
        raise InvalidArgument(f"--start must lie in [1, {spec.C}], got {args.start}")
    if args.iterations < 0:
        raise InvalidArgument(f"--iterations must be non-negative, got {args.iterations}")
    trace = run_trick(spec, args.start, args.iterations)
    if args.format == "machine":
        result = trace.to_dict()
        if not args.trace:
            result["steps"] = []
        inputs = {
            "cards": spec.C, "stacks": spec.n, "on_top": spec.j,
            "start": args.start, "iterations": args.iterations, "trace": args.trace,
        }
        _emit(envelope("simulate", inputs, result))
    elif args.format == "csv":
        _emit(trace.to_lines())
    else:
        _emit(_trace_text(trace, args.trace))
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    if args.cards < 1:
        raise InvalidArgument(f"--cards must be positive, got {args.cards}")
    res = count_solvable(args.cards)
    if args.format == "machine":
        result = {
            "p_formula": res.p_formula,
            "p_enumerated": res.p_enumerated,
            "agrees": res.agrees,
        }
        _emit(envelope("count", {"cards": args.cards}, result))
    else:
        status = "formula=enumerated" if res.agrees else "MISMATCH"
        _emit(f"C={res.C}: p={res.p_formula} (formula {res.p_formula}, "
              f"enumerated {res.p_enumerated}; {status})\n")
    if not res.agrees:
        print(f"error: count mismatch at C={res.C}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_atlas(args: argparse.Namespace) -> int:
    C_max = args.max_cards if args.max_cards is not None else DEFAULT_ATLAS_MAX
    if C_max < 1:
        raise InvalidArgument(f"--max-cards must be positive, got {C_max}")
    rows = atlas_range(C_max)
    data = rows_to_csv(rows)
    if args.out is None:
        _emit(data)
        return EXIT_OK
    Path(args.out).write_bytes(data.encode("ascii"))
    solvable = sum(r.solvable for r in rows)
    if args.format == "machine":
        result = {"out": str(args.out), "rows": len(rows), "solvable": solvable,
                  "columns": list(CSV_HEADER)}
        _emit(envelope("atlas", {"max_cards": C_max, "out": str(args.out)}, result))
    else:
        _emit(f"wrote {len(rows)} rows ({solvable} solvable) for C <= {C_max} to {args.out}\n")
    return EXIT_OK


def _verify_default() -> int:
    raw = os.environ.get(VERIFY_ENV)
    if raw is None:
        return DEFAULT_VERIFY_MAX
    try:
        return int(raw)
    except ValueError:
        raise InvalidArgument(f"{VERIFY_ENV} must be an integer, got {raw!r}") from None


def cmd_verify(args: argparse.Namespace) -> int:
    C_max = args.max_cards if args.max_cards is not None else _verify_default()
    if C_max < 1:
        raise InvalidArgument(f"--max-cards must be positive, got {C_max}")
    report = verify(C_max)
    if args.format == "machine":
        result = {
            "checks": {
                name: {
                    "passed": report.passed[name],
                    "failed": report.failed[name],
                    "first_failure": list(report.first_failure.get(name, ())) or None,
                }
                for name in report.passed
            },
            "failures": report.total_failures,
        }
        _emit(envelope("verify", {"max_cards": C_max}, result))
    else:
        lines = [f"verify C <= {C_max}"]
        for name in report.passed:
            lines.append(f"  {name}: {report.passed[name]} passed, {report.failed[name]} failed")
        lines.append(f"{report.total_failures} failures")
        _emit("\n".join(lines) + "\n")
    if report.total_failures:
        for name, where in report.first_failure.items():
            print(f"error: {name} failed first at {where}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    checks = check_reference_tricks()
    if args.format == "machine":
        result = [
            {
                "C": c.C, "n": c.n, "j": c.j, "k": c.k,
                "l_expected": c.l_expected, "l_computed": c.l_computed,
                "k_paper": c.k_paper, "finals": sorted(c.finals), "ok": c.ok,
            }
            for c in checks
        ]
        _emit(envelope("table", {}, result))
    elif args.format == "csv":
        lines = ["C,n,j,k,l,l_computed,k_paper,ok"]
        lines += [
            f"{c.C},{c.n},{c.j},{c.k},{c.l_expected},{c.l_computed or ''},"
            f"{c.k_paper or ''},{'true' if c.ok else 'false'}"
            for c in checks
        ]
        _emit("\n".join(lines) + "\n")
    else:
        lines = []
        for c in checks:
            mark = "ok" if c.ok else "MISMATCH"
            lines.append(
                f"({c.C}, {c.n}, {c.j}, {c.k}) = {c.l_expected}  "
                f"computed l={c.l_computed} k_paper={c.k_paper}  {mark}"
            )
        lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} rows match")
        _emit("\n".join(lines) + "\n")
    bad = [c for c in checks if not c.ok]
    if bad:
        c = bad[0]
        print(f"error: reference trick ({c.C}, {c.n}, {c.j}, {c.k}) does not reproduce",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cardtrick",
        description="Solve, simulate and enumerate deal-into-n-stacks card tricks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "machine", "csv"), default="text")

    def add_trick(p: argparse.ArgumentParser) -> None:
        p.add_argument("--cards", type=int, required=True, help="number of cards C")
        p.add_argument("--stacks", type=int, required=True, help="number of stacks n")
        p.add_argument("--on-top", type=int, required=True, dest="on_top",
                       help="stacks placed above the chosen one, j")

    p = sub.add_parser("solve", help="classify a trick and compute l, k_paper, k_star")
    add_trick(p)
    p.add_argument("--k", type=int, help="also check whether the trick is certified at this k")
    add_format(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="run the trick on a physical deck model")
    add_trick(p)
    p.add_argument("--start", type=int, required=True, help="initial position d0")
    p.add_argument("--iterations", type=int, required=True, help="number of iterations k")
    p.add_argument("--trace", action="store_true", help="show every iteration")
    add_format(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("count", help="count solvable tricks by formula and enumeration")
    p.add_argument("--cards", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("atlas", help="export every trick for C <= max-cards as CSV")
    p.add_argument("--max-cards", type=int, dest="max_cards",
                   help=f"largest deck size (default {DEFAULT_ATLAS_MAX})")
    p.add_argument("--out", type=Path, help="CSV destination (default: stdout)")
    add_format(p)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser(
        "verify",
        help="run the full oracle sweep",
        description=(
            "Compare closed form, recurrence and deck simulator for every trick with "
            f"C <= max-cards. The default cap ({DEFAULT_VERIFY_MAX}) can be overridden "
            f"with the {VERIFY_ENV} environment variable."
        ),
    )
    p.add_argument("--max-cards", type=int, dest="max_cards")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="recompute the 15 published solvable tricks")
    add_format(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IntegerOverflow as exc:
        print(f"error: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except CrossCheckError as exc:
        print(f"error: cross-check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InvalidArgument as exc:
        constraint = getattr(exc, "constraint", None)
        prefix = f"invalid input [{constraint}]" if constraint else "invalid input"
        print(f"error: {prefix}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
