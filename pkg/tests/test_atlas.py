import pytest

from cardtrick.atlas import (
    CSV_HEADER,
    REFERENCE_TRICKS,
    AtlasRow,
    atlas_range,
    check_reference_tricks,
    count_formula,
    count_solvable,
    enumerate_tricks,
    rows_to_csv,
    valid_specs,
    verify,
)
from cardtrick.errors import CrossCheckError, InvalidArgument
from cardtrick.simulator import sweep_all_starts
from cardtrick.solver import Reason, Verdict
from cardtrick.trick_core import TrickSpec

from .helpers import all_specs


def brute_count(C):
    """Solvable tricks for C found by sweeping the deck simulator."""
    total = 0
    for spec in all_specs(C):
        if spec.C != C:
            continue
        # every solvable trick here converges within 8 iterations (C <= 40)
        if any(len(sweep_all_starts(spec, k)) == 1 for k in range(1, 9)):
            total += 1
    return total


@pytest.mark.parametrize("C, expected", [(1, 1), (6, 10), (21, 29)])
def test_count_spot_values(C, expected):
    res = count_solvable(C)
    assert res.p_formula == res.p_enumerated == expected


@pytest.mark.parametrize("C", [1, 6, 12, 21, 24])
def test_count_against_simulator(C):
    assert count_formula(C) == brute_count(C)


def test_count_formula_terms_for_21():
    # (3+1-gcd(7,2)) + (7+1-gcd(3,6)) + (21+1-gcd(1,20))
    assert count_formula(21) == 3 + 5 + 21


def test_count_agrees_up_to_120():
    assert all(count_solvable(C).agrees for C in range(1, 121))


def test_valid_specs_order():
    specs = valid_specs(6)
    assert [s.as_tuple() for s in specs] == [
        (6, 1, 0), (6, 2, 0), (6, 2, 1), (6, 3, 0), (6, 3, 1), (6, 3, 2),
        (6, 6, 0), (6, 6, 1), (6, 6, 2), (6, 6, 3), (6, 6, 4), (6, 6, 5),
    ]
    assert len(valid_specs(21)) == 1 + 3 + 7 + 21
    with pytest.raises(InvalidArgument):
        valid_specs(0)


def test_enumerate_examples():
    (only,) = enumerate_tricks(1)
    assert (only.C, only.n, only.j, only.verdict, only.l) == (1, 1, 0, Verdict.SOLVABLE, 1)
    rows = {(r.C, r.n, r.j): r for r in enumerate_tricks(21)}
    assert (rows[21, 3, 1].l, rows[21, 3, 1].k_paper) == (11, 3)
    assert sum(r.solvable for r in enumerate_tricks(6)) == 10
    assert rows[21, 1, 0].reason is Reason.ONE_STACK


def test_enumeration_is_deterministic():
    assert enumerate_tricks(36) == enumerate_tricks(36)


def test_atlas_range_contains_reference_tricks():
    rows = {(r.C, r.n, r.j): r for r in atlas_range(40)}
    for C, n, j, k, l in REFERENCE_TRICKS:
        assert rows[C, n, j].l == l
        assert rows[C, n, j].k_paper == k
    assert len(atlas_range(1)) == 1


def test_atlas_cross_check_failure_is_reported(monkeypatch):
    import cardtrick.atlas as atlas

    monkeypatch.setattr(atlas, "sweep_all_starts", lambda spec, k: {0, 1})
    with pytest.raises(CrossCheckError) as info:
        atlas.atlas_range(3)
    assert info.value.triple == (1, 1, 0)


def test_csv_export():
    text = rows_to_csv(atlas_range(3))
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1] == "1,1,0,true,Step3_SingleCard,1,1,1"
    assert lines[2] == "2,1,0,false,Step4_OneStack,,,"
    assert text.endswith("\n") and "\r" not in text
    text.encode("ascii")


def test_reference_fixture():
    checks = check_reference_tricks()
    assert len(checks) == 15
    assert all(c.ok for c in checks)


def test_gcd_one_corollary():
    from math import gcd

    for C in range(2, 121):
        for n in range(2, C + 1):
            if C % n == 0 and gcd(C // n, n - 1) == 1:
                rows = [r for r in enumerate_tricks(C) if r.n == n]
                assert all(r.solvable for r in rows), (C, n)


def test_product_corollary():
    for n in range(2, 12):
        C = n * (n - 1)
        rows = [r for r in enumerate_tricks(C) if r.n == n and 0 < r.j < n - 1]
        assert len(rows) == max(n - 2, 0)
        assert not any(r.solvable for r in rows)


def test_all_stacks_of_one_card():
    for C in range(2, 41):
        for j in range(C):
            spec = TrickSpec(C, C, j)
            row = AtlasRow.from_outcome(__import__("cardtrick").solve(spec))
            assert row.solvable and row.l == j + 1
            assert sweep_all_starts(spec, 1) == {j + 1}


def test_verify_small():
    report = verify(12)
    assert report.total_failures == 0
    assert set(report.passed) == {
        "oracle-equivalence", "iff-criterion", "stability", "k-star-bound", "counting",
    }
