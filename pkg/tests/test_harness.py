import json
import math

import pytest

from marcumq.errors import DomainError
from marcumq.harness import (SUITES, TABLE_PRESETS, convergence_gaps, make_rng, matches_printed,
                             round_sig1, rounding_interval, run_suite, table_relative_error,
                             table_row, table_rows)
from marcumq.logscaled import LogScaled

# cells where the printed value disagrees with the computed one; see the notes in the README
KNOWN_MISMATCHES = {
    ("table1", 1.0, 16.0, "US1A"): "0.01",   # printed 0.05: the US1A and LS1 values appear swapped
    ("table1", 1.0, 16.0, "LS1"): "0.05",    # printed 0.01
    ("table2", 16.0, 1.0, "US2"): "0.003",   # printed 0.03: a digit slipped
}


def test_round_sig1():
    assert round_sig1(0.010244) == 0.01
    assert round_sig1(0.0471) == 0.05
    assert round_sig1(1.52) == 2.0
    assert round_sig1(0.0) == 0.0 and math.isinf(round_sig1(math.inf))


def test_rounding_interval():
    assert rounding_interval("0.05") == pytest.approx((0.045, 0.055))
    assert rounding_interval("1.5") == pytest.approx((1.45, 1.55))
    assert rounding_interval("3") == pytest.approx((2.5, 3.5))
    assert matches_printed(0.0916, "0.1") and not matches_printed(0.0102, "0.05")


def test_relative_error_convention():
    exact = LogScaled.from_float(2.0)
    assert table_relative_error(3.0, exact) == pytest.approx(0.5)
    assert table_relative_error(1.0, exact) == pytest.approx(1.0)  # measured on the smaller value
    assert table_relative_error(0.0, exact) == math.inf
    assert table_relative_error(-1.0, exact) == math.inf


def test_reference_rows():
    r = table_row(1, 1, 1)
    errs = {e.bound_id: e.rounded for e in r.entries}
    assert errs["LS2"] == 0.1 and errs["US2"] == 0.1
    r = table_row(16, 1, 1)
    errs = {e.bound_id: e.rounded for e in r.entries}
    assert errs["LS2"] == 0.0002 and errs["US2"] == 0.003
    r = table_row(16, 16, 64)
    errs = {e.bound_id: e.rounded for e in r.entries}
    assert errs["US1A"] == 0.04 and errs["US1B"] == 0.07 and errs["LS1"] == 0.6
    assert r.smaller_target == "Q"


def test_presets_against_printed_values():
    for name in ("table1", "table2"):
        for row in table_rows(name):
            for e in row.entries:
                if e.published is None:
                    continue
                key = (name, row.x, row.y, e.bound_id)
                if key in KNOWN_MISMATCHES:
                    assert not matches_printed(e.relative_error, e.published)
                    assert matches_printed(e.relative_error, KNOWN_MISMATCHES[key])
                else:
                    assert matches_printed(e.relative_error, e.published), key


def test_preset_marks():
    # every mark matches the computed smaller function except (mu=16, x=1, y=16),
    # which is marked Q-smaller although P < Q there; its printed errors follow P
    for name in ("table1", "table2"):
        for row in table_rows(name):
            marked_q = row.marked_q_smaller
            if (name, row.x, row.y) == ("table2", 1.0, 16.0):
                assert marked_q and row.smaller_target == "P"
                assert row.q_oracle == pytest.approx(0.562, abs=1e-3)
            else:
                assert marked_q == (row.smaller_target == "Q"), (name, row.x, row.y)


def test_preset_shapes():
    assert len(TABLE_PRESETS["table1"]) == 10 and len(TABLE_PRESETS["table2"]) == 12
    assert {c.mu for c in TABLE_PRESETS["table1"]} == {1.0}
    assert {c.mu for c in TABLE_PRESETS["table2"]} == {16.0}
    rows = table_rows(mu=1.0, xs=[1, 4], ys=[1, 2, 3])
    assert len(rows) == 6 and all(len(r.entries) == 5 for r in rows)
    with pytest.raises(DomainError):
        table_rows("table3")
    with pytest.raises(DomainError):
        table_rows()


def test_rng_reproducible():
    assert make_rng(3).random(4).tolist() == make_rng(3).random(4).tolist()
    assert make_rng(3).random(4).tolist() != make_rng(4).random(4).tolist()


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "central-dominance"])
def test_suites_pass_small(suite):
    rep = run_suite(suite, 25, 11)
    assert rep.passed, rep.to_dict()["violations"][:5]


def test_dominance_suite_reports_regions():
    rep = run_suite("central-dominance", 400, 1)
    regions = rep.to_dict()["exception_regions"]
    assert set(regions) == {"l_comb<lH", "l_comb(6 terms)<lH", "u3>UQ", "L_comb<LH"}
    for name, reg in regions.items():
        if reg["count"]:
            assert reg["a_range"][0] > 1.0, name
    exc = regions["l_comb<lH"]
    if exc["count"]:
        assert exc["y_range"][1] < 10.0


def test_report_deterministic_and_json():
    a = json.dumps(run_suite("complementarity", 15, 5).to_dict(), sort_keys=True)
    b = json.dumps(run_suite("complementarity", 15, 5).to_dict(), sort_keys=True)
    assert a == b
    d = json.loads(a)
    assert d["prng"] == "PCG64" and d["seed"] == 5 and d["points"] == 15 and d["passed"]


def test_run_suite_errors():
    with pytest.raises(DomainError):
        run_suite("nope", 1, 0)
    with pytest.raises(DomainError):
        run_suite("turan", -1, 0)


def test_convergence_gaps_fixed_point():
    g = convergence_gaps(2.0, 3.0, 4.0)
    assert all(b < a for a, b in zip(g["ratio"], g["ratio"][1:]))
    assert all(b < a for a, b in zip(g["sequence"], g["sequence"][1:]))
    assert g["ratio"][20] < 1e-10
