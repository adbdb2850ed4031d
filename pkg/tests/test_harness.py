import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xicheck.errors import ContractError
from xicheck.harness import (
    REGISTRY,
    CheckReport,
    IdentityId,
    emit,
    grid_points,
    load_json,
    run_check,
    sweep,
)
from xicheck.numeric import PrecisionContext

ZETA3_MINUS_ZETA4 = 0.11973366944845609


def _strip_time(r: CheckReport):
    d = dict(vars(r))
    d.pop("wall_time_ms")
    return d


def _same_float(a: float, b: float) -> bool:
    return (math.isnan(a) and math.isnan(b)) or a == b


def _same_complex(a: complex, b: complex) -> bool:
    return _same_float(a.real, b.real) and _same_float(a.imag, b.imag)


class TestRegistry:
    def test_total(self):
        assert set(REGISTRY) == set(IdentityId)
        assert all(REGISTRY[i].id is i for i in IdentityId)

    @pytest.mark.parametrize("ident", list(IdentityId))
    def test_defaults_pass(self, ident):
        r = run_check(ident)
        assert r.error is None
        assert r.passed, r
        assert len(r.sides) >= 2

    @pytest.mark.parametrize("ident", list(IdentityId))
    def test_oracle_side_agrees(self, ident):
        r = run_check(ident, {}, PrecisionContext(digits=20))
        assert r.passed, r
        assert any("oracle" in label for label, _ in r.sides)


class TestRunCheck:
    def test_thm31_has_three_sides(self):
        r = run_check("thm31", {"z": 4, "alpha": 2})
        assert [label for label, _ in r.sides] == ["series", "mellin", "xi_integral"]
        assert r.max_rel_err < 1e-8 and r.passed

    def test_cor32_value(self):
        r = run_check(IdentityId.cor32, {"z": 4})
        assert len(r.sides) == 3
        for _, v in r.sides:
            assert abs(v - ZETA3_MINUS_ZETA4) < 1e-12

    def test_region_violation(self):
        r = run_check("thm31", {"z": 1.5})
        assert not r.passed
        assert r.error.startswith("DomainError")
        assert math.isnan(r.max_abs_err)

    def test_unknown_key(self):
        r = run_check("thm31", {"q": 1})
        assert not r.passed and r.error.startswith("ContractError")

    def test_unknown_identity(self):
        r = run_check("nope")
        assert not r.passed and r.error is not None

    def test_complex_params_normalized(self):
        r = run_check("cor32", {"z": complex(4, 0)})
        assert isinstance(r.params["z"], float)
        r = run_check("cor32", {"z": 4 + 1j})
        assert isinstance(r.params["z"], complex) and r.passed

    def test_determinism(self):
        a = run_check("eq20", {"s": 0.2, "n": 0.4})
        b = run_check("eq20", {"s": 0.2, "n": 0.4})
        assert _strip_time(a) == _strip_time(b)

    def test_spurious_gap_reported(self):
        r = run_check("spurious")
        assert r.notes["spurious_gap"] > 1e-4
        assert r.passed

    def test_spurious_margin_enforced(self):
        # gap is ~0.93 here, below 100 * 0.01, so the check must fail even
        # though lhs and rhs still agree
        ctx = PrecisionContext(identity_tol=0.01, target_rel_tol=1e-10)
        r = run_check("spurious", {"s": 3.0, "n": 0.5}, ctx)
        assert r.max_rel_err < 1e-12
        assert not r.passed and r.error is None

    def test_pass_rule(self):
        r = run_check("guinand")
        scale = max(abs(v) for _, v in r.sides)
        assert r.max_rel_err == r.max_abs_err / (1 + scale)


class TestSweep:
    def test_grid_order(self):
        pts = grid_points({"z": [0.3, 1.7], "alpha": [0.5, 2]})
        assert pts == [
            {"alpha": 0.5, "z": 0.3},
            {"alpha": 0.5, "z": 1.7},
            {"alpha": 2, "z": 0.3},
            {"alpha": 2, "z": 1.7},
        ]

    def test_thm41_four_pass(self):
        reports = sweep("thm41", {"z": [0.3, 1.7], "alpha": [0.5, 2]})
        assert len(reports) == 4 and all(r.passed for r in reports)
        assert [r.params["alpha"] for r in reports] == [0.5, 0.5, 2.0, 2.0]

    def test_empty_dimension(self):
        assert sweep("thm41", {"z": [], "alpha": [0.5, 2]}) == []

    def test_guinand_two(self):
        reports = sweep("guinand", {"k": [2, 3], "x": [2]})
        assert len(reports) == 2 and all(r.passed for r in reports)

    def test_failure_isolation(self):
        reports = sweep("thm31", {"z": [1.5, 4.0], "alpha": [2.0]})
        assert [r.passed for r in reports] == [False, True]

    def test_unknown_grid_key(self):
        with pytest.raises(ContractError):
            sweep("thm31", {"w": [1]})

    def test_workers_preserve_order(self):
        grid = {"k": [2, 3, 4], "x": [0.5, 3.0]}
        serial = sweep("guinand", grid)
        parallel = sweep("guinand", grid, workers=3)
        assert [_strip_time(r) for r in serial] == [_strip_time(r) for r in parallel]


class TestEmit:
    def test_json_pass_token(self):
        data = emit([run_check("guinand")], "json")
        assert b'"pass": true' in data
        assert json.loads(data)[0]["pass"] is True

    def test_csv_shape(self):
        reports = sweep("guinand", {"k": [2, 3], "x": [2.0, 3.0]})
        text = emit(reports, "csv").decode("utf-8")
        lines = text.split("\n")
        assert lines[-1] == "" and "\r" not in text
        assert len(lines) - 1 == len(reports) + 1
        header = lines[0].split(",")
        assert header[0] == "identity"
        assert header[-4:] == ["max_abs_err", "max_rel_err", "pass", "wall_time_ms"]
        assert "param:k" in header and "side:lhs" in header

    def test_csv_complex_cell(self):
        text = emit([run_check("cor32", {"z": 4 + 1j})], "csv").decode()
        row = text.split("\n")[1]
        assert "i," in row

    def test_bad_format(self):
        with pytest.raises(ContractError):
            emit([], "xml")

    def test_round_trip(self):
        reports = [run_check("cor32", {"z": 4 + 0.5j}), run_check("spurious"), run_check("thm31", {"z": 1.5})]
        back = load_json(emit(reports, "json"))
        assert len(back) == len(reports)
        for a, b in zip(reports, back):
            assert a.identity == b.identity and a.passed == b.passed and a.error == b.error
            assert a.params == b.params
            assert [label for label, _ in a.sides] == [label for label, _ in b.sides]
            assert all(_same_complex(x, y) for (_, x), (_, y) in zip(a.sides, b.sides))
            for name in ("max_abs_err", "max_rel_err", "wall_time_ms"):
                assert _same_float(getattr(a, name), getattr(b, name))
            assert a.truncations == b.truncations and a.notes == b.notes


finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite), min_size=2, max_size=4), finite, st.booleans())
@settings(max_examples=60, deadline=None)
def test_round_trip_property(values, err, ok):
    sides = [(f"s{i}", complex(a, b)) for i, (a, b) in enumerate(values)]
    r = CheckReport("guinand", {"k": 2, "x": values[0][0]}, sides, abs(err), math.nan, ok, 1.5, [abs(err)])
    (back,) = load_json(emit([r]))
    assert back.params == r.params
    assert all(_same_complex(x, y) for (_, x), (_, y) in zip(r.sides, back.sides))
    assert back.max_abs_err == r.max_abs_err and math.isnan(back.max_rel_err)
    assert back.truncations == r.truncations and back.passed is ok
