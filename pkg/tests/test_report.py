import json
import math

import numpy as np
import pytest

from conekrahn.report import VerificationReport, dumps, timed, to_csv


def test_inequality_and_identity():
    assert VerificationReport.inequality("c", "x", 2.0, 1.0, 0.0).passed
    assert not VerificationReport.inequality("c", "x", 1.0, 2.0, 0.5).passed
    assert VerificationReport.inequality("c", "x", 1.0, 1.2, 0.5).passed
    r = VerificationReport.identity("c", "x", 1.0, 1.0 + 1e-13, 1e-12)
    assert r.passed and r.margin <= 0


def test_conditions_gate_the_verdict():
    r = VerificationReport.inequality("c", "x", 2.0, 1.0, 0.0, details={"conditions": {"ok": False}})
    assert not r.passed


def test_nan_never_passes():
    assert not VerificationReport.inequality("c", "x", math.nan, 1.0, 1.0).passed


def test_skip():
    r = VerificationReport.skip("c", "x", "boundary case")
    assert r.skipped and not r.passed
    assert r.line().startswith("[SKIP]")
    assert json.loads(dumps(r.to_dict()))["lhs"] is None


def test_round_trip_precision():
    x = 0.1 + 0.2
    assert json.loads(dumps({"x": x, "v": np.array([x, 1.0]), "i": np.int64(3)})) == {"x": x, "v": [x, 1.0], "i": 3}


def test_unserialisable():
    with pytest.raises(TypeError):
        dumps(object())


def test_meta_toggle_and_csv():
    r = VerificationReport.inequality("c", "x", 2.0, 1.0, 0.0, wall_time=0.5)
    assert "wall_time" in r.to_dict() and "wall_time" not in r.to_dict(meta=False)
    text = to_csv([r])
    assert text.splitlines()[0] == "check,lhs,rhs,margin,tol,pass"
    assert text.splitlines()[1].endswith(",1")


def test_timed():
    with timed() as clock:
        sum(range(1000))
    assert clock["elapsed"] > 0
