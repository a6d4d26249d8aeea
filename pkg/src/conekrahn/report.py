"""Verification records shared by every check, plus their JSON/CSV encoding."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterable

__all__ = ["VerificationReport", "dumps", "to_csv", "timed"]


@dataclass
class VerificationReport:
    """One check: ``passed`` iff ``margin >= -tolerance`` unless ``skipped``.

    ``lhs``/``rhs`` are the two sides of the identity or inequality, with the
    convention that the claim is ``lhs >= rhs`` (for identities the margin is
    ``-|lhs - rhs|``).  Checks whose claim reads the other way set ``margin``
    directly.
    """

    check: str
    anchor: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    resolution: Any = None
    passed: bool = False
    skipped: bool = False
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.skipped:
            self.passed = False
            return
        conditions = self.details.get("conditions", {})
        self.passed = (
            math.isfinite(self.margin)
            and self.margin >= -self.tolerance
            and all(bool(v) for v in conditions.values())
        )

    @classmethod
    def inequality(cls, check, anchor, lhs, rhs, tolerance, **kw):
        return cls(check, anchor, float(lhs), float(rhs), float(lhs - rhs), float(tolerance), **kw)

    @classmethod
    def identity(cls, check, anchor, lhs, rhs, tolerance, **kw):
        return cls(check, anchor, float(lhs), float(rhs), -abs(float(lhs - rhs)), float(tolerance), **kw)

    @classmethod
    def skip(cls, check, anchor, reason, **kw):
        kw.setdefault("details", {})["skipped_because"] = reason
        return cls(check, anchor, math.nan, math.nan, math.nan, 0.0, skipped=True, **kw)

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return (
            f"[{status}] {self.check}: lhs={self.lhs:.10g} rhs={self.rhs:.10g} "
            f"margin={self.margin:.3g} tol={self.tolerance:.3g}"
        )

    def to_dict(self, meta: bool = True) -> dict:
        d = {
            "check": self.check,
            "anchor": self.anchor,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "resolution": self.resolution,
            "pass": self.passed,
            "skipped": self.skipped,
            "details": self.details,
        }
        if meta:
            d["wall_time"] = self.wall_time
        return d


@contextmanager
def timed():
    box = {"start": time.perf_counter(), "elapsed": 0.0}
    try:
        yield box
    finally:
        box["elapsed"] = time.perf_counter() - box["start"]


def _encode(obj: Any, out: list) -> None:
    # floats are written with 17 significant digits so they round-trip exactly
    if isinstance(obj, bool) or obj is None:
        out.append({True: "true", False: "false", None: "null"}[obj])
    elif isinstance(obj, float) or type(obj).__name__.startswith("float"):
        x = float(obj)
        out.append(format(x, ".17g") if math.isfinite(x) else "null")
    elif isinstance(obj, int) or type(obj).__name__.startswith("int"):
        out.append(str(int(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            _encode(str(k), out)
            out.append(": ")
            _encode(v, out)
        out.append("}")
    elif hasattr(obj, "tolist"):
        _encode(obj.tolist(), out)
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _encode(v, out)
        out.append("]")
    elif hasattr(obj, "to_dict"):
        _encode(obj.to_dict(), out)
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """JSON text with 17-significant-digit floats (NaN/inf become null)."""
    out: list = []
    _encode(obj, out)
    return "".join(out)


def to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "lhs", "rhs", "margin", "tol", "pass"])
    for r in reports:
        w.writerow(
            [r.check, format(r.lhs, ".17g"), format(r.rhs, ".17g"),
             format(r.margin, ".17g"), format(r.tolerance, ".17g"),
             "skip" if r.skipped else int(r.passed)]
        )
    return buf.getvalue()
