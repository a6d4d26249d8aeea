"""Steiner symmetrization of half-space slabs and the Szego rearrangement inequality.

A :class:`SlabDomain` stores, for every node of a tensor base grid on the
hyperplane {x_1 = 0}, the finite union of x_1-intervals where the domain
meets the line through that node.  The last base coordinate is x_n.

Discrete model used for the functionals:

* volume weight: Fubini, int x_n^q |D cap line| over the base, with line
  lengths interpolated linearly across each base cell (topology-blind);
* boundary weight: over each *regular* base cell (every corner line has the
  same number of intervals) the interval endpoints are interpolated linearly
  on triangles, giving planar sheets; where a regular cell meets a
  non-regular cell or the edge of the grid a wall perpendicular to the base
  closes the surface.  Non-regular cells (topology changes) are excluded and
  their base measure is reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .report import VerificationReport

__all__ = [
    "IntervalUnion",
    "SlabDomain",
    "BoundaryWeight",
    "line_length",
    "steiner_symmetrize",
    "slab_volume_weight",
    "slab_boundary_weight",
    "regular_mask",
    "symmetrization_check",
    "szego_check",
]

_GL3 = np.polynomial.legendre.leggauss(3)
# degree-4 Dunavant rule on the reference triangle (barycentric, weights sum to 1)
_TRI_RULE = (
    np.array([
        [0.108103018168070, 0.445948490915965, 0.445948490915965],
        [0.445948490915965, 0.108103018168070, 0.445948490915965],
        [0.445948490915965, 0.445948490915965, 0.108103018168070],
        [0.816847572980459, 0.091576213509771, 0.091576213509771],
        [0.091576213509771, 0.816847572980459, 0.091576213509771],
        [0.091576213509771, 0.091576213509771, 0.816847572980459],
    ]),
    np.array([0.223381589678011] * 3 + [0.109951743655322] * 3),
)


def _validate_intervals(intervals) -> tuple:
    out = []
    prev = -math.inf
    for a, b in intervals:
        a, b = float(a), float(b)
        if not (math.isfinite(a) and math.isfinite(b)) or b < a:
            raise ValueError(f"bad interval ({a}, {b})")
        if a < prev:
            raise ValueError("intervals must be disjoint and ordered")
        out.append((a, b))
        prev = b
    return tuple(out)


def line_length(intervals) -> float:
    """Total length sum(b - a), accumulated in order."""
    s = 0.0
    for a, b in intervals:
        s += b - a
    return s


@dataclass(frozen=True, eq=False)
class IntervalUnion:
    """Finite union of disjoint intervals in [0, inf)."""

    intervals: tuple

    def __post_init__(self):
        iv = _validate_intervals(self.intervals)
        if iv and iv[0][0] < 0:
            raise ValueError("intervals must lie in [0, inf)")
        object.__setattr__(self, "intervals", iv)


@dataclass(frozen=True, eq=False)
class SlabDomain:
    """``base`` holds one coordinate array per base axis (x_2, ..., x_n);
    ``lines`` is a flat row-major list of interval tuples, one per base node."""

    n: int
    base: tuple
    lines: tuple

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError("slabs implemented for n = 2, 3")
        base = tuple(np.asarray(b, dtype=float) for b in self.base)
        if len(base) != self.n - 1:
            raise ValueError("need n - 1 base axes")
        for b in base:
            if b.ndim != 1 or len(b) < 2 or np.any(np.diff(b) <= 0):
                raise ValueError("base axes must be increasing 1-D arrays")
        if np.any(base[-1] < 0):
            raise ValueError("slab leaves the upper half-space")
        lines = tuple(_validate_intervals(iv) for iv in self.lines)
        if len(lines) != int(np.prod([len(b) for b in base])):
            raise ValueError("one interval list per base node required")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "lines", lines)

    @property
    def shape(self) -> tuple:
        return tuple(len(b) for b in self.base)

    @classmethod
    def from_function(cls, n: int, base, func) -> "SlabDomain":
        """``func(*xbar)`` returns the interval list of the line through xbar."""
        base = tuple(np.asarray(b, dtype=float) for b in base)
        grids = np.meshgrid(*base, indexing="ij")
        lines = [tuple(func(*(g.flat[i] for g in grids))) for i in range(grids[0].size)]
        return cls(n, base, tuple(lines))

    def lengths(self) -> np.ndarray:
        return np.array([line_length(iv) for iv in self.lines]).reshape(self.shape)

    def counts(self) -> np.ndarray:
        return np.array([len(iv) for iv in self.lines]).reshape(self.shape)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "base": [b.tolist() for b in self.base],
            "lines": [[list(p) for p in iv] for iv in self.lines],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SlabDomain":
        return cls(int(d["n"]), tuple(d["base"]), tuple(tuple(map(tuple, iv)) for iv in d["lines"]))


def steiner_symmetrize(slab: SlabDomain) -> SlabDomain:
    """Replace every line's union by the centred interval of the same total length."""
    out = []
    for iv in slab.lines:
        if not iv:
            out.append(())
            continue
        half = line_length(iv) / 2
        out.append(((-half, half),))
    return SlabDomain(slab.n, slab.base, tuple(out))


# ---------------------------------------------------------------------------
# functionals


def slab_volume_weight(slab: SlabDomain, q: int = 2) -> float:
    """Fubini quadrature of int x_n^q dV from the per-line lengths."""
    if q not in (0, 1, 2):
        raise ValueError("weight exponent q must be 0, 1 or 2")
    L = slab.lengths()
    if slab.n == 2:
        t = slab.base[0]
        total = 0.0
        for i in range(len(t) - 1):
            total += _segment_integral(t[i], t[i + 1], L[i], L[i + 1], q)
        return total
    y, t = slab.base
    total = 0.0
    for tri in _triangles(len(y), len(t)):
        pts = np.array([[y[j], t[i]] for j, i in tri])
        vals = np.array([L[j, i] for j, i in tri])
        total += _triangle_integral(pts, vals, q)
    return total


def _segment_integral(t0, t1, f0, f1, q) -> float:
    """int_{t0}^{t1} t^q f(t) dt for f linear, exact (3-point Gauss)."""
    x, w = _GL3
    s = 0.5 * (x + 1.0)
    tt = t0 + s * (t1 - t0)
    ff = f0 + s * (f1 - f0)
    return float(0.5 * (t1 - t0) * np.sum(w * tt**q * ff))


def _triangles(ny: int, nt: int):
    for j in range(ny - 1):
        for i in range(nt - 1):
            yield ((j, i), (j + 1, i), (j + 1, i + 1))
            yield ((j, i), (j + 1, i + 1), (j, i + 1))


def _triangle_integral(pts, vals, q) -> float:
    """int_T t^q f for f linear given at the vertices; pts[:, 1] is t."""
    bary, w = _TRI_RULE
    area = 0.5 * abs(
        (pts[1, 0] - pts[0, 0]) * (pts[2, 1] - pts[0, 1])
        - (pts[2, 0] - pts[0, 0]) * (pts[1, 1] - pts[0, 1])
    )
    tt = bary @ pts[:, 1]
    ff = bary @ vals
    return float(area * np.sum(w * tt**q * ff))


def regular_mask(slab: SlabDomain) -> np.ndarray:
    """Boolean array over base cells: every corner line has the same nonzero count."""
    c = slab.counts()
    if slab.n == 2:
        return (c[:-1] == c[1:]) & (c[:-1] > 0)
    corners = [c[:-1, :-1], c[1:, :-1], c[:-1, 1:], c[1:, 1:]]
    return (
        (corners[0] > 0)
        & (corners[0] == corners[1])
        & (corners[0] == corners[2])
        & (corners[0] == corners[3])
    )


@dataclass
class BoundaryWeight:
    value: float
    excluded_cells: int
    excluded_measure: float
    sheets: float = 0.0
    walls: float = 0.0
    details: dict = field(default_factory=dict)


def slab_boundary_weight(slab: SlabDomain, q: int = 2, mask: np.ndarray | None = None) -> BoundaryWeight:
    """int x_n^q dA over the boundary of the discrete slab model.

    ``mask`` selects the base cells that carry surface; by default the
    regular cells.  Cells outside the mask are excluded and their base
    measure reported.  Passing a mask with a non-regular cell is an error.
    """
    if q not in (0, 1, 2):
        raise ValueError("weight exponent q must be 0, 1 or 2")
    reg = regular_mask(slab)
    if mask is None:
        mask = reg
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != reg.shape:
        raise ValueError("mask shape does not match the base cells")
    if np.any(mask & ~reg):
        raise ValueError("mask selects cells whose topology changes")
    if slab.n == 2:
        return _boundary_2d(slab, q, mask)
    return _boundary_3d(slab, q, mask)


def _boundary_2d(slab, q, mask) -> BoundaryWeight:
    t = slab.base[0]
    lines = slab.lines
    x, w = _GL3
    s = 0.5 * (x + 1.0)
    sheets = 0.0
    excluded = 0.0
    for i in range(len(t) - 1):
        dt = t[i + 1] - t[i]
        if not mask[i]:
            excluded += dt
            continue
        tq = float(0.5 * np.sum(w * (t[i] + s * dt) ** q))  # mean of t^q on the cell
        for (a0, b0), (a1, b1) in zip(lines[i], lines[i + 1]):
            sheets += (math.hypot(dt, a1 - a0) + math.hypot(dt, b1 - b0)) * tq
    walls = 0.0
    nrows = len(t)
    for i in range(nrows):
        below = mask[i - 1] if i > 0 else False
        above = mask[i] if i < nrows - 1 else False
        if below != above:
            walls += line_length(lines[i]) * t[i] ** q
    return BoundaryWeight(sheets + walls, int(np.sum(~mask)), excluded, sheets, walls)


def _sheet_gradient(pts, vals):
    """Gradient of the linear function through three (y, t) points."""
    A = np.array([[pts[1, 0] - pts[0, 0], pts[1, 1] - pts[0, 1]],
                  [pts[2, 0] - pts[0, 0], pts[2, 1] - pts[0, 1]]])
    return np.linalg.solve(A, np.array([vals[1] - vals[0], vals[2] - vals[0]]))


def _boundary_3d(slab, q, mask) -> BoundaryWeight:
    y, t = slab.base
    ny, nt = len(y), len(t)
    lines = [slab.lines[j * nt:(j + 1) * nt] for j in range(ny)]
    sheets = 0.0
    excluded = 0.0
    for j in range(ny - 1):
        for i in range(nt - 1):
            cell_area = (y[j + 1] - y[j]) * (t[i + 1] - t[i])
            if not mask[j, i]:
                excluded += cell_area
                continue
            for tri in (((j, i), (j + 1, i), (j + 1, i + 1)), ((j, i), (j + 1, i + 1), (j, i + 1))):
                pts = np.array([[y[jj], t[ii]] for jj, ii in tri])
                tw = _triangle_integral(pts, np.ones(3), q)
                m = len(lines[j][i])
                for k in range(m):
                    for side in (0, 1):
                        vals = np.array([lines[jj][ii][k][side] for jj, ii in tri])
                        gy, gt = _sheet_gradient(pts, vals)
                        sheets += math.sqrt(1.0 + gy * gy + gt * gt) * tw
    walls = 0.0
    L = slab.lengths()

    def cell(jc, ic):
        return 0 <= jc < ny - 1 and 0 <= ic < nt - 1 and mask[jc, ic]

    # edges along t (fixed y index j) separate cells (j-1, i) and (j, i)
    for j in range(ny):
        for i in range(nt - 1):
            if cell(j - 1, i) != cell(j, i):
                walls += _segment_integral(t[i], t[i + 1], L[j, i], L[j, i + 1], q)
    # edges along y (fixed t index i) separate cells (j, i-1) and (j, i)
    for i in range(nt):
        for j in range(ny - 1):
            if cell(j, i - 1) != cell(j, i):
                walls += t[i] ** q * 0.5 * (L[j, i] + L[j + 1, i]) * (y[j + 1] - y[j])
    return BoundaryWeight(sheets + walls, int(np.sum(~mask)), excluded, sheets, walls)


def symmetrization_check(slab: SlabDomain, q: int = 2, tol: float = 1e-12) -> VerificationReport:
    """Volume preserved exactly, boundary weight not increased, idempotent.

    Both boundary weights are evaluated on the original slab's regular cells.
    """
    sym = steiner_symmetrize(slab)
    mask = regular_mask(slab)
    before = slab_boundary_weight(slab, q, mask)
    after = slab_boundary_weight(sym, q, mask)
    v0, v1 = slab_volume_weight(slab, q), slab_volume_weight(sym, q)
    twice = steiner_symmetrize(sym)
    cond = {
        "volume_exact": v0 == v1,
        "lengths_exact": bool(np.array_equal(slab.lengths(), sym.lengths())),
        "idempotent": twice.lines == sym.lines,
        "symmetric": all(iv == () or (len(iv) == 1 and iv[0][0] == -iv[0][1]) for iv in sym.lines),
    }
    return VerificationReport.inequality(
        "steiner_symmetrization", "steiner-symmetrization-monotone",
        before.value, after.value, tol * max(1.0, before.value),
        details={
            "volume_weight": v0,
            "excluded_measure": before.excluded_measure,
            "excluded_cells": before.excluded_cells,
            "conditions": cond,
        },
    )


# ---------------------------------------------------------------------------
# Szego


def szego_check(E: IntervalUnion, beta: float, gamma_: float, tol: float = 1e-12) -> VerificationReport:
    """G(int_E f) <= int_E g(F) f with f = (beta+1) r^beta, g = x^gamma.

    Both sides are closed-form sums over the intervals.  The equality flag is
    structural: a single interval starting at 0 (within 1e-12).
    """
    if not (beta > -1 and math.isfinite(beta)):
        raise ValueError("beta must exceed -1")
    if not (gamma_ > 0 and math.isfinite(gamma_)):
        raise ValueError("gamma must be positive")
    b1 = beta + 1.0
    e = b1 * (gamma_ + 1.0)
    mass = math.fsum(b**b1 - a**b1 for a, b in E.intervals)  # int_E f
    lhs = mass ** (gamma_ + 1.0) / (gamma_ + 1.0)  # G(int_E f)
    rhs = math.fsum(b**e - a**e for a, b in E.intervals) / (gamma_ + 1.0)
    iv = [p for p in E.intervals if p[1] > p[0]]
    equality = len(iv) == 1 and iv[0][0] <= 1e-12
    scale = max(1.0, abs(rhs))
    cond = {}
    if equality:
        cond["equality_consistent"] = abs(rhs - lhs) <= tol * scale
    return VerificationReport(
        "szego", "szego-rearrangement", lhs, rhs, rhs - lhs, tol * scale,
        details={"equality": equality, "beta": beta, "gamma": gamma_, "conditions": cond},
    )
