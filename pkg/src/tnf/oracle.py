"""Independent brute-force ground truth for the structural verdicts.

The associativity scan walks the full triple grid in lexicographic order and
reports the first violating triple.  The float path is vectorized (the grids
at acceptance size are about a million triples); on exact-backend inputs any
near-threshold hit found by the float pre-pass is re-decided in exact
arithmetic before being reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .generated import GeneratedT
from .numerics import Num


@dataclass(frozen=True)
class GridSpec:
    """Uniform n-point axis grid joined with mandatory extra coordinates
    (breakpoints, summand endpoints, published counterexample points)."""

    n: int = 65
    extra: tuple = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two grid points per axis")
        if any(v < 0 or v > 1 for v in self.extra):
            raise ValueError("extra grid points must lie in [0, 1]")

    def axis(self) -> list:
        pts = {Fraction(k, self.n - 1) for k in range(self.n)}
        pts.update(self.extra)
        return sorted(pts, key=float)

    def axis_np(self) -> np.ndarray:
        return np.array([float(v) for v in self.axis()])


def grid_for(gt: GeneratedT, n: int = 65, extra: Sequence[Num] = ()) -> GridSpec:
    """Grid spec with the generator's and the operation's critical points
    injected."""
    from .tnorms import canonical_summands

    pts = list(extra)
    pts.extend(gt.f.breakpoints())
    for s in canonical_summands(gt.tnorm):
        pts.extend((s.a, s.b))
        # domain-side images of summand endpoints
        pts.append(gt.f.pseudo_inverse(s.a))
        pts.append(gt.f.pseudo_inverse(s.b))
    pts = [v for v in pts if 0 <= v <= 1]
    return GridSpec(n, tuple(sorted(set(pts), key=float)))


@dataclass(frozen=True)
class OracleWitness:
    x: Num
    y: Num
    z: Num
    lhs: Num
    rhs: Num

    @property
    def deviation(self) -> float:
        return abs(float(self.lhs) - float(self.rhs))

    def triple(self) -> tuple:
        return (self.x, self.y, self.z)


def grid_assoc_search(t, grid: GridSpec, tol: Optional[float] = None,
                      ) -> Optional[OracleWitness]:
    """First triple (lexicographic) violating associativity beyond tol.

    ``t`` is a GeneratedT or any callable on [0,1]^2.  GeneratedT inputs use
    the vectorized path; exact-backend near-hits are confirmed exactly.
    """
    if isinstance(t, GeneratedT):
        exact = t.exact
        eff_tol = tol if tol is not None else (0 if exact else 1e-9)
        scan_tol = max(eff_tol, 1e-12)
        hit = _vector_scan(t, grid, scan_tol)
        if hit is None:
            return None
        xi, yi, zi = hit
        axis = grid.axis()
        x, y, z = axis[xi], axis[yi], axis[zi]
        lhs, rhs = t(t(x, y), z), t(x, t(y, z))
        if exact:
            if lhs == rhs:  # float-noise hit dissolved by exact arithmetic
                return None
        elif abs(lhs - rhs) <= eff_tol:
            return None
        return OracleWitness(x, y, z, lhs, rhs)
    # generic callable: plain scalar scan
    eff_tol = tol if tol is not None else 1e-9
    axis = grid.axis()
    for x in axis:
        for y in axis:
            txy = t(x, y)
            for z in axis:
                lhs = t(txy, z)
                rhs = t(x, t(y, z))
                if abs(lhs - rhs) > eff_tol:
                    return OracleWitness(x, y, z, lhs, rhs)
    return None


def _vector_scan(gt: GeneratedT, grid: GridSpec, tol: float) -> Optional[tuple]:
    axis = grid.axis_np()
    n = len(axis)
    X, Y = np.meshgrid(axis, axis, indexing="ij")
    txy = gt.eval_np(X.ravel(), Y.ravel()).reshape(n, n)
    best = None
    for zi, z in enumerate(axis):
        zs = np.full(n * n, z)
        lhs = gt.eval_np(txy.ravel(), zs).reshape(n, n)
        # rhs = T(x, T(y, z)): T(y, z) is column zi of txy
        tyz = txy[:, zi]
        rhs = gt.eval_np(
            np.repeat(axis, n), np.tile(tyz, n)).reshape(n, n)
        bad = np.argwhere(np.abs(lhs - rhs) > tol)
        if bad.size:
            xi, yi = bad[np.lexsort((bad[:, 1], bad[:, 0]))][0]
            cand = (int(xi), int(yi), zi)
            if best is None or cand < best:
                best = cand
    return best


def compare_closed_form(t, reference: Callable, grid: GridSpec) -> float:
    """Maximum absolute pointwise deviation between t and a reference closed
    form over the grid square."""
    axis = grid.axis()
    if isinstance(t, GeneratedT):
        xs = grid.axis_np()
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        got = t.eval_np(X.ravel(), Y.ravel())
        if isinstance(reference, GeneratedT):
            want = reference.eval_np(X.ravel(), Y.ravel())
        else:
            want = np.array([float(reference(x, y))
                             for x in axis for y in axis])
        return float(np.max(np.abs(got - want)))
    worst = 0.0
    for x in axis:
        for y in axis:
            worst = max(worst, abs(float(t(x, y)) - float(reference(x, y))))
    return worst


def monotone_row_check(t, grid: GridSpec, tol: float = 1e-12) -> bool:
    """T non-decreasing along every grid row and column."""
    axis = grid.axis()
    for x in axis:
        prev = None
        for y in axis:
            v = t(x, y)
            if prev is not None and v < prev - tol:
                return False
            prev = v
    return True
