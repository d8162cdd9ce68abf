"""The generated two-place function T(x,y) = f^(-1)(F(f(x), f(y))) and the
companion structures on M = Ran(f): the gap system (closed intervals covering
the complement of M, each meeting M in exactly one representative value) and
the projection of [0,1] onto M that collapses each gap to its representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .intervals import Component, IntervalSet
from .monotone import PiecewiseIncreasingFn
from .numerics import MEMBERSHIP_EPS, Num
from .tnorms import TNormExpr


@dataclass(frozen=True)
class Gap:
    """A maximal closed interval meeting the range in exactly one point."""

    lo: Num
    hi: Num
    rep: Num  # the single range value inside [lo, hi]

    def component(self) -> Component:
        return Component(self.lo, self.hi)

    def __repr__(self):
        return f"Gap[{self.lo}, {self.hi}; rep={self.rep}]"


class GapSystem:
    """Gaps of Ran(f) within the codomain box, with representatives.

    When the range fills the whole box the system degenerates to the single
    zero-length gap at the top with representative equal to the box top.
    """

    def __init__(self, gaps, full_range: bool, box: tuple):
        self.gaps = tuple(gaps)
        self.full_range = full_range
        self.box = box

    @property
    def representatives(self) -> tuple:
        return tuple(g.rep for g in self.gaps)

    def locate(self, v: Num, tol: Num = 0) -> Optional[Gap]:
        for g in self.gaps:
            if g.lo - tol <= v <= g.hi + tol:
                return g
        return None

    def __iter__(self):
        return iter(self.gaps)

    def __len__(self):
        return len(self.gaps)

    def __repr__(self):
        if self.full_range:
            return f"GapSystem(full range, rep={self.box[1]})"
        return f"GapSystem({', '.join(map(repr, self.gaps))})"


def gap_system(f: PiecewiseIncreasingFn) -> GapSystem:
    """Build the gap system from the jump data of f.

    Every discontinuity point x0 contributes the candidate [f(x0-), f(x0+)]
    with representative f(x0); a range starting above the codomain bottom or
    ending below the top contributes a boundary candidate.  Candidates that
    share their representative (a jump at a domain endpoint meeting the
    boundary gap) merge.  Invariants are re-verified afterwards; failure
    signals an invalid generator encoding.
    """
    lo, hi = f.domain
    clo, chi = f.codomain
    m = f.range_of()
    candidates = []
    if f(lo) > clo:
        candidates.append(Gap(clo, f(lo), f(lo)))
    for x0 in [lo, *f.breakpoints(), hi]:
        left, right = f.side_limits(x0)
        if left < right:
            candidates.append(Gap(left, right, f(x0)))
    if f(hi) < chi:
        candidates.append(Gap(f(hi), chi, f(hi)))
    # merge candidates sharing a representative (touching at domain endpoints)
    candidates.sort(key=lambda g: (float(g.lo), float(g.hi)))
    merged: list = []
    for g in candidates:
        if merged and merged[-1].rep == g.rep and merged[-1].hi == g.lo:
            merged[-1] = Gap(merged[-1].lo, g.hi, g.rep)
        else:
            merged.append(g)
    if not merged:
        # full range: the distinguished degenerate system at the box top
        return GapSystem([Gap(chi, chi, chi)], True, f.codomain)

    sys = GapSystem(merged, False, f.codomain)
    _verify_gap_system(sys, m, f.codomain)
    return sys


def _verify_gap_system(sys: GapSystem, m: IntervalSet, box: tuple):
    clo, chi = box
    prev_hi = None
    covered = IntervalSet.empty()
    for g in sys.gaps:
        if g.hi <= g.lo:
            raise ValueError(f"{g}: gap must have positive length")
        if not (g.lo <= g.rep <= g.hi):
            raise ValueError(f"{g}: representative outside the gap")
        inside = m.intersect_component(g.component())
        if not (inside.is_single_point and inside.inf == g.rep):
            raise ValueError(f"{g}: gap must meet the range exactly at its representative")
        if prev_hi is not None and g.lo < prev_hi:
            raise ValueError("gaps overlap")
        prev_hi = g.hi
        covered = covered.union(IntervalSet([g.component()]))
    # M = reps U ([clo, chi] \ U gaps)
    rebuilt = covered.complement_in(clo, chi).union(
        IntervalSet([Component(r, r) for r in sys.representatives]))
    if rebuilt != m:
        raise ValueError("gap system does not reconstruct the range")


class GeneratedT:
    """T(x,y) = f^(-1)(F(f(x), f(y))) with the cached range structures."""

    def __init__(self, f: PiecewiseIncreasingFn, tnorm: TNormExpr):
        self.f = f
        self.tnorm = tnorm
        self.range = f.range_of()
        self.gaps = gap_system(f)
        self.exact = f.is_exact and tnorm.is_exact()
        self.tol = 0 if self.exact else MEMBERSHIP_EPS

    # -- membership ------------------------------------------------------------

    def in_range(self, v: Num) -> bool:
        return self.range.contains(v, tol=self.tol)

    def interior_values(self) -> IntervalSet:
        """Range minus gap representatives."""
        out = self.range
        for r in self.gaps.representatives:
            out = out.remove_point(r)
        return out

    def acc_both(self) -> IntervalSet:
        from .monotone import acc_sets
        return acc_sets(self.range).both

    # -- the three operations ----------------------------------------------------

    def project(self, v: Num) -> Num:
        """Collapse [0,1] onto the range: v itself inside, the gap
        representative inside a gap; equals f(f^(-1)(v))."""
        return self.f(self.f.pseudo_inverse(v))

    def induced(self, x: Num, y: Num) -> Num:
        """The operation on the range: project(F(x, y)); arguments must be
        range members."""
        for v in (x, y):
            if not self.in_range(v):
                raise ValueError(f"{v} is not in the range of the generator")
        return self.project(self.tnorm(x, y))

    def __call__(self, x: Num, y: Num) -> Num:
        return self.f.pseudo_inverse(self.tnorm(self.f(x), self.f(y)))

    def eval_np(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        fx = self.f.eval_np(np.asarray(x, dtype=float))
        fy = self.f.eval_np(np.asarray(y, dtype=float))
        return self.f.pseudo_inverse_np(self.tnorm.eval_np(fx, fy))

    def __repr__(self):
        return f"GeneratedT({self.f!r}, {self.tnorm!r})"
