"""Finite unions of intervals and points of the real line.

The canonical form keeps components sorted, pairwise disjoint and
non-mergeable: a point touching an open end is absorbed into the interval
(e.g. [0, 0.4) together with {0.4} normalizes to [0, 0.4]).

Internally every endpoint is a pair ``(value, epsilon)``:

* a closed endpoint is ``(x, 0)``,
* an open start is ``(x, +1)``,
* an open end is ``(x, -1)``,

so tuple comparison orders endpoints correctly regardless of which side they
sit on, and merging/intersection reduce to tuple arithmetic.  Values may be
int, Fraction or float; mixed comparisons are exact in Python.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .numerics import Num

EndPt = tuple  # (value, epsilon)


def _start(value: Num, closed: bool) -> EndPt:
    return (value, 0 if closed else 1)

def _end(value: Num, closed: bool) -> EndPt:
    return (value, 0 if closed else -1)

def _advance(end: EndPt) -> EndPt:
    # First endpoint strictly beyond an end: used for the touching test.
    value, eps = end
    return (value, eps + 1)


@dataclass(frozen=True)
class Component:
    """A single interval of the union; degenerate (lo == hi) means a point."""

    lo: Num
    hi: Num
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty component: {self}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError(f"degenerate component must be closed: {self}")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def start(self) -> EndPt:
        return _start(self.lo, self.lo_closed)

    @property
    def end(self) -> EndPt:
        return _end(self.hi, self.hi_closed)

    @property
    def width(self) -> Num:
        return self.hi - self.lo

    def contains(self, x: Num, tol: Num = 0) -> bool:
        if tol:
            return self.lo - tol <= x <= self.hi + tol
        return self.start <= (x, 0) <= self.end

    def midpoint(self) -> Num:
        if isinstance(self.lo, float) or isinstance(self.hi, float):
            return (float(self.lo) + float(self.hi)) / 2.0
        return Fraction(self.lo + self.hi, 2)

    def __repr__(self):
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        if self.is_point:
            return f"{{{self.lo}}}"
        return f"{lb}{self.lo}, {self.hi}{rb}"


def point(x: Num) -> Component:
    return Component(x, x, True, True)


def interval(lo: Num, hi: Num, lo_closed: bool = True, hi_closed: bool = True) -> Component:
    return Component(lo, hi, lo_closed, hi_closed)


def open_iv(lo: Num, hi: Num) -> Optional[Component]:
    """Open interval, or None when it would be empty."""
    if lo >= hi:
        return None
    return Component(lo, hi, False, False)


class IntervalSet:
    """Immutable normalized finite union of components."""

    __slots__ = ("_comps",)

    def __init__(self, comps: Iterable[Component] = ()):
        self._comps = self._normalize(list(comps))

    @staticmethod
    def _normalize(comps: list) -> tuple:
        if not comps:
            return ()
        comps.sort(key=lambda c: (c.start, c.end))
        out = [comps[0]]
        for c in comps[1:]:
            last = out[-1]
            if c.start <= _advance(last.end):
                if c.end > last.end:
                    out[-1] = Component(
                        last.lo, c.hi, last.lo_closed, c.hi_closed
                    )
                # else: c swallowed entirely
            else:
                out.append(c)
        return tuple(out)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty() -> "IntervalSet":
        return IntervalSet(())

    @staticmethod
    def of_point(x: Num) -> "IntervalSet":
        return IntervalSet([point(x)])

    @staticmethod
    def of(lo: Num, hi: Num, lo_closed: bool = True, hi_closed: bool = True) -> "IntervalSet":
        return IntervalSet([Component(lo, hi, lo_closed, hi_closed)])

    @staticmethod
    def union_all(sets: Iterable["IntervalSet"]) -> "IntervalSet":
        comps: list = []
        for s in sets:
            comps.extend(s._comps)
        return IntervalSet(comps)

    # -- basic queries -----------------------------------------------------

    @property
    def components(self) -> tuple:
        return self._comps

    def __iter__(self) -> Iterator[Component]:
        return iter(self._comps)

    def __bool__(self) -> bool:
        return bool(self._comps)

    def __len__(self) -> int:
        return len(self._comps)

    @property
    def is_empty(self) -> bool:
        return not self._comps

    @property
    def is_single_point(self) -> bool:
        return len(self._comps) == 1 and self._comps[0].is_point

    def cardinality(self) -> str:
        """'empty', 'point', 'finite' (>=2 isolated points) or 'infinite'."""
        if not self._comps:
            return "empty"
        if any(not c.is_point for c in self._comps):
            return "infinite"
        return "point" if len(self._comps) == 1 else "finite"

    def at_most_one_point(self) -> bool:
        return self.cardinality() in ("empty", "point")

    def contains(self, x: Num, tol: Num = 0) -> bool:
        return any(c.contains(x, tol) for c in self._comps)

    @property
    def inf(self) -> Num:
        if not self._comps:
            raise ValueError("empty set has no inf")
        return self._comps[0].lo

    @property
    def sup(self) -> Num:
        if not self._comps:
            raise ValueError("empty set has no sup")
        return self._comps[-1].hi

    @property
    def inf_attained(self) -> bool:
        return bool(self._comps) and self._comps[0].lo_closed

    @property
    def sup_attained(self) -> bool:
        return bool(self._comps) and self._comps[-1].hi_closed

    def total_width(self) -> Num:
        return sum((c.width for c in self._comps), 0)

    # -- set algebra ---------------------------------------------------------

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._comps + other._comps)

    def intersect_component(self, c: Component) -> "IntervalSet":
        out = []
        for mine in self._comps:
            s = max(mine.start, c.start)
            e = min(mine.end, c.end)
            # start eps is 0/+1 and end eps is -1/0, so s <= e already rules
            # out degenerate open leftovers
            if s <= e:
                out.append(Component(s[0], e[0], s[1] == 0, e[1] == 0))
        return IntervalSet(out)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out: list = []
        for c in other._comps:
            out.extend(self.intersect_component(c)._comps)
        return IntervalSet(out)

    def complement_in(self, lo: Num, hi: Num) -> "IntervalSet":
        """Complement within the closed box [lo, hi]."""
        out = []
        cur: EndPt = _start(lo, True)
        box_end = _end(hi, True)
        for c in self._comps:
            if c.end < cur:
                continue
            if c.start > box_end:
                break
            s = c.start
            if s > cur:
                gap_end = (s[0], -1 if s[1] == 0 else 0)
                if cur <= gap_end:
                    out.append(Component(cur[0], gap_end[0], cur[1] == 0, gap_end[1] == 0))
            nxt = _advance(c.end)
            if nxt > cur:
                cur = nxt
        if cur <= box_end:
            out.append(Component(cur[0], box_end[0], cur[1] == 0, box_end[1] == 0))
        return IntervalSet(out)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        if not self._comps:
            return self
        lo, hi = self.inf, self.sup
        return self.intersect(other.complement_in(lo, hi))

    def remove_point(self, x: Num) -> "IntervalSet":
        return self.difference(IntervalSet.of_point(x))

    def drop_thin(self, tol: Num) -> "IntervalSet":
        """Drop components of width <= tol (float-noise suppression)."""
        if tol == 0:
            return self
        return IntervalSet([c for c in self._comps if c.width > tol])

    # -- derived sets -------------------------------------------------------

    def open_hull(self) -> "IntervalSet":
        """Union of open intervals spanned by pairs of points of the set:
        empty unless the set has at least two points, else (inf, sup)."""
        if self.at_most_one_point():
            return IntervalSet.empty()
        return IntervalSet.of(self.inf, self.sup, False, False)

    # -- misc ----------------------------------------------------------------

    def sample_points(self, per_component: int = 3) -> list:
        """Deterministic representative points (attained endpoints, dyadic
        interior points)."""
        pts = []
        for c in self._comps:
            if c.is_point:
                pts.append(c.lo)
                continue
            if c.lo_closed:
                pts.append(c.lo)
            if c.hi_closed:
                pts.append(c.hi)
            w = c.hi - c.lo
            for i in range(1, per_component + 1):
                if isinstance(w, float) or isinstance(c.lo, float):
                    pts.append(float(c.lo) + float(w) * i / (per_component + 1))
                else:
                    pts.append(c.lo + Fraction(i, per_component + 1) * w)
        seen, out = set(), []
        for p in pts:
            key = float(p)
            if key not in seen:
                seen.add(key)
                out.append(p)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        if len(self._comps) != len(other._comps):
            return False
        return all(
            a.lo == b.lo and a.hi == b.hi
            and a.lo_closed == b.lo_closed and a.hi_closed == b.hi_closed
            for a, b in zip(self._comps, other._comps)
        )

    def __hash__(self):
        return hash(tuple((float(c.lo), float(c.hi), c.lo_closed, c.hi_closed) for c in self._comps))

    def approx_equal(self, other: "IntervalSet", tol: Num) -> bool:
        if len(self._comps) != len(other._comps):
            return False
        return all(
            abs(a.lo - b.lo) <= tol and abs(a.hi - b.hi) <= tol
            for a, b in zip(self._comps, other._comps)
        )

    def __repr__(self):
        if not self._comps:
            return "IntervalSet(empty)"
        return " U ".join(repr(c) for c in self._comps)


EMPTY = IntervalSet.empty()


def scale_shift(s: IntervalSet, mul: Num, add: Num) -> IntervalSet:
    """Image of the set under x -> mul*x + add with mul > 0."""
    if mul <= 0:
        raise ValueError("mul must be positive")
    return IntervalSet([
        Component(mul * c.lo + add, mul * c.hi + add, c.lo_closed, c.hi_closed)
        for c in s
    ])


def rescale_component_to_unit(c: Component, a: Num, b: Num) -> Component:
    """Map a component inside [a, b] through x -> (x-a)/(b-a)."""
    w = b - a
    return Component((c.lo - a) / w, (c.hi - a) / w, c.lo_closed, c.hi_closed)
