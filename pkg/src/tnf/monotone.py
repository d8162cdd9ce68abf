"""Strictly increasing piecewise-analytic functions and their pseudo-inverse.

A function is a list of pieces over a closed domain box [lo, hi]: piece i
covers [left_i, left_{i+1}) with an analytic form, the value AT each
breakpoint is stored explicitly (it may differ from the adjacent one-sided
limits, which is how jumps are encoded), and the value at the right domain
endpoint is stored separately.

The pseudo-inverse of a non-decreasing g is sup{x | g(x) < y} with
sup(empty) = domain lo.  For strictly increasing functions it is computed in
closed form per piece, with plateau values at jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .intervals import Component, IntervalSet
from .numerics import Num, is_exact


def _norm(x: Num) -> Num:
    """ints become Fractions so that division stays exact."""
    return Fraction(x) if isinstance(x, int) else x


def _ediv(a: Num, b: Num) -> Num:
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return a / b


# ---------------------------------------------------------------------------
# analytic forms


@dataclass(frozen=True)
class Linear:
    """slope * x + intercept, slope > 0."""

    slope: Num
    intercept: Num

    def __post_init__(self):
        object.__setattr__(self, "slope", _norm(self.slope))
        object.__setattr__(self, "intercept", _norm(self.intercept))
        if self.slope <= 0:
            raise ValueError("slope must be positive")

    def value(self, x: Num) -> Num:
        return self.slope * x + self.intercept

    def inverse(self, y: Num) -> Num:
        return (y - self.intercept) / self.slope

    def value_np(self, x: np.ndarray) -> np.ndarray:
        return float(self.slope) * x + float(self.intercept)

    def inverse_np(self, y: np.ndarray) -> np.ndarray:
        return (y - float(self.intercept)) / float(self.slope)

    @property
    def exact_capable(self) -> bool:
        return is_exact(self.slope) and is_exact(self.intercept)

    def compose_affine(self, in_mul: Num, in_add: Num, out_mul: Num, out_add: Num) -> "Linear":
        # out_mul * f(in_mul * x + in_add) + out_add
        return Linear(out_mul * self.slope * in_mul,
                      out_mul * (self.slope * in_add + self.intercept) + out_add)


@dataclass(frozen=True)
class Exponential:
    """offset + scale * e^(rate * x), with scale * rate > 0."""

    offset: float
    scale: float
    rate: float

    def __post_init__(self):
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "rate", float(self.rate))
        if self.scale * self.rate <= 0:
            raise ValueError("scale * rate must be positive")

    def value(self, x: Num) -> float:
        return self.offset + self.scale * math.exp(self.rate * float(x))

    def inverse(self, y: Num) -> float:
        return math.log((float(y) - self.offset) / self.scale) / self.rate

    def value_np(self, x: np.ndarray) -> np.ndarray:
        return self.offset + self.scale * np.exp(self.rate * x)

    def inverse_np(self, y: np.ndarray) -> np.ndarray:
        return np.log((y - self.offset) / self.scale) / self.rate

    @property
    def exact_capable(self) -> bool:
        return False

    def compose_affine(self, in_mul, in_add, out_mul, out_add) -> "Exponential":
        # out_mul * (offset + scale * e^(rate*(in_mul*x + in_add))) + out_add
        return Exponential(
            float(out_mul) * self.offset + float(out_add),
            float(out_mul) * self.scale * math.exp(self.rate * float(in_add)),
            self.rate * float(in_mul),
        )


AnalyticForm = Union[Linear, Exponential]


@dataclass(frozen=True)
class Piece:
    left: Num
    form: AnalyticForm
    value_at_left: Num


# ---------------------------------------------------------------------------


class PiecewiseIncreasingFn:
    """Strictly increasing function on a closed box, by analytic pieces.

    ``codomain`` is the ambient value box; it matters for gap construction
    (values below f(lo) or above f(hi) are genuine range gaps).
    """

    def __init__(self, pieces: Sequence[Piece], value_at_end: Num,
                 domain: tuple = (0, 1), codomain: tuple = (0, 1)):
        self.pieces = tuple(
            Piece(_norm(p.left), p.form, _norm(p.value_at_left)) for p in pieces)
        self.value_at_end = _norm(value_at_end)
        self.domain = tuple(_norm(v) for v in domain)
        self.codomain = tuple(_norm(v) for v in codomain)
        self._validate()
        self._range: Optional[IntervalSet] = None
        self._pinv_zones = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def identity() -> "PiecewiseIncreasingFn":
        return PiecewiseIncreasingFn([Piece(0, Linear(1, 0), 0)], 1)

    @staticmethod
    def single(form: AnalyticForm, domain=(0, 1), codomain=(0, 1)) -> "PiecewiseIncreasingFn":
        lo, hi = domain
        return PiecewiseIncreasingFn(
            [Piece(lo, form, form.value(lo))], form.value(hi), domain, codomain)

    def _validate(self):
        lo, hi = self.domain
        if not self.pieces:
            raise ValueError("need at least one piece")
        if self.pieces[0].left != lo:
            raise ValueError("first piece must start at the domain lo")
        lefts = [p.left for p in self.pieces]
        if any(a >= b for a, b in zip(lefts, lefts[1:])) or lefts[-1] >= hi:
            raise ValueError("piece breakpoints must be strictly increasing inside the domain")
        clo, chi = self.codomain
        values = [p.value_at_left for p in self.pieces] + [self.value_at_end]
        if any(v < clo or v > chi for v in values):
            raise ValueError("breakpoint values must stay inside the codomain")
        # strict monotonicity across the chain:
        #   left_limit <= value_at_breakpoint <= right_limit at every breakpoint
        # float-backed data gets a tiny slack against rounding noise
        def le(a, b):
            if isinstance(a, float) or isinstance(b, float):
                return a <= b + 1e-12
            return a <= b

        prev_sup = None  # left limit approaching current breakpoint
        for i, p in enumerate(self.pieces):
            if prev_sup is not None and not le(prev_sup, p.value_at_left):
                raise ValueError(f"value at breakpoint {p.left} below the left limit")
            right_lim = p.form.value(p.left)
            if not le(p.value_at_left, right_lim):
                raise ValueError(f"value at breakpoint {p.left} above the right limit")
            nxt = self.pieces[i + 1].left if i + 1 < len(self.pieces) else hi
            prev_sup = p.form.value(nxt)
            if not (right_lim < prev_sup):
                raise ValueError("piece must be increasing over its span")
        if not le(prev_sup, self.value_at_end):
            raise ValueError("value at the domain end below the left limit")
        if not (le(clo, prev_sup) and le(prev_sup, chi)):
            raise ValueError("range leaves the codomain")

    @property
    def is_exact(self) -> bool:
        return (all(p.form.exact_capable and is_exact(p.left) and is_exact(p.value_at_left)
                    for p in self.pieces)
                and is_exact(self.value_at_end)
                and all(is_exact(v) for v in (*self.domain, *self.codomain)))

    def breakpoints(self) -> list:
        """Interior breakpoints (piece starts after the first)."""
        return [p.left for p in self.pieces[1:]]

    # -- evaluation ------------------------------------------------------------

    def _piece_index(self, x: Num) -> int:
        # piece i covers [left_i, left_{i+1})
        idx = len(self.pieces) - 1
        for i, p in enumerate(self.pieces):
            if x < p.left:
                idx = i - 1
                break
        return idx

    def __call__(self, x: Num) -> Num:
        lo, hi = self.domain
        if x < lo or x > hi:
            raise ValueError(f"{x} outside the domain [{lo}, {hi}]")
        if x == hi:
            return self.value_at_end
        p = self.pieces[self._piece_index(x)]
        if x == p.left:
            return p.value_at_left
        return p.form.value(x)

    def side_limits(self, x: Num) -> tuple:
        """(left limit, right limit), with f(lo-) = f(lo) and f(hi+) = f(hi)."""
        lo, hi = self.domain
        if x < lo or x > hi:
            raise ValueError(f"{x} outside the domain [{lo}, {hi}]")
        if x == lo:
            left = self(lo)
        else:
            i = self._piece_index(x)
            p = self.pieces[i]
            left = self.pieces[i - 1].form.value(x) if x == p.left else p.form.value(x)
        if x == hi:
            right = self(hi)
        else:
            p = self.pieces[self._piece_index(x)]
            right = p.form.value(x)
        return left, right

    # -- pseudo-inverse ----------------------------------------------------------

    def pseudo_inverse(self, y: Num) -> Num:
        """sup{x | f(x) < y}, with sup(empty) = domain lo."""
        lo, hi = self.domain
        # below/at the right limit at lo -> lo; at/above the left limit at hi -> hi
        if y <= self.pieces[0].form.value(lo):
            return lo
        last = self.pieces[-1]
        if y >= last.form.value(hi):
            return hi
        # plateau at an interior breakpoint t: f(t-) <= y <= f(t+)
        for i in range(1, len(self.pieces)):
            t = self.pieces[i].left
            left_lim = self.pieces[i - 1].form.value(t)
            right_lim = self.pieces[i].form.value(t)
            if left_lim <= y <= right_lim:
                return t
        # inside a piece image
        for i, p in enumerate(self.pieces):
            nxt = self.pieces[i + 1].left if i + 1 < len(self.pieces) else hi
            if p.form.value(p.left) < y < p.form.value(nxt):
                return p.form.inverse(y)
        raise AssertionError("unreachable: piece images plus plateaus tile the value span")

    # -- range -------------------------------------------------------------------

    def range_of(self) -> IntervalSet:
        """Exact Ran(f) as an interval set."""
        if self._range is None:
            lo, hi = self.domain
            comps = []
            for i, p in enumerate(self.pieces):
                comps.append(Component(p.value_at_left, p.value_at_left))
                nxt = self.pieces[i + 1].left if i + 1 < len(self.pieces) else hi
                a, b = p.form.value(p.left), p.form.value(nxt)
                comps.append(Component(a, b, False, False))
            comps.append(Component(self.value_at_end, self.value_at_end))
            self._range = IntervalSet(comps)
        return self._range

    def segments(self) -> list:
        """Continuity segments: (x_lo, x_hi, form, open image component) where
        f is continuous and equals the form on the open interval."""
        lo, hi = self.domain
        out = []
        for i, p in enumerate(self.pieces):
            nxt = self.pieces[i + 1].left if i + 1 < len(self.pieces) else hi
            out.append((p.left, nxt, p.form,
                        Component(p.form.value(p.left), p.form.value(nxt), False, False)))
        return out

    # -- affine views --------------------------------------------------------------

    def affine_image(self, mul: Num, add: Num, codomain: tuple) -> "PiecewiseIncreasingFn":
        """mul * f + add with mul > 0 (e.g. f/2)."""
        if mul <= 0:
            raise ValueError("mul must be positive")
        pieces = [Piece(p.left, p.form.compose_affine(1, 0, mul, add),
                        mul * p.value_at_left + add) for p in self.pieces]
        return PiecewiseIncreasingFn(pieces, mul * self.value_at_end + add,
                                     self.domain, codomain)

    def restriction(self, s: Num, t: Num, value_box: tuple,
                    value_at_s: Num, value_at_t: Num) -> "PiecewiseIncreasingFn":
        """Restriction of f to [s, t] with explicitly chosen endpoint values
        (must bracket the one-sided limits there)."""
        lo, hi = self.domain
        if not (lo <= s < t <= hi):
            raise ValueError("bad restriction window")
        pieces = []
        for i, p in enumerate(self.pieces):
            nxt = self.pieces[i + 1].left if i + 1 < len(self.pieces) else hi
            if nxt <= s or p.left >= t:
                continue
            if p.left <= s:
                pieces.append(Piece(s, p.form, value_at_s))
            else:
                pieces.append(Piece(p.left, p.form, self(p.left)))
        return PiecewiseIncreasingFn(pieces, value_at_t, (s, t), value_box)

    def unit_rescaled(self) -> "PiecewiseIncreasingFn":
        """Conjugate to a function [0,1] -> [0,1] by affine maps of the domain
        and the codomain box: u -> (f(lo + (hi-lo)u) - clo) / (chi-clo)."""
        lo, hi = self.domain
        clo, chi = self.codomain
        dw, cw = hi - lo, chi - clo
        out_mul = _ediv(1, cw)
        out_add = -_ediv(clo, cw)
        pieces = [
            Piece(_ediv(p.left - lo, dw),
                  p.form.compose_affine(dw, lo, out_mul, out_add),
                  _ediv(p.value_at_left - clo, cw))
            for p in self.pieces
        ]
        return PiecewiseIncreasingFn(pieces, _ediv(self.value_at_end - clo, cw),
                                     (0, 1), (0, 1))

    # -- vectorized float paths ------------------------------------------------------

    def eval_np(self, xs: np.ndarray) -> np.ndarray:
        lo, hi = self.domain
        xs = np.asarray(xs, dtype=float)
        lefts = np.array([float(p.left) for p in self.pieces])
        idx = np.clip(np.searchsorted(lefts, xs, side="right") - 1, 0, len(self.pieces) - 1)
        out = np.empty_like(xs)
        for i, p in enumerate(self.pieces):
            m = idx == i
            if m.any():
                out[m] = p.form.value_np(xs[m])
        for p in self.pieces:
            out[xs == float(p.left)] = float(p.value_at_left)
        out[xs == float(hi)] = float(self.value_at_end)
        return out

    def _zones(self):
        """Monotone zones of the pseudo-inverse: (lo_edge, kind, payload)."""
        if self._pinv_zones is None:
            lo, hi = self.domain
            zones = [(-math.inf, "const", float(lo))]
            for i, p in enumerate(self.pieces):
                if i > 0:
                    left_lim = float(self.pieces[i - 1].form.value(p.left))
                    zones.append((left_lim, "const", float(p.left)))
                zones.append((float(p.form.value(p.left)), "form", p.form))
                # the plateau, if any, starts at the piece image's sup
            last_sup = float(self.pieces[-1].form.value(hi))
            zones.append((last_sup, "const", float(hi)))
            self._pinv_zones = zones
        return self._pinv_zones

    def pseudo_inverse_np(self, ys: np.ndarray) -> np.ndarray:
        ys = np.asarray(ys, dtype=float)
        zones = self._zones()
        edges = np.array([z[0] for z in zones])
        idx = np.clip(np.searchsorted(edges, ys, side="right") - 1, 0, len(zones) - 1)
        out = np.empty_like(ys)
        for i, (_, kind, payload) in enumerate(zones):
            m = idx == i
            if not m.any():
                continue
            if kind == "const":
                out[m] = payload
            else:
                out[m] = payload.inverse_np(ys[m])
        return out

    def __repr__(self):
        return (f"PiecewiseIncreasingFn({len(self.pieces)} pieces on "
                f"[{self.domain[0]}, {self.domain[1]}])")


# ---------------------------------------------------------------------------
# accumulation-point sets


@dataclass(frozen=True)
class AccumulationSets:
    left: IntervalSet
    right: IntervalSet
    both: IntervalSet


def acc_sets(m: IntervalSet) -> AccumulationSets:
    """Accumulation points of m from the left / right / both sides.

    A non-degenerate component [lo, hi] contributes (lo, hi] from the left and
    [lo, hi) from the right regardless of endpoint closedness; isolated points
    contribute nothing.
    """
    left, right = [], []
    for c in m:
        if c.is_point:
            continue
        left.append(Component(c.lo, c.hi, False, True))
        right.append(Component(c.lo, c.hi, True, False))
    ls, rs = IntervalSet(left), IntervalSet(right)
    return AccumulationSets(ls, rs, ls.intersect(rs))


def open_hull(m: IntervalSet) -> IntervalSet:
    """Union of open intervals between pairs of points of m."""
    return m.open_hull()
