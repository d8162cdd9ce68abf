"""Expression catalog for t-norms and t-subnorms on the unit square.

Besides evaluation, every node supports the exact set computations the
structural verifier is built on:

* ``section_image`` / ``box_image``: images of flagged intervals under the
  operation, exact including open/closed endpoints;
* ``preimage_le`` / ``preimage_ge``: sections x -> F(x, y) are monotone, so
  sub/super-level sets are down-/up-sets of [0, 1], returned with the
  endpoint flag;
* ``idempotents`` and ``identity_on``: analytic answers used by the
  left-neutrality and minimum-classification checks.

Every node is commutative, non-decreasing in each argument and bounded by
min; this is sampled at construction.  Associativity is NOT a construction
invariant (a scaled wrap of a non-strict operation loses it) -- deciding it
for generated functions is the point of the verifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .intervals import Component, IntervalSet, point as mk_point
from .numerics import Num, is_exact

HALF = Fraction(1, 2)

# Down-/up-set results: None = empty, ALL = whole [0,1], else (cut, closed).
ALL = "all"
Cut = Union[None, str, tuple]


def _ediv(a: Num, b: Num) -> Num:
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return a / b


def _norm(x: Num) -> Num:
    return Fraction(x) if isinstance(x, int) else x


def _rel(v: Num, bound: Num, strict: bool, ge: bool) -> bool:
    if ge:
        return v > bound if strict else v >= bound
    return v < bound if strict else v <= bound


def _down(cut: Num, closed: bool) -> Cut:
    """Normalize a down-set {x <= cut} / {x < cut} to [0,1]."""
    if cut < 0 or (cut == 0 and not closed):
        return None
    if cut > 1:
        return ALL
    if cut == 1 and closed:
        return ALL
    return (cut, closed)


def _up(cut: Num, closed: bool) -> Cut:
    """Normalize an up-set {x >= cut} / {x > cut} to [0,1]."""
    if cut > 1 or (cut == 1 and not closed):
        return None
    if cut < 0 or (cut == 0 and closed):
        return ALL
    return (cut, closed)


def down_component(c: Cut) -> Optional[Component]:
    if c is None:
        return None
    if c is ALL:
        return Component(0, 1, True, True)
    return Component(0, c[0], True, c[1])


def up_component(c: Cut) -> Optional[Component]:
    if c is None:
        return None
    if c is ALL:
        return Component(0, 1, True, True)
    return Component(c[0], 1, c[1], True)


def _min_box(i: Component, j: Component) -> Optional[Component]:
    """Image of min over a product of two intervals."""
    if i.lo < j.lo:
        lo, lo_closed = i.lo, i.lo_closed
    elif j.lo < i.lo:
        lo, lo_closed = j.lo, j.lo_closed
    else:
        lo, lo_closed = i.lo, i.lo_closed or j.lo_closed
    if i.hi < j.hi:
        hi, hi_closed = i.hi, i.hi_closed
    elif j.hi < i.hi:
        hi, hi_closed = j.hi, j.hi_closed
    else:
        hi, hi_closed = i.hi, i.hi_closed and j.hi_closed
    if lo == hi and not (lo_closed and hi_closed):
        return None
    return Component(lo, hi, lo_closed, hi_closed)


def _min_section(c: Num, j: Component) -> IntervalSet:
    """{min(c, v) : v in j}."""
    parts = []
    below = IntervalSet([j]).intersect_component(Component(-1, c, False, False))
    parts.extend(below.components)
    if j.end >= (c, 0):  # some v >= c exists in j
        parts.append(mk_point(c))
    return IntervalSet(parts)


def _sum_component(i: Component, j: Component, shift: Num = 0) -> Component:
    return Component(i.lo + j.lo + shift, i.hi + j.hi + shift,
                     i.lo_closed and j.lo_closed, i.hi_closed and j.hi_closed)


def _clamp_zero(comp: Component) -> IntervalSet:
    """Image of max(0, .) over a component."""
    parts = []
    if comp.start <= (0, 0):  # has points <= 0
        parts.append(mk_point(0))
    pos = IntervalSet([comp]).intersect_component(Component(0, 2, False, False))
    parts.extend(pos.components)
    return IntervalSet(parts)


def _scale_set(s: IntervalSet, mul: Num, add: Num = 0) -> IntervalSet:
    return IntervalSet([
        Component(mul * c.lo + add, mul * c.hi + add, c.lo_closed, c.hi_closed)
        for c in s
    ])


# ---------------------------------------------------------------------------


class TNormExpr:
    """Base class; subclasses are immutable node types."""

    # -- evaluation --------------------------------------------------------

    def __call__(self, x: Num, y: Num) -> Num:
        raise NotImplementedError

    def eval_np(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # -- analytic structure ---------------------------------------------------

    def is_tnorm(self) -> bool:
        raise NotImplementedError

    def has_zero_divisors(self) -> bool:
        raise NotImplementedError

    def idempotents(self) -> IntervalSet:
        raise NotImplementedError

    def is_exact(self) -> bool:
        raise NotImplementedError

    # -- set machinery ---------------------------------------------------------

    def section_image(self, c: Num, j: Component) -> IntervalSet:
        raise NotImplementedError

    def box_image(self, i: Component, j: Component) -> IntervalSet:
        raise NotImplementedError

    def preimage_le(self, y: Num, d: Num, strict: bool = False) -> Cut:
        raise NotImplementedError

    def preimage_ge(self, y: Num, b: Num, strict: bool = False) -> Cut:
        raise NotImplementedError

    def identity_on(self, c: Num, j: Component) -> bool:
        """Is F(c, .) the identity on j?  Caller guarantees sup j <= c."""
        raise NotImplementedError

    # -- shared helpers -----------------------------------------------------------

    def validate(self, n: int = 9):
        """Sampled two-place property check: range, commutativity,
        monotonicity, bounded by min."""
        grid = [Fraction(k, n - 1) for k in range(n)]
        vals = {}
        for x in grid:
            for y in grid:
                v = self(x, y)
                if not (0 <= v <= min(x, y)):
                    raise ValueError(f"{self}: value {v} at ({x},{y}) breaks the subnorm bound")
                vals[(x, y)] = v
        for x in grid:
            for y in grid:
                if vals[(x, y)] != vals[(y, x)]:
                    raise ValueError(f"{self}: not commutative at ({x},{y})")
        for x in grid:
            for a, b in zip(grid, grid[1:]):
                if vals[(x, a)] > vals[(x, b)]:
                    raise ValueError(f"{self}: not monotone at x={x}")
        return self


@dataclass(frozen=True)
class MinT(TNormExpr):
    def __call__(self, x, y):
        return min(x, y)

    def eval_np(self, x, y):
        return np.minimum(x, y)

    def is_tnorm(self):
        return True

    def has_zero_divisors(self):
        return False

    def idempotents(self):
        return IntervalSet.of(0, 1)

    def is_exact(self):
        return True

    def section_image(self, c, j):
        return _min_section(c, j)

    def box_image(self, i, j):
        comp = _min_box(i, j)
        return IntervalSet([comp] if comp else [])

    def preimage_le(self, y, d, strict=False):
        if _rel(y, d, strict, ge=False):
            return ALL
        return _down(d, not strict)

    def preimage_ge(self, y, b, strict=False):
        if not _rel(y, b, strict, ge=True):
            return None
        return _up(b, not strict)

    def identity_on(self, c, j):
        return True

    def __repr__(self):
        return "Min"


@dataclass(frozen=True)
class ProductT(TNormExpr):
    def __call__(self, x, y):
        return x * y

    def eval_np(self, x, y):
        return x * y

    def is_tnorm(self):
        return True

    def has_zero_divisors(self):
        return False

    def idempotents(self):
        return IntervalSet([mk_point(0), mk_point(1)])

    def is_exact(self):
        return True

    def section_image(self, c, j):
        if c == 0:
            return IntervalSet.of_point(0)
        return _scale_set(IntervalSet([j]), c)

    def box_image(self, i, j):
        hi = i.hi * j.hi
        if hi == 0:
            return IntervalSet.of_point(0)
        lo = i.lo * j.lo
        if lo == 0:
            lo_closed = (i.lo == 0 and i.lo_closed) or (j.lo == 0 and j.lo_closed)
        else:
            lo_closed = i.lo_closed and j.lo_closed
        hi_closed = i.hi_closed and j.hi_closed
        if lo == hi and not (lo_closed and hi_closed):
            return IntervalSet.empty()
        return IntervalSet([Component(lo, hi, lo_closed, hi_closed)])

    def preimage_le(self, y, d, strict=False):
        if y == 0:
            return ALL if _rel(0, d, strict, ge=False) else None
        if d < 0:
            return None
        return _down(_ediv(d, y), not strict)

    def preimage_ge(self, y, b, strict=False):
        if _rel(0, b, strict, ge=True):
            return ALL
        if y == 0:
            return None
        return _up(_ediv(b, y), not strict)

    def identity_on(self, c, j):
        return c == 1 or (j.is_point and j.lo == 0)

    def __repr__(self):
        return "Product"


@dataclass(frozen=True)
class LukasiewiczT(TNormExpr):
    def __call__(self, x, y):
        return max(0 * x, x + y - 1)

    def eval_np(self, x, y):
        return np.maximum(0.0, x + y - 1.0)

    def is_tnorm(self):
        return True

    def has_zero_divisors(self):
        return True

    def idempotents(self):
        return IntervalSet([mk_point(0), mk_point(1)])

    def is_exact(self):
        return True

    def section_image(self, c, j):
        return _clamp_zero(Component(j.lo + c - 1, j.hi + c - 1, j.lo_closed, j.hi_closed))

    def box_image(self, i, j):
        return _clamp_zero(_sum_component(i, j, -1))

    def preimage_le(self, y, d, strict=False):
        if not _rel(0, d, strict, ge=False):
            return None
        return _down(1 + d - y, not strict)

    def preimage_ge(self, y, b, strict=False):
        if _rel(0, b, strict, ge=True):
            return ALL
        return _up(1 + b - y, not strict)

    def identity_on(self, c, j):
        return c == 1 or (j.is_point and j.lo == 0)

    def __repr__(self):
        return "Lukasiewicz"


@dataclass(frozen=True)
class NilpotentMinT(TNormExpr):
    """0 when x + y <= 1, min otherwise."""

    def __call__(self, x, y):
        if x + y <= 1:
            return 0 * x
        return min(x, y)

    def eval_np(self, x, y):
        return np.where(x + y <= 1.0, 0.0, np.minimum(x, y))

    def is_tnorm(self):
        return True

    def has_zero_divisors(self):
        return True

    def idempotents(self):
        return IntervalSet([mk_point(0), Component(HALF, 1, False, True)])

    def is_exact(self):
        return True

    def section_image(self, c, j):
        parts = []
        low = IntervalSet([j]).intersect_component(Component(-1, 1 - c, False, True))
        if not low.is_empty:
            parts.append(mk_point(0))
        high = IntervalSet([j]).intersect_component(Component(1 - c, 2, False, False))
        for comp in high:
            parts.extend(_min_section(c, comp).components)
        return IntervalSet(parts)

    def box_image(self, i, j):
        parts = []
        s_start = (i.lo + j.lo, 0 if (i.lo_closed and j.lo_closed) else 1)
        if s_start <= (1, 0):  # some x+y <= 1
            parts.append(mk_point(0))
        if i.hi + j.hi > 1:  # the strict region is nonempty
            for a, b in ((i, j), (j, i)):
                # min-values contributed by the first coordinate: those v with
                # a partner y >= v, v + y > 1, i.e. v in (1 - sup b, sup b),
                # plus sup b itself when attained and above one half
                lo, hi = 1 - b.hi, b.hi
                if lo < hi:
                    region = Component(lo, hi, False, b.hi_closed and b.hi > HALF)
                    feas = IntervalSet([a]).intersect_component(region)
                    parts.extend(feas.components)
        return IntervalSet(parts)

    def preimage_le(self, y, d, strict=False):
        if not _rel(0, d, strict, ge=False):
            return None
        if _rel(y, d, strict, ge=False):
            return ALL
        if d > 1 - y:
            return _down(d, not strict)
        return _down(1 - y, True)

    def preimage_ge(self, y, b, strict=False):
        if _rel(0, b, strict, ge=True):
            return ALL
        # positive values require x > 1-y and min(x, y) rel b
        if y == 0 or not _rel(y, b, strict, ge=True):
            return None
        if b > 1 - y:
            return _up(b, not strict)
        return _up(1 - y, False)

    def identity_on(self, c, j):
        jj = IntervalSet([j]).remove_point(0)
        if jj.is_empty:
            return True
        want = Component(1 - c, c, False, True) if 1 - c < c else None
        if want is None:
            return False
        return jj.intersect_component(want) == jj

    def __repr__(self):
        return "NilpotentMin"


@dataclass(frozen=True)
class ZeroSubnorm(TNormExpr):
    def __call__(self, x, y):
        return 0 * x

    def eval_np(self, x, y):
        return np.zeros(np.broadcast(x, y).shape)

    def is_tnorm(self):
        return False

    def has_zero_divisors(self):
        return True

    def idempotents(self):
        return IntervalSet.of_point(0)

    def is_exact(self):
        return True

    def section_image(self, c, j):
        return IntervalSet.of_point(0)

    def box_image(self, i, j):
        return IntervalSet.of_point(0)

    def preimage_le(self, y, d, strict=False):
        return ALL if _rel(0, d, strict, ge=False) else None

    def preimage_ge(self, y, b, strict=False):
        return ALL if _rel(0, b, strict, ge=True) else None

    def identity_on(self, c, j):
        return j.is_point and j.lo == 0

    def __repr__(self):
        return "ZeroSubnorm"


@dataclass(frozen=True)
class ScaledSubnorm(TNormExpr):
    """lam * inner(x, y) with 0 < lam < 1: always a proper subnorm bound."""

    lam: Num
    inner: TNormExpr

    def __post_init__(self):
        object.__setattr__(self, "lam", _norm(self.lam))
        if not (0 < self.lam < 1):
            raise ValueError("scale must be in (0, 1)")

    def __call__(self, x, y):
        return self.lam * self.inner(x, y)

    def eval_np(self, x, y):
        return float(self.lam) * self.inner.eval_np(x, y)

    def is_tnorm(self):
        return False

    def has_zero_divisors(self):
        return self.inner.has_zero_divisors()

    def idempotents(self):
        return IntervalSet.of_point(0)

    def is_exact(self):
        return is_exact(self.lam) and self.inner.is_exact()

    def section_image(self, c, j):
        return _scale_set(self.inner.section_image(c, j), self.lam)

    def box_image(self, i, j):
        return _scale_set(self.inner.box_image(i, j), self.lam)

    def preimage_le(self, y, d, strict=False):
        if d < 0:
            return None
        return self.inner.preimage_le(y, _ediv(d, self.lam), strict)

    def preimage_ge(self, y, b, strict=False):
        return self.inner.preimage_ge(y, _ediv(b, self.lam), strict)

    def identity_on(self, c, j):
        return j.is_point and j.lo == 0

    def __repr__(self):
        return f"Scaled({self.lam}, {self.inner!r})"


@dataclass(frozen=True)
class ForceNeutral(TNormExpr):
    """inner on [0,1)^2, min when either argument is 1: makes 1 neutral."""

    inner: TNormExpr

    def __call__(self, x, y):
        if x == 1 or y == 1:
            return min(x, y)
        return self.inner(x, y)

    def eval_np(self, x, y):
        return np.where((x == 1.0) | (y == 1.0), np.minimum(x, y),
                        self.inner.eval_np(x, y))

    def is_tnorm(self):
        return True

    def has_zero_divisors(self):
        return self.inner.has_zero_divisors()

    def idempotents(self):
        core = self.inner.idempotents().intersect_component(
            Component(0, 1, True, False))
        return core.union(IntervalSet.of_point(1))

    def is_exact(self):
        return self.inner.is_exact()

    def section_image(self, c, j):
        if c == 1:
            return IntervalSet([j])
        parts = []
        core = IntervalSet([j]).intersect_component(Component(0, 1, True, False))
        for comp in core:
            parts.extend(self.inner.section_image(c, comp).components)
        if j.contains(1):
            parts.append(mk_point(c))
        return IntervalSet(parts)

    def box_image(self, i, j):
        parts = []
        ic = IntervalSet([i]).intersect_component(Component(0, 1, True, False))
        jc = IntervalSet([j]).intersect_component(Component(0, 1, True, False))
        for a in ic:
            for b in jc:
                parts.extend(self.inner.box_image(a, b).components)
        if i.contains(1):
            parts.append(j)
        if j.contains(1):
            parts.append(i)
        return IntervalSet(parts)

    def preimage_le(self, y, d, strict=False):
        if y == 1:
            return _down(d, not strict)
        if _rel(y, d, strict, ge=False):
            return ALL
        core = self.inner.preimage_le(y, d, strict)
        if core is ALL or (core is not None and core[0] >= 1):
            return (1, False)  # x = 1 gives y, which failed the relation
        return core

    def preimage_ge(self, y, b, strict=False):
        if y == 1:
            return _up(b, not strict)
        core = self.inner.preimage_ge(y, b, strict)
        if core is not None:
            return core  # x = 1 qualifies too (value y >= any attained inner value)
        return (1, True) if _rel(y, b, strict, ge=True) else None

    def identity_on(self, c, j):
        if c == 1:
            return True
        if j.contains(1):
            return False
        return self.inner.identity_on(c, j)

    def __repr__(self):
        return f"ForceNeutral({self.inner!r})"


# ---------------------------------------------------------------------------
# ordinal sums


CLOSED_SQUARE = "closed"
HALF_OPEN = "half_open"


@dataclass(frozen=True)
class Summand:
    a: Num
    b: Num
    child: TNormExpr
    child_kind: str = ""  # "tnorm" | "tsubnorm", validated against the child

    def __post_init__(self):
        object.__setattr__(self, "a", _norm(self.a))
        object.__setattr__(self, "b", _norm(self.b))
        if not (0 <= self.a < self.b <= 1):
            raise ValueError(f"bad summand interval ({self.a}, {self.b})")
        kind = "tnorm" if self.child.is_tnorm() else "tsubnorm"
        if self.child_kind and self.child_kind != kind:
            raise ValueError(
                f"summand child on ({self.a},{self.b}) declared {self.child_kind} but is {kind}")
        object.__setattr__(self, "child_kind", kind)

    @property
    def width(self) -> Num:
        return self.b - self.a

    def range_component(self, semantics: str) -> Component:
        closed_lo = semantics == CLOSED_SQUARE
        return Component(self.a, self.b, closed_lo, True)

    def to_unit(self, v: Num) -> Num:
        return _ediv(v - self.a, self.width)

    def from_unit(self, v: Num) -> Num:
        return self.a + self.width * v


@dataclass(frozen=True)
class OrdinalSum(TNormExpr):
    """Rescaled children on disjoint squares, min elsewhere.

    ``closed`` semantics places each child on [a,b]^2 and requires t-norm
    children; ``half_open`` places them on (a,b]^2 and admits t-subnorm
    children subject to the adjacency rule: where one summand ends exactly at
    the start of the next, the lower child must be a t-norm or the upper
    child must have no zero divisors.
    """

    semantics: str
    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if self.semantics not in (CLOSED_SQUARE, HALF_OPEN):
            raise ValueError(f"unknown semantics {self.semantics!r}")
        ss = sorted(self.summands, key=lambda s: s.a)
        object.__setattr__(self, "summands", tuple(ss))
        if not ss:
            raise ValueError("ordinal sum needs at least one summand")
        for s1, s2 in zip(ss, ss[1:]):
            if s1.b > s2.a:
                raise ValueError(f"summand intervals overlap: {s1} / {s2}")
        if self.semantics == CLOSED_SQUARE:
            for s in ss:
                if not s.child.is_tnorm():
                    raise ValueError(
                        f"closed-square summand on ({s.a},{s.b}) needs a t-norm child")
        else:
            for s1, s2 in zip(ss, ss[1:]):
                if s1.b == s2.a and not s1.child.is_tnorm() \
                        and s2.child.has_zero_divisors():
                    raise ValueError(
                        f"touching summands at {s1.b}: lower child must be a t-norm "
                        "or upper child must have no zero divisors")

    def _locate(self, v: Num) -> Optional[Summand]:
        for s in self.summands:
            if s.range_component(self.semantics).contains(v):
                return s
        return None

    def __call__(self, x, y):
        for s in self.summands:
            r = s.range_component(self.semantics)
            if r.contains(x) and r.contains(y):
                return s.from_unit(s.child(s.to_unit(x), s.to_unit(y)))
        return min(x, y)

    def eval_np(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.minimum(x, y)
        for s in self.summands:
            a, b = float(s.a), float(s.b)
            if self.semantics == CLOSED_SQUARE:
                m = (x >= a) & (x <= b) & (y >= a) & (y <= b)
            else:
                m = (x > a) & (x <= b) & (y > a) & (y <= b)
            if m.any():
                w = b - a
                out = np.where(
                    m, a + w * s.child.eval_np((x - a) / w, (y - a) / w), out)
        return out

    def is_tnorm(self):
        top = self.summands[-1]
        if top.b == 1:
            return top.child.is_tnorm()
        return True

    def has_zero_divisors(self):
        bottom = self.summands[0]
        if bottom.a == 0:
            return bottom.child.has_zero_divisors()
        return False

    def idempotents(self):
        out = IntervalSet.of(0, 1)
        for s in self.summands:
            out = out.difference(IntervalSet([s.range_component(self.semantics)]))
        for s in self.summands:
            # diagonal inside the square follows the child's idempotents
            unit_part = Component(0, 1, self.semantics == CLOSED_SQUARE, True)
            inner = s.child.idempotents().intersect_component(unit_part)
            out = out.union(_scale_set(inner, s.width, s.a))
        return out

    def is_exact(self):
        return all(is_exact(s.a) and is_exact(s.b) and s.child.is_exact()
                   for s in self.summands)

    # -- set machinery ---------------------------------------------------------

    def _split(self, comp: Component) -> list:
        """Cut a component by the summand ranges: [(summand_or_None, piece)]."""
        pieces = []
        rest = IntervalSet([comp])
        for s in self.summands:
            r = s.range_component(self.semantics)
            inside = IntervalSet([comp]).intersect_component(r)
            for c in inside:
                pieces.append((s, c))
            rest = rest.difference(IntervalSet([r]))
        for c in rest:
            pieces.append((None, c))
        return pieces

    def section_image(self, c, j):
        s = self._locate(c)
        parts = []
        for tag, piece in self._split(j):
            if tag is s and s is not None:
                unit = Component(s.to_unit(piece.lo), s.to_unit(piece.hi),
                                 piece.lo_closed, piece.hi_closed)
                img = s.child.section_image(s.to_unit(c), unit)
                parts.extend(_scale_set(img, s.width, s.a).components)
            else:
                parts.extend(_min_section(c, piece).components)
        return IntervalSet(parts)

    def box_image(self, i, j):
        # at a shared closed-square endpoint both child and min rules apply;
        # t-norm children make them agree, so overlap is harmless
        parts = []
        for ti, pi in self._split(i):
            for tj, pj in self._split(j):
                if ti is tj and ti is not None:
                    s = ti
                    ui = Component(s.to_unit(pi.lo), s.to_unit(pi.hi),
                                   pi.lo_closed, pi.hi_closed)
                    uj = Component(s.to_unit(pj.lo), s.to_unit(pj.hi),
                                   pj.lo_closed, pj.hi_closed)
                    img = s.child.box_image(ui, uj)
                    parts.extend(_scale_set(img, s.width, s.a).components)
                else:
                    comp = _min_box(pi, pj)
                    if comp is not None:
                        parts.append(comp)
        return IntervalSet(parts)

    def preimage_le(self, y, d, strict=False):
        if _rel(y, d, strict, ge=False):
            return ALL
        s = self._locate(y)
        if s is None:
            return _down(d, not strict)
        if d < s.a or (d == s.a and strict):
            return _down(d, not strict)
        cut = s.child.preimage_le(s.to_unit(y), s.to_unit(d), strict)
        if cut is ALL:
            return _down(s.b, True)
        if cut is None:
            # in-square values start at s.a which already failed the relation
            return _down(s.a, False)
        return _down(s.from_unit(cut[0]), cut[1])

    def preimage_ge(self, y, b, strict=False):
        if _rel(0, b, strict, ge=True):
            return ALL
        s = self._locate(y)
        if s is None:
            # min section
            if not _rel(y, b, strict, ge=True):
                return None
            return _up(b, not strict)
        if b < s.a or (b == s.a and not strict):
            # crossing happens in the plain-min zone below the square
            return _up(b, not strict)
        cut = s.child.preimage_ge(s.to_unit(y), s.to_unit(b), strict)
        if cut is not None and cut is not ALL:
            return _up(s.from_unit(cut[0]), cut[1])
        if cut is ALL:  # unreachable for valid children; safe fallback
            return _up(s.a, False)
        # child never reaches: maybe the region above the square does (value y)
        if _rel(y, b, strict, ge=True):
            return _up(s.b, False)
        return None

    def identity_on(self, c, j):
        s = self._locate(c)
        for tag, piece in self._split(j):
            if tag is s and s is not None:
                unit = Component(s.to_unit(piece.lo), s.to_unit(piece.hi),
                                 piece.lo_closed, piece.hi_closed)
                if not s.child.identity_on(s.to_unit(c), unit):
                    return False
            # min pieces: value min(c, v) = v for v <= c, fine
        return True

    def __repr__(self):
        inner = ", ".join(f"({s.a},{s.b},{s.child!r})" for s in self.summands)
        return f"OrdinalSum[{self.semantics}]({inner})"


# ---------------------------------------------------------------------------
# derived constructions


def bar_lift(f: TNormExpr) -> OrdinalSum:
    """The t-norm carrying a proper t-subnorm on [0, 1/2]^2, min elsewhere."""
    if f.is_tnorm():
        raise ValueError("bar lift applies to proper t-subnorms only")
    return OrdinalSum(HALF_OPEN, (Summand(0, HALF, f),))


def canonical_summands(f: TNormExpr) -> tuple:
    """View any expression as an ordinal-sum summand list."""
    if isinstance(f, OrdinalSum):
        return f.summands
    return (Summand(0, 1, f),)


def sum_semantics(f: TNormExpr) -> str:
    if isinstance(f, OrdinalSum):
        return f.semantics
    return CLOSED_SQUARE if f.is_tnorm() else HALF_OPEN


@dataclass(frozen=True)
class SummandViews:
    """Per-summand operators used by the ordinal-sum checkers."""

    unit: TNormExpr               # the child on the unit square
    on_interval: object           # callable on [a,b]^2
    bar_unit: Optional[TNormExpr]       # rescaled-to-half lift (proper subnorm only)
    underline_unit: Optional[TNormExpr]  # child with the top edge forced to min


def summand_views(f: TNormExpr, index: int) -> SummandViews:
    ss = canonical_summands(f)
    s = ss[index]

    def on_interval(x, y):
        return s.from_unit(s.child(s.to_unit(x), s.to_unit(y)))

    if s.child.is_tnorm():
        bar = None
    else:
        bar = bar_lift(s.child)
    return SummandViews(
        unit=s.child,
        on_interval=on_interval,
        bar_unit=bar,
        underline_unit=ForceNeutral(s.child),
    )


MIN = MinT()
PRODUCT = ProductT()
LUKASIEWICZ = LukasiewiczT()
NILPOTENT_MIN = NilpotentMinT()
ZERO = ZeroSubnorm()


# -- set-level wrappers --------------------------------------------------------


def set_section_image(f: TNormExpr, c: Num, s: IntervalSet) -> IntervalSet:
    return IntervalSet.union_all(f.section_image(c, comp) for comp in s)


def set_box_image(f: TNormExpr, s1: IntervalSet, s2: IntervalSet) -> IntervalSet:
    parts = []
    for a in s1:
        for b in s2:
            parts.append(f.box_image(a, b))
    return IntervalSet.union_all(parts)


def preimage_of_component(f: TNormExpr, y: Num, target: Component) -> Optional[Component]:
    """{x in [0,1] : F(x, y) in target} as one interval (sections are monotone)."""
    le = f.preimage_le(y, target.hi, strict=not target.hi_closed)
    ge = f.preimage_ge(y, target.lo, strict=not target.lo_closed)
    lo_c = down_component(le)
    hi_c = up_component(ge)
    if lo_c is None or hi_c is None:
        return None
    got = IntervalSet([lo_c]).intersect_component(hi_c)
    if got.is_empty:
        return None
    assert len(got) == 1
    return got.components[0]


def preimage_of_set(f: TNormExpr, y: Num, target: IntervalSet) -> IntervalSet:
    comps = []
    for t in target:
        c = preimage_of_component(f, y, t)
        if c is not None:
            comps.append(c)
    return IntervalSet(comps)
