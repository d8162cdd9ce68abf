"""Classification of generated t-norms.

Every t-norm is an ordinal sum of semigroup summands; up to that view the
possibilities split into exactly three classes: the minimum itself, the
ordinally irreducible t-norms (only the trivial sum representation), and the
t-norms with a genuine non-trivial sum structure.  The classifier decides
which class the generated function lands in, or reports a verified
non-associativity / non-t-norm witness instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .generated import GeneratedT
from .intervals import Component, IntervalSet
from .monotone import PiecewiseIncreasingFn
from .numerics import Num
from .tnorms import TNormExpr, canonical_summands
from .verify import (
    CheckOptions,
    Verdict,
    Witness,
    check_minimum,
    check_tnorm,
    decompose,
)

MINIMUM = "TM"
ORDINALLY_IRREDUCIBLE = "OrdinallyIrreducible"
NON_TRIVIAL_SUM = "NonTrivialOrdinalSum"
NOT_ASSOCIATIVE = "NotAssociative"
NOT_TNORM = "NotATNorm"
UNKNOWN = "Undetermined"


@dataclass
class Classification:
    kind: str
    trace: list = field(default_factory=list)
    witness: Optional[Witness] = None
    note: str = ""

    def __repr__(self):
        return f"Classification({self.kind})"


def _probe_xs(f: PiecewiseIncreasingFn, grid: int) -> list:
    lo, hi = f.domain
    xs = set(b for b in f.breakpoints())
    w = hi - lo
    for i in range(1, grid):
        xs.add(lo + w * Fraction(i, grid))
    return sorted(x for x in xs if lo < x < hi)


def _splitting_pair(gt: GeneratedT, x: Num, grid: int) -> Optional[tuple]:
    """A pair y < x < z with T(y, z) < y, certifying that no cut point at x
    survives; None when no probed pair works."""
    f = gt.f
    lo, hi = f.domain
    snap = 0 if gt.exact else 1e-12
    ys = [lo + (x - lo) * Fraction(k, 4) for k in (3, 2, 1)] \
        + [b for b in f.breakpoints() if lo < b < x]
    zs = [x + (hi - x) * Fraction(k, 4) for k in (1, 2, 3)] \
        + [b for b in f.breakpoints() if x < b < hi] + [hi]
    for k in range(1, grid):
        ys.append(lo + (x - lo) * Fraction(k, grid))
        zs.append(x + (hi - x) * Fraction(k, grid))
    for y in ys:
        left, _ = f.side_limits(y)
        for z in zs:
            if gt.tnorm(f(y), f(z)) < left - snap:
                return (y, z)
    return None


def classify(f: PiecewiseIncreasingFn, tnorm: TNormExpr,
             options: Optional[CheckOptions] = None) -> Classification:
    """Pipeline: t-norm check, then the minimum test, then the irreducibility
    gates, else the non-trivial-sum evidence."""
    opts = options or CheckOptions()
    trace = []

    verdict = check_tnorm(f, tnorm, opts)
    trace.extend(verdict.trace)
    if verdict.refuted:
        if verdict.witness is not None and verdict.witness.kind == "neutral":
            trace.append(("classification", "associative but 1 is not neutral"))
            return Classification(NOT_TNORM, trace, witness=verdict.witness)
        trace.append(("classification", "not associative"))
        return Classification(NOT_ASSOCIATIVE, trace, witness=verdict.witness)
    if verdict.status != "proven":
        return Classification(UNKNOWN, trace, note=verdict.note)

    rep = check_minimum(f, tnorm)
    if rep.holds and rep.certain:
        trace.append(("minimum test", "T coincides with min"))
        return Classification(MINIMUM, trace)
    if not rep.certain:
        trace.append(("minimum test", rep.detail))
        return Classification(UNKNOWN, trace, note=rep.detail)
    trace.append(("minimum test", f"T differs from min: {rep.detail}"))

    gt = GeneratedT(f, tnorm)
    entries = decompose(f, tnorm)
    lo, hi = f.domain
    interior_image = f.range_of().remove_point(f(lo)).remove_point(f(hi))

    # irreducibility gates: single engaged summand whose value interval
    # swallows the whole interior image, plus splitting pairs everywhere
    if len(entries) == 1:
        e = entries[0]
        open_band = IntervalSet.of(e.summand.a, e.summand.b, False, False)
        inside = interior_image.difference(open_band).is_empty
        if inside:
            xs = _probe_xs(f, opts.probe_grid)
            missing = [x for x in xs
                       if _splitting_pair(gt, x, opts.probe_grid) is None]
            if not missing:
                trace.append(("irreducibility",
                              "single summand covers the interior image; "
                              "splitting pairs found at every probe"))
                return Classification(ORDINALLY_IRREDUCIBLE, trace)
            trace.append(("irreducibility",
                          f"no splitting pair at {len(missing)} probes "
                          f"starting at x={missing[0]}"))
            # a genuine cut point certifies a non-trivial sum; try to confirm
            # one structurally before claiming the class
            for x in missing:
                if _confirmed_cut(gt, x):
                    trace.append(("sum structure", f"cut point at x={x}"))
                    return Classification(NON_TRIVIAL_SUM, trace,
                                          witness=_min_witness(rep))
            return Classification(
                UNKNOWN, trace,
                note=f"probes neither split nor certify a cut at x={missing[0]}")
        out = interior_image.difference(open_band)
        trace.append(("irreducibility",
                      f"interior image leaves the summand band: {out}"))
        return Classification(NON_TRIVIAL_SUM, trace, witness=_min_witness(rep))

    trace.append(("sum structure",
                  f"{len(entries)} engaged summands"))
    return Classification(NON_TRIVIAL_SUM, trace, witness=_min_witness(rep))


def _min_witness(rep) -> Optional[Witness]:
    if rep.witness is None:
        return None
    x, y = rep.witness
    return Witness("min-gap", (x, y), 0, 0)


def _confirmed_cut(gt: GeneratedT, x: Num) -> bool:
    """Certify T(y, z) = min(y, z) whenever y < x < z: the section of the
    operation at the infimum of the upper image must act as identity below."""
    f = gt.f
    lo, hi = f.domain
    upper_inf = f.side_limits(x)[1]
    lower = IntervalSet([Component(f(lo), f(x), True, True)]).intersect(f.range_of())
    for comp in lower:
        if not gt.tnorm.identity_on(upper_inf, comp):
            return False
    return True
