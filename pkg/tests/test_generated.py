import math
from fractions import Fraction

import pytest

from tnf.generated import GapSystem, GeneratedT, gap_system
from tnf.intervals import IntervalSet
from tnf.monotone import Exponential, Linear, Piece, PiecewiseIncreasingFn
from tnf.tnorms import (
    CLOSED_SQUARE,
    LUKASIEWICZ,
    MIN,
    PRODUCT,
    OrdinalSum,
    Summand,
)

F = Fraction
E_1 = math.exp(-1)


def exp_gen():
    return PiecewiseIncreasingFn.single(Exponential(0.0, E_1, 1.0))


def f_31ii():
    # h(x) = x/2 below one half, identity above; value 1/4 at the jump point
    return PiecewiseIncreasingFn(
        [Piece(0, Linear(F(1, 2), 0), 0),
         Piece(F(1, 2), Linear(1, 0), F(1, 4))],
        1)


def f_31iv():
    return PiecewiseIncreasingFn(
        [Piece(0, Linear(F(1, 2), 0), 0),
         Piece(0.5, Exponential(0.5, 0.5 * math.exp(-2), 2.0), 0.25)],
        1.0)


def f2():
    return OrdinalSum(CLOSED_SQUARE, (
        Summand(0, F(1, 2), LUKASIEWICZ),
        Summand(F(1, 2), 1, PRODUCT),
    ))


def f_41iii():
    return PiecewiseIncreasingFn(
        [Piece(0, Linear(F(4, 5), 0), 0),
         Piece(0.5, Exponential(0.5, 0.5 * math.exp(-2), 2.0), 0.5 + 0.5 * E_1)],
        1.0)


class TestGapSystem:
    def test_full_range(self):
        # the distinguished degenerate system: one zero-length gap at the top
        sys = gap_system(PiecewiseIncreasingFn.identity())
        assert sys.full_range
        g, = sys.gaps
        assert (g.lo, g.hi, g.rep) == (1, 1, 1)

    def test_bottom_boundary_gap(self):
        sys = gap_system(exp_gen())
        assert len(sys) == 1
        g = sys.gaps[0]
        assert g.lo == 0 and g.hi == pytest.approx(E_1) and g.rep == g.hi

    def test_jump_gap(self):
        sys = gap_system(f_41iii())
        assert len(sys) == 1
        g = sys.gaps[0]
        assert g.lo == pytest.approx(0.4)
        assert g.hi == pytest.approx(0.5 + 0.5 * E_1)
        assert g.rep == g.hi

    def test_jump_with_representative_at_bottom(self):
        sys = gap_system(f_31ii())
        g, = sys.gaps
        assert (g.lo, g.hi, g.rep) == (F(1, 4), F(1, 2), F(1, 4))

    def test_endpoint_jump_merges_with_boundary_gap(self):
        # f = x/2 below 1, f(1) = 9/10: the jump gap [1/2, 9/10] and the top
        # boundary gap [9/10, 1] share the representative and merge
        f = PiecewiseIncreasingFn([Piece(0, Linear(F(1, 2), 0), 0)], F(9, 10))
        sys = gap_system(f)
        g, = sys.gaps
        assert (g.lo, g.hi, g.rep) == (F(1, 2), 1, F(9, 10))

    def test_two_sided_jump(self):
        f = PiecewiseIncreasingFn(
            [Piece(0, Linear(F(1, 2), 0), 0),
             Piece(F(1, 2), Linear(F(1, 2), F(1, 2)), F(2, 5))],
            1)
        # jump at 1/2: left limit 1/4, value 2/5, right limit 3/4
        sys = gap_system(f)
        g, = sys.gaps
        assert (g.lo, g.hi, g.rep) == (F(1, 4), F(3, 4), F(2, 5))
        assert sys.locate(F(3, 10)) is g


class TestProjection:
    def test_identity_on_range(self):
        t = GeneratedT(exp_gen(), PRODUCT)
        for v in (E_1, 0.5, 0.75, 1.0):
            assert t.project(v) == pytest.approx(v)

    def test_gap_maps_to_representative(self):
        t = GeneratedT(exp_gen(), PRODUCT)
        assert t.project(0.2) == pytest.approx(E_1)

    def test_representative_is_fixed(self):
        t = GeneratedT(f_31ii(), f2())
        assert t.project(F(1, 4)) == F(1, 4)

    def test_nondecreasing(self):
        t = GeneratedT(f_31ii(), f2())
        grid = [F(k, 40) for k in range(41)]
        vals = [t.project(v) for v in grid]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestInduced:
    def test_stays_when_in_range(self):
        t = GeneratedT(exp_gen(), PRODUCT)
        assert t.induced(0.9, 0.9) == pytest.approx(0.81)

    def test_collapses_into_gap(self):
        t = GeneratedT(exp_gen(), PRODUCT)
        assert t.induced(0.5, 0.5) == pytest.approx(E_1)

    def test_min_always_in_range(self):
        t = GeneratedT(f_31ii(), MIN)
        for x in (F(1, 8), F(1, 4), F(3, 4), 1):
            for y in (F(1, 8), F(7, 8)):
                assert t.induced(x, y) == min(x, y)

    def test_membership_error(self):
        t = GeneratedT(f_31ii(), MIN)
        with pytest.raises(ValueError):
            t.induced(F(3, 10), F(1, 8))  # 3/10 lies in the gap


class TestGeneratedValues:
    def test_lukasiewicz_from_exp_product(self):
        t = GeneratedT(exp_gen(), PRODUCT)
        assert t(0.7, 0.6) == pytest.approx(0.3)

    def test_31iv_breaking_point(self):
        t = GeneratedT(f_31iv(), f2())
        assert t(0.75, 0.75) == pytest.approx(0.5)
        assert t(0.5, 0.5) == 0
        assert t(0.75, 0.5) == pytest.approx(0.5)

    def test_min_conjugation_is_min(self):
        t = GeneratedT(f_31ii(), MIN)
        assert t(F(1, 5), F(9, 10)) == F(1, 5)


class TestBridges:
    def test_projection_composition_bridge(self):
        # f(T(x, y)) equals induced(f(x), f(y)) on a grid
        for f, tn in ((f_31ii(), f2()), (exp_gen(), PRODUCT), (f_41iii(), f2())):
            t = GeneratedT(f, tn)
            grid = [F(k, 16) for k in range(17)]
            for x in grid:
                for y in grid:
                    lhs = f(t(x, y))
                    rhs = t.induced(f(x), f(y))
                    assert abs(lhs - rhs) <= 1e-9

    def test_projection_separation(self):
        # project(x) != project(y) iff the open span (x, y) meets the range
        # minus the representatives
        for f in (f_31ii(), f_41iii()):
            t = GeneratedT(f, MIN)
            interior = t.interior_values()
            grid = [F(k, 32) for k in range(33)]
            for x in grid:
                for y in grid:
                    if x >= y:
                        continue
                    differs = t.project(x) != t.project(y)
                    span = IntervalSet.of(x, y, False, False)
                    meets = not span.intersect(interior).is_empty
                    if not t.exact:
                        got = span.intersect(interior)
                        if not got.is_empty and got.total_width() < 1e-12:
                            continue
                    assert differs == meets, (f, x, y)

    def test_induced_mismatch_lands_in_gap(self):
        t = GeneratedT(exp_gen(), PRODUCT)
        pts = [E_1, 0.4, 0.5, 0.7, 0.9, 1.0]
        for x in pts:
            for y in pts:
                v = t.tnorm(x, y)
                got = t.induced(x, y)
                if abs(got - v) > 1e-12:
                    g = t.gaps.locate(v, tol=1e-12)
                    assert g is not None
                    assert got == pytest.approx(g.rep)

    def test_commutative_monotone_bounded(self):
        for f, tn in ((f_31ii(), f2()), (f_41iii(), f2())):
            t = GeneratedT(f, tn)
            grid = sorted(set([F(k, 16) for k in range(17)] +
                              [F(1, 2), F(3, 4)]))
            vals = {(x, y): t(x, y) for x in grid for y in grid}
            for x in grid:
                for y in grid:
                    assert vals[(x, y)] == vals[(y, x)]
                    assert vals[(x, y)] <= min(x, y) + 1e-12
                row = [vals[(x, y)] for y in grid]
                assert all(a <= b + 1e-12 for a, b in zip(row, row[1:]))

    def test_vectorized_matches_scalar(self):
        import numpy as np

        t = GeneratedT(f_41iii(), f2())
        xs = np.linspace(0, 1, 41)
        X, Y = np.meshgrid(xs, xs)
        got = t.eval_np(X.ravel(), Y.ravel())
        for xv, yv, g in zip(X.ravel(), Y.ravel(), got):
            assert g == pytest.approx(float(t(xv, yv)), abs=1e-12)
