"""Max-plus numbers, tropical polynomials and corner-locus cells."""

from __future__ import annotations

import os
import random
from fractions import Fraction

import pytest

from tropleg.fields import QQ
from tropleg.poly import MultiPoly
from tropleg.series import NEG_INF, TruncatedSeries, valuation
from tropleg.tropical import (CONVENTION, TropicalCell, TropicalNumber,
                              TropicalPolynomial, corner_locus_cells,
                              trop_eval, tropical_surface_pipeline,
                              tropicalize_poly)


def rand_trop(rng):
    if rng.random() < 0.15:
        return TropicalNumber.zero()
    return TropicalNumber(Fraction(rng.randint(-20, 20), rng.randint(1, 4)))


def rand_trop_poly(rng, n_terms):
    terms = {}
    while len(terms) < n_terms:
        exp = tuple(rng.randint(0, 2) for _ in range(3))
        terms[exp] = rng.randint(-5, 5)
    return TropicalPolynomial(("X", "Y", "Z"), sorted(terms.items()))


# ----------------------------------------------------------------------
# the semiring
# ----------------------------------------------------------------------

def test_tropical_number_semiring_laws():
    assert CONVENTION == "max-plus"
    rng = random.Random(41)
    zero, one = TropicalNumber.zero(), TropicalNumber.one()
    assert zero.is_zero() and repr(zero) == "-oo"
    for _ in range(120):
        a, b, c = rand_trop(rng), rand_trop(rng), rand_trop(rng)
        assert (a + b) == (b + a) and (a * b) == (b * a)
        assert ((a + b) + c) == (a + (b + c))
        assert ((a * b) * c) == (a * (b * c))
        assert (a * (b + c)) == (a * b + a * c)
        assert (a + zero) == a and (a * one) == a
        assert (a * zero).is_zero()
        assert (a + a) == a                      # addition is idempotent
    assert TropicalNumber(3) + 5 == 5 and TropicalNumber(3) * 5 == 8
    assert TropicalNumber(2) ** 3 == 6
    assert TropicalNumber.zero() ** 0 == 0
    assert TropicalNumber(1) < TropicalNumber(2) <= 2
    with pytest.raises(TypeError):
        TropicalNumber(1.5)


def test_tropical_polynomial_validation():
    with pytest.raises(ValueError):
        TropicalPolynomial(("X", "Y"), [((1, 0, 0), 0)])
    with pytest.raises(ValueError):
        TropicalPolynomial(("X",), [((1,), 0), ((1,), 2)])
    with pytest.raises(ValueError):
        TropicalPolynomial(("X",), [])
    f = TropicalPolynomial(("X",), [((1,), TropicalNumber(4))])
    assert f.terms == (((1,), 4),)
    g = TropicalPolynomial(("X", "Y"), [((1, 0), 2), ((0, 1), 3)])
    h = TropicalPolynomial(("X", "Y"), [((0, 1), 3), ((1, 0), 2)])
    assert g == h and "max(" in repr(g)


def test_trop_eval_reports_exact_argmax():
    f = TropicalPolynomial(("X", "Y", "Z"),
                           [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 0), 1),
                            ((0, 0, 1), NEG_INF)])
    value, argmax = trop_eval(f, (1, 0, 0))
    assert value == 1 and argmax == (0, 2)
    value, argmax = f.eval((2, 0, 100))
    assert value == 2 and argmax == (0,)   # the -oo term never wins
    value, argmax = trop_eval(f, (Fraction(1, 2), Fraction(1, 2), 0))
    assert value == 1 and argmax == (2,)
    with pytest.raises(ValueError):
        trop_eval(f, (0, 0))


# ----------------------------------------------------------------------
# tropicalization
# ----------------------------------------------------------------------

def test_tropicalize_poly_takes_top_degrees():
    g = MultiPoly(QQ, {
        (1, 0, 0, 0): TruncatedSeries.from_terms(QQ, [(3, 2), (-1, 5)]),
        (0, 0, 0, 1): TruncatedSeries.from_terms(QQ, [(-7, 1)]),
    })
    f = tropicalize_poly(g)
    assert f.vars == ("X", "Y", "Z", "W")
    assert dict(f.terms) == {(1, 0, 0, 0): 3, (0, 0, 0, 1): -7}


def test_tropicalize_poly_drops_zero_coefficients_with_warning():
    g = MultiPoly(QQ, {(1, 0, 0, 0): TruncatedSeries.one(QQ)})
    g.coeffs[(0, 1, 0, 0)] = TruncatedSeries.zero(QQ)
    with pytest.warns(RuntimeWarning):
        f = tropicalize_poly(g)
    assert f.terms == (((1, 0, 0, 0), 0),)
    with pytest.raises(ValueError):
        tropicalize_poly(MultiPoly.zero(QQ))


def trop_point(pt):
    vals = []
    for c in pt:
        if not isinstance(c, TruncatedSeries):
            c = TruncatedSeries.constant(QQ, c)
        vals.append(valuation(c))
    return tuple(v - vals[3] for v in vals[:3])


def test_surface_pipeline_structure_and_input_points():
    p1 = [TruncatedSeries.from_terms(QQ, [(-1, 1)]),
          TruncatedSeries.from_terms(QQ, [(2, 1)]),
          TruncatedSeries.one(QQ), TruncatedSeries.one(QQ)]
    p2 = (1, 2, 3, 1)
    p3 = (2, -1, 1, 1)
    f = tropical_surface_pipeline(p1, p2, p3)
    assert f.vars == ("X", "Y", "Z")
    assert len(f.terms) == 20
    exps = {e for e, _ in f.terms}
    assert len(exps) == 20 and all(sum(e) <= 3 for e in exps)
    assert all(isinstance(c, int) for _, c in f.terms)
    # the three input points vanish on the pulled-back surface, so their
    # tropicalizations must land on the corner locus (a tie in the max)
    for pt in (p1, p2, p3):
        _, argmax = trop_eval(f, trop_point(pt))
        assert len(argmax) >= 2


# ----------------------------------------------------------------------
# corner-locus cells
# ----------------------------------------------------------------------

def test_corner_locus_of_a_plane():
    f = TropicalPolynomial(("X", "Y", "Z"), [((1, 0, 0), 0), ((0, 0, 0), 0)])
    cells = corner_locus_cells(f, [(-5, 5)] * 3)
    assert len(cells) == 1
    cell = cells[0]
    assert cell.indices == (0, 1) and cell.dim == 2
    assert cell.equality == ((1, 0, 0), 0)
    assert cell.inequalities == []
    assert sorted(cell.vertices) == [
        (0, -5, -5), (0, -5, 5), (0, 5, -5), (0, 5, 5)]


def test_corner_locus_validation():
    f = TropicalPolynomial(("X", "Y"), [((1, 0), 0), ((0, 0), 0)])
    with pytest.raises(ValueError):
        corner_locus_cells(f, [(-5, 5)] * 3)
    g = TropicalPolynomial(("X", "Y", "Z"), [((1, 0, 0), 0), ((0, 0, 0), 0)])
    with pytest.raises(ValueError):
        corner_locus_cells(g, [(-5, 5), (5, -5), (-5, 5)])


def test_cells_are_exact_tie_and_dominate_regions():
    rng = random.Random(47)
    bbox = [(-10, 10)] * 3
    for _ in range(12):
        f = rand_trop_poly(rng, rng.randint(3, 6))
        for cell in corner_locus_cells(f, bbox):
            i, j = cell.indices
            normal, const = cell.equality
            for v in cell.vertices:
                assert all(bbox[k][0] <= v[k] <= bbox[k][1] for k in range(3))
                assert sum(n * c for n, c in zip(normal, v)) + const == 0
                for vec, cst in cell.inequalities:
                    assert sum(a * c for a, c in zip(vec, v)) + cst >= 0
                value, argmax = trop_eval(f, v)
                assert i in argmax and j in argmax
            assert cell.dim in (0, 1, 2)


def test_thread_count_env_does_not_change_cells():
    rng = random.Random(53)
    f = rand_trop_poly(rng, 8)
    bbox = [(-10, 10)] * 3
    serial = corner_locus_cells(f, bbox)
    old = os.environ.get("TROPLEG_THREADS")
    os.environ["TROPLEG_THREADS"] = "2"
    try:
        parallel = corner_locus_cells(f, bbox)
    finally:
        if old is None:
            del os.environ["TROPLEG_THREADS"]
        else:
            os.environ["TROPLEG_THREADS"] = old
    assert serial == parallel
