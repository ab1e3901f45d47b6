"""Monomial Newton refinement, tropical sampling and vertex assembly."""

from __future__ import annotations

import pytest

from tropleg.contact import ParametrizedCurve
from tropleg.errors import (DegeneracyError, ExtensionRequiredError,
                            StagnationError)
from tropleg.fields import QQ, PrimeField
from tropleg.poly import SeriesPoly
from tropleg.sampling import (NewtonSeed, SampledPoint, newton_root,
                              newton_root_with_trace, reconstruct_vertices,
                              residual_degree, sample_point, scan_seeds,
                              sweep, transformed_family)
from tropleg.series import NEG_INF, TruncatedSeries


def series(field, pairs):
    return TruncatedSeries.from_terms(field, pairs)


def square_difference():
    """f(s) = s^2 - t^2, whose roots are the monomials +-t."""
    s = SeriesPoly.variable_s(QQ)
    t2 = SeriesPoly.from_series(series(QQ, [(2, 1)]))
    return s * s - t2


F2897 = PrimeField(2897)


def worked_family():
    mono = lambda e, c=1: TruncatedSeries.monomial(F2897, e, c)
    p1 = (mono(-4), mono(-4), mono(4), mono(0))
    p2 = (mono(12, 3), mono(-8, 4), mono(12, 5), mono(0))
    p3 = (mono(16, 6), mono(8, 7), mono(32, 2), mono(0))
    return transformed_family(p1, p2, p3, F2897), mono(2)


# ----------------------------------------------------------------------
# Newton refinement
# ----------------------------------------------------------------------

def test_newton_seed_validation():
    s0 = TruncatedSeries.one(QQ)
    with pytest.raises(ValueError):
        NewtonSeed(s0, 0)
    with pytest.raises(ValueError):
        NewtonSeed(s0, "3")


def test_newton_rejects_bad_polynomials():
    m = SeriesPoly.variable_m(QQ)
    with pytest.raises(ValueError):
        newton_root(m, NewtonSeed(TruncatedSeries.one(QQ), 1))
    with pytest.raises(ValueError):
        newton_root(SeriesPoly.zero(QQ), NewtonSeed(TruncatedSeries.one(QQ), 1))


def test_newton_hits_exact_root_immediately():
    f = square_difference()
    root, trace = newton_root_with_trace(
        f, NewtonSeed(series(QQ, [(1, 1)]), 5))
    assert root.items() == [(1, 1)]
    assert trace == [(1, NEG_INF, None, None)]
    assert residual_degree(f, root) == NEG_INF


def test_newton_stagnates_from_constant_seed():
    f = square_difference()
    with pytest.raises(StagnationError) as err:
        newton_root_with_trace(f, NewtonSeed(TruncatedSeries.constant(QQ, 1), 8))
    # the residual degree climbs to 4 and stays there for three steps
    assert err.value.trace == [(1, 2, 0, 2), (2, 4, 2, 2),
                               (3, 4, 2, 2), (4, 4, 2, 2)]


def test_newton_needs_simple_root():
    f = square_difference()
    with pytest.raises(ExtensionRequiredError):
        newton_root(f, NewtonSeed(TruncatedSeries.zero(QQ), 3))


def test_scan_seeds_ranks_converged_first():
    reports = scan_seeds(square_difference(), [1, -1], [1, 0], k=4)
    assert [r.note for r in reports] == ["", "", "stagnated", "stagnated"]
    assert all(r.residual_degree == NEG_INF for r in reports[:2])
    assert {r.exponent for r in reports[:2]} == {1}
    assert all(r.residual_degree == 4 for r in reports[2:])


# ----------------------------------------------------------------------
# sampling the worked family
# ----------------------------------------------------------------------

def test_worked_family_shape():
    curve, _ = worked_family()
    for comp in curve.components:
        assert comp.s_degree() == 3 and comp.uses_m()
    fixed = curve.subs_m(TruncatedSeries.monomial(F2897, 2, 1))
    degs = sorted((j, c.degree())
                  for (j, _), c in fixed.components[0].coeffs.items())
    assert degs == [(0, 96), (1, 114), (2, 112), (3, 114)]


def test_worked_family_newton_trace_and_root():
    curve, m0 = worked_family()
    fx = curve.subs_m(m0).components[0]
    seed = NewtonSeed(TruncatedSeries.monomial(F2897, -18, 1), 10)
    root, trace = newton_root_with_trace(fx, seed)
    assert trace[:3] == [(1, 96, 114, -18), (2, 94, 114, -20),
                         (3, 92, 114, -22)]
    assert [row[1] for row in trace] == list(range(96, 76, -2))
    assert len(root.items()) == 10
    assert residual_degree(fx, root) == 76
    point = sample_point(root, m0, curve, axis="x").point
    assert point == (-24, -4, 4)


def test_sweep_and_point_sampling():
    curve, m0 = worked_family()
    pts = sweep(curve, m0, range(-4, -1))
    assert [sp.point for sp in pts] == [(10, -4, 6), (11, -3, 7), (12, -2, 8)]
    at_one = sample_point(TruncatedSeries.constant(F2897, 1), m0, curve)
    assert at_one.point == (12, -8, 12) and at_one.axis is None
    with pytest.raises(ValueError):
        sample_point(TruncatedSeries.one(F2897), m0, curve, axis="q")


def test_sample_point_degenerate_and_vanishing_coordinates():
    s = SeriesPoly.variable_s(QQ)
    one = SeriesPoly.from_series(TruncatedSeries.one(QQ))
    curve = ParametrizedCurve.from_components((s, one, one, s))
    with pytest.raises(DegeneracyError):
        sample_point(TruncatedSeries.zero(QQ), 0, curve)
    curve2 = ParametrizedCurve.from_components((s, one, one, one))
    sp = sample_point(TruncatedSeries.zero(QQ), 0, curve2)
    assert sp.point == (NEG_INF, 0, 0)


# ----------------------------------------------------------------------
# vertex reconstruction
# ----------------------------------------------------------------------

def test_reconstruct_vertices_validation():
    with pytest.raises(ValueError):
        reconstruct_vertices([])
    bare = SampledPoint(TruncatedSeries.one(QQ), (0, 0, 0))
    with pytest.raises(ValueError):
        reconstruct_vertices([bare])


def test_reconstruct_vertices_from_root_samples():
    s1 = TruncatedSeries.one(QQ)
    samples = [
        SampledPoint(s1, (-24, -4, 4), "x"),
        SampledPoint(s1, (-8, -2, 12), "x"),
        SampledPoint(s1, (-4, 8, 32), "x"),
        SampledPoint(s1, (10, -44, 6), "y"),
        SampledPoint(s1, (12, -28, 12), "y"),
        SampledPoint(s1, (22, -12, 32), "y"),
        SampledPoint(s1, (8, -4, -16), "z"),
        SampledPoint(s1, (44, 30, 52), "w"),
    ]
    rec = reconstruct_vertices(samples)
    assert rec.vertices == [(8, -4, 4), (12, -2, 12), (22, 8, 32),
                            (10, -4, 6), (14, 0, 22)]
    assert len(rec.graph.rays) == 8
    assert len(rec.ambiguities) == 2
    assert all("no matching" in a for a in rec.ambiguities)
    assert rec.tables["x"] == [(-4, 4), (-2, 12), (8, 32)]


def test_reconstruct_vertices_flags_duplicate_legs():
    s1 = TruncatedSeries.one(QQ)
    samples = [
        SampledPoint(s1, (13, -1, -3), "z"),
        SampledPoint(s1, (13, -1, -3), "z"),
    ]
    rec = reconstruct_vertices(samples)
    assert rec.vertices == [(13, -1, 12)]
    assert any("twice" in a for a in rec.ambiguities)
