"""Quadric restriction, quadratic normal forms and leaf classification."""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial, gcd

import pytest

from tropleg.contact import ContactForm, general_contact_eval
from tropleg.fields import QQ, PrimeField
from tropleg.quadric import (CONSTANT, FORM_EQUATIONS, FORM_NAMES, LINEAR,
                             PURE_SQUARE, SQUARE_MINUS_ONE,
                             classify_quadric_curve, normalize_quadratic,
                             ode_pair_solution, ode_series_solution,
                             power_curve, power_curve_form, quadric_lift,
                             restrict_to_quadric)


def model_rhs(nf, x):
    """Right-hand side reconstructed from a normal form at the point x."""
    if nf.tag == CONSTANT:
        return nf.rate
    v = (x - nf.shift) / nf.stretch
    if nf.tag == LINEAR:
        return nf.rate * v * nf.stretch
    if nf.tag == PURE_SQUARE:
        return nf.rate * (x - nf.shift) ** 2
    return nf.rate * (v * v - 1) * nf.stretch


# ----------------------------------------------------------------------
# restriction to the quadric chart
# ----------------------------------------------------------------------

def test_restriction_coefficient_triples():
    pair = restrict_to_quadric(ContactForm(QQ, p=3, c=1))
    assert pair.mu == (0, -2, 0)
    assert pair.nu == (0, -4, 0)
    pair = restrict_to_quadric(ContactForm(QQ, p=2, q=1, r=3, a=-1, b=2, c=1))
    assert pair.mu == (2, -1, 1)
    assert pair.nu == (1, -3, 3)


# ----------------------------------------------------------------------
# affine normalization of quadratics
# ----------------------------------------------------------------------

def test_normalize_quadratic_tags():
    nf = normalize_quadratic(5, 0, 0)
    assert (nf.tag, nf.rate, nf.shift) == (CONSTANT, 5, 0)
    nf = normalize_quadratic(6, 2, 0)
    assert (nf.tag, nf.rate, nf.shift) == (LINEAR, 2, -3)
    nf = normalize_quadratic(1, 2, 1)
    assert (nf.tag, nf.rate, nf.shift, nf.disc) == (PURE_SQUARE, 1, -1, 0)
    nf = normalize_quadratic(0, 1, 1)
    assert nf.tag == SQUARE_MINUS_ONE and nf.disc == 1
    assert (nf.rate, nf.shift, nf.stretch) == (
        Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2))
    assert not nf.extension_required


def test_normalize_quadratic_missing_root():
    nf = normalize_quadratic(1, 0, 1)
    assert nf.tag == SQUARE_MINUS_ONE and nf.extension_required
    assert nf.rate is None and nf.stretch is None and nf.disc == -4
    # mod 13: discriminant 2 is a non-residue
    nf = normalize_quadratic(6, 0, 1, field=PrimeField(13))
    assert nf.disc == 2 and nf.extension_required
    nf = normalize_quadratic(1, 0, 12, field=PrimeField(13))
    assert nf.tag == SQUARE_MINUS_ONE and not nf.extension_required


def test_normalize_quadratic_char_two():
    with pytest.raises(ValueError):
        normalize_quadratic(1, 1, 1, field=PrimeField(2))


def test_normal_form_reconstructs_quadratic():
    rng = random.Random(19)
    done = 0
    while done < 25:
        c2 = rng.randint(-4, 4)
        c1 = Fraction(rng.randint(-8, 8), rng.randint(1, 3))
        root = Fraction(rng.randint(0, 6), rng.randint(1, 3))
        if c2 == 0:
            c0 = Fraction(rng.randint(-8, 8), rng.randint(1, 3))
        else:
            # pick c0 so the discriminant is the perfect square root^2
            c0 = (c1 * c1 - root * root) / (4 * c2)
        nf = normalize_quadratic(c0, c1, c2)
        assert not nf.extension_required
        for _ in range(3):
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            assert model_rhs(nf, x) == c0 + c1 * x + c2 * x * x
        done += 1


# ----------------------------------------------------------------------
# leaf classification
# ----------------------------------------------------------------------

def test_classify_rejects_degenerate_form():
    with pytest.raises(ValueError):
        classify_quadric_curve(ContactForm(QQ, p=0))


def test_classify_frozen_parameters():
    got = classify_quadric_curve(ContactForm.standard(QQ))
    assert (got.form_index, got.form_name) == (9, "mu-frozen")
    assert got.equation == FORM_EQUATIONS[9] and got.algebraic
    got = classify_quadric_curve(ContactForm(QQ, p=1, c=-1))
    assert (got.form_index, got.form_name) == (10, "nu-frozen")


def test_classify_power_power_exponents():
    got = classify_quadric_curve(ContactForm(QQ, p=3, c=1))
    assert (got.form_index, got.d1, got.d2) == (2, 1, 2)
    assert got.algebraic is True and got.form_name == "power-power"
    # scaling the form leaves the exponents alone
    got = classify_quadric_curve(ContactForm(QQ, p=9, c=3))
    assert (got.form_index, got.d1, got.d2) == (2, 1, 2)
    rng = random.Random(23)
    for _ in range(15):
        d1, d2 = rng.randint(1, 9), rng.randint(1, 9)
        if d1 == d2:
            continue  # p*c = (d1+d2)(d2-d1) degenerates on the diagonal
        got = classify_quadric_curve(power_curve_form(d1, d2))
        g = gcd(d1, d2)
        assert (got.form_index, got.d1, got.d2) == (2, d1 // g, d2 // g)


def test_classify_negative_ratio_notes_product_relation():
    # the form of (s, s^-3, s^-2, 1): rates -2 and 6, ratio -1/3
    got = classify_quadric_curve(ContactForm(QQ, p=-2, c=-4))
    assert (got.form_index, got.d1, got.d2) == (2, 1, 3)
    assert any("product" in note for note in got.notes)


def test_classify_moebius_shapes():
    got = classify_quadric_curve(
        ContactForm(QQ, p=2, q=1, r=1, a=Fraction(27, 4), b=-2, c=1))
    assert (got.form_index, got.form_name) == (1, "moebius-moebius")
    assert (got.d1, got.d2, got.algebraic) == (1, 2, True)
    assert got.mu_normal.tag == SQUARE_MINUS_ONE
    assert got.nu_normal.tag == SQUARE_MINUS_ONE
    got = classify_quadric_curve(ContactForm(QQ, p=1, c=3, r=1))
    assert (got.form_index, got.d1, got.d2) == (3, 1, 2)
    got = classify_quadric_curve(ContactForm(QQ, p=1, c=-3, q=1))
    assert (got.form_index, got.d1, got.d2) == (4, 1, 2)


def test_classify_irrational_and_imaginary_ratios():
    got = classify_quadric_curve(
        ContactForm(QQ, p=2, q=1, r=1, a=Fraction(9, 4), b=-2, c=1))
    assert got.form_index == 1 and got.algebraic is False
    assert any("irrational" in note for note in got.notes)
    got = classify_quadric_curve(
        ContactForm(QQ, p=2, q=1, r=1, a=-9, b=-2, c=1))
    assert got.form_index == 1 and got.algebraic is False
    assert got.extension_required
    assert any("imaginary" in note for note in got.notes)


def test_classify_mixed_pair_is_never_algebraic():
    got = classify_quadric_curve(
        ContactForm(QQ, p=1, c=2, r=1, a=Fraction(-9, 4)))
    assert got.form_index is None and got.form_name is None
    assert got.algebraic is False
    assert any("exponential" in note for note in got.notes)


def test_classify_char_p_is_inconclusive():
    got = classify_quadric_curve(power_curve_form(1, 2, PrimeField(13)))
    assert got.form_index == 2 and got.algebraic is None
    assert any("characteristic 13" in note for note in got.notes)


def test_shape_tables_are_complete():
    assert sorted(FORM_EQUATIONS) == list(range(1, 11))
    assert sorted(FORM_NAMES) == list(range(1, 11))
    assert FORM_NAMES[5] == "bilinear" and FORM_NAMES[6] == "linear-relation"


# ----------------------------------------------------------------------
# exact witnesses
# ----------------------------------------------------------------------

def test_power_curves_are_legendrian_on_the_quadric():
    rng = random.Random(31)
    for _ in range(12):
        d1, d2 = rng.randint(1, 6), rng.randint(1, 6)
        curve = power_curve(d1, d2)
        form = power_curve_form(d1, d2)
        assert general_contact_eval(form, curve).is_zero()
        x, y, z, w = curve.components
        assert (x * y - z * w).is_zero()


def test_ode_series_solution_hand_oracles():
    # dx/ds = x, x(0) = 1 integrates to the exponential series
    sol = ode_series_solution((0, 1, 0), 1, 6)
    for j in range(7):
        assert sol.coefficient(j).coefficient(0) == Fraction(1, factorial(j))
    # dx/ds = x^2, x(0) = 1 integrates to the geometric series
    sol = ode_series_solution((0, 0, 1), 1, 6)
    for j in range(7):
        assert sol.coefficient(j).coefficient(0) == 1


def test_ode_series_solution_needs_char_zero():
    with pytest.raises(ValueError):
        ode_series_solution((0, 1, 0), 1, 4, field=PrimeField(5))


def test_ode_pair_solution_satisfies_contact_condition():
    rng = random.Random(37)
    forms = [power_curve_form(1, 2),
             ContactForm(QQ, p=2, q=1, r=3, a=-1, b=2, c=1)]
    for form in forms:
        pair = restrict_to_quadric(form)
        order = 8
        mu0 = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        nu0 = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        mu, nu = ode_pair_solution(pair, mu0, nu0, order)
        assert mu.coefficient(0).coefficient(0) == mu0 or mu0 == 0
        lift = quadric_lift(mu, nu)
        residual = general_contact_eval(form, lift)
        for j in range(order - 1):
            assert residual.coefficient(j).is_zero()
