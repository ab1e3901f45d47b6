"""Contact restriction to the quadric xy - zw = 0 and leaf classification.

In the chart (mu, nu) -> (mu, nu, mu*nu, 1) of the quadric, a contact
form cuts out a direction field given by a pair of quadratic ODEs, one
in mu and one in nu.  Each quadratic normalizes (affinely) to one of
four model equations, and the pair of models decides whether the leaves
are algebraic and which of ten standard curve shapes they take.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Tuple

from .contact import ContactForm, ParametrizedCurve
from .fields import QQ
from .poly import SeriesPoly
from .series import TruncatedSeries

CONSTANT = "constant"
LINEAR = "linear"
PURE_SQUARE = "pure-square"
SQUARE_MINUS_ONE = "square-minus-one"


@dataclass(frozen=True)
class QuadraticODEPair:
    """Coefficient triples (c0, c1, c2) of mu' and nu' on the quadric.

    mu' = (c - p) mu + b + q mu^2 and nu' = -((p + c) nu + a - r nu^2),
    read off from the contact form coefficients.
    """

    field: object
    mu: Tuple[object, object, object]
    nu: Tuple[object, object, object]


def restrict_to_quadric(form: ContactForm) -> QuadraticODEPair:
    """Direction field the contact planes cut on the quadric chart."""
    f = form.field
    p, q, r = f.coerce(form.p), f.coerce(form.q), f.coerce(form.r)
    a, b, c = f.coerce(form.a), f.coerce(form.b), f.coerce(form.c)
    mu = (b, f.sub(c, p), q)
    nu = (f.neg(a), f.neg(f.add(p, c)), r)
    return QuadraticODEPair(f, mu, nu)


@dataclass(frozen=True)
class NormalForm:
    """Affine normalization of dx/dt = c0 + c1 x + c2 x^2.

    The substitution is x = shift + stretch * v; in the new variable the
    equation reads dv/dt = rate * n(v) with n one of 1, v, v^2, v^2 - 1
    according to ``tag``.  When the needed square root is missing from
    the field, ``extension_required`` is set and stretch/rate stay None
    (``disc`` keeps the discriminant so callers can still reason with
    its square).
    """

    tag: str
    rate: Optional[object]
    shift: object
    stretch: Optional[object]
    disc: Optional[object] = None
    extension_required: bool = False


def normalize_quadratic(c0, c1, c2, field=QQ) -> NormalForm:
    """Classify a quadratic right-hand side up to affine changes.

    The tag depends only on whether the quadratic coefficient vanishes
    and, if not, whether the discriminant c1^2 - 4 c0 c2 does.
    """
    f = field
    c0, c1, c2 = f.coerce(c0), f.coerce(c1), f.coerce(c2)
    if f.is_zero(c2):
        if f.is_zero(c1):
            return NormalForm(CONSTANT, c0, f.zero, f.one)
        return NormalForm(LINEAR, c1, f.neg(f.div(c0, c1)), f.one)
    if f.characteristic == 2:
        raise ValueError("cannot complete the square in characteristic 2")
    disc = f.sub(f.mul(c1, c1), f.mul(f.coerce(4), f.mul(c0, c2)))
    shift = f.neg(f.div(c1, f.mul(f.coerce(2), c2)))
    if f.is_zero(disc):
        return NormalForm(PURE_SQUARE, c2, shift, f.one, disc)
    root = f.sqrt(disc)
    if root is None:
        return NormalForm(SQUARE_MINUS_ONE, None, shift, None, disc, True)
    stretch = f.div(root, f.mul(f.coerce(2), c2))
    rate = f.div(root, f.coerce(2))
    return NormalForm(SQUARE_MINUS_ONE, rate, shift, stretch, disc)


# ----------------------------------------------------------------------
# classification of the leaf shapes
# ----------------------------------------------------------------------

FORM_EQUATIONS = {
    1: "c0*((nu-1)/(nu+1))^d1 = c1*((mu-1)/(mu+1))^d2",
    2: "c0*nu^d1 = c1*mu^d2",
    3: "c0*((nu-1)/(nu+1))^d1 = c1*mu^d2",
    4: "c0*((mu-1)/(mu+1))^d1 = c1*nu^d2",
    5: "c0*mu*nu + c1*mu + c2*nu = 0",
    6: "c0*mu + c1*nu + c2 = 0",
    7: "c0*mu*nu + c1*mu + c2 = 0",
    8: "c0*mu*nu + c1*nu + c2 = 0",
    9: "mu = c0",
    10: "nu = c0",
}

FORM_NAMES = {
    1: "moebius-moebius",
    2: "power-power",
    3: "moebius-nu-power-mu",
    4: "moebius-mu-power-nu",
    5: "bilinear",
    6: "linear-relation",
    7: "hyperbola-mu",
    8: "hyperbola-nu",
    9: "mu-frozen",
    10: "nu-frozen",
}


@dataclass
class QuadricClassification:
    """Verdict for the leaves of a contact form on the quadric.

    ``form_index`` picks one of the ten standard shapes (None when the
    leaves are not algebraic); d1, d2 are the exponents for the
    power/Moebius shapes.  ``algebraic`` is True/False, or None over a
    prime field where rationality of the exponent ratio has no meaning.
    """

    form_index: Optional[int]
    form_name: Optional[str]
    equation: Optional[str]
    d1: Optional[int]
    d2: Optional[int]
    algebraic: Optional[bool]
    mu_normal: NormalForm
    nu_normal: NormalForm
    extension_required: bool
    notes: List[str] = dc_field(default_factory=list)


def _ratio_to_exponents(ratio: Fraction, notes: List[str]) -> Tuple[int, int]:
    if ratio < 0:
        notes.append("negative exponent ratio: the relation is a product "
                     "(left^d1 * right^d2 constant) rather than a quotient")
    d1 = abs(ratio.numerator)
    d2 = abs(ratio.denominator)
    return d1, d2


def classify_quadric_curve(form: ContactForm) -> QuadricClassification:
    """Which of the ten standard leaf shapes the contact form induces.

    Zero-rate equations freeze their variable (shapes 9/10, preferred on
    ties since they spend the fewest constants).  Otherwise the pair of
    normal-form tags decides: two exponential-type equations give a
    power or Moebius relation whose algebraicity is exactly the
    rationality of the rate ratio; two rational-type equations give one
    of the bilinear/linear shapes; a mixed pair relates an exponential
    to a rational parameter and is never algebraic.
    """
    if not form.is_contact():
        raise ValueError("the form does not satisfy the contact condition")
    f = form.field
    ode = restrict_to_quadric(form)
    nm = normalize_quadratic(*ode.mu, field=f)
    nn = normalize_quadratic(*ode.nu, field=f)
    ext = nm.extension_required or nn.extension_required
    notes: List[str] = []
    char_p = f.characteristic != 0

    def result(idx, d1=None, d2=None, algebraic=True):
        return QuadricClassification(
            idx, FORM_NAMES.get(idx), FORM_EQUATIONS.get(idx),
            d1, d2, algebraic, nm, nn, ext, notes)

    mu_frozen = nm.tag == CONSTANT and f.is_zero(nm.rate)
    nu_frozen = nn.tag == CONSTANT and f.is_zero(nn.rate)
    if mu_frozen and nu_frozen:
        notes.append("both parameters are frozen; the single point also "
                     "satisfies nu = c0")
        return result(9)
    if mu_frozen:
        return result(9)
    if nu_frozen:
        return result(10)

    tags = (nm.tag, nn.tag)
    rational_tags = {
        (PURE_SQUARE, PURE_SQUARE): 5,
        (CONSTANT, CONSTANT): 6,
        (PURE_SQUARE, CONSTANT): 7,
        (CONSTANT, PURE_SQUARE): 8,
    }
    if tags in rational_tags:
        return result(rational_tags[tags])

    exponential = {LINEAR, SQUARE_MINUS_ONE}
    if tags[0] in exponential and tags[1] in exponential:
        idx = {(LINEAR, LINEAR): 2,
               (SQUARE_MINUS_ONE, SQUARE_MINUS_ONE): 1,
               (LINEAR, SQUARE_MINUS_ONE): 3,
               (SQUARE_MINUS_ONE, LINEAR): 4}[tags]
        if char_p:
            notes.append(f"exponent ratio lives in characteristic "
                         f"{f.characteristic}; rationality is inconclusive")
            return result(idx, algebraic=None)
        # the ratio of flow rates; roots enter only through their squares
        if tags == (LINEAR, LINEAR):
            ratio = Fraction(nm.rate) / Fraction(nn.rate)
        else:
            if tags == (SQUARE_MINUS_ONE, SQUARE_MINUS_ONE):
                r2 = Fraction(nm.disc) / Fraction(nn.disc)
            elif tags == (LINEAR, SQUARE_MINUS_ONE):
                r2 = Fraction(nm.rate) ** 2 / Fraction(nn.disc)
            else:
                r2 = Fraction(nn.rate) ** 2 / Fraction(nm.disc)
            if r2 < 0:
                notes.append("the squared exponent ratio is negative, so the "
                             "ratio is imaginary and never rational")
                return result(idx, algebraic=False)
            root = QQ.sqrt(r2)
            if root is None:
                notes.append(f"the exponent ratio is irrational "
                             f"(its square is {r2})")
                return result(idx, algebraic=False)
            ratio = Fraction(root)
        d1, d2 = _ratio_to_exponents(ratio, notes)
        return result(idx, d1, d2, True)

    notes.append("one parameter moves exponentially and the other "
                 "rationally: the leaves obey a relation like "
                 "(mu-1)/(mu+1) = e^(1/nu) and are not algebraic")
    return QuadricClassification(None, None, None, None, None, False,
                                 nm, nn, ext, notes)


# ----------------------------------------------------------------------
# exact witnesses
# ----------------------------------------------------------------------

def power_curve_form(d1: int, d2: int, field=QQ) -> ContactForm:
    """A contact form for which (s^d1, s^d2, s^(d1+d2), 1) is legendrian:
    p = d1 + d2, c = d2 - d1, all other coefficients zero."""
    return ContactForm(field, p=d1 + d2, q=0, r=0, a=0, b=0, c=d2 - d1)


def power_curve(d1: int, d2: int, field=QQ) -> ParametrizedCurve:
    """The monomial curve (s^d1, s^d2, s^(d1+d2), 1) on the quadric."""
    s = SeriesPoly.variable_s(field)
    one = SeriesPoly.from_series(TruncatedSeries.one(field))
    return ParametrizedCurve.from_components(
        (s ** d1, s ** d2, s ** (d1 + d2), one))


def quadric_lift(mu: SeriesPoly, nu: SeriesPoly) -> ParametrizedCurve:
    """The chart embedding (mu, nu) -> (mu, nu, mu*nu, 1)."""
    one = SeriesPoly.from_series(TruncatedSeries.one(mu.field))
    return ParametrizedCurve.from_components((mu, nu, mu * nu, one))


def ode_series_solution(coeffs: Tuple, x0, order: int, field=QQ) -> SeriesPoly:
    """Power-series solution in s of dx/ds = c0 + c1 x + c2 x^2, x(0) = x0.

    Characteristic 0 only (each step divides by the new exponent).  The
    returned polynomial satisfies the equation up to s^(order-1).
    """
    if field.characteristic != 0:
        raise ValueError("series integration needs characteristic 0")
    c0, c1, c2 = (field.coerce(c) for c in coeffs)
    a = [field.coerce(x0)]
    for k in range(order):
        sq = sum(a[i] * a[k - i] for i in range(k + 1))
        rhs = c1 * a[k] + c2 * sq + (c0 if k == 0 else 0)
        a.append(Fraction(rhs, k + 1))
    return SeriesPoly(field, {
        (j, 0): TruncatedSeries.constant(field, v)
        for j, v in enumerate(a) if v != 0})


def ode_pair_solution(pair: QuadraticODEPair, mu0, nu0,
                      order: int) -> Tuple[SeriesPoly, SeriesPoly]:
    """Simultaneous series solutions of the pair with given initial values."""
    return (ode_series_solution(pair.mu, mu0, order, pair.field),
            ode_series_solution(pair.nu, nu0, order, pair.field))
