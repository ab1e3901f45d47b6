"""Contact geometry of P^3: forms, legendrian curves and normalising maps.

The ambient structure is the holomorphic contact distribution given (in its
standard position) by the 1-form y dx - x dy + w dz - z dw, together with
the skew pairing B(a, b) = a1 b0 - a0 b1 + a3 b2 - a2 b3 it induces on
homogeneous coordinates.  A projective map preserves the distribution
exactly when it is symplectic for that pairing up to a scalar.

The centrepiece is :func:`transformation`, which normalises three points in
general position to the reference triple (0:0:0:1), (1:1:1:1),
(-1:1:-1:1) by a staged sequence of elementary symplectic moves; everything
is exact, and the staging keeps track of which genericity assumption broke
when one does.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DegeneracyError
from .fields import QQ, same_field
from .linalg import (FactoredMatrix, column, inverse_cleared, mat_mul,
                     mat_vec, to_fractions, transpose)
from .poly import MultiPoly, SeriesPoly
from .ratfun import PolyFrac, poly_divexact, poly_gcd
from .series import TruncatedSeries

_log = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# contact forms
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ContactForm:
    """The 1-form (py - qz + aw)dx + (-px + rz + bw)dy + (qx - ry + cw)dz
    + (-ax - by - cz)dw, encoded by its six free coefficients."""

    field: object
    p: object
    q: object = 0
    r: object = 0
    a: object = 0
    b: object = 0
    c: object = 0

    def __post_init__(self):
        for name in ("p", "q", "r", "a", "b", "c"):
            object.__setattr__(self, name, self.field.coerce(getattr(self, name)))

    @classmethod
    def standard(cls, field=QQ) -> "ContactForm":
        """y dx - x dy + w dz - z dw."""
        return cls(field, p=1, c=1)

    @classmethod
    def scaled_standard(cls, field=QQ, k=3) -> "ContactForm":
        """k(y dx - x dy) + w dz - z dw."""
        return cls(field, p=k, c=1)

    def contact_value(self):
        f = self.field
        return f.add(f.add(f.mul(self.p, self.c), f.mul(self.q, self.b)),
                     f.mul(self.r, self.a))

    def is_contact(self) -> bool:
        return not self.field.is_zero(self.contact_value())

    def coefficient_rows(self):
        """Rows of the matrix G with form = sum_i (G row_i . coords) d(coords_i)."""
        f = self.field
        z, p, q, r, a, b, c = f.zero, self.p, self.q, self.r, self.a, self.b, self.c
        return [[z, p, f.neg(q), a],
                [f.neg(p), z, r, b],
                [q, f.neg(r), z, c],
                [f.neg(a), f.neg(b), f.neg(c), z]]


def pairing_matrix(field=QQ):
    """The skew matrix J of the standard pairing, as field scalars."""
    o, z = field.one, field.zero
    n = field.neg(o)
    return [[z, n, z, z], [o, z, z, z], [z, z, z, n], [z, z, o, z]]


def skew_pairing(a: Sequence, b: Sequence):
    """B(a, b) = a1 b0 - a0 b1 + a3 b2 - a2 b3 (works on scalars or series)."""
    return a[1] * b[0] - a[0] * b[1] + a[3] * b[2] - a[2] * b[3]


# ----------------------------------------------------------------------
# curves
# ----------------------------------------------------------------------

@dataclass
class ParametrizedCurve:
    """Four homogeneous components, each a polynomial in (s, m) over series."""

    field: object
    components: Tuple[SeriesPoly, SeriesPoly, SeriesPoly, SeriesPoly]

    @classmethod
    def from_components(cls, comps) -> "ParametrizedCurve":
        comps = tuple(comps)
        field = comps[0].field
        for c in comps[1:]:
            same_field(field, c.field)
        return cls(field, comps)

    def derivative(self):
        return tuple(c.diff_s() for c in self.components)

    def subs_m(self, m0: TruncatedSeries) -> "ParametrizedCurve":
        return ParametrizedCurve(
            self.field, tuple(c.subs_m(m0) for c in self.components))

    def evaluate(self, s0: TruncatedSeries):
        return [c.eval_s(s0) for c in self.components]

    def apply(self, matrix) -> "ParametrizedCurve":
        """Left-multiply the component vector by a 4x4 series matrix."""
        vec = mat_vec(matrix, list(self.components))
        return ParametrizedCurve(self.field, tuple(vec))


def contact_eval(curve: ParametrizedCurve) -> SeriesPoly:
    """Pull back the standard form along the curve: y x' - x y' + w z' - z w'.

    The result is identically zero exactly when the curve is legendrian."""
    x, y, z, w = curve.components
    dx, dy, dz, dw = curve.derivative()
    return y * dx - x * dy + w * dz - z * dw


def general_contact_eval(form: ContactForm, curve: ParametrizedCurve) -> SeriesPoly:
    """Pull back an arbitrary contact form along the curve."""
    field = same_field(form.field, curve.field)
    rows = form.coefficient_rows()
    comps = list(curve.components)
    derivs = curve.derivative()
    total = SeriesPoly.zero(field)
    for i in range(4):
        coeff = SeriesPoly.zero(field)
        for j in range(4):
            if field.is_zero(rows[i][j]):
                continue
            coeff = coeff + comps[j] * TruncatedSeries.constant(field, rows[i][j])
        total = total + coeff * derivs[i]
    return total


# ----------------------------------------------------------------------
# symplectic generators and friends
# ----------------------------------------------------------------------

GENERATOR_KINDS = ("shear-xy", "rotate-xy", "swap-pairs", "cross-shear",
                   "scale-xy")


def generator(kind: str, lam=None, field=QQ):
    """One of the five generating symplectic matrices, as field scalars.

    shear-xy     x -> x + lam*y
    rotate-xy    x -> y, y -> -x
    swap-pairs   x <-> z, y <-> w
    cross-shear  x -> x + lam*w, z -> z + lam*y
    scale-xy     x -> lam*x, y -> y/lam   (lam nonzero)
    """
    o, z = field.one, field.zero
    if kind == "shear-xy":
        la = field.coerce(lam)
        return [[o, la, z, z], [z, o, z, z], [z, z, o, z], [z, z, z, o]]
    if kind == "rotate-xy":
        return [[z, o, z, z], [field.neg(o), z, z, z], [z, z, o, z], [z, z, z, o]]
    if kind == "swap-pairs":
        return [[z, z, o, z], [z, z, z, o], [o, z, z, z], [z, o, z, z]]
    if kind == "cross-shear":
        la = field.coerce(lam)
        return [[o, z, z, la], [z, o, z, z], [z, la, o, z], [z, z, z, o]]
    if kind == "scale-xy":
        la = field.coerce(lam)
        if field.is_zero(la):
            raise ValueError("scale-xy generator needs a nonzero lambda")
        return [[la, z, z, z], [z, field.inv(la), z, z], [z, z, o, z], [z, z, z, o]]
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


def stabilizer(mu, field=QQ):
    """A symplectic map fixing (0:0:0:1), (1:1:1:1) and (-1:1:-1:1):
    y -> y + mu(z - x), w -> w - mu(z - x)."""
    o, z = field.one, field.zero
    m = field.coerce(mu)
    return [[o, z, z, z],
            [field.neg(m), o, m, z],
            [z, z, o, z],
            [m, z, field.neg(m), o]]


def psi_matrix(field=QQ):
    """The change of frame taking the quadric pairing to the standard one;
    symplectic with multiplier 1/2."""
    h = field.coerce(Fraction(1, 2))
    o, z = field.one, field.zero
    return [[h, z, field.neg(h), z],
            [z, o, z, z],
            [z, z, o, z],
            [z, h, z, h]]


def symplectic_multiplier(matrix, field=None) -> Optional[object]:
    """The scalar lam with M^T J M = lam J, or None if M is not symplectic
    up to scale.  Entries may be field scalars or exact series."""
    J_scalar = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    S = mat_mul(mat_mul(transpose(matrix), _like(J_scalar, matrix)), matrix)
    lam = S[1][0]
    for i in range(4):
        for j in range(4):
            expected = lam * J_scalar[i][j] if J_scalar[i][j] else S[i][j] * 0
            if not _ring_eq(S[i][j], expected):
                return None
    return lam


def _like(int_matrix, template):
    """Rebuild an integer matrix with the same element type as template's."""
    sample = template[0][0]
    if isinstance(sample, TruncatedSeries):
        f = sample.field
        return [[TruncatedSeries.constant(f, e) for e in row] for row in int_matrix]
    if isinstance(sample, Fraction):
        return [[Fraction(e) for e in row] for row in int_matrix]
    return [[e for e in row] for row in int_matrix]


def _ring_eq(a, b) -> bool:
    d = a - b
    if isinstance(d, (TruncatedSeries, SeriesPoly)):
        return d.is_zero()
    return d == 0


# ----------------------------------------------------------------------
# the cubic surface and the legendrian cubic pencil
# ----------------------------------------------------------------------

def cubic_surface_eval(point):
    """2x^3 + 21x^2 z - 27y^2 z - 54yzw - 27zw^2 + 60xz^2 + 25z^3 at a
    4-component point, in any ring with +, * and integer scaling."""
    x, y, z, w = point
    return (2 * x**3 + 21 * (x**2) * z - 27 * (y**2) * z - 54 * (y * z) * w
            - 27 * z * w**2 + 60 * x * z**2 + 25 * z**3)


def legendrian_cubic_curve(field=QQ) -> ParametrizedCurve:
    """The pencil l(s, m) = (s, s^2 + m(s - s^3), s^3, 1 - 3m(s - s^3)).

    Every member is legendrian for 3(y dx - x dy) + w dz - z dw and passes
    through the three reference points at s = 0, 1, -1."""
    s = SeriesPoly.variable_s(field)
    m = SeriesPoly.variable_m(field)
    one = SeriesPoly.from_series(TruncatedSeries.one(field))
    bump = s - s**3
    return ParametrizedCurve.from_components((
        s,
        s**2 + m * bump,
        s**3,
        one - 3 * (m * bump),
    ))


def cubic_pencil_curve(field=QQ) -> ParametrizedCurve:
    """The image pencil (3s - s^3, 2s^2 + m(s - s^3), 2s^3, 1 + s^2 - m(s - s^3))
    lying on the cubic surface for every value of m."""
    s = SeriesPoly.variable_s(field)
    m = SeriesPoly.variable_m(field)
    one = SeriesPoly.from_series(TruncatedSeries.one(field))
    bump = s - s**3
    return ParametrizedCurve.from_components((
        3 * s - s**3,
        2 * s**2 + m * bump,
        2 * s**3,
        one + s**2 - m * bump,
    ))


def _ring_value(field, v, as_poly: bool):
    if isinstance(v, SeriesPoly):
        return v
    if not isinstance(v, TruncatedSeries):
        v = TruncatedSeries.constant(field, v)
    return SeriesPoly.from_series(v) if as_poly else v


def cubic_family(tval, mu, field=QQ):
    """The point l(t, mu) = (t, t^2 + mu(t - t^3), t^3, 1 - 3mu(t - t^3)).

    Arguments may be scalars, exact series or series polynomials; the four
    components come back in the matching ring."""
    as_poly = isinstance(tval, SeriesPoly) or isinstance(mu, SeriesPoly)
    t = _ring_value(field, tval, as_poly)
    m = _ring_value(field, mu, as_poly)
    bump = m * (t - t**3)
    return (t, t * t + bump, t**3, 1 - 3 * bump)


def cubic_family_psi(tval, mu, field=QQ):
    """The same family pushed into the frame of the cubic surface:
    (3t - t^3, 2t^2 + 2mu(t - t^3), 2t^3, 1 + t^2 - 2mu(t - t^3))."""
    as_poly = isinstance(tval, SeriesPoly) or isinstance(mu, SeriesPoly)
    t = _ring_value(field, tval, as_poly)
    m = _ring_value(field, mu, as_poly)
    bump = m * (t - t**3)
    return (3 * t - t**3, 2 * (t * t) + 2 * bump, 2 * t**3,
            1 + t * t - 2 * bump)


def standard_points(field=QQ):
    """The reference triple: (0:0:0:1), (1:1:1:1), (-1:1:-1:1)."""
    o, z = field.one, field.zero
    n = field.neg(o)
    return [(z, z, z, o), (o, o, o, o), (n, o, n, o)]


# ----------------------------------------------------------------------
# the staged three-point normalisation
# ----------------------------------------------------------------------

def _as_point(field, point):
    coords = []
    for c in point:
        if isinstance(c, TruncatedSeries):
            same_field(field, c.field)
            coords.append(c)
        else:
            coords.append(TruncatedSeries.constant(field, c))
    if len(coords) != 4:
        raise ValueError("a projective point needs 4 homogeneous coordinates")
    return coords


def _quadratic_bridge(p):
    """The 4x4 matrix of quadratic forms in the coordinates of p that fixes
    (0:0:0:1) and (1:1:1:1) and carries (-1:1:-1:1) to p (up to scale)."""
    x, y, z, w = p
    zero = TruncatedSeries.zero(x.field)
    xy, xz, yz = x * y, x * z, y * z
    yw, zw = y * w, z * w
    yy, zz = y * y, z * z
    return [
        [2 * xy - 4 * zz + 2 * zw,
         -2 * xy + 2 * xz + 2 * yz - 2 * zz,
         -2 * xz + 2 * yz + 2 * zz - 2 * zw,
         zero],
        [2 * yy - 2 * zz, -2 * yy + 4 * yz - 2 * zz, zero, zero],
        [zero, zero, 4 * yz - 4 * zz, zero],
        [xy + xz - yy - 2 * yz + yw - zz + zw,
         -xy + xz + yy - yw - zz + zw,
         -xy - xz + yy + 4 * yz + yw - zz - 3 * zw,
         xy - xz - yy + 2 * yz - yw - zz + zw],
    ]


def _staged_normalization(points, field):
    """Run the staged algorithm; returns the symplectic series matrix taking
    the reference triple to the given points."""
    pts = [_as_point(field, p) for p in points]
    cols = []
    for idx, pt in enumerate(pts):
        if pt[3].is_zero():
            raise DegeneracyError(
                f"point {idx + 1} lies on the plane w = 0 and cannot be "
                f"normalised in this chart")
        bot = min(c.bottom() for c in pt if not c.is_zero())
        shifted = [c if c.is_zero() else c.shift(-bot) for c in pt]
        inv = field.inv(shifted[3].leading_coefficient())
        cols.append([c.scale(inv) for c in shifted])
    wd = [cols[j][3] for j in range(3)]
    others = [wd[1] * wd[2], wd[0] * wd[2], wd[0] * wd[1]]
    fm = FactoredMatrix(
        [[cols[j][i] * others[j] for j in range(3)] for i in range(4)], wd)

    fm.swap()
    n1, d1 = fm.entry_fraction(0, 0)
    l1 = (-n1, d1)
    _log.debug("pivot lambda1 = -(%r)/(%r)", n1, d1)
    fm.add_multiple([(0, 1)], *l1)
    fm.swap()
    n2, d2 = fm.ratio(0, 0, 1, 0, "lambda2")
    l2 = (-n2, d2)
    _log.debug("pivot lambda2 = -(%r)/(%r)", n2, d2)
    fm.add_multiple([(0, 1)], *l2)
    fm.rot()
    n3, d3 = fm.ratio(0, 0, 3, 0, "lambda3")
    l3 = (-n3, d3)
    _log.debug("pivot lambda3 = -(%r)/(%r)", n3, d3)
    fm.add_multiple([(0, 3), (2, 1)], *l3)
    fm.swap()
    fm.rot()
    if fm.P[1][1].is_zero():
        raise DegeneracyError(
            "pivot lambda4 is undefined: its divisor vanishes for this "
            "point configuration")
    l4 = _reduced(-(fm.P[0][1] + fm.P[1][1]), fm.P[1][1])
    _log.debug("pivot lambda4 = (%r)/(%r)", *l4)
    fm.add_multiple([(0, 1)], *l4)
    fm.rot()
    fm.swap()
    if fm.P[1][1].is_zero():
        raise DegeneracyError(
            "pivot lambda5 is undefined: its divisor vanishes for this "
            "point configuration")
    l5 = _reduced(fm.P[2][1] - fm.P[0][1], fm.P[1][1])
    _log.debug("pivot lambda5 = (%r)/(%r)", *l5)
    fm.add_multiple([(0, 1)], *l5)
    fm.rot()
    if fm.P[1][1].is_zero():
        raise DegeneracyError(
            "pivot lambda6 is undefined: its divisor vanishes for this "
            "point configuration")
    l6 = _reduced(fm.P[2][1] - fm.P[0][1], fm.P[1][1])
    _log.debug("pivot lambda6 = (%r)/(%r)", *l6)
    fm.add_multiple([(0, 1)], *l6)

    t9 = fm.lift()
    p = column(t9, 2)
    if p[2].is_zero():
        raise DegeneracyError(
            "bridge pivot z vanishes: the normalised third point has zero "
            "third coordinate")
    if (p[1] - p[2]).is_zero():
        raise DegeneracyError(
            "bridge pivot y - z vanishes for the normalised third point")
    if (p[0] - p[1] + p[2] - p[3]).is_zero():
        raise DegeneracyError(
            "bridge pivot x - y + z - w vanishes for the normalised third "
            "point")

    rv = FactoredMatrix(_quadratic_bridge(p))
    rv.add_multiple([(0, 1)], -l6[0], l6[1])
    rv.rot(); rv.rot(); rv.rot()
    rv.add_multiple([(0, 1)], -l5[0], l5[1])
    rv.swap()
    rv.rot(); rv.rot(); rv.rot()
    rv.add_multiple([(0, 1)], -l4[0], l4[1])

    rv.rot(); rv.rot(); rv.rot()
    rv.swap()
    rv.add_multiple([(0, 3), (2, 1)], -l3[0], l3[1])
    rv.rot(); rv.rot(); rv.rot()
    rv.add_multiple([(0, 1)], -l2[0], l2[1])
    rv.swap()
    rv.add_multiple([(0, 1)], -l1[0], l1[1])
    rv.swap()
    return rv.lift()


def _reduced(num: TruncatedSeries, den: TruncatedSeries):
    if num.is_zero():
        return num, TruncatedSeries.one(num.field)
    g = poly_gcd(num, den)
    if g.degree() > 0:
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    lc = den.leading_coefficient()
    if lc != den.field.one:
        inv = den.field.inv(lc)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _symplectic_inverse(matrix):
    """Polynomial representative of the inverse of a symplectic-up-to-scale
    matrix.  J^{-1} M^T J equals the true inverse times the (scalar) pairing
    multiplier, which does not move the projective map; stripping the entry
    gcd then gives the canonical representative."""
    field = matrix[0][0].field
    jm = pairing_matrix(field)
    jinv = [[field.neg(e) for e in row] for row in jm]
    conj = mat_mul(_scalar_rows(jinv, field), mat_mul(
        transpose(matrix), _scalar_rows(jm, field)))
    return FactoredMatrix(conj).lift()


def _scalar_rows(scalar_matrix, field):
    return [[TruncatedSeries.constant(field, e) for e in row]
            for row in scalar_matrix]


def transformation(p1, p2, p3, field=QQ):
    """A symplectic projective map carrying three points in general position
    to the reference triple (0:0:0:1), (1:1:1:1), (-1:1:-1:1).

    Entries come back as exact series with cleared denominators; composing
    with :func:`reference_frame_map` of the same points gives a scalar
    matrix."""
    return _symplectic_inverse(_staged_normalization((p1, p2, p3), field))


def reference_frame_map(p1, p2, p3, field=QQ):
    """The other direction: a symplectic map carrying the reference triple
    to the three given points (the inverse of :func:`transformation`, up to
    a scalar)."""
    return _staged_normalization((p1, p2, p3), field)


def map_inverse(matrix, context: str = "matrix"):
    """Exact inverse of a 4x4 series matrix, rescaled to polynomial entries."""
    return inverse_cleared(to_fractions(matrix), context)


def apply_map(matrix, point):
    """Apply a 4x4 series matrix to a point given by 4 series (or scalars)."""
    field = matrix[0][0].field
    return mat_vec(matrix, _as_point(field, point))


def projectively_equal(u, v) -> bool:
    """Equality in P^3 via vanishing of all 2x2 minors."""
    for i in range(4):
        for j in range(i + 1, 4):
            d = u[i] * v[j] - u[j] * v[i]
            if not d.is_zero():
                return False
    return True


# ----------------------------------------------------------------------
# lines
# ----------------------------------------------------------------------

def line_contact_value(a, b, field=QQ):
    """B(a, b) for the line spanned by points a and b; zero iff legendrian."""
    av = _as_point(field, a)
    bv = _as_point(field, b)
    return skew_pairing(av, bv)


def line_is_legendrian(a, b, field=QQ) -> bool:
    return line_contact_value(a, b, field).is_zero()


@dataclass
class LineBalanceTable:
    """Values of each coordinate at the roots of the other coordinates.

    rows[i] is None when coordinate i never vanishes at a finite parameter
    (its root sits at infinity); otherwise rows[i][j] is the value of
    coordinate j at the root of coordinate i.  identities maps each of the
    two cross-ratio relations to True/False, or None when a needed root is
    missing."""

    rows: List[Optional[List[object]]]
    notes: List[str]
    identities: dict


def line_balance_table(a, b, field=QQ) -> LineBalanceTable:
    """Tabulate the line a + tau*b against the four coordinate hyperplanes.

    Writing X, Y, Z, W for the roots of the four coordinates, the two
    relations  y(X)/z(X) = w(Z)/x(Z)  and  x(Y)/w(Y) = z(W)/y(W)  each hold
    exactly when the line is legendrian (for lines with all four roots
    finite and generic).  They are evaluated in cross-multiplied form, so
    vanishing denominators cannot hide a verdict."""
    av = _as_point(field, a)
    bv = _as_point(field, b)
    rows: List[Optional[List[object]]] = []
    notes: List[str] = []
    for i in range(4):
        if bv[i].is_zero():
            if av[i].is_zero():
                notes.append(f"coordinate {i} vanishes identically on the line")
            else:
                notes.append(f"coordinate {i} has its root at infinity")
            rows.append(None)
            continue
        # root of coordinate i: tau_i = -a_i / b_i; values as fractions
        tau = PolyFrac.from_series(-av[i]) / PolyFrac.from_series(bv[i])
        rows.append([PolyFrac.from_series(av[j]) + tau * bv[j] for j in range(4)])
    identities = {}
    # (root row, numerator column) pairs: lhs_num/lhs_den == rhs_num/rhs_den
    specs = [("y(X)/z(X) == w(Z)/x(Z)", (0, 1), (0, 2), (2, 3), (2, 0)),
             ("x(Y)/w(Y) == z(W)/y(W)", (1, 0), (1, 3), (3, 2), (3, 1))]
    for label, ln, ld, rn, rd in specs:
        if rows[ln[0]] is None or rows[rn[0]] is None:
            identities[label] = None
            continue
        lhs_num, lhs_den = rows[ln[0]][ln[1]], rows[ld[0]][ld[1]]
        rhs_num, rhs_den = rows[rn[0]][rn[1]], rows[rd[0]][rd[1]]
        identities[label] = (lhs_num * rhs_den - lhs_den * rhs_num).is_zero()
    return LineBalanceTable(rows, notes, identities)


# ----------------------------------------------------------------------
# cubics meeting a line
# ----------------------------------------------------------------------

@dataclass
class LineCubicSolution:
    t: object
    c: object
    mu: object


@dataclass
class LineCubicsResult:
    """Cubics of the reference pencil meeting the chart line
    (T, p1 + q1 T, p2 + q2 T, p3 + q3 T)."""

    coefficients: List[object]     # of the degree-3 equation, descending
    solutions: List[LineCubicSolution]
    flagged: List[Tuple[object, str]]
    irreducible_remainder: bool    # True if some roots live outside the field
    line_is_legendrian: bool
    count: int = 3                 # intersections counted in the closure


def cubics_through_line(p1, q1, p2, q2, p3, q3, field=QQ) -> LineCubicsResult:
    """Solve for members of the pencil l(t, m) meeting the given chart line.

    The incidence condition is the cubic
        (3 p1 + p3)(t^3 - q2 t) - p2 (3 t^2 - (3 q1 + q3) t + 1) = 0 ;
    each root t0 determines the matching scale c and pencil parameter m.
    Roots at t0 in {0, 1, -1} (the reference points) cannot be back-solved
    and are flagged instead."""
    p1, q1, p2, q2, p3, q3 = (field.coerce(v) for v in (p1, q1, p2, q2, p3, q3))
    lead = field.add(field.mul(field.coerce(3), p1), p3)
    if field.is_zero(lead):
        raise DegeneracyError(
            "3*p1 + p3 = 0: the incidence equation degenerates for this line")
    # descending coefficients of the cubic in t
    three = field.coerce(3)
    c3 = lead
    c2 = field.neg(field.mul(three, p2))
    c1 = field.sub(field.mul(p2, field.add(field.mul(three, q1), q3)),
                   field.mul(lead, q2))
    c0 = field.neg(p2)
    coeffs = [c3, c2, c1, c0]
    roots, leftover = _field_roots(coeffs, field)
    solutions = []
    flagged: List[Tuple[object, str]] = []
    for t0 in roots:
        denom_c = field.add(field.sub(field.mul(three, field.mul(t0, t0)),
                                      field.mul(field.add(field.mul(three, q1), q3), t0)),
                            field.one)
        if field.is_zero(denom_c):
            flagged.append((t0, "matching scale blows up at this root"))
            continue
        c = field.div(lead, denom_c)
        bump = field.sub(t0, field.mul(t0, field.mul(t0, t0)))  # t - t^3
        if field.is_zero(bump):
            flagged.append((t0, "root at a reference point (t in {0, 1, -1})"))
            continue
        num = field.sub(field.add(p1, field.mul(q1, field.mul(c, t0))),
                        field.mul(c, field.mul(t0, t0)))
        mu = field.div(num, field.mul(c, bump))
        solutions.append(LineCubicSolution(t0, c, mu))
    legendrian = field.is_zero(
        field.add(p1, field.sub(field.mul(p3, q2), field.mul(p2, q3))))
    return LineCubicsResult(coeffs, solutions, flagged, leftover, legendrian)


def _field_roots(coeffs, field):
    """Roots in the field of a descending-coefficient cubic; returns
    (roots with multiplicity, True-if-nonlinear-factor-remains)."""
    if field.characteristic:
        roots = []
        p = field.characteristic
        rem = list(coeffs)
        for cand in range(p):
            while _horner_zero(rem, cand, field) and len(rem) > 1:
                rem = _synthetic(rem, cand, field)
                roots.append(cand)
            if len(rem) == 1:
                break
        return roots, len(rem) > 1
    # over Q: rational root search + deflation
    roots = []
    rem = [Fraction(c) for c in coeffs]
    den = 1
    for c in rem:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in rem]
    while len(ints) > 1:
        root = _rational_root(ints)
        if root is None:
            break
        roots.append(root)
        rem = _synthetic([Fraction(c) for c in ints], root, QQ)
        den = 1
        for c in rem:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in rem]
    return roots, len(ints) > 1


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _horner_zero(coeffs, x, field) -> bool:
    acc = field.zero
    for c in coeffs:
        acc = field.add(field.mul(acc, x), c)
    return field.is_zero(acc)


def _synthetic(coeffs, root, field):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(field.add(field.mul(out[-1], root), c))
    return out


def _rational_root(ints):
    """One rational root of an integer-coefficient polynomial, or None."""
    from math import gcd
    a0, an = ints[-1], ints[0]
    if a0 == 0:
        return Fraction(0)
    def divisors(n):
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))
    for p in divisors(a0):
        for q in divisors(an):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                acc = Fraction(0)
                for c in ints:
                    acc = acc * cand + c
                if acc == 0:
                    return cand
    return None
