"""Fractions of polynomials in t, kept in lowest terms.

The normalisation pipeline produces matrix entries that are ratios of exact
series.  We store them as fractions of *ordinary* polynomials (non-negative
exponents): any common power of t is shifted away first, then numerator and
denominator are reduced by their polynomial gcd and the denominator is made
monic.  Keeping the representation canonical matters because later stages
read off exponents of these polynomials, and those must not depend on the
history of the computation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import WindowError
from .fields import same_field
from .series import TruncatedSeries


def _require_poly(f: TruncatedSeries, what: str) -> None:
    if not f.is_exact():
        raise WindowError(f"{what} must be an exact series, got a window")


def poly_divmod(num: TruncatedSeries, den: TruncatedSeries):
    """Long division of exact polynomials by descending degree."""
    _require_poly(num, "dividend")
    _require_poly(den, "divisor")
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    field = num.field
    q = TruncatedSeries.zero(field)
    r = num
    dd = den.degree()
    dl = den.leading_coefficient()
    while not r.is_zero() and r.degree() >= dd:
        e = r.degree() - dd
        c = field.div(r.leading_coefficient(), dl)
        step = TruncatedSeries.monomial(field, e, c)
        q = q + step
        r = r - den.shift(e).scale(c)
    return q, r


def poly_divexact(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    q, r = poly_divmod(num, den)
    if not r.is_zero():
        raise ArithmeticError("division was expected to be exact")
    return q


def poly_gcd(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Monic gcd of two exact polynomials.

    Over Q the Euclidean remainders are computed as a primitive
    pseudo-remainder sequence over the integers, which keeps coefficient
    growth polynomial instead of exponential."""
    field = a.field
    same_field(field, b.field)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    # gcd with a monomial only sees the bottom exponent of the other side.
    for f, g in ((a, b), (b, a)):
        if len(f.terms) == 1:
            e = min(f.bottom(), g.bottom())
            return TruncatedSeries.monomial(field, e)
    if a.degree() == 0 or b.degree() == 0:
        return TruncatedSeries.one(field)
    if field.characteristic:
        aa, bb = (a, b) if a.degree() >= b.degree() else (b, a)
        while not bb.is_zero():
            _, r = poly_divmod(aa, bb)
            aa, bb = bb, _monic(r)
        return _monic(aa)
    return _series_from_ints(field, _int_gcd_prs(_dense_ints(a), _dense_ints(b)))


def _dense_ints(f: TruncatedSeries):
    """Descending integer coefficient list of an exact rational polynomial."""
    from math import gcd, lcm
    d = f.degree()
    den = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    out = [0] * (d + 1)
    for e, c in f.terms.items():
        out[d - e] = int(c * den)
    g = 0
    for c in out:
        g = gcd(g, c)
    if g > 1:
        out = [c // g for c in out]
    return out


def _int_gcd_prs(A, B):
    """Primitive pseudo-remainder sequence gcd for descending int lists."""
    from math import gcd
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _prem(A, B)
        if not R:
            return B
        g = 0
        for c in R:
            g = gcd(g, c)
        if g > 1:
            R = [c // g for c in R]
        A, B = B, R
        if len(B) == 1:
            return [1]


def _prem(A, B):
    """Pseudo-remainder of descending integer coefficient lists."""
    dB = len(B) - 1
    lB = B[0]
    R = list(A)
    while R and R[0] == 0:
        R.pop(0)
    while len(R) - 1 >= dB:
        lead = R[0]
        R = [lB * c for c in R]
        for i in range(dB + 1):
            R[i] -= lead * B[i]
        while R and R[0] == 0:
            R.pop(0)
    return R


def _series_from_ints(field, coeffs):
    d = len(coeffs) - 1
    lead = coeffs[0]
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            terms[d - i] = field.coerce(Fraction(c, lead))
    return TruncatedSeries(field, terms)


def _monic(f: TruncatedSeries) -> TruncatedSeries:
    if f.is_zero():
        return f
    return f.scale(f.field.inv(f.leading_coefficient()))


class PolyFrac:
    """A reduced fraction num/den of ordinary polynomials in t."""

    __slots__ = ("num", "den")

    def __init__(self, num: TruncatedSeries, den: TruncatedSeries):
        _require_poly(num, "numerator")
        _require_poly(den, "denominator")
        field = same_field(num.field, den.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = TruncatedSeries.zero(field)
            self.den = TruncatedSeries.one(field)
            return
        # Shift a common power of t so both sides become ordinary polynomials
        # and at least one of them has a nonzero constant term.
        m = min(num.bottom(), den.bottom())
        if m != 0:
            num = num.shift(-m)
            den = den.shift(-m)
        g = poly_gcd(num, den)
        if g.degree() > 0 or len(g.terms) > 1:
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        c = field.inv(den.leading_coefficient())
        self.num = num.scale(c)
        self.den = den.scale(c)

    # ----- constructors -------------------------------------------------

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "PolyFrac":
        field = f.field
        if f.is_zero():
            return cls(TruncatedSeries.zero(field), TruncatedSeries.one(field))
        b = f.bottom()
        if b >= 0:
            return cls(f, TruncatedSeries.one(field))
        return cls(f.shift(-b), TruncatedSeries.monomial(field, -b))

    @classmethod
    def from_scalar(cls, field, c) -> "PolyFrac":
        return cls(TruncatedSeries.constant(field, c), TruncatedSeries.one(field))

    @classmethod
    def zero(cls, field) -> "PolyFrac":
        return cls(TruncatedSeries.zero(field), TruncatedSeries.one(field))

    @classmethod
    def one(cls, field) -> "PolyFrac":
        return cls(TruncatedSeries.one(field), TruncatedSeries.one(field))

    # ----- predicates ---------------------------------------------------

    @property
    def field(self):
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def liftable(self) -> bool:
        """True when the denominator is the constant 1."""
        return self.den == TruncatedSeries.one(self.field)

    def lift(self) -> TruncatedSeries:
        if not self.liftable():
            raise ArithmeticError(
                f"fraction with denominator {self.den!r} is not a polynomial")
        return self.num

    # ----- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PolyFrac):
            return other
        if isinstance(other, TruncatedSeries):
            return PolyFrac.from_series(other)
        if isinstance(other, (int, Fraction)):
            return PolyFrac.from_scalar(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PolyFrac(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(PolyFrac)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PolyFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero fraction")
        return PolyFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (PolyFrac.one(self.field) / self) ** (-n)
        out = PolyFrac.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        if self.liftable():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"
