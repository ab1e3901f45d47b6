"""Small exact linear algebra helpers.

Everything here is generic over any element type supporting ring operations
(+, -, *), which covers field scalars, truncated series, polynomial
fractions and multivariate polynomials alike.  Matrices are plain lists of
row lists.
"""

from __future__ import annotations

from .errors import DegeneracyError
from .ratfun import PolyFrac


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    assert all(len(r) == inner for r in a)
    return [[sum((a[i][k] * b[k][j] for k in range(1, inner)),
                 a[i][0] * b[0][j])
             for j in range(cols)] for i in range(rows)]


def mat_vec(a, v):
    n = len(v)
    return [sum((row[k] * v[k] for k in range(1, n)), row[0] * v[0])
            for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_scale(a, c):
    return [[entry * c for entry in row] for row in a]


def column(a, j):
    return [row[j] for row in a]


def det2(a, b, c, d):
    return a * d - b * c


def det3(m):
    return (m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2])
            - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2])
            + m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]))


def _minor(m, i, j):
    return [[m[r][c] for c in range(4) if c != j] for r in range(4) if r != i]


def det4(m):
    total = None
    for j in range(4):
        term = m[0][j] * det3(_minor(m, 0, j))
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def adjugate4(m):
    """Transposed cofactor matrix, so that m @ adj = det * identity."""
    adj = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            c = det3(_minor(m, j, i))
            if (i + j) % 2:
                c = -c
            adj[i][j] = c
    return adj


def clear_denominators(mat):
    """Sweep a 4x3 or 4x4 matrix of fractions, multiplying the whole matrix
    by each offending denominator until every entry is a polynomial.

    The sweep visits the first three columns row by row, then (for square
    matrices) the last column top to bottom; the visiting order is part of
    the contract because it fixes the overall normalisation of the result.
    """
    rows, cols = len(mat), len(mat[0])
    assert rows == 4 and cols in (3, 4)
    order = [(i, j) for i in range(4) for j in range(3)]
    if cols == 4:
        order += [(i, 3) for i in range(4)]
    mat = [list(row) for row in mat]
    for (i, j) in order:
        entry = mat[i][j]
        if not entry.liftable():
            den = entry.den
            mat = [[e * den for e in row] for row in mat]
    return mat


def lift_cleared(mat):
    """clear_denominators followed by dropping the (now trivial) denominators."""
    return [[e.lift() for e in row] for row in clear_denominators(mat)]


def inverse_cleared(mat, context: str = "matrix"):
    """Inverse of a 4x4 fraction matrix, rescaled to polynomial entries."""
    d = det4(mat)
    if d.is_zero():
        raise DegeneracyError(f"{context} is singular")
    adj = adjugate4(mat)
    inv = [[entry / d for entry in row] for row in adj]
    return lift_cleared(inv)


def to_fractions(mat):
    """Promote a matrix of series (or scalars) to polynomial fractions."""
    out = []
    for row in mat:
        out.append([e if isinstance(e, PolyFrac) else PolyFrac.from_series(e)
                    for e in row])
    return out


# ----------------------------------------------------------------------
# factored-denominator matrices
# ----------------------------------------------------------------------
#
# The staged normalisation would drown in gcd computations if every matrix
# entry were kept as a reduced fraction.  Instead a whole matrix shares one
# denominator kept as a *multiset of small polynomial factors*; reducing an
# entry then means a chain of cheap gcds against those factors rather than
# one expensive gcd against their (huge) product.

from .ratfun import poly_divexact, poly_gcd  # noqa: E402
from .series import TruncatedSeries  # noqa: E402


def _monic_pair(num: TruncatedSeries, den: TruncatedSeries):
    """Scale a fraction so the denominator is monic; the value is unchanged."""
    lc = den.leading_coefficient()
    if lc == den.field.one:
        return num, den
    inv = den.field.inv(lc)
    return num.scale(inv), den.scale(inv)


class FactoredMatrix:
    """A matrix of polynomials P over a common denominator prod(factors).

    All mutating operations preserve the matrix value exactly; `factors`
    only ever holds monic polynomials of positive degree."""

    __slots__ = ("P", "factors")

    def __init__(self, P, factors=()):
        self.P = [list(row) for row in P]
        self.factors = [f for f in factors if f.degree() > 0]

    # -- row moves (value-preserving elementary symplectic stages) -------

    def rot(self):
        """(row0, row1) -> (-row1, row0)."""
        self.P[0], self.P[1] = [-e for e in self.P[1]], self.P[0]

    def swap(self):
        """Swap the (x, y) rows with the (z, w) rows."""
        p = self.P
        self.P = [p[2], p[3], p[0], p[1]]

    def add_multiple(self, moves, num: TruncatedSeries, den: TruncatedSeries):
        """Row operations dst += (num/den) * src for each (dst, src) pair.

        When den is nonconstant the whole matrix is rescaled by it (the
        common denominator absorbs the factor), so the value is exact."""
        if num.is_zero():
            return
        old = [list(row) for row in self.P]
        scale = not (len(den.terms) == 1 and den.degree() == 0
                     and den.leading_coefficient() == den.field.one)
        if scale:
            self.P = [[e * den for e in row] for row in old]
            self.factors.append(den)
        for dst, src in moves:
            self.P[dst] = [self.P[dst][j] + num * old[src][j]
                           for j in range(len(old[src]))]

    # -- reduced fractions of entries ------------------------------------

    def entry_fraction(self, i, j):
        """The value of entry (i, j) as a reduced (num, den) pair."""
        num = self.P[i][j]
        if num.is_zero():
            return num, TruncatedSeries.one(num.field)
        den = TruncatedSeries.one(num.field)
        for f in self.factors:
            r = num
            fr = f
            while True:
                g = poly_gcd(r, fr)
                if g.degree() == 0:
                    break
                r = poly_divexact(r, g)
                fr = poly_divexact(fr, g)
            num = r
            den = den * fr
        return _monic_pair(num, den)

    def ratio(self, i1, j1, i2, j2, pivot_name):
        """Reduced fraction for entry(i1,j1) / entry(i2,j2); the common
        denominator cancels."""
        den = self.P[i2][j2]
        if den.is_zero():
            raise DegeneracyError(
                f"pivot {pivot_name} is undefined: its divisor vanishes for "
                f"this point configuration")
        num = self.P[i1][j1]
        if num.is_zero():
            return num, TruncatedSeries.one(num.field)
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        return _monic_pair(num, den)

    # -- clearing --------------------------------------------------------

    def lift(self):
        """Return the numerator matrix divided by the gcd of its entries.

        The result is the canonical polynomial representative of the
        projective class of the value: multiplying each entry's reduced
        denominator back through the matrix, in any order, leaves exactly
        the entries' common divisor to strip."""
        g = None
        for row in self.P:
            for e in row:
                if e.is_zero():
                    continue
                g = e if g is None else poly_gcd(g, e)
                if g.degree() == 0:
                    return [list(r) for r in self.P]
        if g is None or g.degree() == 0:
            return [list(row) for row in self.P]
        return [[e if e.is_zero() else poly_divexact(e, g) for e in row]
                for row in self.P]
