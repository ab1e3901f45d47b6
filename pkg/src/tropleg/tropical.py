"""Max-plus tropical numbers, polynomials and corner-locus cells.

Everything here uses the (max, +) convention: the tropical value of an
exact series is its TOP degree, tropical addition is max and tropical
multiplication is ordinary addition.  Much of the literature uses
(min, +); :data:`CONVENTION` is the single switch documenting the choice.
"""
from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .contact import cubic_surface_eval, transformation
from .fields import QQ
from .poly import MultiPoly
from .series import NEG_INF, valuation

CONVENTION = "max-plus"


class TropicalNumber:
    """A rational number or -inf under (max, +) arithmetic.

    ``a + b`` is max(a, b) and ``a * b`` is the ordinary sum; -inf is the
    additive identity and annihilates products.
    """

    __slots__ = ("value",)

    def __init__(self, value):
        if value != NEG_INF and not isinstance(value, (int, Fraction)):
            raise TypeError(f"tropical values are rational or -inf, got {value!r}")
        self.value = value

    @classmethod
    def zero(cls) -> "TropicalNumber":
        return cls(NEG_INF)

    @classmethod
    def one(cls) -> "TropicalNumber":
        return cls(0)

    def is_zero(self) -> bool:
        return self.value == NEG_INF

    def _val(self, other):
        if isinstance(other, TropicalNumber):
            return other.value
        if isinstance(other, (int, Fraction)) or other == NEG_INF:
            return other
        return None

    def __add__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return TropicalNumber(max(self.value, v))

    __radd__ = __add__

    def __mul__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        if self.value == NEG_INF or v == NEG_INF:
            return TropicalNumber(NEG_INF)
        return TropicalNumber(self.value + v)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if self.value == NEG_INF:
            return TropicalNumber(NEG_INF) if n else TropicalNumber(0)
        return TropicalNumber(self.value * n)

    def __eq__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return self.value == v

    def __hash__(self):
        return hash(("trop", self.value))

    def __le__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return self.value <= v

    def __lt__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return self.value < v

    def __repr__(self):
        return "-oo" if self.value == NEG_INF else repr(self.value)


def _dot(exp: Sequence[int], pt: Sequence) -> object:
    total = 0
    for e, v in zip(exp, pt):
        if e:
            total += e * v
    return total


class TropicalPolynomial:
    """max over terms of <exponent, point> + coefficient.

    Terms keep their construction order (the constructors below use a
    canonical descending order, so equal polynomials print identically);
    exponent vectors must be pairwise distinct.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str],
                 terms: Sequence[Tuple[Sequence[int], object]]):
        self.vars = tuple(variables)
        cleaned = []
        seen = set()
        for exp, coeff in terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars):
                raise ValueError(
                    f"exponent {exp} does not match variables {self.vars}")
            if exp in seen:
                raise ValueError(f"duplicate exponent vector {exp}")
            seen.add(exp)
            if isinstance(coeff, TropicalNumber):
                coeff = coeff.value
            cleaned.append((exp, coeff))
        if not cleaned:
            raise ValueError("a tropical polynomial needs at least one term")
        self.terms = tuple(cleaned)

    def __eq__(self, other):
        if not isinstance(other, TropicalPolynomial):
            return NotImplemented
        return self.vars == other.vars and dict(self.terms) == dict(other.terms)

    def __repr__(self):
        parts = []
        for exp, coeff in self.terms:
            mono = " + ".join(
                (f"{e}*{v}" if e != 1 else v)
                for e, v in zip(exp, self.vars) if e)
            parts.append(f"({mono} + {coeff})" if mono else f"({coeff})")
        return "max" + "(" + ", ".join(parts) + ")"

    def eval(self, pt: Sequence):
        return trop_eval(self, pt)


def trop_eval(f: TropicalPolynomial, pt: Sequence) -> Tuple[object, Tuple[int, ...]]:
    """Value and the exact set of term indices achieving the maximum."""
    if len(pt) != len(f.vars):
        raise ValueError(f"point has {len(pt)} coordinates, expected {len(f.vars)}")
    best = NEG_INF
    argmax: List[int] = []
    for idx, (exp, coeff) in enumerate(f.terms):
        if coeff == NEG_INF:
            continue
        v = _dot(exp, pt) + coeff
        if v > best:
            best = v
            argmax = [idx]
        elif v == best:
            argmax.append(idx)
    return best, tuple(argmax)


def tropicalize_poly(g: MultiPoly,
                     variables: Sequence[str] = ("X", "Y", "Z", "W")
                     ) -> TropicalPolynomial:
    """Per-monomial valuations of an x,y,z,w polynomial with series
    coefficients.  Monomials whose coefficient is identically zero are
    dropped with a warning (the tropical side cannot see them)."""
    terms = []
    for exp, coeff in g.terms():
        if coeff.is_zero():
            warnings.warn(
                f"monomial {exp} has an identically zero coefficient and "
                f"was dropped from the tropicalization", RuntimeWarning,
                stacklevel=2)
            continue
        terms.append((exp, valuation(coeff)))
    if not terms:
        raise ValueError("cannot tropicalize: every coefficient is zero")
    return TropicalPolynomial(variables, terms)


def tropical_surface_pipeline(p1, p2, p3, field=QQ) -> TropicalPolynomial:
    """Tropical cubic surface through the tropicalizations of three points.

    Carries the three series points to the reference triple, pushes the
    fixed cubic surface through that map, and records the valuation of
    each of its (up to) twenty monomial coefficients.  The last projective
    coordinate is the affine-chart normalization, so its weight is zero
    and the output lives in the variables X, Y, Z.
    """
    m = transformation(p1, p2, p3, field)
    forms = [MultiPoly.linear_form(row) for row in m]
    g = cubic_surface_eval(forms)
    four = tropicalize_poly(g)
    collapsed = {}
    order = []
    for (a, b, c, _d), coeff in four.terms:
        key = (a, b, c)
        if key in collapsed:
            collapsed[key] = max(collapsed[key], coeff)
        else:
            collapsed[key] = coeff
            order.append(key)
    return TropicalPolynomial(
        ("X", "Y", "Z"), [(key, collapsed[key]) for key in order])


# ----------------------------------------------------------------------
# corner locus
# ----------------------------------------------------------------------

@dataclass
class TropicalCell:
    """Where two chosen terms tie and dominate all others, inside a box.

    ``equality`` is (normal, constant) with normal . v + constant = 0;
    each entry of ``inequalities`` is (vector, constant) read as
    vector . v + constant >= 0.  ``vertices`` is the exact clipped
    polygon (empty cells are never returned) and ``dim`` its dimension.
    """

    indices: Tuple[int, int]
    equality: Tuple[Tuple[int, ...], object]
    inequalities: List[Tuple[Tuple[int, ...], object]]
    vertices: List[Tuple[Fraction, Fraction, Fraction]]
    dim: int


def _clip_half_plane(poly, a, b, c):
    """Keep the part of a convex 2D polygon with a*u + b*v + c >= 0."""
    if not poly:
        return []
    out = []
    n = len(poly)
    for i in range(n):
        u1, v1 = poly[i]
        u2, v2 = poly[(i + 1) % n]
        s1 = a * u1 + b * v1 + c
        s2 = a * u2 + b * v2 + c
        if s1 >= 0:
            out.append((u1, v1))
        if (s1 > 0 > s2) or (s1 < 0 < s2):
            t = Fraction(s1, s1 - s2)
            out.append((u1 + t * (u2 - u1), v1 + t * (v2 - v1)))
    deduped = []
    for p in out:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


def _polygon_dim(points) -> int:
    distinct = []
    for p in points:
        if p not in distinct:
            distinct.append(p)
    if not distinct:
        return -1
    if len(distinct) == 1:
        return 0
    if len(distinct) == 2:
        return 1
    (u0, v0) = distinct[0]
    area2 = 0
    for i in range(1, len(distinct) - 1):
        (u1, v1), (u2, v2) = distinct[i], distinct[i + 1]
        area2 += (u1 - u0) * (v2 - v0) - (u2 - u0) * (v1 - v0)
    return 2 if area2 != 0 else 1


def _pair_cell(f: TropicalPolynomial, bbox, i: int, j: int) -> Optional[TropicalCell]:
    (ei, ci), (ej, cj) = f.terms[i], f.terms[j]
    normal = tuple(a - b for a, b in zip(ei, ej))
    const = ci - cj
    piv = max(range(3), key=lambda k: abs(normal[k]))
    if normal[piv] == 0:
        return None  # identical exponents cannot occur; zero normal is a tie everywhere
    axes = [k for k in range(3) if k != piv]
    (u_axis, v_axis) = axes
    np_ = Fraction(normal[piv])

    # pivot coordinate as an affine function of (u, v):  p(u, v) = pu*u + pv*v + pc
    pu = Fraction(-normal[u_axis], 1) / np_
    pv = Fraction(-normal[v_axis], 1) / np_
    pc = Fraction(-const, 1) / np_

    (u0, u1) = (Fraction(bbox[u_axis][0]), Fraction(bbox[u_axis][1]))
    (v0, v1) = (Fraction(bbox[v_axis][0]), Fraction(bbox[v_axis][1]))
    poly = [(u0, v0), (u1, v0), (u1, v1), (u0, v1)]

    # keep the pivot coordinate inside its box interval
    p0, p1 = Fraction(bbox[piv][0]), Fraction(bbox[piv][1])
    poly = _clip_half_plane(poly, pu, pv, pc - p0)          # p(u,v) >= p0
    poly = _clip_half_plane(poly, -pu, -pv, p1 - pc)        # p(u,v) <= p1
    inequalities = []
    for k, (ek, ck) in enumerate(f.terms):
        if k in (i, j):
            continue
        vec = tuple(a - b for a, b in zip(ei, ek))
        cst = ci - ck
        inequalities.append((vec, cst))
        # substitute the pivot coordinate: vec.v + cst >= 0 in (u, v)
        a = Fraction(vec[u_axis]) + vec[piv] * pu
        b = Fraction(vec[v_axis]) + vec[piv] * pv
        c = Fraction(cst) + vec[piv] * pc
        poly = _clip_half_plane(poly, a, b, c)
        if not poly:
            return None
    if not poly:
        return None

    def to3(u, v):
        coords = [None, None, None]
        coords[u_axis] = u
        coords[v_axis] = v
        coords[piv] = pu * u + pv * v + pc
        return tuple(coords)

    vertices = [to3(u, v) for (u, v) in poly]
    dim = _polygon_dim(poly)
    if dim < 0:
        return None
    return TropicalCell((i, j), (normal, const), inequalities, vertices, dim)


def _pair_cell_job(args):
    f_terms, variables, bbox, i, j = args
    f = TropicalPolynomial(variables, f_terms)
    return _pair_cell(f, bbox, i, j)


def _worker_count(n_jobs: int) -> int:
    cap = os.environ.get("TROPLEG_THREADS")
    if cap is None:
        return 1
    try:
        cap = int(cap)
    except ValueError:
        return 1
    return max(1, min(cap, os.cpu_count() or 1, n_jobs))


def corner_locus_cells(f: TropicalPolynomial, bbox) -> List[TropicalCell]:
    """All nonempty tie-and-dominate cells of term pairs, clipped to bbox.

    bbox is three (lo, hi) pairs.  Work over term pairs is independent;
    TROPLEG_THREADS > 1 spreads it over processes.
    """
    if len(f.vars) != 3:
        raise ValueError("corner locus enumeration expects a 3-variable polynomial")
    bbox = [(Fraction(lo), Fraction(hi)) for (lo, hi) in bbox]
    if any(lo > hi for lo, hi in bbox):
        raise ValueError("empty bounding box")
    n = len(f.terms)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    workers = _worker_count(len(pairs))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        jobs = [(f.terms, f.vars, bbox, i, j) for (i, j) in pairs]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_pair_cell_job, jobs, chunksize=8))
    else:
        results = [_pair_cell(f, bbox, i, j) for (i, j) in pairs]
    return [cell for cell in results if cell is not None]
