"""Polynomials with truncated-series coefficients.

Two flavours are used throughout: :class:`SeriesPoly` in the curve parameter
``s`` and the family parameter ``m`` (degree one in ``m`` in practice, but
nothing here assumes that), and :class:`MultiPoly` in the homogeneous
coordinates ``x, y, z, w``.  Coefficients are :class:`TruncatedSeries` in t,
so window bookkeeping rides along automatically.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Tuple

from .fields import same_field
from .series import TruncatedSeries


def _coeff_of(field, value):
    if isinstance(value, TruncatedSeries):
        return value
    if isinstance(value, (int, Fraction)):
        return TruncatedSeries.constant(field, value)
    return None


def _dict_add(field, a: Dict, b: Dict) -> Dict:
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = v
    return out


def _dict_mul(a: Dict, b: Dict) -> Dict:
    out: Dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            p = va * vb
            if k in out:
                s = out[k] + p
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            elif not p.is_zero():
                out[k] = p
    return out


class SeriesPoly:
    """Polynomial in (s, m) with series coefficients; keys are (j, k)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Dict[Tuple[int, int], TruncatedSeries] = None):
        self.field = field
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not v.is_zero()}

    @classmethod
    def zero(cls, field) -> "SeriesPoly":
        return cls(field)

    @classmethod
    def variable_s(cls, field) -> "SeriesPoly":
        return cls(field, {(1, 0): TruncatedSeries.one(field)})

    @classmethod
    def variable_m(cls, field) -> "SeriesPoly":
        return cls(field, {(0, 1): TruncatedSeries.one(field)})

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "SeriesPoly":
        return cls(f.field, {(0, 0): f})

    def coefficient(self, j: int, k: int = 0) -> TruncatedSeries:
        return self.coeffs.get((j, k), TruncatedSeries.zero(self.field))

    def is_zero(self) -> bool:
        return not self.coeffs

    def s_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(j for j, _ in self.coeffs)

    def uses_m(self) -> bool:
        return any(k for _, k in self.coeffs)

    # ----- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SeriesPoly):
            same_field(self.field, other.field)
            return other
        c = _coeff_of(self.field, other)
        if c is not None:
            return SeriesPoly(self.field, {(0, 0): c})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SeriesPoly(self.field, _dict_add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return SeriesPoly(self.field, {k: -v for k, v in self.coeffs.items()})

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
        if isinstance(other, TruncatedSeries):
            return SeriesPoly(self.field,
                              {k: v * other for k, v in self.coeffs.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SeriesPoly(self.field, _dict_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = SeriesPoly(self.field, {(0, 0): TruncatedSeries.one(self.field)})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    # ----- calculus and substitution ------------------------------------

    def diff_s(self) -> "SeriesPoly":
        out: Dict[Tuple[int, int], TruncatedSeries] = {}
        for (j, k), c in self.coeffs.items():
            if j == 0:
                continue
            out[(j - 1, k)] = c.scale(j)
        return SeriesPoly(self.field, out)

    def subs_m(self, m0: TruncatedSeries) -> "SeriesPoly":
        """Substitute a series for the family parameter m."""
        kmax = max((k for _, k in self.coeffs), default=0)
        powers = [TruncatedSeries.one(self.field)]
        for _ in range(kmax):
            powers.append(powers[-1] * m0)
        out: Dict[Tuple[int, int], TruncatedSeries] = {}
        for (j, k), c in self.coeffs.items():
            v = c * powers[k]
            key = (j, 0)
            if key in out:
                s = out[key] + v
                if s.is_zero():
                    del out[key]
                    continue
                out[key] = s
            elif not v.is_zero():
                out[key] = v
        return SeriesPoly(self.field, out)

    def shift_s(self, s1: TruncatedSeries) -> "SeriesPoly":
        """Recentre the curve parameter: returns f(s + s1, m)."""
        jmax = self.s_degree()
        if any(j < 0 for j, _ in self.coeffs):
            raise ValueError("cannot recentre a polynomial with poles in s")
        powers = [TruncatedSeries.one(self.field)]
        for _ in range(max(jmax, 0)):
            powers.append(powers[-1] * s1)
        out: Dict[Tuple[int, int], TruncatedSeries] = {}
        for (j, k), c in self.coeffs.items():
            for i in range(j + 1):
                v = c.scale(comb(j, i)) * powers[j - i]
                key = (i, k)
                if key in out:
                    s = out[key] + v
                    if s.is_zero():
                        del out[key]
                        continue
                    out[key] = s
                elif not v.is_zero():
                    out[key] = v
        return SeriesPoly(self.field, out)

    def eval_s(self, s0: TruncatedSeries, inv_terms: int = 64) -> TruncatedSeries:
        """Evaluate at s = s0 (m must have been substituted away first)."""
        if self.uses_m():
            raise ValueError("family parameter m still present; call subs_m first")
        out = TruncatedSeries.zero(self.field)
        jneg = min((j for j, _ in self.coeffs), default=0)
        s0_inv = s0.invert(inv_terms) if jneg < 0 else None
        cache = {0: TruncatedSeries.one(self.field)}

        def power(j: int) -> TruncatedSeries:
            if j not in cache:
                if j > 0:
                    cache[j] = power(j - 1) * s0
                else:
                    cache[j] = power(j + 1) * s0_inv
            return cache[j]

        for (j, _), c in sorted(self.coeffs.items()):
            out = out + c * power(j)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (j, k), c in sorted(self.coeffs.items()):
            piece = f"({c!r})"
            if j:
                piece += f"*s^{j}" if j != 1 else "*s"
            if k:
                piece += f"*m^{k}" if k != 1 else "*m"
            parts.append(piece)
        return " + ".join(parts)


VARIABLE_NAMES = ("x", "y", "z", "w")


class MultiPoly:
    """Polynomial in (x, y, z, w) with series coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Dict[Tuple[int, int, int, int], TruncatedSeries] = None):
        self.field = field
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not v.is_zero()}

    @classmethod
    def zero(cls, field) -> "MultiPoly":
        return cls(field)

    @classmethod
    def variable(cls, field, index: int) -> "MultiPoly":
        exp = [0, 0, 0, 0]
        exp[index] = 1
        return cls(field, {tuple(exp): TruncatedSeries.one(field)})

    @classmethod
    def linear_form(cls, row) -> "MultiPoly":
        """Sum of row[i] * (x, y, z, w)[i] for a length-4 coefficient row."""
        field = row[0].field
        coeffs = {}
        for i, c in enumerate(row):
            if not c.is_zero():
                exp = [0, 0, 0, 0]
                exp[i] = 1
                coeffs[tuple(exp)] = c
        return cls(field, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self):
        """(exponent, coefficient) pairs in a stable descending order."""
        return sorted(self.coeffs.items(), reverse=True)

    def coefficient(self, exp: Tuple[int, int, int, int]) -> TruncatedSeries:
        return self.coeffs.get(tuple(exp), TruncatedSeries.zero(self.field))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            same_field(self.field, other.field)
            return other
        c = _coeff_of(self.field, other)
        if c is not None:
            return MultiPoly(self.field, {(0, 0, 0, 0): c})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(self.field, _dict_add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, {k: -v for k, v in self.coeffs.items()})

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
        if isinstance(other, TruncatedSeries):
            return MultiPoly(self.field,
                             {k: v * other for k, v in self.coeffs.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(self.field, _dict_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = MultiPoly(self.field, {(0, 0, 0, 0): TruncatedSeries.one(self.field)})
        base = self
        for _ in range(n):
            out = out * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exp, c in self.terms():
            mono = "".join(
                (f"{v}^{e}" if e > 1 else v)
                for v, e in zip(VARIABLE_NAMES, exp) if e)
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts)


def poly_substitute(f: SeriesPoly, s0: TruncatedSeries) -> SeriesPoly:
    """Free-function spelling of recentring: f(s + s0, m)."""
    return f.shift_s(s0)
