"""Truncated Laurent series in one variable t with exact coefficients.

A series carries an optional *window* ``[lo, hi]`` of exponents on which its
coefficients are known exactly; ``None`` on either side means the series is
exact in that direction.  Windows shrink under arithmetic according to what
can actually be guaranteed about the result, and reading a coefficient (or
the degree) outside the window raises :class:`WindowError` instead of
silently returning garbage.

The valuation convention is *max-plus*: ``degree`` returns the largest
exponent carrying a nonzero coefficient, which is the quantity that survives
tropicalisation, and the empty series has degree ``-inf``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .errors import WindowError
from .fields import same_field

NEG_INF = float("-inf")
_INF = float("inf")


class TruncatedSeries:
    __slots__ = ("field", "terms", "lo", "hi")

    def __init__(self, field, terms: Optional[Dict[int, object]] = None,
                 lo: Optional[int] = None, hi: Optional[int] = None):
        if lo is not None and hi is not None and lo > hi:
            raise WindowError(f"empty window [{lo}, {hi}]")
        self.field = field
        self.lo = lo
        self.hi = hi
        clean: Dict[int, object] = {}
        for e, c in (terms or {}).items():
            if (lo is not None and e < lo) or (hi is not None and e > hi):
                raise WindowError(
                    f"term t^{e} lies outside the window [{lo}, {hi}]")
            if not field.is_zero(c):
                clean[e] = c
        self.terms = clean

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field) -> "TruncatedSeries":
        return cls(field)

    @classmethod
    def one(cls, field) -> "TruncatedSeries":
        return cls(field, {0: field.one})

    @classmethod
    def constant(cls, field, c) -> "TruncatedSeries":
        return cls(field, {0: field.coerce(c)})

    @classmethod
    def monomial(cls, field, exponent: int, coeff=1) -> "TruncatedSeries":
        return cls(field, {exponent: field.coerce(coeff)})

    @classmethod
    def from_terms(cls, field, pairs: Iterable[Tuple[int, object]],
                   lo=None, hi=None) -> "TruncatedSeries":
        terms: Dict[int, object] = {}
        for e, c in pairs:
            c = field.coerce(c)
            if e in terms:
                c = field.add(terms[e], c)
            terms[e] = c
        return cls(field, terms, lo, hi)

    # ----- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        """True only for the exact zero series (no window, no terms)."""
        return not self.terms and self.lo is None and self.hi is None

    def is_exact(self) -> bool:
        return self.lo is None and self.hi is None

    def items(self):
        """Stored (exponent, coefficient) pairs, ascending in exponent."""
        return sorted(self.terms.items())

    def coefficient(self, exponent: int):
        if (self.lo is not None and exponent < self.lo) or \
           (self.hi is not None and exponent > self.hi):
            raise WindowError(
                f"coefficient of t^{exponent} requested outside the known "
                f"window [{self.lo}, {self.hi}]")
        return self.terms.get(exponent, self.field.zero)

    def degree(self):
        """Top exponent with nonzero coefficient (-inf for the zero series).

        This is the max-plus valuation.  It is only defined when the series
        is known all the way up, i.e. when there is no upper truncation.
        """
        if self.hi is not None:
            raise WindowError(
                f"degree undetermined: series only known up to t^{self.hi}")
        if not self.terms:
            return NEG_INF
        return max(self.terms)

    def bottom(self):
        """Smallest exponent with nonzero coefficient."""
        if self.lo is not None:
            raise WindowError(
                f"bottom exponent undetermined: series only known from "
                f"t^{self.lo} up")
        if not self.terms:
            raise WindowError("the zero series has no bottom exponent")
        return min(self.terms)

    def leading_coefficient(self):
        d = self.degree()
        if d == NEG_INF:
            return self.field.zero
        return self.terms[d]

    # ----- window bookkeeping -------------------------------------------

    def _top_possible(self):
        # Largest exponent where a nonzero coefficient could hide.
        if self.hi is not None:
            return _INF
        if self.terms:
            return max(self.terms)
        if self.lo is not None:
            return self.lo - 1
        return None  # exact zero

    def _bot_possible(self):
        if self.lo is not None:
            return -_INF
        if self.terms:
            return min(self.terms)
        if self.hi is not None:
            return self.hi + 1
        return None

    def truncate(self, lo: Optional[int] = None,
                 hi: Optional[int] = None) -> "TruncatedSeries":
        """Restrict the window of known exponents (intersecting with any
        window already present) and drop coefficients outside it."""
        new_lo = self.lo if lo is None else (lo if self.lo is None else max(lo, self.lo))
        new_hi = self.hi if hi is None else (hi if self.hi is None else min(hi, self.hi))
        if new_lo is not None and new_hi is not None and new_lo > new_hi:
            raise WindowError(f"truncation window [{new_lo}, {new_hi}] is empty")
        kept = {e: c for e, c in self.terms.items()
                if (new_lo is None or e >= new_lo) and (new_hi is None or e <= new_hi)}
        return TruncatedSeries(self.field, kept, new_lo, new_hi)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        return TruncatedSeries(
            self.field, {e + k: c for e, c in self.terms.items()},
            None if self.lo is None else self.lo + k,
            None if self.hi is None else self.hi + k)

    # ----- arithmetic ---------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, TruncatedSeries):
            same_field(self.field, other.field)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        lo = _max_opt(self.lo, other.lo)
        hi = _min_opt(self.hi, other.hi)
        if lo is not None and hi is not None and lo > hi:
            raise WindowError(
                f"sum has empty window: [{self.lo},{self.hi}] meets "
                f"[{other.lo},{other.hi}] nowhere")
        field = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = field.add(terms.get(e, field.zero), c)
            if field.is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        terms = {e: c for e, c in terms.items()
                 if (lo is None or e >= lo) and (hi is None or e <= hi)}
        return TruncatedSeries(field, terms, lo, hi)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return TruncatedSeries(f, {e: f.neg(c) for e, c in self.terms.items()},
                               self.lo, self.hi)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        field = self.field
        if self.is_zero() or other.is_zero():
            return TruncatedSeries.zero(field)
        hi_cands = []
        if self.hi is not None:
            hi_cands.append(self.hi + other._bot_possible())
        if other.hi is not None:
            hi_cands.append(other.hi + self._bot_possible())
        lo_cands = []
        if self.lo is not None:
            lo_cands.append(self.lo + other._top_possible())
        if other.lo is not None:
            lo_cands.append(other.lo + self._top_possible())
        hi = min(hi_cands) if hi_cands else None
        lo = max(lo_cands) if lo_cands else None
        if hi == -_INF or lo == _INF or \
                (lo is not None and hi is not None and lo > hi):
            raise WindowError("product has an empty window of known exponents")
        terms: Dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if (lo is not None and e < lo) or (hi is not None and e > hi):
                    continue
                prod = field.mul(c1, c2)
                if e in terms:
                    s = field.add(terms[e], prod)
                    if field.is_zero(s):
                        del terms[e]
                    else:
                        terms[e] = s
                elif not field.is_zero(prod):
                    terms[e] = prod
        lo = None if lo == -_INF else lo
        hi = None if hi == _INF else hi
        return TruncatedSeries(field, terms,
                               lo if lo is None else int(lo),
                               hi if hi is None else int(hi))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        result = TruncatedSeries.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def scale(self, c) -> "TruncatedSeries":
        f = self.field
        c = f.coerce(c)
        if f.is_zero(c):
            return TruncatedSeries(f, {}, self.lo, self.hi)
        return TruncatedSeries(f, {e: f.mul(v, c) for e, v in self.terms.items()},
                               self.lo, self.hi)

    def invert(self, nterms: int = 64) -> "TruncatedSeries":
        """Multiplicative inverse, expanded in ascending powers of t.

        The expansion starts at minus the bottom exponent and keeps
        ``nterms`` exponents (fewer if the input itself is truncated above).
        A pure monomial inverts exactly.
        """
        if self.lo is not None:
            raise WindowError(
                "cannot invert: bottom exponent hidden below the window")
        if not self.terms:
            raise ZeroDivisionError("inverse of the zero series")
        field = self.field
        b = min(self.terms)
        c0 = self.terms[b]
        c0_inv = field.inv(c0)
        # u holds the ascending part of self / (c0 t^b) - 1.
        u = {e - b: field.mul(c, c0_inv) for e, c in self.terms.items() if e != b}
        if not u and self.hi is None:
            return TruncatedSeries(field, {-b: c0_inv})
        # Known relative order of the input above its bottom term.
        rel_hi = None if self.hi is None else self.hi - b
        order = nterms - 1
        if rel_hi is not None:
            order = min(order, rel_hi)
        inv_rel = {0: field.one}
        for n in range(1, order + 1):
            acc = field.zero
            for k, uk in u.items():
                if 0 < k <= n:
                    vk = inv_rel.get(n - k)
                    if vk is not None:
                        acc = field.add(acc, field.mul(uk, vk))
            if not field.is_zero(acc):
                inv_rel[n] = field.neg(acc)
        terms = {n - b: field.mul(v, c0_inv) for n, v in inv_rel.items()}
        return TruncatedSeries(field, terms, None, -b + order)

    # ----- comparison / display -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(self.field, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.field == other.field and self.terms == other.terms
                and self.lo == other.lo and self.hi == other.hi)

    def __bool__(self):
        return bool(self.terms) or not self.is_exact()

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in sorted(self.terms.items(), reverse=True):
                if e == 0:
                    parts.append(f"{c}")
                elif e == 1:
                    parts.append(f"{c}*t")
                else:
                    parts.append(f"{c}*t^{e}")
            body = " + ".join(parts).replace("+ -", "- ")
        if self.lo is None and self.hi is None:
            return body
        lo = "-oo" if self.lo is None else str(self.lo)
        hi = "+oo" if self.hi is None else str(self.hi)
        return f"{body} (window [{lo}, {hi}])"


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def valuation(f: TruncatedSeries):
    """Max-plus valuation: the top exponent, -inf for zero."""
    return f.degree()


# Free-function spellings of the basic arithmetic, for callers that prefer
# them over operators.

def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_scale(f: TruncatedSeries, c) -> TruncatedSeries:
    return f.scale(c)


def series_invert(f: TruncatedSeries, order: int = 64) -> TruncatedSeries:
    return f.invert(order)
