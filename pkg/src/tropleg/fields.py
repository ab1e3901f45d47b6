"""Exact coefficient fields.

Two fields are supported: the rationals (backed by :class:`fractions.Fraction`)
and prime fields Z/p (backed by plain ints reduced mod p).  Field objects are
lightweight strategy objects; the elements themselves stay raw Python values
so that the series arithmetic on top does not pay a wrapper cost in its inner
loops.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, NonPrimeModulusError

DEFAULT_PRIME = 2897

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for moduli of the size we care about."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field of rational numbers; elements are ints or Fractions.

    Integers are kept as plain ints (the numeric tower makes them
    interchangeable with Fractions), which keeps the series convolutions in
    native integer arithmetic whenever no division has happened yet."""

    name = "Q"
    characteristic = 0

    zero = 0
    one = 1

    def coerce(self, value):
        """Turn an int / Fraction into an element, rejecting anything else."""
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return int(value) if value.denominator == 1 else value
        raise TypeError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return self.coerce(1 / Fraction(a))

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return self.coerce(Fraction(a) / b)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_square(self, a) -> bool:
        if a < 0:
            return False
        f = Fraction(a)
        r = _isqrt_exact(f.numerator)
        s = _isqrt_exact(f.denominator)
        return r is not None and s is not None

    def sqrt(self, a):
        """Exact square root, or None when no rational root exists."""
        if a < 0:
            return None
        f = Fraction(a)
        r = _isqrt_exact(f.numerator)
        s = _isqrt_exact(f.denominator)
        if r is None or s is None:
            return None
        return Fraction(r, s)

    def to_fraction(self, a) -> Fraction:
        return Fraction(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("tropleg.QQ")


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


class PrimeField:
    """The field Z/p for a prime p; elements are ints in [0, p)."""

    characteristic: int

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise NonPrimeModulusError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.div(value.numerator, value.denominator)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a % self.p * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def is_square(self, a) -> bool:
        a %= self.p
        if a == 0:
            return True
        if self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """A square root mod p via Tonelli-Shanks, or None for non-residues."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if p == 2:
            return a
        if not self.is_square(a):
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.is_square(z):
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, tt = 0, t
            while tt != 1:
                tt = tt * tt % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("tropleg.Fp", self.p))


QQ = RationalField()


def same_field(a, b):
    """Return the common field of two carriers or raise FieldMismatchError."""
    if a != b:
        raise FieldMismatchError(f"operands live over {a!r} and {b!r}")
    return a
