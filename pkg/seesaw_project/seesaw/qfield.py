"""
Exact arithmetic in Q and in quadratic fields Q(√u), together with the local
symbols (Legendre, Kronecker, Hilbert) and ramification sets of quaternion
algebras (a, b)_Q.

Elements of Q(√u) are stored on the basis {1, √u} with rational coordinates, so
half-integral algebraic integers such as (1+√−7)/2 carry the coordinates (1/2, 1/2).
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from sympy import factorint, isprime

from .exceptions import NotPrimeError, SeesawError, ZeroArgumentError

logger = logging.getLogger(__name__)

Rational = Fraction


def to_rational(value):
    """
    Coerce an int, Fraction or numeric string into a reduced Fraction.

    Parameters:
        value (int | Fraction | str): The value to coerce.

    Returns:
        Fraction: The reduced rational.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def is_square_integer(n):
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadElem:
    """
    An element a + b√u of the quadratic field Q(√u).

    Fields:
        a (Fraction): Rational coordinate on 1.
        b (Fraction): Rational coordinate on √u.
        u (int): Nonsquare integer whose square root generates the field.
    """
    a: Fraction
    b: Fraction
    u: int

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))
        if is_square_integer(self.u):
            raise SeesawError(f"u = {self.u} is a square; Q(√u) is not a field")

    @classmethod
    def rational(cls, value, u):
        return cls(to_rational(value), Fraction(0), u)

    @classmethod
    def sqrt_u(cls, u):
        return cls(Fraction(0), Fraction(1), u)

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.u != self.u:
                raise SeesawError(f"mixing Q(√{self.u}) and Q(√{other.u})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem.rational(other, self.u)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElem(self.a + other.a, self.b + other.b, self.u)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.u)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElem(self.a - other.a, self.b - other.b, self.u)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElem(
            self.a * other.a + self.u * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.u,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.u)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = QuadElem.rational(1, self.u)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b, self.u))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def conj(self):
        return QuadElem(self.a, -self.b, self.u)

    def norm(self):
        return self.a * self.a - self.u * self.b * self.b

    def trace(self):
        return 2 * self.a

    def is_rational(self):
        return self.b == 0

    def to_mpc(self):
        """Embed into C at the current mpmath precision, with √u = i√|u| for u < 0."""
        if self.u < 0:
            return mpmath.mpc(mpmath.mpf(self.a.numerator) / self.a.denominator,
                              mpmath.sqrt(-self.u) * self.b.numerator / self.b.denominator)
        return mpmath.mpf(self.a.numerator) / self.a.denominator + \
            mpmath.sqrt(self.u) * self.b.numerator / self.b.denominator

    def is_integral(self):
        """Membership in the maximal order of Q(√u) for squarefree u."""
        if self.u % 4 == 1:
            two_a, two_b = 2 * self.a, 2 * self.b
            if two_a.denominator != 1 or two_b.denominator != 1:
                return False
            return (two_a.numerator - two_b.numerator) % 2 == 0
        return self.a.denominator == 1 and self.b.denominator == 1

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}√{self.u}"


def norm(x):
    return x.norm()


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: p = 0 stands for the real place, otherwise p is a prime."""
    p: int

    def __post_init__(self):
        if self.p != 0 and not isprime(self.p):
            raise NotPrimeError(f"{self.p} is not a prime")

    @property
    def is_infinite(self):
        return self.p == 0

    @property
    def label(self):
        return "inf" if self.is_infinite else str(self.p)

    def __str__(self):
        return self.label


INFINITY = Place(0)


def sort_places(places):
    """Finite places ascending, the real place last."""
    return sorted(places, key=lambda v: (v.is_infinite, v.p))


def legendre(a, p):
    """
    Legendre symbol (a/p) by Euler's criterion.

    Parameters:
        a (int): The residue.
        p (int): An odd prime.

    Returns:
        int: -1, 0 or +1.
    """
    if p == 2 or not isprime(p):
        raise NotPrimeError(f"Legendre symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(a, m):
    """Kronecker symbol (a/m) for a positive integer m."""
    if m <= 0:
        raise SeesawError("kronecker symbol implemented for m > 0 only")
    result = 1
    for p, e in factorint(m).items():
        if p == 2:
            if a % 2 == 0:
                return 0
            local = 1 if a % 8 in (1, 7) else -1
        else:
            local = legendre(a, p)
        result *= local ** e
    return result


def valuation(n, p):
    """p-adic valuation of a nonzero integer or rational."""
    n = to_rational(n)
    if n == 0:
        raise ZeroArgumentError("valuation of zero")
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _integer_representative(x):
    # n/d and n·d differ by the square d², so they share every Hilbert symbol
    x = to_rational(x)
    return x.numerator * x.denominator


def _split_off(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, v):
    """
    Local Hilbert symbol (a, b)_v.

    Parameters:
        a (int | Fraction): Nonzero rational.
        b (int | Fraction): Nonzero rational.
        v (Place): The place; real or any finite prime including 2.

    Returns:
        int: +1 if z² = ax² + by² has a nontrivial solution over Q_v, else -1.
    """
    if to_rational(a) == 0 or to_rational(b) == 0:
        raise ZeroArgumentError("Hilbert symbol needs nonzero arguments")
    if not isinstance(v, Place):
        v = Place(v)
    A, B = _integer_representative(a), _integer_representative(b)
    if v.is_infinite:
        return -1 if (A < 0 and B < 0) else 1
    p = v.p
    alpha, ua = _split_off(A, p)
    beta, ub = _split_off(B, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        exponent = eps(ua) * eps(ub) + alpha * omega(ub) + beta * omega(ua)
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * legendre(ua, p) ** beta * legendre(ub, p) ** alpha


def _strip_squares(n, p):
    while n % (p * p) == 0:
        n //= p * p
    return n


def hilbert_symbol_bruteforce(a, b, p):
    """
    Hilbert symbol by searching primitive solutions of z² = Ax² + By² after removing
    square factors of p from A and B: modulo p² at odd primes, modulo 32 at p = 2,
    where a primitive solution modulo 32 lifts by Hensel's lemma.
    """
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    modulus = 32 if p == 2 else p * p
    A = _strip_squares(_integer_representative(a), p) % modulus
    B = _strip_squares(_integer_representative(b), p) % modulus
    residues = np.arange(modulus, dtype=np.int64)
    x, y, z = np.meshgrid(residues, residues, residues, indexing="ij")
    primitive = (x % p != 0) | (y % p != 0) | (z % p != 0)
    solved = (z * z - A * x * x - B * y * y) % modulus == 0
    return 1 if bool(np.any(primitive & solved)) else -1


def relevant_places(*values):
    """The real place, 2, and every prime dividing a numerator or denominator."""
    primes = {2}
    for value in values:
        value = to_rational(value)
        for part in (value.numerator, value.denominator):
            primes.update(factorint(abs(part)).keys())
    primes.discard(1)
    return [Place(p) for p in sorted(primes)] + [INFINITY]


def ramification_set(a, b):
    """
    Places where the quaternion algebra (a, b)_Q ramifies.

    Returns:
        frozenset[Place]: {v : (a, b)_v = -1}; always of even size.
    """
    ramified = frozenset(v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1)
    if len(ramified) % 2:
        raise SeesawError(f"product formula violated for ({a}, {b}): {sort_places(ramified)}")
    logger.debug("ramification set of (%s, %s): %s", a, b, [v.label for v in sort_places(ramified)])
    return ramified
