"""
Hecke characters of imaginary quadratic fields of class number one.

The flagship object is the canonical character of E = Q(√−7),

    χ'_can(αO_E) = ε(α)·α,   ε(α) = (α mod √−7 / 7),

whose n-th power χ_can^n has infinity type (n, 0), conductor √−7·O_E for odd n and
O_E for even n, and restricts to ε_{E/Q}^n on the rationals.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from sympy import isprime

from .exceptions import ConductorError, NotPrimeError, SeesawError
from .qfield import QuadElem, kronecker, legendre, to_rational

logger = logging.getLogger(__name__)

CANONICAL_U = -7
RAMIFIED_PRIME = 7


def units(u):
    """The roots of unity of the maximal order of Q(√u), u < 0 squarefree."""
    one = QuadElem.rational(1, u)
    if u == -1:
        i = QuadElem.sqrt_u(u)
        return [one, i, -one, -i]
    if u == -3:
        rho = QuadElem(Fraction(1, 2), Fraction(1, 2), u)
        return [rho ** k for k in range(6)]
    return [one, -one]


def elements_up_to_norm(max_norm, u=CANONICAL_U):
    """
    Every nonzero element of the maximal order of Q(√u) with norm at most max_norm,
    grouped by norm in ascending order.

    Parameters:
        max_norm (int): Inclusive bound on the norm.
        u (int): Negative squarefree integer.

    Returns:
        dict[int, list[QuadElem]]: norm ↦ elements of that norm (units included).
    """
    if u >= 0:
        raise SeesawError("only imaginary quadratic fields are supported")
    shells = {}
    half_integral = u % 4 == 1
    scale = 4 if half_integral else 1
    bound = scale * max_norm
    y_max = math.isqrt(bound // -u)
    for Y in range(-y_max, y_max + 1):
        rest = bound + u * Y * Y
        x_max = math.isqrt(rest)
        for X in range(-x_max, x_max + 1):
            if half_integral and (X - Y) % 2:
                continue
            if X == 0 and Y == 0:
                continue
            value = X * X - u * Y * Y
            if value % scale:
                continue
            n = value // scale
            if half_integral:
                element = QuadElem(Fraction(X, 2), Fraction(Y, 2), u)
            else:
                element = QuadElem(X, Y, u)
            shells.setdefault(n, []).append(element)
    return dict(sorted(shells.items()))


def elements_of_norm(n, u=CANONICAL_U):
    return elements_up_to_norm(n, u).get(n, [])


@dataclass(frozen=True, eq=False)
class IdealE:
    """
    A principal ideal of the maximal order of a class-number-one field.

    Fields:
        generator (QuadElem): Any nonzero generator.
    """
    generator: QuadElem

    def __post_init__(self):
        if not self.generator:
            raise SeesawError("the zero ideal is not supported")

    def canonical_generator(self):
        candidates = [self.generator * unit for unit in units(self.generator.u)]
        return max(candidates, key=lambda x: (x.a, x.b))

    def __eq__(self, other):
        if not isinstance(other, IdealE):
            return NotImplemented
        return self.canonical_generator() == other.canonical_generator()

    def __hash__(self):
        return hash(self.canonical_generator())

    def __mul__(self, other):
        return IdealE(self.generator * other.generator)

    def norm(self):
        return abs(self.generator.norm())

    def is_coprime_to(self, p):
        # valid for the ramified prime, whose unique prime ideal has norm p
        return to_rational(self.norm()).numerator % p != 0


def ideals_of_norm(n, u=CANONICAL_U):
    """Distinct principal ideals of norm n, one canonical generator each."""
    seen = {}
    for element in elements_of_norm(n, u):
        ideal = IdealE(element)
        seen.setdefault(ideal, ideal)
    return sorted(seen, key=lambda ideal: (ideal.canonical_generator().a,
                                           ideal.canonical_generator().b))


def epsilon(alpha):
    """
    The quadratic residue character of O_E/(√−7) ≅ Z/7 evaluated at α.

    Parameters:
        alpha (QuadElem): An integral element of Q(√−7).

    Returns:
        int: (α mod √−7 / 7) ∈ {−1, 0, +1}.
    """
    if alpha.u != CANONICAL_U or not alpha.is_integral():
        raise SeesawError(f"epsilon needs an integral element of Q(√−7), got {alpha}")
    # α ≡ a (mod √−7); a may be half-integral
    residue = alpha.a.numerator * pow(alpha.a.denominator, -1, RAMIFIED_PRIME) % RAMIFIED_PRIME
    return legendre(residue, RAMIFIED_PRIME)


@dataclass(frozen=True)
class HeckeCharSpec:
    """
    A power of the canonical character.

    Fields:
        field_u (int): The field Q(√u); only −7 is supported.
        power (int): n ≥ 1, the character is χ_can^n.
        infinity_type (tuple[int, int]): (n, 0).
        normalized (bool): Unitary twist by ‖·‖^{n/2}.
    """
    field_u: int
    power: int
    infinity_type: tuple
    normalized: bool = False

    @property
    def weight(self):
        return abs(self.infinity_type[0] - self.infinity_type[1]) + 1

    @property
    def k(self):
        return self.infinity_type[0] - self.infinity_type[1]

    def conductor(self):
        """Generator of the conductor ideal."""
        if self.power % 2:
            return IdealE(QuadElem.sqrt_u(self.field_u))
        return IdealE(QuadElem.rational(1, self.field_u))

    def unitary(self):
        return HeckeCharSpec(self.field_u, self.power, self.infinity_type, True)


def canonical_char(n, normalized=False):
    if n < 1:
        raise SeesawError(f"canonical character power must be ≥ 1, got {n}")
    return HeckeCharSpec(CANONICAL_U, n, (n, 0), normalized)


def eval_element(chi, alpha):
    """
    Exact unnormalised value ε(α)^n·α^n of χ'_can^n on the ideal αO_E.

    Odd powers need α coprime to √−7; even powers extend to every ideal by α^n.
    """
    if chi.power % 2:
        sign = epsilon(alpha)
        if sign == 0:
            raise ConductorError(f"ideal ({alpha}) is not coprime to the conductor √−7")
        return sign * alpha ** chi.power
    if not alpha.is_integral():
        raise SeesawError(f"{alpha} is not integral")
    return alpha ** chi.power


def eval_ideal(chi, ideal, prec=128):
    """
    Complex value of the character on an ideal.

    Parameters:
        chi (HeckeCharSpec): The character.
        ideal (IdealE): An ideal coprime to the conductor.
        prec (int): Binary precision of the result.

    Returns:
        mpmath.mpc: χ'(a), divided by Nm(a)^{n/2} when chi.normalized.
    """
    exact = eval_element(chi, ideal.generator)
    with mpmath.workprec(prec):
        value = mpmath.mpc(exact.to_mpc())
        if chi.normalized:
            value /= mpmath.power(ideal.norm(), mpmath.mpf(chi.power) / 2)
        return +value


@dataclass(frozen=True)
class TwistedCharSpec:
    """χ̃(α) = χ(α/ᾱ) attached to a canonical-character power."""
    base: HeckeCharSpec

    def eval_exact(self, alpha):
        # ε(ᾱ) = ε(α), so only the archimedean part survives
        return (alpha / alpha.conj()) ** self.base.power

    def eval_ideal(self, ideal, prec=128):
        with mpmath.workprec(prec):
            return +mpmath.mpc(self.eval_exact(ideal.generator).to_mpc())


def twisted_char(chi):
    return TwistedCharSpec(chi)


@dataclass(frozen=True)
class LocalCharData:
    """
    Local data at a rational prime needed for the conductor of π_χ.

    Fields:
        p (int): The rational prime.
        kind (str): 'split', 'inert' or 'ramified' behaviour of p in E.
        c_chi (int): Conductor exponent of χ_v (of χ₁ at a split place).
        c_chi2 (int): Conductor exponent of χ₂ at a split place.
    """
    p: int
    kind: str
    c_chi: int = 0
    c_chi2: int = 0


def splitting_type(p, u=CANONICAL_U):
    if not isprime(p):
        raise NotPrimeError(f"{p} is not a prime")
    disc = u if u % 4 == 1 else 4 * u
    symbol = kronecker(disc, p)
    return {1: "split", -1: "inert", 0: "ramified"}[symbol]


def local_data(chi, p):
    kind = splitting_type(p, chi.field_u)
    c = 1 if (p == RAMIFIED_PRIME and chi.power % 2) else 0
    return LocalCharData(p=p, kind=kind, c_chi=c)


def conductor_pi(data):
    """
    Conductor exponent of the automorphic induction π_χ at one prime.

    Parameters:
        data (LocalCharData): Local splitting type and character conductors.

    Returns:
        int: c(χ₁)+c(χ₂) when split, val(4)+2c(χ) when unramified,
        1+val(4)+c(χ) when ramified.
    """
    val4 = 2 if data.p == 2 else 0
    if data.kind == "split":
        return data.c_chi + data.c_chi2
    if data.kind == "inert":
        return val4 + 2 * data.c_chi
    if data.kind == "ramified":
        return 1 + val4 + data.c_chi
    raise SeesawError(f"unknown splitting type {data.kind!r}")


def level(chi):
    """Global level ∏ p^{c(π_χ,p)}; only primes dividing 2·disc can contribute."""
    result = 1
    for p in (2, RAMIFIED_PRIME):
        result *= p ** conductor_pi(local_data(chi, p))
    logger.debug("level of χ_can^%d is %d", chi.power, result)
    return result


@dataclass(frozen=True)
class SplitPrime:
    """
    A split rational prime p = 𝔭𝔭̄ of Q(√−7) with a generator π of 𝔭.
    """
    p: int
    pi: QuadElem = field(compare=False)

    @classmethod
    def at(cls, p):
        if p == 2 or splitting_type(p) != "split":
            raise SeesawError(f"{p} is not an odd split prime of Q(√−7)")
        pi = ideals_of_norm(p)[0].canonical_generator()
        return cls(p, pi)

    def _integral_valuation(self, y, pi):
        v = 0
        while True:
            quotient = y / pi
            if not quotient.is_integral():
                return v
            y = quotient
            v += 1

    def valuations(self, x):
        """(v_𝔭(x), v_𝔭̄(x)) for nonzero x ∈ E."""
        if not x:
            raise SeesawError("valuation of zero")
        d = x.a.denominator * x.b.denominator * 2
        y = x * d
        vd = 0
        while d % self.p == 0:
            d //= self.p
            vd += 1
        return (self._integral_valuation(y, self.pi) - vd,
                self._integral_valuation(y, self.pi.conj()) - vd)


@dataclass(frozen=True)
class UnramifiedSplitCharacter:
    """
    ξ(x) = exp(2πi·angle·(v_𝔭(x) − v_𝔭̄(x))) on E_p^× at an odd split prime.

    Trivial on Q_p^×, matching ε_{E/Q} at a split place. Values are returned as exact
    angles in Q/Z.
    """
    prime: SplitPrime
    angle: Fraction

    def angle_of(self, x):
        v1, v2 = self.prime.valuations(x)
        return (self.angle * (v1 - v2)) % 1


def unramified_split_character(p, angle):
    return UnramifiedSplitCharacter(SplitPrime.at(p), to_rational(angle) % 1)
