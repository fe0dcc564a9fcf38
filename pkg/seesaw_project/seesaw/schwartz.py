"""
Archimedean Schwartz functions φ'_{k,l}(z) = ₁F₁(−l, |k|+1, 4πzz̄)·z̄^k·e^{−2πzz̄}
(z^{|k|} in place of z̄^k when k < 0) on C, their exact polynomial structure, and
the identities they satisfy.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from .exceptions import SeesawError

logger = logging.getLogger(__name__)

Z, ZB, T = sympy.symbols("z zb t")
N_SYM, Y_SYM = sympy.symbols("N Y")


def rising(a, j):
    """Pochhammer symbol (a)_j for rational a."""
    result = Fraction(1)
    for i in range(j):
        result *= a + i
    return result


@dataclass(frozen=True)
class KummerPoly:
    """
    Terminating ₁F₁(a, b, t) with a = −l ≤ 0.

    Fields:
        a (int): −l.
        b (int): |k| + 1.
        coefficients (tuple[Fraction, ...]): (a)_j / ((b)_j j!) for j = 0..l.
    """
    a: int
    b: int
    coefficients: tuple

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, t):
        value = 0
        for c in reversed(self.coefficients):
            value = value * t + (mpmath.mpf(c.numerator) / c.denominator
                                 if isinstance(t, (mpmath.mpf, mpmath.mpc)) else c)
        return value

    def as_sympy(self, variable=T):
        return sum(sympy.Rational(c.numerator, c.denominator) * variable ** j
                   for j, c in enumerate(self.coefficients))


def kummer_poly(k, l):
    if l < 0:
        raise SeesawError(f"l must be nonnegative, got {l}")
    a, b = -l, abs(k) + 1
    coefficients = tuple(rising(a, j) / (rising(b, j) * math.factorial(j)) for j in range(l + 1))
    return KummerPoly(a, b, coefficients)


@dataclass(frozen=True)
class ArchSchwartz:
    k: int
    l: int
    poly: KummerPoly

    def __call__(self, z, prec=128):
        return eval_phi(self.k, self.l, z, prec)


def arch_schwartz(k, l):
    return ArchSchwartz(k, l, kummer_poly(k, l))


def eval_phi(k, l, z, prec=128):
    """
    φ'_{k,l}(z) at the given binary precision.

    Parameters:
        k (int): Infinity-type exponent.
        l (int): Raising index, ≥ 0.
        z (complex | mpmath.mpc): The point.

    Returns:
        mpmath.mpc: ₁F₁(−l, |k|+1, 4π|z|²)·z̄^k·e^{−2π|z|²}.
    """
    poly = kummer_poly(k, l)
    with mpmath.workprec(prec):
        z = mpmath.mpc(z)
        r2 = z.real ** 2 + z.imag ** 2
        angular = mpmath.conj(z) ** k if k >= 0 else z ** (-k)
        return +(poly(4 * mpmath.pi * r2) * angular * mpmath.exp(-2 * mpmath.pi * r2))


def verify_ode(k, l):
    """t·f'' + (b − t)·f' − a·f = 0 identically for f the Kummer polynomial."""
    poly = kummer_poly(k, l)
    f = poly.as_sympy()
    residual = sympy.expand(T * sympy.diff(f, T, 2) + (poly.b - T) * sympy.diff(f, T) - poly.a * f)
    return residual == 0


@dataclass(frozen=True)
class GaussianPoly:
    """
    Q(z, z̄)·e^{−cπzz̄} with Q a polynomial in z, z̄, π; z and z̄ are independent
    symbols so ∂_z and ∂_z̄ act on the pair.
    """
    expr: sympy.Expr
    c: sympy.Rational

    def d_z(self):
        return GaussianPoly(sympy.expand(sympy.diff(self.expr, Z) - self.c * sympy.pi * ZB * self.expr), self.c)

    def d_zb(self):
        return GaussianPoly(sympy.expand(sympy.diff(self.expr, ZB) - self.c * sympy.pi * Z * self.expr), self.c)

    def scale(self, factor):
        return GaussianPoly(sympy.expand(factor * self.expr), self.c)

    def __add__(self, other):
        if self.c != other.c:
            raise SeesawError("Gaussian tags differ")
        return GaussianPoly(sympy.expand(self.expr + other.expr), self.c)

    def __sub__(self, other):
        return self + other.scale(-1)


def phi_gaussian_poly(k, l):
    poly = kummer_poly(k, l).as_sympy(4 * sympy.pi * Z * ZB)
    angular = ZB ** k if k >= 0 else Z ** (-k)
    return GaussianPoly(sympy.expand(poly * angular), sympy.Integer(2))


def oscillator(F):
    """H = −(1/2π)∂_z∂_z̄ + 2πzz̄, the generator of the rotation action up to i."""
    return F.d_zb().d_z().scale(-1 / (2 * sympy.pi)) + F.scale(2 * sympy.pi * Z * ZB)


def rotation_eigen_check(k, l):
    """
    H φ'_{k,l} = (|k| + 1 + 2l)·φ'_{k,l} by exact coefficient comparison, i.e. the
    rotation r(θ) acts by e^{i(|k|+1+2l)θ}.
    """
    F = phi_gaussian_poly(k, l)
    eigenvalue = abs(k) + 1 + 2 * l
    residual = (oscillator(F) - F.scale(eigenvalue)).expr
    return sympy.simplify(residual) == 0


def rotation_eigenvalue(k, l):
    return abs(k) + 1 + 2 * l


def phi_inner_product(k, l, prec=128):
    """⟨φ'_{k,l}, φ'_{k,l}⟩ = 2π/(4π)^{|k|+1}·l!·|k|!²/(l+|k|)! for the measure dz dz̄ = 2 dx dy."""
    kk = abs(k)
    with mpmath.workprec(prec):
        ratio = mpmath.mpf(math.factorial(l) * math.factorial(kk) ** 2) / math.factorial(l + kk)
        return +(2 * mpmath.pi / (4 * mpmath.pi) ** (kk + 1) * ratio)


def numeric_inner_product(k1, l1, k2=None, l2=None, angular_nodes=8, prec=96):
    """
    ∫_C φ'_{k1,l1}·conj(φ'_{k2,l2}) dz dz̄ by a trapezoid rule in the angle and
    tanh-sinh quadrature in s = 4π|z|² (dz dz̄ = ds dθ / 4π).
    """
    k2 = k1 if k2 is None else k2
    l2 = l1 if l2 is None else l2
    thetas = np.linspace(0.0, 2 * math.pi, angular_nodes, endpoint=False)
    with mpmath.workprec(prec):
        total = mpmath.mpc(0)
        for theta in thetas:
            phase = mpmath.expj(mpmath.mpf(theta))

            def integrand(s):
                z = mpmath.sqrt(s / (4 * mpmath.pi)) * phase
                return eval_phi(k1, l1, z, prec) * mpmath.conj(eval_phi(k2, l2, z, prec))
            total += mpmath.quad(integrand, [0, 10, 40, mpmath.inf])
        value = total * (2 * mpmath.pi / angular_nodes) / (4 * mpmath.pi)
    logger.debug("numeric ⟨φ'(%d,%d), φ'(%d,%d)⟩ = %s", k1, l1, k2, l2, mpmath.nstr(value, 15))
    return value


def orthogonality_matrix(k, max_l, prec=96):
    """Numeric Gram matrix of φ'_{k,0..max_l}; off-diagonal entries vanish."""
    return [[numeric_inner_product(k, i, k, j, prec=prec) for j in range(max_l + 1)]
            for i in range(max_l + 1)]


def maass_shimura_constant(k, l):
    """
    (|k|+1)_l / ((2πi)^l (2i)^l) = (|k|+1)_l / (−4π)^l as a sympy number.
    """
    return sympy.Integer(int(rising(abs(k) + 1, l))) / (-4 * sympy.pi) ** l


def raise_weight_polynomial(kappa, l):
    """
    P_l(N, Y) with δ^l(q^N) = P_l(N, Y)·q^N, Y = 1/(4πy), starting from weight κ.

    δ_w(q^N Y^m) = q^N (N Y^m + (m − w) Y^{m+1}).
    """
    poly = sympy.Poly(sympy.Integer(1), N_SYM, Y_SYM)
    weight = kappa
    for _ in range(l):
        raised = sympy.Integer(0)
        for (n_exp, m), coefficient in poly.terms():
            raised += coefficient * N_SYM ** n_exp * (N_SYM * Y_SYM ** m + (m - weight) * Y_SYM ** (m + 1))
        poly = sympy.Poly(sympy.expand(raised), N_SYM, Y_SYM)
        weight += 2
    return poly


def maass_shimura_closed_form(kappa, l):
    """(−1)^l (κ)_l Y^l ₁F₁(−l, κ, N/Y) expanded as a polynomial in N, Y."""
    expr = sum(sympy.Rational((-1) ** l) * int(rising(kappa, l)) * sympy.Rational(int(rising(-l, j)),
               int(rising(kappa, j)) * math.factorial(j)) * N_SYM ** j * Y_SYM ** (l - j)
               for j in range(l + 1))
    return sympy.Poly(sympy.expand(expr), N_SYM, Y_SYM)


def maass_shimura_phi_relation(k, l, numeric_points=3, seed=0, prec=160):
    """
    δ^l applied to y^{1/2}e^{2πixN}φ'_{k,0}(v√y), with the weight factor y^{κ/2}v̄^k
    stripped, equals maass_shimura_constant·y^{−l}·₁F₁(−l, κ, 4πNy)·q^N.

    The identity is checked exactly on the (N, Y) polynomial and, for l ≤ 2, by nested
    numerical differentiation at random points.
    """
    kappa = abs(k) + 1
    if raise_weight_polynomial(kappa, l) != maass_shimura_closed_form(kappa, l):
        logger.warning("Maass–Shimura polynomial mismatch at (k, l) = (%d, %d)", k, l)
        return False
    if l > 2 or numeric_points == 0:
        return True
    rng = np.random.default_rng(seed)
    poly = kummer_poly(k, l)
    with mpmath.workprec(prec):
        constant = mpmath.mpf(int(rising(kappa, l))) / (-4 * mpmath.pi) ** l
        for _ in range(numeric_points):
            x0, y0 = (mpmath.mpf(float(v)) for v in rng.uniform(0.2, 0.9, size=2))
            norm = mpmath.mpf(int(rng.integers(1, 4)))
            raised = _numeric_raise(norm, kappa, l)
            expected = (constant * y0 ** (-l) * poly(4 * mpmath.pi * norm * y0)
                        * mpmath.exp(2j * mpmath.pi * norm * mpmath.mpc(x0, y0)))
            value = raised(x0, y0)
            if abs(value - expected) > mpmath.mpf(10) ** -12 * (1 + abs(expected)):
                logger.warning("Maass–Shimura numeric mismatch: %s vs %s", value, expected)
                return False
    return True


def _numeric_raise(norm, kappa, l):
    def base(x, y):
        return mpmath.exp(2j * mpmath.pi * norm * mpmath.mpc(x, y))

    def raise_once(f, weight):
        def raised(x, y):
            fx = mpmath.diff(lambda s: f(s, y), x)
            fy = mpmath.diff(lambda s: f(x, s), y)
            d_tau = (fx - 1j * fy) / 2
            return (d_tau + weight / (2j * y) * f(x, y)) / (2j * mpmath.pi)
        return raised

    f = base
    for step in range(l):
        f = raise_once(f, kappa + 2 * step)
    return f
