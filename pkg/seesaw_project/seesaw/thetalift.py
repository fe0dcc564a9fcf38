"""
Theta lifts of canonical-character powers to GL(2), computed two independent ways:

* from ideal sums, a_n = Σ_{Nm a = n} χ'(a), giving the newform f of weight n+1;
* from the lattice sum over O_E of the archimedean Schwartz function φ'_{k,l},

    θ_l(τ) = ½·y^{−l}·Σ_{x ∈ O_E} w(x)·₁F₁(−l, κ, 4πNm(x)y)·x̄^k·e^{2πiNm(x)τ},

where w(x) = ε(x)^n and κ = k+1 = n+1. The two agree through θ_l = D_l·δ^l f with
D_l = (−4π)^l/(κ)_l, D_0 = 1 (the ½ absorbs the unit group ±1).
"""
import logging
import math
from dataclasses import dataclass, field

import mpmath
from sympy import primerange

from .exceptions import ConductorError, NormalizationError, SeesawError, TruncationError
from .hecke import (CANONICAL_U, RAMIFIED_PRIME, canonical_char, elements_up_to_norm,
                    epsilon, eval_element, level, splitting_type)
from .parallel import ordered_map
from .qfield import QuadElem, kronecker
from .schwartz import kummer_poly, raise_weight_polynomial, rising

logger = logging.getLogger(__name__)

# sample points for the ratio-constancy contract
RATIO_SAMPLE_POINTS = (complex(0, 1), complex(0.5, 1), complex(0.3, 0.8))
# η(z)³η(7z)³, the weight 3 newform of level 7
ETA_SIGNATURE_CAN2 = {1: 3, 7: 3}


@dataclass(frozen=True)
class QExpansion:
    """
    A truncated q-expansion Σ_{n ≥ 1} a_n q^n.

    Fields:
        weight (int): Holomorphic weight.
        level (int): Level of the newform.
        coefficients (tuple[int, ...]): a_0, a_1, ..., a_N (a_0 = 0).
        label (str): Where the expansion came from.
    """
    weight: int
    level: int
    coefficients: tuple
    label: str = ""

    @property
    def truncation(self):
        return len(self.coefficients) - 1

    def __getitem__(self, n):
        if n > self.truncation:
            raise SeesawError(f"a_{n} is beyond the truncation {self.truncation}")
        return self.coefficients[n]

    def is_multiplicative(self, limit=None):
        """a_{mn} = a_m·a_n for coprime m, n prime to the level with mn ≤ limit."""
        limit = self.truncation if limit is None else min(limit, self.truncation)
        for m in range(2, limit + 1):
            if math.gcd(m, self.level) != 1:
                continue
            for n in range(m + 1, limit // m + 1):
                if math.gcd(n, self.level) == 1 and math.gcd(m, n) == 1:
                    if self[m * n] != self[m] * self[n]:
                        logger.warning("a_%d ≠ a_%d·a_%d in %s", m * n, m, n, self.label)
                        return False
        return True

    def inert_vanishing(self, u=CANONICAL_U):
        """a_p = 0 for every prime p ≤ N inert in Q(√u)."""
        return all(self[p] == 0 for p in primerange(3, self.truncation + 1)
                   if p != 2 and splitting_type(p, u) == "inert")

    def as_dict(self):
        return {"weight": self.weight, "level": self.level, "label": self.label,
                "coefficients": {str(n): str(a) for n, a in enumerate(self.coefficients) if n}}


def qexp_from_ideals(chi, N):
    """
    Coefficients a_n = Σ χ'(a) over ideals of norm n coprime to the conductor.

    Every ideal of O_E has the two generators ±x, so a_n is half the sum over elements.

    Parameters:
        chi (HeckeCharSpec): A canonical-character power χ_can^n.
        N (int): Truncation, ≥ 1.

    Returns:
        QExpansion: The weight n+1 newform, exact integer coefficients.
    """
    if N < 1:
        raise SeesawError("truncation must be at least 1")
    shells = elements_up_to_norm(N, chi.field_u)
    coefficients = [0] * (N + 1)
    for n, elements in shells.items():
        total = QuadElem.rational(0, chi.field_u)
        for x in elements:
            try:
                total = total + eval_element(chi, x)
            except ConductorError:
                continue
        total = total / 2
        if not total.is_rational() or total.a.denominator != 1:
            raise NormalizationError(f"a_{n} = {total} is not a rational integer")
        coefficients[n] = int(total.a)
    f = QExpansion(chi.weight, level(chi), tuple(coefficients), f"χ_can^{chi.power}")
    logger.info("q-expansion of χ_can^%d to N=%d (level %d)", chi.power, N, f.level)
    return f


def eta_product_coefficients(signature, N):
    """
    q-expansion of ∏_d η(dz)^{e_d}, whose leading exponent Σ d·e_d/24 must be an integer.

    Parameters:
        signature (dict[int, int]): d ↦ e_d.
        N (int): Truncation.

    Returns:
        list[int]: a_0, ..., a_N.
    """
    shift = sum(d * e for d, e in signature.items())
    if shift % 24:
        raise SeesawError(f"leading exponent {shift}/24 is not an integer")
    shift //= 24
    series = [0] * (N + 1)
    if shift > N:
        return series
    series[0] = 1
    length = N - shift
    for d, e in signature.items():
        for m in range(1, length // d + 1):
            step = m * d
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(length, step - 1, -1):
                        series[i] -= series[i - step]
                else:
                    for i in range(step, length + 1):
                        series[i] += series[i - step]
    return [0] * shift + series[:length + 1]


def eval_qexp(f, tau, prec=128):
    with mpmath.workprec(prec):
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise SeesawError("τ must lie in the upper half-plane")
        q = mpmath.expjpi(2 * tau)
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)
        for a in f.coefficients[1:]:
            power *= q
            if a:
                total += a * power
        return +total


def maass_shimura_apply(f, k, l, prec=128):
    """
    τ ↦ δ_{k+2l−2} ∘ ⋯ ∘ δ_k f(τ), δ_w = (1/2πi)(∂_τ + w/(2iy)), evaluated termwise:
    δ^l q^n = P_l(n, 1/(4πy))·q^n with P_l from the exact raising recursion.
    """
    terms = [(n_exp, m, int(c)) for (n_exp, m), c in raise_weight_polynomial(k, l).terms()]

    def evaluate(tau):
        with mpmath.workprec(prec):
            tau = mpmath.mpc(tau)
            Y = 1 / (4 * mpmath.pi * tau.imag)
            q = mpmath.expjpi(2 * tau)
            total = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for n, a in enumerate(f.coefficients[1:], start=1):
                power *= q
                if a:
                    weight = sum(c * mpmath.mpf(n) ** n_exp * Y ** m for n_exp, m, c in terms)
                    total += a * weight * power
            return +total
    return evaluate


@dataclass(frozen=True)
class LatticeSumConfig:
    """
    Plumbing for θ_l: which lattice points to include and how precise to be.

    Fields:
        radius (int): Include x with Nm(x) ≤ radius.
        prec (int): Binary working precision.
        tolerance (float): Required bound on the discarded tail.
        threads (int): Worker threads over norm shells.
    """
    radius: int = 60
    prec: int = 128
    tolerance: float = 1e-15
    threads: int = field(default=1, compare=False)


def lattice_weight(chi, x):
    """w(x) = ε(x)^n; zero for odd powers at x divisible by √−7."""
    if chi.power % 2 == 0:
        return 1
    return epsilon(x) ** chi.power


def tail_bound(radius, y, k, l):
    """
    Bound on Σ_{Nm x > radius} of the θ_l terms: shells hold at most 2(N+1) points,
    |₁F₁(−l, κ, t)| ≤ (1+t)^l and |x̄^k| = N^{k/2}.
    """
    y = mpmath.mpf(y)
    start = radius + 1
    total = mpmath.mpf(0)
    N = start
    while True:
        term = (2 * (N + 1) * mpmath.mpf(N) ** (mpmath.mpf(k) / 2) * (1 + 4 * mpmath.pi * N * y) ** l
                * y ** (-l) * mpmath.exp(-2 * mpmath.pi * N * y)) / 2
        total += term
        if N > start + 20 / (2 * mpmath.pi * y) and term < total * mpmath.mpf(10) ** -20:
            return total
        N += 1


def suggest_radius(y, k, l, tolerance):
    """Smallest radius whose tail bound is below tolerance."""
    radius = 8
    while tail_bound(radius, y, k, l) > tolerance:
        radius *= 2
    low, high = radius // 2, radius
    while low + 1 < high:
        middle = (low + high) // 2
        if tail_bound(middle, y, k, l) > tolerance:
            low = middle
        else:
            high = middle
    return high


def theta_lattice_eval(tau, chi, l, cfg=None):
    """
    θ_l(τ) by direct summation over lattice points of O_E.

    Parameters:
        tau (complex): Point of the upper half-plane.
        chi (HeckeCharSpec): The character χ_can^n (k = n).
        l (int): Number of raising steps.
        cfg (LatticeSumConfig): Truncation and precision.

    Returns:
        mpmath.mpc: The lattice sum.

    Raises:
        TruncationError: when the tail beyond cfg.radius exceeds cfg.tolerance.
    """
    cfg = cfg or LatticeSumConfig()
    k = chi.k
    kappa = k + 1
    poly = kummer_poly(k, l)
    with mpmath.workprec(cfg.prec):
        tau = mpmath.mpc(tau)
        y = tau.imag
        if y <= 0:
            raise SeesawError("τ must lie in the upper half-plane")
        bound = tail_bound(cfg.radius, y, k, l)
        if bound > cfg.tolerance:
            raise TruncationError(f"tail bound {mpmath.nstr(bound, 5)} exceeds {cfg.tolerance}",
                                  suggest_radius(y, k, l, cfg.tolerance))
        shells = elements_up_to_norm(cfg.radius, chi.field_u)

        def shell_sum(item):
            norm, elements = item
            radial = poly(4 * mpmath.pi * norm * y) * mpmath.expjpi(2 * norm * tau)
            total = mpmath.mpc(0)
            for x in elements:
                weight = lattice_weight(chi, x)
                if weight:
                    total += weight * mpmath.conj(x.to_mpc()) ** k
            return total * radial

        partial = ordered_map(shell_sum, sorted(shells.items()), cfg.threads)
        value = mpmath.fsum(partial) * y ** (-l) / 2
        logger.debug("θ_%d(%s) for χ_can^%d over Nm ≤ %d (κ=%d): %s", l, tau, chi.power,
                     cfg.radius, kappa, mpmath.nstr(value, 12))
        return +value


def expected_d(k, l):
    """D_l = (−4π)^l/(κ)_l = (2πi)^l(2i)^l/(κ)_l with κ = k+1."""
    return (-4 * mpmath.pi) ** l / mpmath.mpf(int(rising(k + 1, l)))


def proportionality_constant(l, chi=None, points=RATIO_SAMPLE_POINTS, cfg=None, N=None, tol=1e-7):
    """
    D_l as the ratio θ_l(τ)/δ^l f(τ) across sample points.

    Returns:
        dict: the mean ratio, its spread, and the closed form D_l.

    Raises:
        NormalizationError: when the ratios disagree beyond tol.
    """
    chi = chi or canonical_char(2)
    cfg = cfg or LatticeSumConfig()
    N = N or cfg.radius
    f = qexp_from_ideals(chi, N)
    raised = maass_shimura_apply(f, chi.k + 1, l, cfg.prec)
    with mpmath.workprec(cfg.prec):
        ratios = [theta_lattice_eval(tau, chi, l, cfg) / raised(tau) for tau in points]
        mean = mpmath.fsum(ratios) / len(ratios)
        spread = max(abs(r - mean) for r in ratios) / abs(mean)
        if spread > tol:
            raise NormalizationError(f"θ_{l}/δ^{l}f varies across τ (relative spread {mpmath.nstr(spread, 5)})")
        expected = expected_d(chi.k, l)
        logger.info("D_%d = %s (closed form %s)", l, mpmath.nstr(mean, 12), mpmath.nstr(expected, 12))
        return {"l": l, "ratio": mean, "spread": spread, "closed_form": expected,
                "abs": abs(mean)}


def atkin_lehner_check(f, tau, prec=128):
    """
    |F(−1/(Nτ))| against N^{w/2}|τ|^w|F(τ)| for the Fricke involution of level N.

    Returns:
        mpmath.mpf: The relative discrepancy.
    """
    with mpmath.workprec(prec):
        tau = mpmath.mpc(tau)
        image = -1 / (f.level * tau)
        lhs = abs(eval_qexp(f, image, prec))
        rhs = mpmath.mpf(f.level) ** (mpmath.mpf(f.weight) / 2) * abs(tau) ** f.weight * abs(eval_qexp(f, tau, prec))
        return abs(lhs - rhs) / rhs


def nebentypus(chi, d):
    """Character of the newform at d: the Kronecker symbol (−7/d) for even powers, trivial for odd."""
    if chi.power % 2:
        return 1
    return kronecker(-RAMIFIED_PRIME, abs(d)) * (1 if d > 0 else -1)


def gamma0_check(f, chi, gamma, tau, prec=128):
    """
    Relative discrepancy in F(γτ) = ν(d)(cτ+d)^w F(τ) for γ = ((a, b), (c, d)) in Γ₀(level).
    """
    (a, b), (c, d) = gamma
    if a * d - b * c != 1 or c % f.level:
        raise SeesawError(f"{gamma} is not in Γ0({f.level})")
    with mpmath.workprec(prec):
        tau = mpmath.mpc(tau)
        image = (a * tau + b) / (c * tau + d)
        lhs = eval_qexp(f, image, prec)
        rhs = nebentypus(chi, d) * (c * tau + d) ** f.weight * eval_qexp(f, tau, prec)
        return abs(lhs - rhs) / abs(rhs)


def fricke_eigenvalue(f, prec=128):
    """
    The constant c with F(−1/(7τ)) = c·7^{w/2}·τ^w·F(τ) at τ = 0.2 + 0.5i; for
    η(z)³η(7z)³ this is i.
    """
    with mpmath.workprec(prec):
        tau = mpmath.mpc(0.2, 0.5)
        image = -1 / (f.level * tau)
        return +(eval_qexp(f, image, prec)
                 / (mpmath.mpf(f.level) ** (mpmath.mpf(f.weight) / 2) * tau ** f.weight * eval_qexp(f, tau, prec)))
