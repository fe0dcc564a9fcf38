"""
Torus periods of θ_{φ'_l}(χ_can² ξ) against χ_can^{3+2l} on the embedded torus of
Q(√−7), computed two ways: from the q-expansion at the CM point, and from the
unfolded seesaw double integral over the lattice.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from .exceptions import SeesawError, TruncationError, VerificationFailed
from .hecke import CANONICAL_U, RAMIFIED_PRIME, canonical_char, elements_up_to_norm
from .parallel import ordered_map
from .qfield import QuadElem, valuation
from .rallis import l_epsilon
from .schwartz import eval_phi, rotation_eigenvalue
from .thetalift import (LatticeSumConfig, expected_d, lattice_weight, maass_shimura_apply, qexp_from_ideals,
                        suggest_radius, tail_bound)

logger = logging.getLogger(__name__)

OMEGA = QuadElem(Fraction(1, 2), Fraction(1, 2), CANONICAL_U)


@dataclass(frozen=True)
class TorusEmbedding:
    """
    E = Q(√u) → M₂(Q), a + b√u ↦ [[a, −2b], [−bu/2, a]].
    """
    u: int = CANONICAL_U

    def matrix(self, alpha):
        if alpha.u != self.u:
            raise SeesawError(f"element of Q(√{alpha.u}) given to the Q(√{self.u}) embedding")
        return sympy.Matrix([[alpha.a, -2 * alpha.b], [-alpha.b * self.u / 2, alpha.a]])

    def numeric_matrix(self, angle, prec=128):
        """Image of e^{iψ} = cos ψ + (sin ψ/√|u|)·√u as an mpmath matrix."""
        with mpmath.workprec(prec):
            a = mpmath.cos(angle)
            b = mpmath.sin(angle) / mpmath.sqrt(-self.u)
            return mpmath.matrix([[a, -2 * b], [-b * self.u / 2, a]])

    def fixed_point(self):
        """The fixed point in the upper half-plane of the image of √u."""
        m = self.matrix(QuadElem.sqrt_u(self.u))
        tau = sympy.Symbol("tau")
        a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        roots = sympy.solve(sympy.Eq(c * tau ** 2 + (d - a) * tau - b, 0), tau)
        upper = [root for root in roots if sympy.im(root) > 0]
        if len(upper) != 1:
            raise SeesawError("the torus does not have a unique fixed point in the upper half-plane")
        return sympy.nsimplify(upper[0])


def cm_point():
    """τ₀ = 2i/√7."""
    return TorusEmbedding().fixed_point()


def fixes_cm_point(alpha, embedding=None):
    embedding = embedding or TorusEmbedding()
    m = embedding.matrix(alpha)
    tau = embedding.fixed_point()
    image = (m[0, 0] * tau + m[0, 1]) / (m[1, 0] * tau + m[1, 1])
    return sympy.simplify(image - tau) == 0


def _as_fraction(entry):
    return Fraction(int(entry.p), int(entry.q))


def _min_valuation(m, p):
    return min(valuation(_as_fraction(entry), p) if entry else math.inf for entry in m)


def optimal_embedding_report(primes=(2, 3, 5, 7, 11, 13)):
    """
    Per prime, the conductor exponent of O_E ∩ ι^{-1}(M₂(Z_p)) and, at 7, whether
    O_{E,7} lands inside K₀(7).

    Returns:
        list[dict]: p, conductor_exponent, optimal and in_k0 (at 7 only).
    """
    embedding = TorusEmbedding()
    report = []
    for p in primes:
        exponent = 0
        while _min_valuation(embedding.matrix(OMEGA * p ** exponent), p) < 0:
            exponent += 1
        entry = {"p": p, "conductor_exponent": exponent, "optimal": exponent == 0}
        if p == RAMIFIED_PRIME:
            lower_left = [embedding.matrix(gen)[1, 0] for gen in (QuadElem.rational(1, CANONICAL_U), OMEGA)]
            entry["in_k0"] = all(not entry_value or valuation(_as_fraction(entry_value), p) >= 1
                                 for entry_value in lower_left)
        report.append(entry)
    non_optimal = [entry["p"] for entry in report if not entry["optimal"]]
    if non_optimal:
        logger.info("embedding is not optimal at %s (order of conductor %s)", non_optimal,
                    [p ** entry["conductor_exponent"] for p, entry in zip(primes, report) if not entry["optimal"]])
    return report


def finite_torus_factor(m, nebentypus_parity=1):
    """
    Average over Ô_E^×/Ẑ^× of the finite characters in the period integrand.

    Both χ_can^m and the nebentypus of the lift restrict to powers of the residue
    symbol at 7, so the average is 1 when the parities cancel and 0 otherwise.
    """
    return 1 if (m + nebentypus_parity) % 2 == 0 else 0


def constant_bundle(m, prec=128):
    """
    Measure and character constants relating the adelic torus integral to the
    archimedean computation, class number one.

    Returns:
        dict: circle_volume, sign_quotient, finite_volume, class_number,
        finite_torus_factor and their product (without the circle volume).
    """
    with mpmath.workprec(prec):
        l_value = mpmath.mpf(l_epsilon(prec).value)
        # vol(E^×\A_E^×/A^×) = 2L(1, ε) = vol(C¹/±1)·vol(Ô_E^×/Ẑ^×)
        finite_volume = 2 * l_value / mpmath.pi
        bundle = {
            "circle_volume": 2 * mpmath.pi,
            "sign_quotient": mpmath.mpf(1) / 2,
            "finite_volume": finite_volume,
            "class_number": 1,
            "finite_torus_factor": finite_torus_factor(m),
        }
        bundle["product"] = bundle["sign_quotient"] * finite_volume * bundle["class_number"] * \
            bundle["finite_torus_factor"]
        return bundle


def weight_of(l, chi=None):
    chi = chi or canonical_char(2)
    return rotation_eigenvalue(chi.k, l)


def circle_integral(frequency, prec=128):
    """∫_0^{2π} e^{i·frequency·ψ} dψ, split into half periods."""
    with mpmath.workprec(prec):
        pieces = mpmath.linspace(0, 2 * mpmath.pi, max(2 * abs(frequency), 1) + 1)
        return mpmath.quad(lambda psi: mpmath.expj(frequency * psi), pieces)


def period_lhs(l, m=None, cfg=None, N=None):
    """
    K·∫_{C¹}(e^{iwψ}e^{−imψ})dψ·D_l·y₀^{w/2}·δ^l f(τ₀) with w = 3 + 2l.

    The circle integral is evaluated by mpmath.quad over one period.
    """
    chi = canonical_char(2)
    cfg = cfg or LatticeSumConfig()
    w = weight_of(l, chi)
    m = w if m is None else m
    f = qexp_from_ideals(chi, N or cfg.radius)
    raised = maass_shimura_apply(f, chi.k + 1, l, cfg.prec)
    with mpmath.workprec(cfg.prec):
        tau0 = mpmath.mpc(0, 2 / mpmath.sqrt(7))
        bundle = constant_bundle(m, cfg.prec)
        circle = circle_integral(w - m, cfg.prec)
        value = bundle["product"] * circle * expected_d(chi.k, l) * tau0.imag ** (mpmath.mpf(w) / 2) * raised(tau0)
        return +mpmath.mpc(value)


def iwasawa(g):
    """g = n(x)a(y)k(θ) in SL₂(R): (x, y, θ) with g·i = x + iy and θ = arg(d + ci)."""
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    denominator = c * c + d * d
    return (a * c + b * d) / denominator, 1 / denominator, mpmath.arg(mpmath.mpc(d, c))


def _seesaw_integrand(shells, chi, l, g, theta, prec):
    """
    ½·y'^{1/2}·e^{iwθ'}·Σ_x w(x)·e^{2πix'Nm x}·φ'_l(√y'·x·e^{−iθ}) at g = n(x')a(y')k(θ').
    """
    w = weight_of(l, chi)
    with mpmath.workprec(prec):
        x1, y1, theta1 = iwasawa(g)
        rotation = mpmath.expj(-theta)
        scale = mpmath.sqrt(y1)
        total = mpmath.mpc(0)
        for norm, elements in shells:
            phase = mpmath.expjpi(2 * x1 * norm)
            shell = mpmath.mpc(0)
            for x in elements:
                weight = lattice_weight(chi, x)
                if weight:
                    shell += weight * eval_phi(chi.k, l, scale * x.to_mpc() * rotation, prec)
            total += phase * shell
        return mpmath.sqrt(y1) / 2 * mpmath.expj(w * theta1) * total


def period_rhs(l, m=None, cfg=None, depth=4):
    """
    (1/2π)∬ Θ(t(e^{iψ})h₀; e^{iθ})·χ_∞(e^{iθ})·χ^m_∞(e^{iψ}) dθ dψ, times the constant bundle.

    The archimedean double integral is a trapezoid rule on 2^depth × 2^depth nodes,
    exact for the trigonometric integrands here; the lattice sum is truncated at
    cfg.radius with a certified tail bound at y₀.

    Raises:
        TruncationError: when the tail bound at y₀ exceeds cfg.tolerance.
    """
    chi = canonical_char(2)
    cfg = cfg or LatticeSumConfig()
    w = weight_of(l, chi)
    m = w if m is None else m
    nodes = 2 ** depth
    embedding = TorusEmbedding()
    with mpmath.workprec(cfg.prec):
        y0 = 2 / mpmath.sqrt(7)
        bound = tail_bound(cfg.radius, y0, chi.k, l)
        if bound > cfg.tolerance:
            raise TruncationError(f"period lattice tail {mpmath.nstr(bound, 5)} exceeds {cfg.tolerance}",
                                  suggest_radius(y0, chi.k, l, cfg.tolerance))
        h0 = mpmath.diag([mpmath.sqrt(y0), 1 / mpmath.sqrt(y0)])
        shells = sorted(elements_up_to_norm(cfg.radius, chi.field_u).items())

        def node_angle(index):
            return 2 * mpmath.pi * index / nodes

        def psi_row(j):
            with mpmath.workprec(cfg.prec):
                psi = node_angle(j)
                g = embedding.numeric_matrix(psi, cfg.prec) * h0
                row = mpmath.mpc(0)
                for i in range(nodes):
                    theta = node_angle(i)
                    # χ_can²ξ at ∞ on e^{iθ}
                    character = mpmath.expj(-chi.k * theta)
                    row += _seesaw_integrand(shells, chi, l, g, theta, cfg.prec) * character
                return row * mpmath.expj(-m * psi)

        rows = ordered_map(psi_row, range(nodes), cfg.threads)
        double = mpmath.fsum(rows) * (2 * mpmath.pi / nodes) ** 2 / (2 * mpmath.pi)
        bundle = constant_bundle(m, cfg.prec)
        value = bundle["product"] * double
        logger.debug("period rhs l=%d m=%d over %d² nodes: %s", l, m, nodes, mpmath.nstr(value, 15))
        return +mpmath.mpc(value)


@dataclass
class PeriodReport:
    l: int
    lhs: mpmath.mpc
    rhs: mpmath.mpc
    ratio: mpmath.mpc
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self):
        return {"l": self.l, "lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio,
                "diagnostics": self.diagnostics}


def null_test(l, cfg=None, depth=4):
    """The double integral against χ_can^{5+2l}, which has the wrong weight; near zero."""
    w = weight_of(l)
    return period_rhs(l, w + 2, cfg, depth)


def period_identity_report(l_max=3, cfg=None, depth=4, tolerance=1e-6):
    """
    lhs, rhs and their ratio for l = 0..l_max.

    Raises:
        VerificationFailed: when some lhs vanishes or the ratios are not all 1,
        with the per-l reports attached.
    """
    if l_max > 3:
        raise SeesawError("period reports cover l ≤ 3")
    cfg = cfg or LatticeSumConfig()
    reports = []
    for l in range(l_max + 1):
        lhs = period_lhs(l, cfg=cfg)
        rhs = period_rhs(l, cfg=cfg, depth=depth)
        null = null_test(l, cfg, depth)
        ratio = rhs / lhs if lhs else mpmath.mpc(mpmath.inf)
        reports.append(PeriodReport(l, lhs, rhs, ratio, {
            "weight": weight_of(l),
            "radius": cfg.radius,
            "tail_bound": float(tail_bound(cfg.radius, 2 / math.sqrt(7), 2, l)),
            "quad_nodes": 2 ** depth,
            "circle_integral": mpmath.nstr(circle_integral(0, cfg.prec).real, 15),
            "null_test": float(abs(null) / abs(lhs)) if lhs else None,
        }))
        logger.info("period l=%d: lhs=%s rhs=%s", l, mpmath.nstr(lhs, 12), mpmath.nstr(rhs, 12))
    problems = [report.l for report in reports
                if report.lhs == 0 or abs(report.ratio - 1) > tolerance]
    if problems:
        for report in reports:
            logger.error("period diagnostic %s", report.as_dict())
        raise VerificationFailed(f"period ratios off at l = {problems}", [r.as_dict() for r in reports])
    return reports
