"""
Local root-number signs for pairs of canonical-character powers (χ_can^n, χ_can^m)
over Q(√−7), the quaternion algebra they select, and the four-cell dichotomy chart.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import SeesawError
from .hecke import CANONICAL_U, RAMIFIED_PRIME
from .qfield import INFINITY, Place, hilbert_symbol, ramification_set, sort_places

logger = logging.getLogger(__name__)

# candidate J values tried when realising a chart cell as (u, J)
REALIZATION_CANDIDATES = (Fraction(1), Fraction(-1), Fraction(7), Fraction(-7),
                          Fraction(1, 7), Fraction(-1, 7))


def check_central_condition(n, m):
    """χ_can^n·χ_can^m·ε_{E/Q} is trivial on the ideles of Q iff n, m have opposite parity."""
    return (n - m) % 2 == 1


def infinite_sign(n, m):
    """
    ε_∞·ω_∞(−1) for the pair (χ_can^n, χ_can^m).

    Parameters:
        n (int): Power giving the weight n+1 form.
        m (int): Power giving the infinity-type gap m.

    Returns:
        int: +1 iff n + 1 ≤ m.
    """
    if not check_central_condition(n, m):
        raise SeesawError(f"central character condition fails for (n, m) = ({n}, {m})")
    return 1 if n + 1 <= m else -1


def finite_sign(n, p):
    return -1 if (p == RAMIFIED_PRIME and n % 2) else 1


@dataclass(frozen=True)
class SignTable:
    """
    Per-place signs ε_v·ω_v(−1); every place not listed carries +1.

    Fields:
        n (int), m (int): The character powers.
        entries (dict[Place, int]): Signs at the places that can differ from +1.
    """
    n: int
    m: int
    entries: dict

    @property
    def sigma(self):
        return frozenset(v for v, sign in self.entries.items() if sign == -1)

    @property
    def global_sign(self):
        sign = 1
        for value in self.entries.values():
            sign *= value
        return sign


def sign_table(n, m, flip_infinity=False):
    infinite = infinite_sign(n, m)
    if flip_infinity:
        infinite = -infinite
    entries = {Place(2): finite_sign(n, 2), Place(RAMIFIED_PRIME): finite_sign(n, RAMIFIED_PRIME),
               INFINITY: infinite}
    return SignTable(n, m, entries)


def partner_algebra(u, J):
    """(u, J) ↦ (u, −J): the algebra obtained by changing the sign of j²."""
    return u, -J


def ramification_difference(u, J):
    """Places where (u, J) and (u, −J) have different local invariants."""
    return ramification_set(u, J) ^ ramification_set(*partner_algebra(u, J))


def hilbert_realization(sigma, u=CANONICAL_U):
    """First J among the candidates with ramification_set(u, J) = Σ, or None."""
    for J in REALIZATION_CANDIDATES:
        if ramification_set(u, J) == frozenset(sigma):
            return J
    return None


@dataclass(frozen=True)
class ChartCell:
    n: int
    m: int
    sigma: frozenset
    global_sign: int
    split: bool
    vanishing: bool
    realization: Fraction

    def as_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "sigma": [v.label for v in sort_places(self.sigma)],
            "global_sign": self.global_sign,
            "split": self.split,
            "vanishing": self.vanishing,
            "realization_j2": None if self.realization is None else str(self.realization),
        }


def chart_cell(n, m, flip_infinity=False):
    table = sign_table(n, m, flip_infinity)
    sigma = table.sigma
    cell = ChartCell(
        n=n,
        m=m,
        sigma=sigma,
        global_sign=table.global_sign,
        split=not sigma,
        vanishing=table.global_sign == -1,
        realization=hilbert_realization(sigma) if table.global_sign == 1 else None,
    )
    logger.info("chart cell (%d, %d): Σ=%s ε=%+d", n, m,
                [v.label for v in sort_places(sigma)], cell.global_sign)
    return cell


def dichotomy_chart():
    """
    The four cells: (odd, even) and (even, odd) powers, each with n+1 > m and n+1 ≤ m.
    The ε = −1 cells are flagged as vanishing central L-value cases.
    """
    return {
        ("odd", "even", "n+1>m"): chart_cell(3, 2),
        ("even", "odd", "n+1<=m"): chart_cell(2, 3),
        ("even", "odd", "n+1>m"): chart_cell(4, 3),
        ("odd", "even", "n+1<=m"): chart_cell(1, 2),
    }


def hilbert_cross_check(cell):
    """At p = 7, the chart's local invariant agrees with the Hilbert symbol of its realisation."""
    if cell.realization is None:
        return True
    expected = -1 if Place(RAMIFIED_PRIME) in cell.sigma else 1
    return hilbert_symbol(CANONICAL_U, cell.realization, Place(RAMIFIED_PRIME)) == expected
