import mpmath

from seesaw.cli import SeesawCommand
from seesaw.exceptions import SeesawError
from seesaw.hecke import canonical_char
from seesaw.serializers import Measurement, ThetaEvalSerializer
from seesaw.thetalift import (LatticeSumConfig, expected_d, maass_shimura_apply, qexp_from_ideals,
                              tail_bound, theta_lattice_eval)

AGREEMENT = 1e-9


def parse_tau(text, prec=128):
    """
    Read τ written as RE,IM (the a+bj form is accepted too) at the given precision.

    Raises:
        SeesawError: when the text is neither form.
    """
    parts = str(text).replace(' ', '').strip('()').split(',')
    with mpmath.workprec(prec):
        try:
            if len(parts) == 2:
                return mpmath.mpc(mpmath.mpf(parts[0]), mpmath.mpf(parts[1]))
            if len(parts) == 1:
                return mpmath.mpc(complex(parts[0]))
        except ValueError:
            pass
    raise SeesawError(f"cannot read τ from {text!r}, expected RE,IM")


class Command(SeesawCommand):
    """θ_l(τ) from the lattice sum against D_l·δ^l f(τ) from the q-expansion."""

    help = 'Evaluate the theta lift at τ by lattice summation and by q-expansion'
    subcommand = 'theta_eval'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, default=2, help='power of the canonical character')
        parser.add_argument('--tau', required=True, help='point of the upper half-plane as RE,IM, e.g. 0.3,0.8')
        parser.add_argument('--l', type=int, default=0, help='number of Maass–Shimura raising steps')

    def compute(self, cfg, **options):
        tau = parse_tau(options['tau'], cfg.precision)
        chi = canonical_char(options['n'])
        l = options['l']
        lattice_cfg = LatticeSumConfig(radius=cfg.radius, prec=cfg.precision, threads=cfg.threads)
        lattice = theta_lattice_eval(tau, chi, l, lattice_cfg)
        f = qexp_from_ideals(chi, cfg.radius)
        raised = maass_shimura_apply(f, chi.k + 1, l, cfg.precision)(tau)
        with mpmath.workprec(cfg.precision):
            bound = tail_bound(cfg.radius, tau.imag, chi.k, l)
            closed_form = expected_d(chi.k, l)
            ratio = lattice / raised
            deviation = abs(ratio - closed_form) / abs(closed_form)
        data = {
            'n': chi.power,
            'l': l,
            'tau': f"{mpmath.nstr(tau.real, 15)},{mpmath.nstr(tau.imag, 15)}",
            'lattice': Measurement(lattice, bound),
            'qexp': Measurement(raised, bound),
            'ratio': Measurement(ratio, deviation),
            'closed_form': closed_form,
            'passed': bool(deviation < AGREEMENT),
        }
        return ThetaEvalSerializer(data).data, data['passed']
