from seesaw.cli import SeesawCommand
from seesaw.exceptions import SeesawError
from seesaw.hecke import canonical_char
from seesaw.rallis import l_twisted_euler, rallis_check, rhs_ratio
from seesaw.serializers import Measurement, RallisSerializer
from seesaw.thetalift import LatticeSumConfig


class Command(SeesawCommand):
    """Both sides of the explicit Rallis inner product formula with a per-factor breakdown."""

    help = 'Check the explicit Rallis inner product formula for χ_can^n and raising index l'
    subcommand = 'rallis'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, default=2, help='even power of the canonical character')
        parser.add_argument('--l', type=int, default=0, help='raising index, at most 3')
        parser.add_argument('--smoothing', type=int, default=128, help='smoothing scale for L(1, χ̃)')
        parser.add_argument('--tolerance', type=float, default=1e-3, help='allowed relative deviation')

    def compute(self, cfg, **options):
        if options['tolerance'] <= 0:
            raise SeesawError('tolerance must be positive')
        chi = canonical_char(options['n'])
        lattice_cfg = LatticeSumConfig(radius=cfg.radius, prec=cfg.precision, threads=cfg.threads)
        report = rallis_check(chi, options['l'], options['smoothing'], cfg.quad_depth, options['tolerance'],
                              lattice_cfg=lattice_cfg)
        euler = l_twisted_euler(chi, cfg.euler_cutoff, cfg.precision)
        per_factor = dict(report['per_factor'])
        per_factor['l_twisted_euler'] = euler
        data = {
            'l': report['l'],
            'lhs': Measurement(report['lhs'], report['lhs_error']),
            'rhs': Measurement(report['rhs'], report['rhs_error']),
            'deviation': Measurement(report['deviation'], report['deviation_error']),
            'per_factor': per_factor,
            'rhs_ratio': str(rhs_ratio(chi, report['l'])),
            'passed': report['passed'],
        }
        return RallisSerializer(data).data, report['passed']
