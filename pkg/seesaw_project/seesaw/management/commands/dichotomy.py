from seesaw.cli import SeesawCommand
from seesaw.dichotomy import chart_cell, hilbert_cross_check
from seesaw.serializers import DichotomySerializer


class Command(SeesawCommand):
    """Local root-number signs and the quaternion algebra for a pair (χ_can^n, χ_can^m)."""

    help = 'Compute the dichotomy cell of the seesaw for characters χ_can^n and χ_can^m'
    subcommand = 'dichotomy'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='power of the first character')
        parser.add_argument('--m', type=int, required=True, help='power of the second character')
        parser.add_argument('--flip-infinity', action='store_true',
                            help='use the opposite archimedean sign convention')

    def compute(self, cfg, **options):
        cell = chart_cell(options['n'], options['m'], options['flip_infinity'])
        data = cell.as_dict()
        data['hilbert_cross_check'] = hilbert_cross_check(cell)
        return DichotomySerializer(data).data, data['hilbert_cross_check']
