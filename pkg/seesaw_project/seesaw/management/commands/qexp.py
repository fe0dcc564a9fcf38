from seesaw.cli import SeesawCommand
from seesaw.exceptions import SeesawError
from seesaw.hecke import canonical_char
from seesaw.serializers import QExpSerializer
from seesaw.thetalift import ETA_SIGNATURE_CAN2, eta_product_coefficients, qexp_from_ideals


def parse_character(label):
    """'can^2' or '2' → 2."""
    power = label.split('^', 1)[1] if label.startswith('can^') else label
    try:
        return int(power)
    except ValueError:
        raise SeesawError(f"cannot read a character power from {label!r}; use can^N")


class Command(SeesawCommand):
    """q-expansion of the theta lift f_χ, checked against η(z)³η(7z)³ for χ_can²."""

    help = 'Print the q-expansion coefficients a_1..a_limit of f_χ'
    subcommand = 'qexp'

    def add_command_arguments(self, parser):
        parser.add_argument('--char', dest='character', default='can^2', help='character, e.g. can^2')
        parser.add_argument('--limit', type=int, default=10, help='number of coefficients')

    def compute(self, cfg, **options):
        chi = canonical_char(parse_character(options['character']))
        limit = options['limit']
        if limit < 1:
            raise SeesawError('limit must be positive')
        f = qexp_from_ideals(chi, limit)
        coefficients = list(f.coefficients[1:limit + 1])
        match = None
        if chi.power == 2:
            match = coefficients == eta_product_coefficients(ETA_SIGNATURE_CAN2, limit)[1:limit + 1]
        data = {
            'n': chi.power,
            'weight': f.weight,
            'level': f.level,
            'limit': limit,
            'coefficients': coefficients,
            'eta_product_match': match,
        }
        return QExpSerializer(data).data, match is not False
