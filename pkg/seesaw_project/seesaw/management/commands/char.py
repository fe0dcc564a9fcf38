from seesaw.cli import SeesawCommand
from seesaw.hecke import canonical_char, eval_ideal, ideals_of_norm, level, twisted_char
from seesaw.serializers import CharSerializer


class Command(SeesawCommand):
    """Values of χ_can^n and of χ̃ on the ideals of small norm coprime to the conductor."""

    help = 'Tabulate the canonical Hecke character power χ_can^n on small ideals'
    subcommand = 'char'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='power of the canonical character')
        parser.add_argument('--norm-limit', type=int, default=20, help='largest ideal norm to tabulate')
        parser.add_argument('--normalized', action='store_true', help='unitary normalisation')

    def compute(self, cfg, **options):
        chi = canonical_char(options['n'], options['normalized'])
        tilde = twisted_char(chi)
        conductor = chi.conductor()
        values = []
        for norm in range(1, options['norm_limit'] + 1):
            for ideal in ideals_of_norm(norm):
                if chi.power % 2 and not ideal.is_coprime_to(7):
                    continue
                values.append({
                    'norm': norm,
                    'generator': str(ideal.canonical_generator()),
                    'value': eval_ideal(chi, ideal, cfg.precision),
                    'twisted': tilde.eval_ideal(ideal, cfg.precision),
                })
        data = {
            'n': chi.power,
            'infinity_type': list(chi.infinity_type),
            'conductor': str(conductor.canonical_generator()),
            'level': level(chi),
            'values': values,
        }
        return CharSerializer(data).data, True
