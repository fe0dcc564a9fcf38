import re

from seesaw.cli import SeesawCommand
from seesaw.dichotomy import dichotomy_chart, hilbert_cross_check
from seesaw.exceptions import SeesawError
from seesaw.hecke import CANONICAL_U, RAMIFIED_PRIME, canonical_char
from seesaw.qfield import Place, hilbert_symbol, hilbert_symbol_bruteforce
from seesaw.schwartz import maass_shimura_phi_relation, rotation_eigen_check, verify_ode
from seesaw.serializers import VerifySerializer
from seesaw.thetalift import ETA_SIGNATURE_CAN2, eta_product_coefficients, qexp_from_ideals
from seesaw.weilrep import compat_suite, pwp_suite

SUITES = ('pwp', 'compat', 'schwartz', 'chart', 'qexp')


def failing_samples(failures):
    """Distinct sample indices among failure descriptions of the form '#index ...'."""
    indices = set()
    for failure in failures:
        match = re.match(r'#(\d+)', failure)
        indices.add(match.group(1) if match else failure)
    return len(indices)


def schwartz_suite(max_k, max_l):
    failures = []
    checks = 0
    for k in range(-max_k, max_k + 1):
        for l in range(max_l + 1):
            checks += 1
            if not verify_ode(k, l):
                failures.append(f"#{checks} ODE fails at (k, l) = ({k}, {l})")
            elif not rotation_eigen_check(k, l):
                failures.append(f"#{checks} rotation eigenvalue fails at (k, l) = ({k}, {l})")
            elif not maass_shimura_phi_relation(k, l, numeric_points=0):
                failures.append(f"#{checks} Maass–Shimura relation fails at (k, l) = ({k}, {l})")
    return checks, failures


def chart_suite():
    failures = []
    cells = dichotomy_chart()
    for index, (key, cell) in enumerate(sorted(cells.items()), start=1):
        if not hilbert_cross_check(cell):
            failures.append(f"#{index} cell {key} disagrees with its Hilbert realisation")
        elif cell.realization is not None:
            symbol = hilbert_symbol(CANONICAL_U, cell.realization, Place(RAMIFIED_PRIME))
            brute = hilbert_symbol_bruteforce(CANONICAL_U, cell.realization, RAMIFIED_PRIME)
            if symbol != brute:
                failures.append(f"#{index} cell {key}: Hilbert symbol {symbol} but brute force {brute}")
    return len(cells), failures


def qexp_suite(limit):
    f = qexp_from_ideals(canonical_char(2), limit)
    eta = eta_product_coefficients(ETA_SIGNATURE_CAN2, limit)
    failures = [f"#{n} a_{n} = {f[n]} but the eta product gives {eta[n]}"
                for n in range(1, limit + 1) if f[n] != eta[n]]
    return limit, failures


class Command(SeesawCommand):
    """Property suites over random samples and exact grids."""

    help = 'Run a verification suite: pwp, compat, schwartz, chart or qexp'
    subcommand = 'verify'

    def add_command_arguments(self, parser):
        parser.add_argument('suite', choices=SUITES, help='which suite to run')
        parser.add_argument('--samples', type=int, default=100, help='random samples or coefficients')
        parser.add_argument('--max-k', type=int, default=4, help='largest |k| in the schwartz grid')
        parser.add_argument('--max-l', type=int, default=4, help='largest l in the schwartz grid')

    def compute(self, cfg, **options):
        suite = options['suite']
        samples = options['samples']
        if samples <= 0:
            raise SeesawError('samples must be positive')
        details = {}
        if suite == 'pwp':
            result = pwp_suite(samples, cfg.seed)
            failures = result['failures']
            details['coverage'] = result['coverage']
        elif suite == 'compat':
            result = compat_suite(samples, cfg.seed)
            failures = result['failures']
            details['evaluations'] = result['evaluations']
        elif suite == 'schwartz':
            samples, failures = schwartz_suite(options['max_k'], options['max_l'])
        elif suite == 'chart':
            samples, failures = chart_suite()
        else:
            samples, failures = qexp_suite(samples)
        data = {
            'suite': suite,
            'samples': samples,
            'seed': cfg.seed,
            'passed': samples - failing_samples(failures),
            'failures': failures,
            'details': details,
        }
        if failures:
            self.stderr.write(self.style.WARNING(f"{len(failures)} failure(s) in the {suite} suite"))
        else:
            self.stderr.write(self.style.SUCCESS(f"{suite}: {samples} passed"))
        return VerifySerializer(data).data, not failures
