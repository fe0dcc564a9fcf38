"""
Shared plumbing for the seesaw management commands: common flags, configuration,
report emission, the optional archive, and exit codes.
"""
import csv
import io
import json
import logging
import sys
from pathlib import Path

import mpmath
from django.core.exceptions import ValidationError
from django.core.management import load_command_class
from django.core.management.base import BaseCommand, CommandError

from .config import build_config
from .exceptions import ComputationError, SeesawError, VerificationFailed
from .models import ReportRecord

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('dichotomy', 'char', 'qexp', 'theta-eval', 'rallis', 'period', 'verify')

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


def _flatten(value, prefix=''):
    if isinstance(value, dict):
        items = {}
        for key in sorted(value):
            items.update(_flatten(value[key], f"{prefix}{key}."))
        return items
    if isinstance(value, list):
        return {prefix.rstrip('.'): json.dumps(value, sort_keys=True)}
    return {prefix.rstrip('.'): value}


def render_report(data, output_format):
    """
    Serialize report data: JSON with sorted keys, CSV with one row per entry of the
    first list of dicts (or one flattened row), text as sorted key: value lines.
    """
    if output_format == 'json':
        return json.dumps(data, sort_keys=True, indent=2) + '\n'
    if output_format == 'csv':
        rows = next((value for _, value in sorted(data.items())
                     if isinstance(value, list) and value and isinstance(value[0], dict)), None)
        rows = [_flatten(row) for row in rows] if rows else [_flatten(data)]
        header = sorted({key for row in rows for key in row})
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()
    if output_format == 'text':
        return ''.join(f"{key}: {value}\n" for key, value in sorted(_flatten(data).items()))
    raise ValidationError(f"unknown output format {output_format!r}")


def emit_report(data, cfg, stream=None):
    """Write the rendered report to cfg.output_path, or to stream when no path is set."""
    text = render_report(data, cfg.output_format)
    if cfg.output_path:
        try:
            Path(cfg.output_path).write_text(text)
        except OSError as error:
            raise CommandError(f"could not write report to {cfg.output_path}: {error}", returncode=EXIT_USAGE)
        logger.info("report written to %s", cfg.output_path)
    else:
        (stream or sys.stdout).write(text)
    return text


class SeesawCommand(BaseCommand):
    """
    Base class for the computation commands. Subclasses define add_command_arguments,
    compute(cfg, **options) -> (data, passed).
    """
    requires_system_checks = []
    subcommand = None

    def add_arguments(self, parser):
        parser.add_argument('--config', dest='config_path', help='flat key = value configuration file')
        parser.add_argument('--prec', dest='precision', type=int, help='binary working precision')
        parser.add_argument('--radius', type=int, help='lattice norm radius')
        parser.add_argument('--quad-depth', dest='quad_depth', type=int, help='quadrature refinement level')
        parser.add_argument('--euler-cutoff', dest='euler_cutoff', type=int, help='Euler product prime bound')
        parser.add_argument('--seed', type=int, help='seed for random suites')
        parser.add_argument('--format', dest='output_format', choices=('json', 'csv', 'text'))
        parser.add_argument('--output', dest='output_path', help='write the report here instead of stdout')
        parser.add_argument('--threads', type=int, help='worker threads')
        parser.add_argument('--record', action='store_true', help='archive the report in the database')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def compute(self, cfg, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        flags = {key: options.get(key) for key in
                 ('precision', 'radius', 'quad_depth', 'euler_cutoff', 'seed', 'output_format',
                  'output_path', 'threads')}
        try:
            cfg = build_config(options.get('config_path'), **flags)
        except ValidationError as error:
            raise CommandError(f"invalid configuration: {'; '.join(error.messages)}", returncode=EXIT_USAGE)

        try:
            with mpmath.workprec(cfg.precision):
                data, passed = self.compute(cfg, **options)
        except VerificationFailed as error:
            self.stderr.write(self.style.ERROR(str(error)))
            raise CommandError(str(error), returncode=EXIT_VERIFICATION_FAILED)
        except ComputationError as error:
            self.stderr.write(self.style.ERROR(str(error)))
            raise CommandError(f"{self.subcommand} computation failed: {error}", returncode=EXIT_VERIFICATION_FAILED)
        except (ValidationError, SeesawError) as error:
            message = '; '.join(error.messages) if isinstance(error, ValidationError) else str(error)
            raise CommandError(message, returncode=EXIT_USAGE)

        emit_report(data, cfg, self.stdout)
        if options.get('record'):
            record = ReportRecord.objects.create(subcommand=self.subcommand, config=cfg.as_dict(),
                                                 payload=data, passed=passed)
            self.stderr.write(self.style.SUCCESS(f"Recorded report #{record.pk}"))
        if not passed:
            raise CommandError(f"{self.subcommand} verification failed", returncode=EXIT_VERIFICATION_FAILED)


def dispatch(argv, stdout=None, stderr=None):
    """
    Run one subcommand from an argument vector and return its exit code:
    0 on success, 1 on verification or computation failure, 2 on usage errors.
    """
    if not argv or argv[0] not in SUBCOMMANDS:
        (stderr or sys.stderr).write(f"usage: seesaw {{{','.join(SUBCOMMANDS)}}} [options]\n")
        return EXIT_USAGE
    name = argv[0].replace('-', '_')
    command = load_command_class('seesaw', name)
    parser = command.create_parser('manage.py', name)
    try:
        options = parser.parse_args(argv[1:])
    except CommandError as error:
        (stderr or sys.stderr).write(f"{error}\n{parser.format_usage()}")
        return EXIT_USAGE
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else EXIT_OK
    arguments = vars(options)
    positional = arguments.pop('args', ())
    arguments.update(stdout=stdout, stderr=stderr)
    try:
        command.execute(*positional, **arguments)
    except CommandError as error:
        (stderr or sys.stderr).write(f"{error}\n")
        return error.returncode
    return EXIT_OK
