import csv
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

import mpmath
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.test import SimpleTestCase, TestCase

from seesaw.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED, dispatch, render_report
from seesaw.management.commands.qexp import parse_character
from seesaw.management.commands.verify import failing_samples
from seesaw.models import ReportRecord
from seesaw.rallis import Estimate
from seesaw.serializers import MeasurementField, format_number


def run(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = dispatch(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class RenderTests(SimpleTestCase):
    def test_json_is_sorted(self):
        self.assertEqual(render_report({'b': 1, 'a': [1, 2]}, 'json').splitlines()[1], '  "a": [')

    def test_csv_uses_the_first_list_of_rows(self):
        text = render_report({'reports': [{'l': 0, 'x': {'y': 1}}, {'l': 1, 'x': {'y': 2}}]}, 'csv')
        self.assertEqual(text.splitlines(), ['l,x.y', '0,1', '1,2'])

    def test_text(self):
        self.assertEqual(render_report({'n': 2, 'cell': {'split': True}}, 'text'), 'cell.split: True\nn: 2\n')

    def test_numbers_keep_the_working_precision(self):
        with mpmath.workprec(128):
            self.assertGreater(len(format_number(mpmath.pi)), 35)
        self.assertEqual(format_number(mpmath.mpf('0.25'), 5), '0.25')

    def test_estimates_keep_their_error_bound(self):
        field = MeasurementField()
        quadrature = field.to_representation(Estimate(mpmath.mpf(2), mpmath.mpf('0.001'), 'quadrature'))
        self.assertEqual(quadrature, {'value': '2.0', 'error_bound': '0.001'})
        self.assertEqual(field.to_representation(3)['error_bound'], '0')

    def test_unknown_format(self):
        with self.assertRaises(ValidationError):
            render_report({}, 'xml')


class CommandTests(SimpleTestCase):
    def test_dichotomy_report(self):
        out = StringIO()
        call_command('dichotomy', n=3, m=2, stdout=out, stderr=StringIO())
        data = json.loads(out.getvalue())
        self.assertEqual(data['sigma'], ['7', 'inf'])
        self.assertEqual(data['realization_j2'], '-1')
        self.assertTrue(data['hilbert_cross_check'])

    def test_qexp_as_csv(self):
        out = StringIO()
        call_command('qexp', limit=4, output_format='csv', stdout=out, stderr=StringIO())
        rows = list(csv.DictReader(StringIO(out.getvalue())))
        self.assertEqual(json.loads(rows[0]['coefficients']), [1, -3, 0, 5])
        self.assertEqual(rows[0]['eta_product_match'], 'True')

    def test_report_written_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'chart.txt'
            call_command('dichotomy', n=2, m=3, output_format='text', output_path=str(path),
                         stdout=StringIO(), stderr=StringIO())
            self.assertIn('split: True', path.read_text())

    def test_character_labels(self):
        self.assertEqual(parse_character('can^3'), 3)
        self.assertEqual(parse_character('2'), 2)

    def test_failing_samples_are_counted_once(self):
        self.assertEqual(failing_samples(['#3 g', "#3 g'", '#7 g']), 2)


class DispatchTests(SimpleTestCase):
    def test_success(self):
        code, out, _ = run('dichotomy', '--n', '3', '--m', '2', '--format', 'text')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('global_sign: 1', out)

    def test_unknown_subcommand(self):
        code, _, err = run('bogus')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('usage', err)

    def test_missing_required_flag(self):
        self.assertEqual(run('dichotomy', '--n', '3')[0], EXIT_USAGE)

    def test_invalid_configuration(self):
        self.assertEqual(run('qexp', '--prec', '20')[0], EXIT_USAGE)

    def test_library_error_is_a_usage_error(self):
        self.assertEqual(run('dichotomy', '--n', '2', '--m', '4')[0], EXIT_USAGE)

    def test_verification_failure(self):
        failing = {'failures': ['#0 g(1, 1): broken'], 'coverage': {}}
        with mock.patch('seesaw.management.commands.verify.pwp_suite', return_value=failing):
            code, out, _ = run('verify', 'pwp', '--samples', '4')
        self.assertEqual(code, EXIT_VERIFICATION_FAILED)
        self.assertEqual(json.loads(out)['passed'], 3)

    def test_tau_as_real_and_imaginary_parts(self):
        code, out, _ = run('theta-eval', '--tau', '0.3,0.8', '--l', '1')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['tau'], '0.3,0.8')
        self.assertTrue(data['passed'])

    def test_unreadable_tau(self):
        self.assertEqual(run('theta-eval', '--tau', 'upper')[0], EXIT_USAGE)

    def test_computation_failure_is_not_a_usage_error(self):
        code, _, err = run('theta-eval', '--tau', '0,0.1', '--radius', '5')
        self.assertEqual(code, EXIT_VERIFICATION_FAILED)
        self.assertIn('suggested radius', err)

    def test_identical_configuration_gives_identical_bytes(self):
        first = run('verify', 'pwp', '--samples', '30', '--seed', '4')
        second = run('verify', 'pwp', '--samples', '30', '--seed', '4')
        self.assertEqual(first, second)
        serial = run('theta-eval', '--tau', '0.3,0.8', '--l', '2')
        threaded = run('theta-eval', '--tau', '0.3,0.8', '--l', '2', '--threads', '3')
        self.assertEqual(serial[1], threaded[1])

    def test_chart_suite(self):
        code, out, _ = run('verify', 'chart')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['failures'], [])


class RecordTests(TestCase):
    def test_record_and_export(self):
        call_command('qexp', limit=5, record=True, stdout=StringIO(), stderr=StringIO())
        call_command('dichotomy', n=3, m=2, record=True, stdout=StringIO(), stderr=StringIO())
        record = ReportRecord.objects.for_subcommand('qexp').get()
        self.assertEqual(record.payload['coefficients'], [1, -3, 0, 5, 0])
        self.assertEqual(record.config['radius'], 60)
        self.assertFalse(ReportRecord.objects.failures().exists())

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'reports.csv'
            out = StringIO()
            call_command('export_reports', output=str(path), subcommand='dichotomy', stdout=out)
            with path.open() as file:
                rows = list(csv.DictReader(file))
        self.assertEqual([row['subcommand'] for row in rows], ['dichotomy'])
        self.assertIn('Successfully exported 1 report(s)', out.getvalue())
