import csv
import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from seesaw.models import ReportRecord
from seesaw.serializers import ReportRecordSerializer

HEADERS = ['id', 'subcommand', 'passed', 'created', 'config', 'payload']


class Command(BaseCommand):
    """Management command to export archived reports to a CSV file."""

    help = 'Export archived seesaw reports to CSV'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('--output', default='seesaw_reports.csv', help='CSV file to write')
        parser.add_argument('--subcommand', help='only reports of this subcommand')
        parser.add_argument('--failed-only', action='store_true', help='only reports that did not pass')

    def handle(self, *args, **options):
        records = ReportRecord.objects.all()
        if options['subcommand']:
            records = records.for_subcommand(options['subcommand'])
        if options['failed_only']:
            records = records.failures()

        rows = []
        for record in ReportRecordSerializer(records, many=True).data:
            row = dict(record)
            row['config'] = json.dumps(row['config'], sort_keys=True)
            row['payload'] = json.dumps(row['payload'], sort_keys=True)
            rows.append(row)

        path = Path(options['output'])
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open('w', newline='') as file:
                writer = csv.DictWriter(file, fieldnames=HEADERS)
                writer.writeheader()
                writer.writerows(rows)
        except OSError as error:
            raise CommandError(f'could not write {path}: {error}', returncode=2)
        self.stdout.write(self.style.SUCCESS(f'Successfully exported {len(rows)} report(s) to {path}'))
