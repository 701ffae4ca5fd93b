import logging

from django.core.management.base import BaseCommand

from report.models import ReportRow
from report.options import (
    add_channel_arguments, add_sweep_arguments, add_tolerance_argument, channel_from, directions_from, grid_from,
    output_stream, resolve, tolerance_from,
)
from report.reporting import REPORT_COLUMNS, report_all_rows, write_csv

logger = logging.getLogger('report')


class Command(BaseCommand):
    help = 'One CSV row per configuration (0-63): K_I, tightness, inner/outer sum rate, largest ray gap'

    def add_arguments(self, parser):
        add_channel_arguments(parser, config=False)
        add_sweep_arguments(parser)
        add_tolerance_argument(parser)
        parser.add_argument('--save', action='store_true', help='Also store the rows in the database')

    def handle(self, *args, **options):
        resolved = resolve(options)
        channel = channel_from(resolved)
        grid = grid_from(resolved)
        rows = report_all_rows(channel, directions_from(resolved), grid, tol=tolerance_from(resolved))
        with output_stream(resolved, self.stdout) as stream:
            write_csv(rows, REPORT_COLUMNS, stream)

        if options['save']:
            created_count = 0
            for row in rows:
                _, created = ReportRow.objects.update_or_create(
                    config_id=row['config_id'], power=channel.P,
                    n1=channel.noise[0], n2=channel.noise[1], n3=channel.noise[2], base=channel.log_base,
                    defaults={
                        'bits': row['bits'],
                        'complete_sets': row['K_I'],
                        'tightness': row['tightness'],
                        'inner_sum': row['inner_sum'],
                        'outer_sum': row['outer_sum'],
                        'max_gap': row['max_gap'],
                        'grid': grid,
                    },
                )
                created_count += int(created)
            logger.info(f'Saved {len(rows)} report rows ({created_count} new)')
            self.stderr.write(self.style.SUCCESS(f'Saved {len(rows)} report rows ({created_count} new)'))
