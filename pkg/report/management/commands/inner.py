from django.core.management.base import BaseCommand

from report.options import (
    add_channel_arguments, add_sweep_arguments, channel_from, directions_from, grid_from,
    matrix_from, output_stream, resolve,
)
from report.reporting import INNER_COLUMNS, inner_rows, write_csv


class Command(BaseCommand):
    help = 'Inner-bound frontier points (weighted sum-rate maximisers) as CSV'

    def add_arguments(self, parser):
        add_channel_arguments(parser)
        add_sweep_arguments(parser)

    def handle(self, *args, **options):
        resolved = resolve(options)
        matrix = matrix_from(resolved)
        channel = channel_from(resolved)
        rows = inner_rows(matrix, channel, directions_from(resolved), grid_from(resolved))
        with output_stream(resolved, self.stdout) as stream:
            write_csv(rows, INNER_COLUMNS, stream)
