from django.core.management.base import BaseCommand

from report.options import (
    add_channel_arguments, add_sweep_arguments, add_tolerance_argument, channel_from, directions_from, grid_from,
    matrix_from, output_stream, resolve, tolerance_from,
)
from report.reporting import BOUNDS_COLUMNS, bounds_rows, write_csv


class Command(BaseCommand):
    help = 'Inner and outer bound along each direction, as CSV (mu1..mu3, inner point, J, outer t*, gap)'

    def add_arguments(self, parser):
        add_channel_arguments(parser)
        add_sweep_arguments(parser)
        add_tolerance_argument(parser)

    def handle(self, *args, **options):
        resolved = resolve(options)
        matrix = matrix_from(resolved)
        channel = channel_from(resolved)
        rows = bounds_rows(
            matrix, channel, directions_from(resolved), grid_from(resolved), tol=tolerance_from(resolved))
        with output_stream(resolved, self.stdout) as stream:
            write_csv(rows, BOUNDS_COLUMNS, stream)
