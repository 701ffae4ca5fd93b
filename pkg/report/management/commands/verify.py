from django.core.management.base import BaseCommand, CommandError

from report.options import (
    VERIFICATION_FAILURE, add_channel_arguments, add_sweep_arguments, add_tolerance_argument, channel_from,
    directions_from, grid_from, resolve, tolerance_from,
)
from report.verification import run_all


class Command(BaseCommand):
    help = 'Run the self-check suites (census, FM vs direct, utility vs grid, inner inside outer, index round trip)'

    def add_arguments(self, parser):
        add_channel_arguments(parser, config=False)
        add_sweep_arguments(parser)
        add_tolerance_argument(parser)
        parser.add_argument('--show', type=int, default=5, help='Failures to print per suite')

    def handle(self, *args, **options):
        resolved = resolve(options)
        suites = run_all(
            channel_from(resolved), directions_from(resolved),
            seed=int(resolved['seed']), grid=grid_from(resolved), tol=tolerance_from(resolved),
        )
        for suite in suites:
            style = self.style.SUCCESS if suite.passed and not suite.failures else (
                self.style.WARNING if suite.passed else self.style.ERROR)
            self.stdout.write(style(suite.summary()))
            for failure in suite.failures[:options['show']]:
                self.stdout.write(f'    {failure}')

        failed = [suite.name for suite in suites if not suite.passed]
        if failed:
            raise CommandError(f'Verification failed: {", ".join(failed)}', returncode=VERIFICATION_FAILURE)
        self.stdout.write(self.style.SUCCESS('All verification suites passed'))
