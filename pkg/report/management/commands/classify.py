import json

from django.core.management.base import BaseCommand

from report.options import matrix_from, output_stream, resolve
from report.reporting import classify_document


class Command(BaseCommand):
    help = 'Classify a side-information configuration: acyclic and complete sets, layers, degraded sequences, tightness'

    def add_arguments(self, parser):
        parser.add_argument('config_arg', nargs='?', help='Configuration id or bit string (same as --config)')
        parser.add_argument('--config', help='Configuration id 0-63 or six-bit string a12a13a21a23a31a32')
        parser.add_argument('--params', help='key=value file with defaults')
        parser.add_argument('--out', help='Write the JSON document to this file')
        parser.add_argument(
            '--consecutive-only', action='store_true',
            help='List degraded sequences where each set only has to be weaker than the previous one',
        )

    def handle(self, *args, **options):
        if options.get('config_arg') and not options.get('config'):
            options['config'] = options['config_arg']
        resolved = resolve(options)
        matrix = matrix_from(resolved)
        document = classify_document(matrix, consecutive_only=options['consecutive_only'])
        with output_stream(resolved, self.stdout) as stream:
            stream.write(json.dumps(document, indent=2) + '\n')
