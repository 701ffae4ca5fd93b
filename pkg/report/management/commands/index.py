import json

from django.core.management.base import BaseCommand, CommandError

from sideinfo.index_coding import (
    MessageSpace, MessageTuple, recover, side_information, subcodebook_count, subcodebook_index,
)
from report.options import USAGE_ERROR, matrix_from, output_stream, resolve


def _triple(text, name):
    try:
        values = tuple(int(v) for v in str(text).split(','))
    except ValueError:
        raise CommandError(f'--{name} must be three comma-separated integers', returncode=USAGE_ERROR)
    if len(values) != 3:
        raise CommandError(f'--{name} must have exactly three entries', returncode=USAGE_ERROR)
    return values


class Command(BaseCommand):
    help = 'Round-trip one message tuple through the subcodebook index and each receiver\'s decoder'

    def add_arguments(self, parser):
        parser.add_argument('--config', help='Configuration id 0-63 or six-bit string')
        parser.add_argument('--sizes', required=True, help='Message set sizes L1,L2,L3')
        parser.add_argument('--messages', required=True, help='Messages w1,w2,w3')
        parser.add_argument('--one-based', action='store_true', help='Messages are numbered from 1')
        parser.add_argument('--params', help='key=value file with defaults')
        parser.add_argument('--out', help='Write the JSON document to this file')

    def handle(self, *args, **options):
        resolved = resolve(options)
        matrix = matrix_from(resolved)
        sizes = _triple(options['sizes'], 'sizes')
        raw = _triple(options['messages'], 'messages')
        try:
            space = MessageSpace.for_matrix(matrix, sizes)
            message = MessageTuple.from_one_based(raw) if options['one_based'] else MessageTuple(raw)
            k = subcodebook_index(message, space)
            decoded = {}
            for receiver in (1, 2, 3):
                known = side_information(matrix, message, receiver)
                decoded[str(receiver)] = recover(k, known, space, receiver)
        except ValueError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

        shift = 1 if options['one_based'] else 0
        document = {
            'config_id': matrix.config_id,
            'case': space.case,
            'pair': list(space.pair) if space.case == 'case1' else None,
            'sizes': list(sizes),
            'messages': [w + shift for w in message.w],
            'index': k,
            'subcodebooks': subcodebook_count(space),
            'recovered': {r: w + shift for r, w in decoded.items()},
            'round_trip': all(decoded[str(r)] == message[r] for r in (1, 2, 3)),
        }
        with output_stream(resolved, self.stdout) as stream:
            stream.write(json.dumps(document, indent=2) + '\n')
        if not document['round_trip']:
            raise CommandError('Round trip failed', returncode=1)
