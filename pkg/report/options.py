"""
Shared flags for the management commands.

Values resolve as: command-line flag, then the ``--params`` file (key=value,
read with python-dotenv), then ``settings.CAPREGION``.
"""
import logging
import sys
from contextlib import contextmanager

from django.conf import settings
from django.core.management.base import CommandError
from dotenv import dotenv_values
from rest_framework import serializers

from report.reporting import parse_directions
from report.serializers import ChannelSerializer, ConfigField, DirectionSpecField

logger = logging.getLogger('report')

USAGE_ERROR = 2
VERIFICATION_FAILURE = 1

PARAM_KEYS = ('config', 'P', 'N1', 'N2', 'N3', 'base', 'grid', 'directions', 'seed', 'tolerance', 'out')


def add_channel_arguments(parser, config=True):
    if config:
        parser.add_argument('--config', help='Configuration id 0-63 or six-bit string a12a13a21a23a31a32')
    parser.add_argument('--P', type=float, help='Transmit power')
    parser.add_argument('--N1', type=float, help='Noise variance of receiver 1')
    parser.add_argument('--N2', type=float, help='Noise variance of receiver 2')
    parser.add_argument('--N3', type=float, help='Noise variance of receiver 3')
    parser.add_argument('--base', choices=['2', 'e'], help='Logarithm base of rates')
    parser.add_argument('--params', help='key=value file with defaults for any of these flags')
    parser.add_argument('--out', help='Write output to this file instead of stdout')


def add_sweep_arguments(parser):
    parser.add_argument('--grid', type=int, help='Split-grid points per simplex dimension')
    parser.add_argument('--directions', help='fibonacci:N, uniform:N, or "1,0,0;0,1,1"')
    parser.add_argument('--seed', type=int, help='Seed for sampled directions and random checks')


def add_tolerance_argument(parser):
    parser.add_argument('--tolerance', type=float, help='Power slack when testing outer-bound membership')


def resolve(options):
    """Merge flags, the params file and settings defaults into one dict."""
    defaults = settings.CAPREGION
    merged = {
        'P': defaults['POWER'],
        'N1': defaults['NOISE'][0],
        'N2': defaults['NOISE'][1],
        'N3': defaults['NOISE'][2],
        'base': str(defaults['LOG_BASE']),
        'grid': defaults['GRID'],
        'directions': defaults['DIRECTIONS'],
        'seed': defaults['SEED'],
        'tolerance': defaults['TOLERANCE'],
        'config': None,
        'out': None,
    }
    if options.get('params'):
        try:
            with open(options['params']) as handle:
                values = dotenv_values(stream=handle)
        except OSError as e:
            raise CommandError(f'Cannot read params file: {e}', returncode=USAGE_ERROR)
        unknown = sorted(set(values) - set(PARAM_KEYS))
        if unknown:
            raise CommandError(f'Unknown keys in params file: {", ".join(unknown)}', returncode=USAGE_ERROR)
        merged.update({key: value for key, value in values.items() if value is not None})
    merged.update({key: options[key] for key in PARAM_KEYS if options.get(key) is not None})
    return merged


def _first_error(errors):
    if isinstance(errors, dict):
        return '; '.join(f'{key}: {_first_error(value)}' for key, value in errors.items())
    if isinstance(errors, list):
        return ' '.join(str(e) for e in errors)
    return str(errors)


def channel_from(resolved):
    serializer = ChannelSerializer(data={key: resolved[key] for key in ('P', 'N1', 'N2', 'N3', 'base')})
    if not serializer.is_valid():
        raise CommandError(_first_error(serializer.errors), returncode=USAGE_ERROR)
    return serializer.to_channel()


def matrix_from(resolved):
    if resolved.get('config') in (None, ''):
        raise CommandError('--config is required', returncode=USAGE_ERROR)
    try:
        return ConfigField().to_internal_value(str(resolved['config']))
    except serializers.ValidationError as e:
        raise CommandError(_first_error(e.detail), returncode=USAGE_ERROR)


def directions_from(resolved):
    try:
        spec = DirectionSpecField().to_internal_value(str(resolved['directions']))
        return parse_directions(spec, int(resolved['seed']))
    except (serializers.ValidationError, ValueError) as e:
        detail = e.detail if isinstance(e, serializers.ValidationError) else str(e)
        raise CommandError(_first_error(detail), returncode=USAGE_ERROR)


def grid_from(resolved):
    try:
        grid = int(resolved['grid'])
    except (TypeError, ValueError):
        raise CommandError(f'Grid must be an integer, got {resolved["grid"]!r}', returncode=USAGE_ERROR)
    if grid < 1:
        raise CommandError('Grid must be at least 1', returncode=USAGE_ERROR)
    return grid


def tolerance_from(resolved):
    try:
        tolerance = float(resolved['tolerance'])
    except (TypeError, ValueError):
        raise CommandError(f'Tolerance must be a number, got {resolved["tolerance"]!r}', returncode=USAGE_ERROR)
    if not tolerance >= 0:
        raise CommandError('Tolerance must be nonnegative', returncode=USAGE_ERROR)
    return tolerance


@contextmanager
def output_stream(resolved, stdout):
    """Yield the --out file, or the command's stdout."""
    if resolved.get('out'):
        try:
            handle = open(resolved['out'], 'w', newline='')
        except OSError as e:
            raise CommandError(f'Cannot open output file: {e}', returncode=USAGE_ERROR)
        with handle:
            yield handle
        logger.info(f'Wrote {resolved["out"]}')
    else:
        yield stdout if stdout is not None else sys.stdout
