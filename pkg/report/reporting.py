"""
Report assembly: classification documents, bound sweeps and CSV output.
"""
import csv
import logging
import math

import numpy as np

from sideinfo.config_algebra import (
    RECEIVERS, acyclic_family, all_configs, complete_sets, config_bits, degraded_sequences,
    layer_assignment, maximum_complete_sets, set_label, tightness_classify,
)
from region.inner_bound import (
    bound_table, constraint_terms, frontier, max_weighted_sum_utility, ray_search, split_grid,
)
from region.outer_bound import outer_ray

logger = logging.getLogger('report')

BOUNDS_COLUMNS = ['mu1', 'mu2', 'mu3', 'inner_R1', 'inner_R2', 'inner_R3', 'inner_J', 'outer_t', 'gap']
INNER_COLUMNS = ['mu1', 'mu2', 'mu3', 'R1', 'R2', 'R3', 'J']
OUTER_COLUMNS = ['d1', 'd2', 'd3', 't', 'R1', 'R2', 'R3']
REPORT_COLUMNS = [
    'config_id', 'bits', 'K_I', 'tightness', 'inner_sum', 'outer_sum', 'max_gap', 'base',
]

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
AXES = [np.array(axis, dtype=float) for axis in np.eye(3)]


class DirectionSpecError(ValueError):
    pass


def fibonacci_directions(count):
    """Fibonacci-sphere points folded into the positive octant."""
    points = []
    for k in range(count):
        z = 1.0 - (k + 0.5) / count
        r = math.sqrt(max(1.0 - z * z, 0.0))
        phi = (k * GOLDEN_ANGLE) % (math.pi / 2)
        points.append(np.array([r * math.cos(phi), r * math.sin(phi), z]))
    return points


def uniform_directions(count, seed):
    rng = np.random.default_rng(seed)
    samples = np.abs(rng.standard_normal((count, 3)))
    return [row / np.linalg.norm(row) for row in samples]


def parse_directions(spec, seed=0):
    """
    Directions from ``fibonacci:N``, ``uniform:N`` or an explicit list ``1,0,0;0,1,1``.

    Sampled families are followed by the three axes.
    """
    spec = str(spec).strip()
    kind, _, count = spec.partition(':')
    if kind in ('fibonacci', 'uniform'):
        try:
            count = int(count)
        except ValueError:
            raise DirectionSpecError(f'Direction count must be an integer in {spec!r}')
        if count < 0:
            raise DirectionSpecError(f'Direction count must be nonnegative in {spec!r}')
        sampled = fibonacci_directions(count) if kind == 'fibonacci' else uniform_directions(count, seed)
        return sampled + [axis.copy() for axis in AXES]

    directions = []
    for chunk in spec.split(';'):
        try:
            values = np.array([float(v) for v in chunk.split(',')])
        except ValueError:
            raise DirectionSpecError(f'Cannot read direction {chunk!r}')
        if values.shape != (3,) or np.any(values < 0) or not np.any(values > 0):
            raise DirectionSpecError(f'Direction {chunk!r} must have three nonnegative entries, not all zero')
        directions.append(values)
    return directions


def classify_document(matrix, consecutive_only=False):
    family = layer_assignment(matrix)
    verdict = tightness_classify(matrix)
    return {
        'config_id': matrix.config_id,
        'bits': config_bits(matrix),
        'matrix': [list(row) for row in matrix.a],
        'L_I': [sorted(s) for s in acyclic_family(matrix)],
        'complete_sets': [sorted(s) for s in complete_sets(matrix)],
        'K_I': [sorted(s) for s in maximum_complete_sets(matrix)],
        'K_l': {str(l): sorted(family.layer_of[l]) for l in RECEIVERS},
        'degraded_sequences': [
            seq.label() for seq in degraded_sequences(matrix, consecutive_only=consecutive_only)
        ],
        'inner_constraints': {
            set_label(V): [[l, i] for l, i in terms]
            for V, terms in constraint_terms(matrix).items()
        },
        'tightness': {'case': verdict.case_id, 'detail': verdict.detail},
    }


def _grid_table(matrix, channel, grid):
    splits = split_grid(channel.P, grid)
    return splits, bound_table(matrix, channel, splits)


def bounds_rows(matrix, channel, directions, grid, tol=1e-9):
    """One row per direction; ``gap`` is outer t* minus inner t* along the same ray."""
    sequences = degraded_sequences(matrix)
    precomputed = _grid_table(matrix, channel, grid)
    points = frontier(matrix, channel, directions, grid=grid)
    rows = []
    for direction, point in zip(directions, points):
        inner_t, _ = ray_search(matrix, channel, direction, grid, precomputed=precomputed)
        outer_t = outer_ray(matrix, channel, direction, tol=tol, sequences=sequences)
        R = point.as_array()
        rows.append({
            'mu1': direction[0], 'mu2': direction[1], 'mu3': direction[2],
            'inner_R1': R[0], 'inner_R2': R[1], 'inner_R3': R[2],
            'inner_J': float(np.dot(direction, R)),
            'outer_t': outer_t,
            'gap': outer_t - inner_t,
        })
    logger.info(f'Bounds sweep for {matrix}: {len(rows)} directions at grid {grid}')
    return rows


def inner_rows(matrix, channel, directions, grid):
    rows = []
    for direction, point in zip(directions, frontier(matrix, channel, directions, grid=grid)):
        R = point.as_array()
        rows.append({
            'mu1': direction[0], 'mu2': direction[1], 'mu3': direction[2],
            'R1': R[0], 'R2': R[1], 'R3': R[2], 'J': float(np.dot(direction, R)),
        })
    return rows


def outer_rows(matrix, channel, directions, tol=1e-9):
    sequences = degraded_sequences(matrix)
    rows = []
    for direction in directions:
        t = outer_ray(matrix, channel, direction, tol=tol, sequences=sequences)
        R = t * np.asarray(direction)
        rows.append({
            'd1': direction[0], 'd2': direction[1], 'd3': direction[2],
            't': t, 'R1': R[0], 'R2': R[1], 'R3': R[2],
        })
    return rows


def report_row(matrix, channel, directions, grid, tol=1e-9):
    """
    Sum-rate estimates and the largest ray gap for one configuration.

    The outer sum is the best sum along the sampled rays and along the ray
    through the inner sum-rate maximiser, so it never falls below the inner sum.
    """
    sequences = degraded_sequences(matrix)
    solution = max_weighted_sum_utility(matrix, channel, (1.0, 1.0, 1.0))
    inner_point = frontier(matrix, channel, [(1.0, 1.0, 1.0)], grid=grid)[0].as_array()

    precomputed = _grid_table(matrix, channel, grid)
    outer_sum, max_gap = 0.0, -math.inf
    for direction in directions:
        t_out = outer_ray(matrix, channel, direction, tol=tol, sequences=sequences)
        t_in, _ = ray_search(matrix, channel, direction, grid, precomputed=precomputed)
        outer_sum = max(outer_sum, t_out * float(np.sum(direction)))
        max_gap = max(max_gap, t_out - t_in)
    if np.any(inner_point > 0):
        t_out = outer_ray(matrix, channel, inner_point, tol=tol, sequences=sequences)
        outer_sum = max(outer_sum, t_out * float(np.sum(inner_point)))

    verdict = tightness_classify(matrix)
    return {
        'config_id': matrix.config_id,
        'bits': config_bits(matrix),
        'K_I': ' '.join(set_label(s) for s in maximum_complete_sets(matrix)),
        'tightness': verdict.case_id,
        'inner_sum': solution.value,
        'outer_sum': outer_sum,
        'max_gap': max_gap,
        'base': channel.log_base,
    }


def report_all_rows(channel, directions, grid, configs=None, tol=1e-9):
    configs = all_configs() if configs is None else configs
    rows = [report_row(matrix, channel, directions, grid, tol) for matrix in configs]
    tight = sum(1 for row in rows if row['tightness'] != 'open')
    logger.info(f'Report over {len(rows)} configurations: {tight} tight')
    return rows


def format_value(value):
    if isinstance(value, (float, np.floating)):
        return format(float(value), '.12g')
    return str(value)


def write_csv(rows, columns, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[column]) for column in columns])
