"""
Self-check suites run by the ``verify`` command.

Each suite returns a SuiteResult; the command fails when any non-informational
suite reports failures.
"""
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from sideinfo.config_algebra import all_configs, tightness_census
from sideinfo.index_coding import (
    MIXED_RADIX, PAIRED, MessageSpace, MessageTuple, recover, subcodebook_index,
)
from region.gaussian_layers import PowerSplit
from region.geometry import support
from region.inner_bound import (
    direct_region, frontier, grid_best_split, max_weighted_sum_utility, region_via_fm,
)
from region.outer_bound import is_achievable_outer

logger = logging.getLogger('report')

EXPECTED_TIGHT = 46
CASE1_SIZES = (1, 2, 3, 4, 8, 16)
CASE2_SIZES = tuple(range(1, 9))


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    informational: bool = False

    @property
    def passed(self):
        return self.informational or not self.failures

    def summary(self):
        status = 'INFO' if self.informational else ('PASS' if self.passed else 'FAIL')
        return f'{status} {self.name}: {self.checked} checks, {len(self.failures)} failures'


def random_split(rng, P):
    return PowerSplit(tuple(rng.dirichlet(np.ones(3)) * P))


def random_weights(rng, count):
    return np.abs(rng.standard_normal((count, 3))) + 1e-3


def census_suite():
    result = SuiteResult('tightness census')
    count = tightness_census()
    result.checked = 1
    if count != EXPECTED_TIGHT:
        result.failures.append(f'{count} tight configurations, expected {EXPECTED_TIGHT}')
    return result


def fm_suite(channel, seed=0, splits=5, directions=100, configs=None):
    result = SuiteResult('FM projection vs direct region')
    rng = np.random.default_rng(seed)
    weights = random_weights(rng, directions)
    for matrix in configs or all_configs():
        for _ in range(splits):
            split = random_split(rng, channel.P)
            direct = direct_region(matrix, channel, split)
            projected = region_via_fm(matrix, channel, split)
            for mu in weights:
                a, _ = support(direct, mu)
                b, _ = support(projected, mu)
                result.checked += 1
                if abs(a - b) > 1e-9:
                    result.failures.append(f'{matrix} split={split.parts} mu={tuple(mu)}: {a} vs {b}')
    return result


def utility_suite(channel, seed=0, pairs=20, grid=200):
    result = SuiteResult('utility optimum vs split grid')
    rng = np.random.default_rng(seed)
    configs = all_configs()
    for _ in range(pairs):
        matrix = configs[int(rng.integers(64))]
        mu = random_weights(rng, 1)[0]
        j_star = max_weighted_sum_utility(matrix, channel, mu).value
        j_grid, _ = grid_best_split(matrix, channel, mu, grid)
        result.checked += 1
        if j_grid > j_star + 1e-9 or j_star - j_grid > 5e-3 * j_star:
            result.failures.append(f'{matrix} mu={tuple(mu)}: J*={j_star} grid={j_grid}')
    return result


def containment_suite(channel, directions, grid=200, tol=1e-9, consecutive_only=False, name=None):
    result = SuiteResult(name or 'inner frontier inside outer bound', informational=consecutive_only)
    for matrix in all_configs():
        for point in frontier(matrix, channel, directions, grid=grid):
            result.checked += 1
            if not is_achievable_outer(matrix, channel, point, tol, consecutive_only=consecutive_only):
                result.failures.append(f'{matrix}: {tuple(point.as_array())}')
    return result


def _round_trip(space, matrix_knowledge):
    failures = []
    seen = {}
    ranges = [range(s) for s in space.sizes]
    for w in itertools.product(*ranges):
        message = MessageTuple(w)
        k = subcodebook_index(message, space)
        if space.case == MIXED_RADIX and k in seen:
            failures.append(f'index {k} shared by {seen[k]} and {w}')
        seen[k] = w
        for receiver in (1, 2, 3):
            known = {j: message[j] for j in matrix_knowledge.get(receiver, ())}
            if recover(k, known, space, receiver) != message[receiver]:
                failures.append(f'receiver {receiver} failed on {w} (k={k})')
    return failures


def index_suite():
    result = SuiteResult('index coding round trip')
    for pair in ((1, 2), (1, 3), (2, 3)):
        i, j = pair
        knowledge = {i: (j,), j: (i,)}
        for sizes in itertools.product(CASE1_SIZES, repeat=3):
            space = MessageSpace(sizes, PAIRED, pair)
            result.checked += 1
            result.failures.extend(_round_trip(space, knowledge))
    for sizes in itertools.product(CASE2_SIZES, repeat=3):
        space = MessageSpace(sizes, MIXED_RADIX)
        result.checked += 1
        result.failures.extend(_round_trip(space, {}))
    return result


def run_all(channel, directions, seed=0, grid=200, tol=1e-9):
    suites = [
        census_suite(),
        fm_suite(channel, seed),
        utility_suite(channel, seed, grid=grid),
        containment_suite(channel, directions, grid, tol),
        index_suite(),
        containment_suite(
            channel, directions, grid, tol, consecutive_only=True,
            name='consecutive-only degraded reading (diagnostic)',
        ),
    ]
    for suite in suites:
        if suite.passed:
            logger.info(suite.summary())
        else:
            logger.error(suite.summary())
    return suites
