"""
Achievable region of the layered dirty-paper scheme.

A power split assigns P_l to layer l (the bundle for K_l). For a split the
region is a subset-bound region; the inner bound is the union over splits.
"""
import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import minimize

from sideinfo.config_algebra import (
    RECEIVERS, complete_sets, is_acyclic, is_complete, layer_assignment, layer_key,
    nonempty_subsets, set_label,
)
from region.gaussian_layers import PowerSplit, cap, log_scale, transmission_case
from region.geometry import (
    LinearInequalitySystem, SubsetBoundRegion, batch_support, fm_eliminate, support,
    to_subset_region,
)

logger = logging.getLogger('region')

RATE_NAMES = ('R1', 'R2', 'R3')
BREAKPOINT_MERGE = 1e-10
TIE_TOLERANCE = 1e-12


class NotCompleteError(ValueError):
    pass


@dataclass(frozen=True)
class RateTuple:
    R1: float
    R2: float
    R3: float

    def __post_init__(self):
        values = self.as_array()
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError(f'Rates must be finite and nonnegative, got {tuple(values)}')

    @classmethod
    def from_array(cls, values):
        values = np.where(np.abs(values) < 1e-12, 0.0, np.asarray(values, dtype=float))
        return cls(*(float(v) for v in values))

    def as_array(self):
        return np.array([self.R1, self.R2, self.R3], dtype=float)


@dataclass(frozen=True)
class WeightVector:
    mu1: float
    mu2: float
    mu3: float

    def __post_init__(self):
        values = self.as_array()
        if np.any(values < 0) or not np.any(values > 0):
            raise ValueError(f'Weights must be nonnegative and not all zero, got {tuple(values)}')

    @classmethod
    def coerce(cls, mu):
        if isinstance(mu, cls):
            return mu
        return cls(*(float(m) for m in mu))

    def as_array(self):
        return np.array([self.mu1, self.mu2, self.mu3], dtype=float)

    def __getitem__(self, receiver):
        return self.as_array()[receiver - 1]


# --- Layered regions ---------------------------------------------------------------

def _qualifying_subsets(matrix, layer_sets):
    """Sets V whose intersection with every layer set is acyclic or empty."""
    return [
        V for V in nonempty_subsets()
        if all(not (V & K) or is_acyclic(matrix, V & K) for K in layer_sets)
    ]


def cmkm_region(matrix, layer_sets, channel, split):
    layer_sets = tuple(frozenset(K) for K in layer_sets)
    for K in layer_sets:
        if not K or not is_complete(matrix, K):
            raise NotCompleteError(f'{set_label(K)} is not a complete set of {matrix}')
    split.check(channel, length=len(layer_sets))

    bounds = {}
    for V in _qualifying_subsets(matrix, layer_sets):
        bounds[V] = sum(
            channel.cap(split[l] / (channel.min_noise(V & K) + split.below(l)))
            for l, K in enumerate(layer_sets, start=1) if V & K
        )
    return SubsetBoundRegion(bounds)


def direct_region(matrix, channel, split):
    return cmkm_region(matrix, layer_assignment(matrix).layers(), channel, split)


def constraint_terms(matrix):
    """For each constrained V, the (layer, receiver) pairs whose noise sets each term of b_V."""
    layer_sets = layer_assignment(matrix).layers()
    return {
        V: tuple((l, min(V & K)) for l, K in enumerate(layer_sets, start=1) if V & K)
        for V in _qualifying_subsets(matrix, layer_sets)
    }


# --- Per-layer rate system and its projection ---------------------------------------

def layer_rate_name(receiver, l):
    return f'R{receiver}_{l}'


def split_rate_system(matrix, channel, split):
    """
    Per-layer rate constraints over R_il for i in K_l, plus coupling to R_i.

    Coupling rows are ``R_i - sum_l R_il <= 0``; every other row only bounds
    the R_il from above, so the projection matches the equality coupling.
    """
    split.check(channel, length=3)
    layer_sets = layer_assignment(matrix).layers()
    per_layer = [layer_rate_name(i, l) for l, K in enumerate(layer_sets, start=1) for i in sorted(K)]
    rows = []

    for l, K in enumerate(layer_sets, start=1):
        for V in nonempty_subsets(tuple(sorted(K))):
            if not is_acyclic(matrix, V):
                continue
            bound = channel.cap(split[l] / (channel.min_noise(V) + split.below(l)))
            rows.append(({layer_rate_name(i, l): 1.0 for i in V}, bound))

    for i in RECEIVERS:
        coupling = {f'R{i}': 1.0}
        for l, K in enumerate(layer_sets, start=1):
            if i in K:
                coupling[layer_rate_name(i, l)] = -1.0
        rows.append((coupling, 0.0))

    for name in RATE_NAMES + tuple(per_layer):
        rows.append(({name: -1.0}, 0.0))
    return LinearInequalitySystem.from_rows(RATE_NAMES + tuple(per_layer), rows)


def region_via_fm(matrix, channel, split):
    system = split_rate_system(matrix, channel, split)
    eliminated = [v for v in system.variables if v not in RATE_NAMES]
    projected = fm_eliminate(system, eliminated, nonnegative=True)
    logger.debug(f'FM projection of {matrix}: {len(system)} rows -> {len(projected)} rows')
    return to_subset_region(projected, {name: k for k, name in enumerate(RATE_NAMES, start=1)})


# --- Vectorised evaluation over many splits ---------------------------------------

def split_grid(P, points):
    """Every split (i, j, k) * P / points with i + j + k = points."""
    if points < 1:
        raise ValueError('The split grid needs at least one step')
    rows = [(i, j, points - i - j) for i in range(points + 1) for j in range(points + 1 - i)]
    return np.array(rows, dtype=float) * (P / points)


def bound_table(matrix, channel, splits):
    """
    b_V of the direct region for every row of ``splits``.

    Returns (subsets, table) with ``table[k, s]`` the bound on ``subsets[k]`` at split s.
    """
    splits = np.atleast_2d(np.asarray(splits, dtype=float))
    layer_sets = layer_assignment(matrix).layers()
    below = np.cumsum(splits, axis=1) - splits
    subsets = _qualifying_subsets(matrix, layer_sets)
    table = np.zeros((len(subsets), len(splits)))
    for k, V in enumerate(subsets):
        for l, K in enumerate(layer_sets):
            if V & K:
                table[k] += cap(splits[:, l] / (channel.min_noise(V & K) + below[:, l]), channel.log_base)
    return subsets, table


def grid_best_split(matrix, channel, mu, points):
    """Weighted-sum maximum over a simplex grid of splits; returns (value, PowerSplit)."""
    splits = split_grid(channel.P, points)
    subsets, table = bound_table(matrix, channel, splits)
    values = batch_support(subsets, table, WeightVector.coerce(mu).as_array())
    best = int(np.argmax(values))
    return float(values[best]), PowerSplit(tuple(splits[best]))


# --- Weighted sum-rate by utility functions -------------------------------------------

@dataclass(frozen=True)
class UtilityCurve:
    members: frozenset
    terms: tuple
    scale: float

    def value(self, z):
        return self.scale * sum(c / (N + z) for c, N in self.terms)

    def integral(self, a, b):
        """Closed form of the integral over [a, b]: scale * sum c * ln((N + b) / (N + a))."""
        return self.scale * sum(c * np.log((N + b) / (N + a)) for c, N in self.terms)

    def is_zero(self):
        return all(c == 0 for c, _ in self.terms)


def utility_curve(matrix, members, mu, channel):
    """
    Marginal weighted rate of one unit of power spent on ``members`` at interference z.

    Each member in order of increasing noise adds its weight in excess of the
    heaviest stronger member; inside a cyclic pair both weights count in full.
    """
    mu = WeightVector.coerce(mu)
    ordered = sorted(members)
    terms = []
    heaviest = 0.0
    for i in ordered:
        weight = mu[i] if not is_acyclic(matrix, members) else max(mu[i] - heaviest, 0.0)
        heaviest = max(heaviest, mu[i])
        terms.append((float(weight), channel.N(i)))
    return UtilityCurve(frozenset(members), tuple(terms), 1.0 / (2.0 * log_scale(channel.log_base)))


def _difference_roots(first, second, upper):
    """Points in (0, upper) where two curves cross; the numerator has degree at most two."""
    weights = {}
    for c, N in first.terms:
        weights[N] = weights.get(N, 0.0) + c
    for c, N in second.terms:
        weights[N] = weights.get(N, 0.0) - c
    noises = [N for N, w in weights.items() if w != 0]
    numerator = Polynomial([0.0])
    for N in noises:
        product = Polynomial([1.0])
        for other in noises:
            if other != N:
                product = product * Polynomial([other, 1.0])
        numerator = numerator + weights[N] * product
    if not np.any(numerator.coef):
        return []
    return [
        float(root.real) for root in numerator.roots()
        if abs(root.imag) < 1e-12 and 0.0 < root.real < upper
    ]


def _merge_points(points):
    merged = []
    for point in sorted(points):
        if not merged or point - merged[-1] > BREAKPOINT_MERGE:
            merged.append(point)
    return merged


@dataclass(frozen=True)
class ScheduleInterval:
    start: float
    end: float
    members: frozenset

    @property
    def length(self):
        return self.end - self.start


@dataclass(frozen=True)
class UtilitySolution:
    value: float
    split: PowerSplit
    schedule: tuple


def _best_curve(curves, z):
    values = [curve.value(z) for curve in curves]
    top = max(values)
    tied = [curve for curve, v in zip(curves, values) if v >= top - TIE_TOLERANCE * max(1.0, top)]
    return min(tied, key=lambda curve: (layer_key(curve.members), len(curve.members), sorted(curve.members)))


def _schedule_to_split(matrix, schedule, P):
    """Map the power schedule onto the three layers, keeping layer order."""
    layer_sets = layer_assignment(matrix).layers()
    parts = [0.0, 0.0, 0.0]
    current = 0
    for interval in schedule:
        for l in range(current, 3):
            if interval.members <= layer_sets[l]:
                parts[l] += interval.length
                current = l
                break
        else:
            return None
    # Absorb rounding in the last used layer so the parts sum to P.
    parts[current] += P - sum(parts)
    return PowerSplit(tuple(max(p, 0.0) for p in parts))


def max_weighted_sum_utility(matrix, channel, mu):
    mu = WeightVector.coerce(mu)
    P = channel.P
    if transmission_case(matrix) == 3:
        split = PowerSplit((P, 0.0, 0.0))
        value, _ = support(direct_region(matrix, channel, split), mu.as_array())
        everyone = frozenset(RECEIVERS)
        return UtilitySolution(value, split, (ScheduleInterval(0.0, P, everyone),))

    curves = [utility_curve(matrix, K, mu, channel) for K in complete_sets(matrix)]
    curves = [curve for curve in curves if not curve.is_zero()]

    points = [0.0, P]
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            points.extend(_difference_roots(curves[a], curves[b], P))
    points = _merge_points(points)
    if points[-1] != P:
        points[-1] = P

    schedule = []
    for start, end in zip(points, points[1:]):
        winner = _best_curve(curves, 0.5 * (start + end)).members
        if schedule and schedule[-1].members == winner:
            schedule[-1] = ScheduleInterval(schedule[-1].start, end, winner)
        else:
            schedule.append(ScheduleInterval(start, end, winner))

    by_members = {curve.members: curve for curve in curves}
    value = sum(by_members[i.members].integral(i.start, i.end) for i in schedule)
    split = _schedule_to_split(matrix, schedule, P)
    if split is None:
        logger.warning(
            f'Utility schedule {[set_label(i.members) for i in schedule]} for {matrix} '
            f'does not follow the layer order; no split recovered')
    return UtilitySolution(float(value), split, tuple(schedule))


def frontier(matrix, channel, directions, grid=200):
    """Maximising rate tuple of the inner bound for each weight vector."""
    points = []
    for mu in directions:
        mu = WeightVector.coerce(mu)
        solution = max_weighted_sum_utility(matrix, channel, mu)
        split = solution.split
        if split is None:
            logger.warning(f'Falling back to a {grid}-step split grid for mu={tuple(mu.as_array())}')
            _, split = grid_best_split(matrix, channel, mu, grid)
        _, vertex = support(direct_region(matrix, channel, split), mu.as_array())
        points.append(RateTuple.from_array(vertex))
    logger.info(f'Inner frontier of {matrix}: {len(points)} directions')
    return points


# --- Ray search -------------------------------------------------------------------

def _ray_values(subsets, table, direction):
    """phi = min over V with d(V) > 0 of b_V / d(V), per split column."""
    weight = np.array([direction[[k - 1 for k in V]].sum() for V in subsets])
    active = weight > 0
    if not np.any(active):
        raise ValueError('Direction must have a positive component')
    return np.min(table[active] / weight[active, None], axis=0)


def _project_split(xy, P):
    x, y = np.clip(xy, 0.0, P)
    if x + y > P:
        x, y = x * P / (x + y), y * P / (x + y)
    return np.array([x, y, max(P - x - y, 0.0)])


def ray_search(matrix, channel, direction, grid=200, polish=True, precomputed=None):
    """
    Largest t with t * direction in the inner bound, and the split attaining it.

    ``precomputed`` is an optional ``(splits, (subsets, table))`` pair for the
    same matrix, channel and grid, shared across many directions.
    """
    direction = np.asarray(direction, dtype=float)
    if np.any(direction < 0) or not np.any(direction > 0):
        raise ValueError(f'Direction must be nonnegative and nonzero, got {tuple(direction)}')
    if precomputed is None:
        splits = split_grid(channel.P, grid)
        subsets, table = bound_table(matrix, channel, splits)
    else:
        splits, (subsets, table) = precomputed
    values = _ray_values(subsets, table, direction)
    best = int(np.argmax(values))
    t, split = float(values[best]), splits[best]

    if polish:
        def objective(xy):
            candidate = _project_split(xy, channel.P)
            return -_ray_values(subsets, bound_table(matrix, channel, candidate)[1], direction)[0]

        result = minimize(
            objective, split[:2], method='Nelder-Mead',
            options={'xatol': 1e-10, 'fatol': 1e-12, 'maxiter': 400},
        )
        if -result.fun > t:
            t, split = float(-result.fun), _project_split(result.x, channel.P)
    return t, PowerSplit(tuple(split))


def ray_scale(matrix, channel, direction, grid=200, polish=True):
    t, _ = ray_search(matrix, channel, direction, grid, polish)
    return t
