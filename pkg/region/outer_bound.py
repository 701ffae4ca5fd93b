"""
Converse region over degraded sequences of acyclic receiver sets.

A rate tuple is in the outer bound when, for every degraded sequence
(D_1, ..., D_J), some split P_1 + ... + P_J = P satisfies
sum_{k in D_j} R_k <= C(P_j / (min_{i in D_j} N_i + sum_{m<j} P_m)).
"""
import logging

import numpy as np

from sideinfo.config_algebra import degraded_sequences
from region.gaussian_layers import InvalidPowerSplit, cap
from region.geometry import SubsetBoundRegion
from region.inner_bound import RateTuple

logger = logging.getLogger('region')

BISECTION_TOLERANCE = 1e-9


def sequence_region(seq, channel, split):
    if len(split) != len(seq):
        raise InvalidPowerSplit(f'Sequence {seq.label()} needs {len(seq)} powers, got {len(split)}')
    split.check(channel)
    return SubsetBoundRegion({
        D: channel.cap(split[j] / (channel.min_noise(D) + split.below(j)))
        for j, D in enumerate(seq, start=1)
    })


def minimal_power(seq, channel, rates):
    """Smallest layer powers supporting ``rates`` on ``seq``, filled in from D_1 upward."""
    rates = np.asarray(rates, dtype=float)
    powers, used = [], 0.0
    for D in seq:
        demand = float(sum(rates[k - 1] for k in D))
        P_j = channel.inverse_cap(demand) * (channel.min_noise(D) + used)
        powers.append(P_j)
        used += P_j
    return powers


def _check_rates(r):
    r = r.as_array() if isinstance(r, RateTuple) else np.asarray(r, dtype=float)
    if r.shape != (3,) or np.any(r < 0):
        raise ValueError(f'Rate tuple must have three nonnegative entries, got {r}')
    return r


def is_achievable_outer(matrix, channel, r, tol=1e-9, sequences=None, consecutive_only=False):
    r = _check_rates(r)
    if sequences is None:
        sequences = degraded_sequences(matrix, consecutive_only=consecutive_only)
    for seq in sequences:
        if sum(minimal_power(seq, channel, r)) > channel.P + tol:
            return False
    return True


def violating_sequence(matrix, channel, r, tol=1e-9, consecutive_only=False):
    """The first degraded sequence that rules ``r`` out, or None."""
    r = _check_rates(r)
    for seq in degraded_sequences(matrix, consecutive_only=consecutive_only):
        if sum(minimal_power(seq, channel, r)) > channel.P + tol:
            return seq
    return None


def outer_ray(matrix, channel, direction, tol=1e-9, sequences=None, consecutive_only=False):
    """Largest t with t * direction in the outer bound, by bisection."""
    direction = np.asarray(direction, dtype=float)
    if np.any(direction < 0) or not np.any(direction > 0):
        raise ValueError(f'Direction must be nonnegative and nonzero, got {tuple(direction)}')
    if sequences is None:
        sequences = degraded_sequences(matrix, consecutive_only=consecutive_only)
    lo = 0.0
    hi = min(channel.cap(channel.P / channel.N(i)) / direction[i - 1] for i in (1, 2, 3) if direction[i - 1] > 0)
    while hi - lo > BISECTION_TOLERANCE:
        mid = 0.5 * (lo + hi)
        if is_achievable_outer(matrix, channel, mid * direction, tol, sequences):
            lo = mid
        else:
            hi = mid
    return lo


def outer_frontier(matrix, channel, directions, tol=1e-9, consecutive_only=False):
    sequences = degraded_sequences(matrix, consecutive_only=consecutive_only)
    points = []
    for direction in directions:
        direction = np.asarray(direction, dtype=float)
        t = outer_ray(matrix, channel, direction, tol, sequences)
        points.append(RateTuple.from_array(t * direction))
    logger.info(f'Outer frontier of {matrix}: {len(points)} directions over {len(sequences)} sequences')
    return points


def mutual_pair_outer(channel, r, grid=200, tol=1e-9):
    """
    Closed-form outer bound when receiver 1 knows W3 and receiver 3 knows W1,
    checked on a (P1, P2) grid with P1 + P2 <= P.
    """
    r = _check_rates(r)
    steps = np.arange(grid + 1) * (channel.P / grid)
    P1, P2 = np.meshgrid(steps, steps, indexing='ij')
    keep = P1 + P2 <= channel.P * (1 + 1e-12)
    P1, P2 = P1[keep], P2[keep]
    N1, N2, N3 = channel.noise
    Q = P2 * N2 / (P1 + N2)
    ok = (
        (r[0] <= cap(P1 / N1, channel.log_base) + tol)
        & (r[1] <= cap(P2 / (N2 + P1), channel.log_base) + tol)
        & (r[2] <= cap(np.maximum(channel.P - Q, 0.0) / (N3 + Q), channel.log_base) + tol)
    )
    return bool(np.any(ok))
