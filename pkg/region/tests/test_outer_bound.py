import math

import numpy as np
from django.test import SimpleTestCase

from sideinfo.config_algebra import DegradedSequence, RoutingMatrix, all_configs, decode_config, degraded_sequences
from region.gaussian_layers import Channel, InvalidPowerSplit, PowerSplit, cap
from region.inner_bound import RateTuple, frontier
from region.outer_bound import (
    is_achievable_outer, minimal_power, mutual_pair_outer, outer_frontier, outer_ray, sequence_region,
    violating_sequence,
)

CHANNEL = Channel(10, (0.2, 0.5, 1.0))
MUTUAL_13 = RoutingMatrix.from_entries((1, 3), (3, 1))
CHAIN = DegradedSequence((frozenset({1}), frozenset({2}), frozenset({3})))


def s(*members):
    return frozenset(members)


def cell_upper_rates(channel, grid):
    """Per grid cell of (P1, P2), the largest closed-form rate of each receiver over the cell corners."""
    h = channel.P / grid
    steps = np.arange(grid) * h
    P1, P2 = np.meshgrid(steps, steps, indexing='ij')
    keep = P1 + P2 <= channel.P
    N1, N2, N3 = channel.noise

    def rates(p1, p2):
        q = p2 * N2 / (p1 + N2)
        return np.stack([cap(p1 / N1), cap(p2 / (N2 + p1)), cap(np.maximum(channel.P - q, 0.0) / (N3 + q))])

    corners = [rates(P1 + a * h, P2 + b * h) for a in (0, 1) for b in (0, 1)]
    return np.max(corners, axis=0)[:, keep].T


class SequenceRegionTests(SimpleTestCase):

    def test_chain_bounds(self):
        region = sequence_region(CHAIN, CHANNEL, PowerSplit((2, 3, 5)))
        self.assertAlmostEqual(region.bound(s(1)), cap(10), delta=1e-12)
        self.assertAlmostEqual(region.bound(s(2)), cap(3 / 2.5), delta=1e-12)
        self.assertAlmostEqual(region.bound(s(3)), cap(5 / 6), delta=1e-12)

    def test_split_length_must_match(self):
        with self.assertRaises(InvalidPowerSplit):
            sequence_region(CHAIN, CHANNEL, PowerSplit((5, 5)))

    def test_joint_set_uses_strongest_noise(self):
        seq = DegradedSequence((s(1, 2), s(3)))
        region = sequence_region(seq, CHANNEL, PowerSplit((4, 6)))
        self.assertAlmostEqual(region.bound(s(1, 2)), cap(4 / 0.2), delta=1e-12)
        self.assertAlmostEqual(region.bound(s(3)), cap(6 / 5), delta=1e-12)


class MinimalPowerTests(SimpleTestCase):

    def test_worked_example(self):
        r = (math.log2(6) / 2, 1.0, 0.5)
        np.testing.assert_allclose(minimal_power(CHAIN, CHANNEL, r), (1.0, 4.5, 6.5), atol=1e-12)
        self.assertFalse(is_achievable_outer(decode_config(0), CHANNEL, r))
        self.assertEqual(violating_sequence(decode_config(0), CHANNEL, r).label(), '({1},{2},{3})')

    def test_origin_is_always_inside(self):
        for matrix in all_configs():
            self.assertTrue(is_achievable_outer(matrix, CHANNEL, (0, 0, 0)))
            self.assertIsNone(violating_sequence(matrix, CHANNEL, (0, 0, 0)))

    def test_rejects_negative_rates(self):
        with self.assertRaises(ValueError):
            is_achievable_outer(MUTUAL_13, CHANNEL, (-0.1, 0, 0))

    def test_accepts_rate_tuples(self):
        self.assertTrue(is_achievable_outer(MUTUAL_13, CHANNEL, RateTuple(0.5, 0.5, 0.5)))

    def test_any_feasible_split_needs_at_least_the_minimal_power(self):
        rng = np.random.default_rng(17)
        sequences = degraded_sequences(decode_config(0))
        for _ in range(200):
            seq = sequences[int(rng.integers(len(sequences)))]
            split = PowerSplit(tuple(rng.dirichlet(np.ones(len(seq))) * CHANNEL.P))
            region = sequence_region(seq, CHANNEL, split)
            rates = np.zeros(3)
            for D in seq:
                share = rng.dirichlet(np.ones(len(D))) * region.bound(D) * rng.uniform(0.5, 1.0)
                for k, value in zip(sorted(D), share):
                    rates[k - 1] = value
            self.assertLessEqual(sum(minimal_power(seq, CHANNEL, rates)), CHANNEL.P + 1e-9)

    def test_minimal_power_split_supports_the_rates(self):
        rng = np.random.default_rng(19)
        sequences = degraded_sequences(decode_config(0))
        for _ in range(200):
            seq = sequences[int(rng.integers(len(sequences)))]
            rates = rng.uniform(0, 0.6, size=3)
            powers = minimal_power(seq, CHANNEL, rates)
            if sum(powers) > CHANNEL.P:
                continue
            powers[-1] += CHANNEL.P - sum(powers)
            region = sequence_region(seq, CHANNEL, PowerSplit(tuple(powers)))
            for D in seq:
                self.assertLessEqual(sum(rates[k - 1] for k in D), region.bound(D) + 1e-9)


class OuterRayTests(SimpleTestCase):

    def test_axis_rays_are_single_user_capacities(self):
        for matrix in (decode_config(0), MUTUAL_13, decode_config(63)):
            for i in (1, 2, 3):
                direction = np.zeros(3)
                direction[i - 1] = 1.0
                self.assertAlmostEqual(outer_ray(matrix, CHANNEL, direction), cap(10 / CHANNEL.N(i)), delta=1e-8)

    def test_ray_endpoint_is_on_the_boundary(self):
        direction = np.array([0.3, 0.5, 0.2])
        t = outer_ray(MUTUAL_13, CHANNEL, direction)
        self.assertTrue(is_achievable_outer(MUTUAL_13, CHANNEL, t * direction))
        self.assertFalse(is_achievable_outer(MUTUAL_13, CHANNEL, (t + 1e-6) * direction))

    def test_more_power_never_shrinks_the_bound(self):
        bigger = Channel(15, CHANNEL.noise)
        for matrix in all_configs()[::9]:
            for direction in ((1, 1, 1), (0.2, 0.7, 0.1)):
                self.assertGreaterEqual(outer_ray(matrix, bigger, direction), outer_ray(matrix, CHANNEL, direction))

    def test_literal_reading_is_smaller(self):
        direction = (1, 1, 1)
        transitive = outer_ray(MUTUAL_13, CHANNEL, direction)
        literal = outer_ray(MUTUAL_13, CHANNEL, direction, consecutive_only=True)
        self.assertLessEqual(literal, transitive + 1e-9)

    def test_zero_direction_rejected(self):
        with self.assertRaises(ValueError):
            outer_ray(MUTUAL_13, CHANNEL, (0, 0, 0))

    def test_outer_frontier_points(self):
        points = outer_frontier(MUTUAL_13, CHANNEL, [(1, 0, 0), (1, 1, 1)])
        self.assertAlmostEqual(points[0].R1, cap(50), delta=1e-8)
        self.assertAlmostEqual(points[1].R1, points[1].R3, delta=1e-12)


class InnerInsideOuterTests(SimpleTestCase):

    def test_inner_frontier_lies_inside_outer_bound(self):
        rng = np.random.default_rng(23)
        directions = np.vstack([np.eye(3), rng.uniform(0.05, 1, size=(8, 3))])
        for matrix in all_configs():
            sequences = degraded_sequences(matrix)
            for point in frontier(matrix, CHANNEL, directions):
                self.assertTrue(
                    is_achievable_outer(matrix, CHANNEL, point, tol=1e-7, sequences=sequences),
                    f'{matrix} {point}')


class MutualPairClosedFormTests(SimpleTestCase):

    def test_closed_form_examples(self):
        self.assertTrue(mutual_pair_outer(CHANNEL, (0, 0, 0)))
        self.assertTrue(mutual_pair_outer(CHANNEL, (cap(50), 0, 0)))
        self.assertFalse(mutual_pair_outer(CHANNEL, (cap(50) + 0.01, 0, 0)))

    def test_closed_form_agrees_with_sequences_up_to_one_grid_cell(self):
        grid = 200
        upper = cell_upper_rates(CHANNEL, grid)
        rng = np.random.default_rng(29)
        sequences = degraded_sequences(MUTUAL_13)
        for direction, scale in zip(rng.uniform(0, 1, size=(1000, 3)), rng.uniform(0.5, 1.5, size=1000)):
            t = outer_ray(MUTUAL_13, CHANNEL, direction, sequences=sequences)
            r = scale * t * direction
            exact = is_achievable_outer(MUTUAL_13, CHANNEL, r, tol=1e-7, sequences=sequences)
            self.assertEqual(exact, scale <= 1, f'{r}')
            if mutual_pair_outer(CHANNEL, r, grid=grid):
                self.assertTrue(exact, f'{r}')
            if exact:
                self.assertTrue(np.any(np.all(upper >= r - 1e-7, axis=1)), f'{r}')
