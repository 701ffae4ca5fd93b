from itertools import combinations, permutations

from django.test import SimpleTestCase

from sideinfo.config_algebra import (
    CASE1, CASE2, CASE3, CASE4, OPEN, RECEIVERS, InvalidRoutingMatrix, RoutingMatrix, acyclic_family,
    all_configs, all_subsets, complete_sets, config_bits, decode_config, degraded_sequences, encode_config,
    is_acyclic, is_complete, is_weaker, layer_assignment, max_uncertainty_rate,
    maximum_complete_sets, nonempty_subsets, parse_config, set_label, tightness_census, tightness_classify,
)


def s(*members):
    return frozenset(members)


MUTUAL_13 = RoutingMatrix.from_entries((1, 3), (3, 1))
ALL_WEAKER_KNOW = RoutingMatrix.from_entries((2, 1), (3, 1), (3, 2))


class RoutingMatrixTests(SimpleTestCase):

    def test_rejects_known_own_message(self):
        with self.assertRaises(InvalidRoutingMatrix):
            RoutingMatrix(((1, 0, 0), (0, 0, 0), (0, 0, 0)))

    def test_rejects_non_binary_entry(self):
        with self.assertRaises(InvalidRoutingMatrix):
            RoutingMatrix(((0, 2, 0), (0, 0, 0), (0, 0, 0)))

    def test_known_messages(self):
        self.assertEqual(MUTUAL_13.known_messages(1), s(3))
        self.assertEqual(MUTUAL_13.known_messages(2), s())
        self.assertEqual(MUTUAL_13.known_messages(3), s(1))

    def test_ids_cover_every_matrix_once(self):
        ids = [encode_config(matrix) for matrix in all_configs()]
        self.assertEqual(ids, list(range(64)))
        self.assertEqual(decode_config(52), ALL_WEAKER_KNOW)

    def test_decode_rejects_out_of_range(self):
        for bad in (-1, 64, True, '3'):
            with self.assertRaises(InvalidRoutingMatrix):
                decode_config(bad)

    def test_parse_config_accepts_id_and_bits(self):
        self.assertEqual(parse_config('52'), ALL_WEAKER_KNOW)
        self.assertEqual(parse_config('001011'), ALL_WEAKER_KNOW)
        self.assertEqual(config_bits(MUTUAL_13), '010010')
        with self.assertRaises(InvalidRoutingMatrix):
            parse_config('abc')


class AcyclicAndCompleteTests(SimpleTestCase):

    def test_no_side_information_everything_acyclic(self):
        self.assertEqual(len(acyclic_family(decode_config(0))), 8)

    def test_mutual_knowledge_is_a_cycle(self):
        self.assertFalse(is_acyclic(MUTUAL_13, s(1, 3)))
        self.assertFalse(is_acyclic(MUTUAL_13, s(1, 2, 3)))
        self.assertTrue(is_acyclic(MUTUAL_13, s(1, 2)))

    def test_three_cycle(self):
        matrix = RoutingMatrix.from_entries((1, 2), (2, 3), (3, 1))
        self.assertFalse(is_acyclic(matrix, s(1, 2, 3)))
        for pair in (s(1, 2), s(2, 3), s(1, 3)):
            self.assertTrue(is_acyclic(matrix, pair))

    def test_complete_needs_weaker_to_know_stronger(self):
        self.assertTrue(is_complete(MUTUAL_13, s(1, 3)))
        self.assertFalse(is_complete(MUTUAL_13, s(1, 2)))
        self.assertTrue(is_complete(MUTUAL_13, s(2)))

    def test_full_complete_set(self):
        self.assertIn(s(1, 2, 3), complete_sets(ALL_WEAKER_KNOW))
        self.assertEqual(maximum_complete_sets(ALL_WEAKER_KNOW), [s(1, 2, 3)])

    def test_mutual_pair_family_and_layers(self):
        self.assertEqual(maximum_complete_sets(MUTUAL_13), [s(2), s(1, 3)])
        layers = layer_assignment(MUTUAL_13).layers()
        self.assertEqual(layers, (s(1, 3), s(2), s(1, 3)))

    def test_layer_sets_contain_their_layer(self):
        for matrix in all_configs():
            family = layer_assignment(matrix)
            for l, K in family.layer_of.items():
                self.assertIn(l, K)
                self.assertIn(K, family.k_family)

    def test_acyclic_sets_are_closed_under_subsets(self):
        for matrix in all_configs():
            for members in all_subsets():
                if not is_acyclic(matrix, members):
                    continue
                for size in range(len(members)):
                    for part in combinations(sorted(members), size):
                        self.assertTrue(is_acyclic(matrix, part), f'{matrix} {sorted(members)} {part}')

    def test_complete_pair_is_acyclic_iff_stronger_ignores_weaker(self):
        for matrix in all_configs():
            for i, j in combinations(RECEIVERS, 2):
                if is_complete(matrix, s(i, j)):
                    self.assertEqual(is_acyclic(matrix, s(i, j)), not matrix.knows(i, j), f'{matrix} {i}{j}')


class DegradedSequenceTests(SimpleTestCase):

    def test_weaker_requires_larger_labels_and_no_knowledge(self):
        empty = decode_config(0)
        self.assertTrue(is_weaker(empty, s(2), s(1)))
        self.assertFalse(is_weaker(empty, s(1), s(2)))
        self.assertFalse(is_weaker(MUTUAL_13, s(3), s(1)))

    def test_no_side_information_has_full_chain(self):
        labels = {seq.label() for seq in degraded_sequences(decode_config(0))}
        self.assertIn('({1},{2},{3})', labels)
        self.assertIn('({1,2},{3})', labels)
        self.assertIn('({2})', labels)

    def test_transitive_reading_is_default(self):
        transitive = {seq.label() for seq in degraded_sequences(MUTUAL_13)}
        literal = {seq.label() for seq in degraded_sequences(MUTUAL_13, consecutive_only=True)}
        self.assertNotIn('({1},{2},{3})', transitive)
        self.assertIn('({1},{2},{3})', literal)
        self.assertIn('({1},{2})', transitive)
        self.assertIn('({2},{3})', transitive)
        self.assertTrue(transitive <= literal)

    def test_sets_in_a_sequence_are_disjoint(self):
        for matrix in all_configs():
            for seq in degraded_sequences(matrix):
                seen = set()
                for D in seq:
                    self.assertFalse(seen & D, seq.label())
                    seen |= D

    def test_matches_exhaustive_search(self):
        def weaker(matrix, later, earlier):
            return min(later) > max(earlier) and not any(matrix.a[x - 1][y - 1] for x in later for y in earlier)

        for matrix in all_configs():
            expected = set()
            # at most three disjoint nonempty sets fit in a sequence
            for length in (1, 2, 3):
                for sets in permutations(nonempty_subsets(), length):
                    if not all(is_acyclic(matrix, D) for D in sets):
                        continue
                    if all(weaker(matrix, sets[b], sets[a]) for a, b in combinations(range(length), 2)):
                        expected.add(sets)
            found = [seq.sets for seq in degraded_sequences(matrix)]
            self.assertEqual(len(found), len(set(found)), str(matrix))
            self.assertEqual(set(found), expected, str(matrix))

    def test_full_knowledge_leaves_single_sets(self):
        labels = sorted(seq.label() for seq in degraded_sequences(decode_config(63)))
        self.assertEqual(labels, ['({1})', '({2})', '({3})'])

    def test_third_receiver_knowing_first_message(self):
        labels = {seq.label() for seq in degraded_sequences(RoutingMatrix.from_entries((3, 1)))}
        self.assertNotIn('({1,2},{3})', labels)
        self.assertNotIn('({1},{3})', labels)
        self.assertIn('({2},{3})', labels)
        self.assertIn('({1},{2})', labels)


class RateConditionTests(SimpleTestCase):

    def test_uncertainty_without_side_information(self):
        self.assertEqual(max_uncertainty_rate(decode_config(0), 1, (1, 2, 3)), 6)

    def test_known_message_is_not_counted(self):
        matrix = RoutingMatrix.from_entries((2, 1))
        self.assertEqual(max_uncertainty_rate(matrix, 2, (1, 2, 3)), 5)

    def test_cycle_limits_the_search(self):
        # {1,3} is cyclic, so receiver 2 never searches W1 and W3 jointly.
        self.assertEqual(max_uncertainty_rate(MUTUAL_13, 2, (1, 1, 1)), 2)

    def test_negative_rate_rejected(self):
        with self.assertRaises(ValueError):
            max_uncertainty_rate(MUTUAL_13, 1, (-1, 0, 0))


class TightnessTests(SimpleTestCase):

    def test_census(self):
        self.assertEqual(tightness_census(), 46)

    def test_case_counts(self):
        counts = {}
        for matrix in all_configs():
            case = tightness_classify(matrix).case_id
            counts[case] = counts.get(case, 0) + 1
        self.assertEqual(counts[CASE1], 8)
        self.assertEqual(counts[CASE4], 8)
        self.assertEqual(counts[CASE2], 14)
        self.assertEqual(counts[CASE3], 16)
        self.assertEqual(counts[OPEN], 18)

    def test_named_configurations(self):
        self.assertEqual(tightness_classify(ALL_WEAKER_KNOW).case_id, CASE1)
        self.assertEqual(tightness_classify(decode_config(63)).case_id, CASE1)
        self.assertEqual(tightness_classify(decode_config(0)).case_id, CASE4)
        self.assertEqual(tightness_classify(MUTUAL_13).case_id, OPEN)
        self.assertFalse(tightness_classify(MUTUAL_13).is_tight)

    def test_set_label(self):
        self.assertEqual(set_label(s(3, 1)), '{1,3}')
