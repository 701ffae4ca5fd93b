import itertools
from collections import defaultdict

from django.test import SimpleTestCase

from sideinfo.config_algebra import RoutingMatrix, all_configs, decode_config
from sideinfo.index_coding import (
    MIXED_RADIX, PAIRED, MessageOutOfRange, MessageSpace, MessageTuple, MissingSideInformation,
    gp_rate_check, index_case1, index_case2, recover, recover_case1, recover_case2,
    side_information, subcodebook_count, subcodebook_index,
)


class MessageSpaceTests(SimpleTestCase):

    def test_mutual_pair_selects_network_coding(self):
        space = MessageSpace.for_matrix(RoutingMatrix.from_entries((1, 3), (3, 1)), (4, 4, 4))
        self.assertEqual(space.case, PAIRED)
        self.assertEqual(space.pair, (1, 3))
        self.assertEqual(space.third, 2)

    def test_no_mutual_pair_selects_mixed_radix(self):
        space = MessageSpace.for_matrix(RoutingMatrix.from_entries((2, 1), (3, 1)), (2, 3, 4))
        self.assertEqual(space.case, MIXED_RADIX)

    def test_rejects_bad_sizes(self):
        with self.assertRaises(ValueError):
            MessageSpace((0, 1, 1))
        with self.assertRaises(ValueError):
            MessageSpace((1, 1))

    def test_one_based_messages(self):
        message = MessageTuple.from_one_based((1, 2, 3))
        self.assertEqual(message.w, (0, 1, 2))
        self.assertEqual(message.one_based(), (1, 2, 3))
        self.assertEqual(message[3], 2)


class PairedIndexTests(SimpleTestCase):

    def setUp(self):
        self.space = MessageSpace((4, 4, 4), PAIRED, (1, 2))

    def test_index_value(self):
        self.assertEqual(index_case1(MessageTuple((1, 2, 3)), self.space), 15)

    def test_recovery(self):
        self.assertEqual(recover_case1(15, {}, self.space, 3), 3)
        self.assertEqual(recover_case1(15, {2: 2}, self.space, 1), 1)
        self.assertEqual(recover_case1(15, {1: 1}, self.space, 2), 2)

    def test_partner_message_is_required(self):
        with self.assertRaises(MissingSideInformation):
            recover_case1(15, {3: 3}, self.space, 1)

    def test_unequal_sizes_use_larger_modulus(self):
        space = MessageSpace((2, 5, 3), PAIRED, (1, 2))
        self.assertEqual(space.modulus, 5)
        self.assertEqual(subcodebook_count(space), 15)
        for w in itertools.product(range(2), range(5), range(3)):
            message = MessageTuple(w)
            k = index_case1(message, space)
            self.assertLess(k, 15)
            self.assertEqual(recover_case1(k, {2: w[1]}, space, 1), w[0])
            self.assertEqual(recover_case1(k, {1: w[0]}, space, 2), w[1])
            self.assertEqual(recover_case1(k, {}, space, 3), w[2])

    def test_out_of_range(self):
        with self.assertRaises(MessageOutOfRange):
            index_case1(MessageTuple((4, 0, 0)), self.space)

    def test_recovery_rejects_index_outside_range(self):
        self.assertEqual(subcodebook_count(self.space), 16)
        for k in (16, -1):
            with self.assertRaises(MessageOutOfRange):
                recover_case1(k, {2: 0}, self.space, 1)
        with self.assertRaises(MessageOutOfRange):
            recover(16, {}, self.space, 3)

    def test_wrong_space(self):
        with self.assertRaises(ValueError):
            index_case1(MessageTuple((0, 0, 0)), MessageSpace((2, 2, 2)))


class MixedRadixIndexTests(SimpleTestCase):

    def test_index_value(self):
        space = MessageSpace((2, 3, 4))
        self.assertEqual(index_case2(MessageTuple((1, 2, 3)), space), 23)
        self.assertEqual([recover_case2(23, space, r) for r in (1, 2, 3)], [1, 2, 3])

    def test_bijective_on_small_spaces(self):
        for sizes in itertools.product(range(1, 5), repeat=3):
            space = MessageSpace(sizes)
            indices = {
                index_case2(MessageTuple(w), space)
                for w in itertools.product(*(range(n) for n in sizes))
            }
            self.assertEqual(indices, set(range(subcodebook_count(space))))

    def test_index_outside_range(self):
        with self.assertRaises(MessageOutOfRange):
            recover_case2(24, MessageSpace((2, 3, 4)), 1)


class RoundTripTests(SimpleTestCase):

    def test_every_receiver_recovers_with_its_side_information(self):
        for config_id in range(64):
            matrix = decode_config(config_id)
            space = MessageSpace.for_matrix(matrix, (3, 2, 4))
            for w in itertools.product(range(3), range(2), range(4)):
                message = MessageTuple(w)
                k = subcodebook_index(message, space)
                for receiver in (1, 2, 3):
                    known = side_information(matrix, message, receiver)
                    self.assertEqual(recover(k, known, space, receiver), message[receiver])

    def test_side_information_pins_down_the_own_message(self):
        sizes = (3, 2, 4)
        messages = [MessageTuple(w) for w in itertools.product(*(range(n) for n in sizes))]
        for matrix in all_configs():
            space = MessageSpace.for_matrix(matrix, sizes)
            for receiver in (1, 2, 3):
                consistent = defaultdict(set)
                for message in messages:
                    known = tuple(sorted(side_information(matrix, message, receiver).items()))
                    consistent[subcodebook_index(message, space), known].add(message[receiver])
                for key, values in consistent.items():
                    self.assertEqual(len(values), 1, f'{matrix} receiver {receiver} {key}')

    def test_relabeling_receivers_commutes_with_recovery(self):
        sizes = (3, 2, 4)
        for order in itertools.permutations((1, 2, 3)):
            relabel = dict(zip((1, 2, 3), order))
            moved_sizes = [0, 0, 0]
            for i, n in zip((1, 2, 3), sizes):
                moved_sizes[relabel[i] - 1] = n
            for matrix in all_configs():
                pairs = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if matrix.knows(i, j)]
                moved = RoutingMatrix.from_entries(*[(relabel[i], relabel[j]) for i, j in pairs])
                space = MessageSpace.for_matrix(matrix, sizes)
                moved_space = MessageSpace.for_matrix(moved, moved_sizes)
                self.assertEqual(space.case, moved_space.case, str(matrix))
                for w in itertools.product(*(range(n) for n in sizes)):
                    moved_w = [0, 0, 0]
                    for i, value in zip((1, 2, 3), w):
                        moved_w[relabel[i] - 1] = value
                    moved_message = MessageTuple(tuple(moved_w))
                    k = subcodebook_index(moved_message, moved_space)
                    for i in (1, 2, 3):
                        known = side_information(moved, moved_message, relabel[i])
                        self.assertEqual(recover(k, known, moved_space, relabel[i]), w[i - 1])


class RateCheckTests(SimpleTestCase):

    def test_capacity_comparison(self):
        matrix = decode_config(0)
        self.assertTrue(gp_rate_check(matrix, 1, (0.5, 0.5, 0.5), 1.5))
        self.assertFalse(gp_rate_check(matrix, 1, (0.5, 0.5, 0.5), 1.4))

    def test_negative_capacity(self):
        with self.assertRaises(ValueError):
            gp_rate_check(decode_config(0), 1, (0, 0, 0), -1)
