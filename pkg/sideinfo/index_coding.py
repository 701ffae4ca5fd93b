"""
Message-level index functions of the joint network/Gelfand-Pinsker scheme.

Messages are 0-based internally: ``w_i`` ranges over ``0 .. L_i - 1`` where
``L_i`` stands in for ``2^{nR_i}``. ``MessageTuple.from_one_based`` maps the
1-based labels used on the command line.
"""
import logging
from dataclasses import dataclass

from sideinfo.config_algebra import RECEIVERS, max_uncertainty_rate

logger = logging.getLogger('sideinfo')

PAIRED = 'case1'
MIXED_RADIX = 'case2'


class MessageOutOfRange(ValueError):
    pass


class MissingSideInformation(ValueError):
    pass


@dataclass(frozen=True)
class MessageSpace:
    sizes: tuple
    case: str = MIXED_RADIX
    pair: tuple = (1, 2)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) != 3 or any(s < 1 for s in sizes):
            raise ValueError(f'Message set sizes must be three positive integers, got {self.sizes!r}')
        object.__setattr__(self, 'sizes', sizes)
        if self.case not in (PAIRED, MIXED_RADIX):
            raise ValueError(f'Unknown index case {self.case!r}')
        if self.case == PAIRED:
            i, j = self.pair
            if i == j or i not in RECEIVERS or j not in RECEIVERS:
                raise ValueError(f'Invalid mutually-known pair {self.pair!r}')
            object.__setattr__(self, 'pair', (i, j))

    @classmethod
    def for_matrix(cls, matrix, sizes):
        """Pick case 1 on the first mutually-known pair of ``matrix``, case 2 otherwise."""
        for i, j in ((1, 2), (1, 3), (2, 3)):
            if matrix.knows(i, j) and matrix.knows(j, i):
                return cls(sizes, PAIRED, (i, j))
        return cls(sizes, MIXED_RADIX)

    @property
    def third(self):
        i, j = self.pair
        return next(t for t in RECEIVERS if t not in (i, j))

    @property
    def modulus(self):
        i, j = self.pair
        return max(self.sizes[i - 1], self.sizes[j - 1])

    def size(self, receiver):
        return self.sizes[receiver - 1]


@dataclass(frozen=True)
class MessageTuple:
    w: tuple

    @classmethod
    def from_one_based(cls, messages):
        return cls(tuple(int(m) - 1 for m in messages))

    def one_based(self):
        return tuple(m + 1 for m in self.w)

    def __getitem__(self, receiver):
        return self.w[receiver - 1]


def _check_range(message, space):
    if len(message.w) != 3:
        raise MessageOutOfRange('A message tuple has exactly three components')
    for receiver in RECEIVERS:
        if not 0 <= message[receiver] < space.size(receiver):
            raise MessageOutOfRange(
                f'w{receiver}={message[receiver]} is outside 0..{space.size(receiver) - 1}')


def index_case1(message, space):
    """k = w_t * L + (w_i + w_j) mod L for the mutually-known pair (i, j)."""
    if space.case != PAIRED:
        raise ValueError('index_case1 needs a case-1 message space')
    _check_range(message, space)
    i, j = space.pair
    L = space.modulus
    return message[space.third] * L + (message[i] + message[j]) % L


def recover_case1(k, known, space, receiver):
    """
    Recover ``receiver``'s own message from the subcodebook index ``k``.

    ``known`` maps receiver labels to message values the decoder already has.
    The third receiver needs nothing; each receiver of the pair needs its partner's message.
    """
    if space.case != PAIRED:
        raise ValueError('recover_case1 needs a case-1 message space')
    if not 0 <= k < subcodebook_count(space):
        raise MessageOutOfRange(f'Index {k} is outside the subcodebook range')
    i, j = space.pair
    L = space.modulus
    if receiver == space.third:
        return k // L
    partner = j if receiver == i else i
    if partner not in known:
        raise MissingSideInformation(
            f'Receiver {receiver} needs w{partner} to resolve the network-coded sum')
    return (k % L - known[partner]) % L


def index_case2(message, space):
    """Mixed-radix k = w3 * L1 * L2 + w2 * L1 + w1."""
    _check_range(message, space)
    L1, L2, _ = space.sizes
    return message[3] * L1 * L2 + message[2] * L1 + message[1]


def recover_case2(k, space, receiver):
    L1, L2, L3 = space.sizes
    if not 0 <= k < L1 * L2 * L3:
        raise MessageOutOfRange(f'Index {k} is outside the subcodebook range')
    if receiver == 1:
        return k % L1
    if receiver == 2:
        return k // L1 % L2
    return k // (L1 * L2)


def subcodebook_index(message, space):
    if space.case == PAIRED:
        return index_case1(message, space)
    return index_case2(message, space)


def recover(k, known, space, receiver):
    if space.case == PAIRED:
        return recover_case1(k, known, space, receiver)
    return recover_case2(k, space, receiver)


def subcodebook_count(space):
    if space.case == PAIRED:
        return space.size(space.third) * space.modulus
    L1, L2, L3 = space.sizes
    return L1 * L2 * L3


def gp_rate_check(matrix, receiver, rates, capacity):
    """Decoding condition for one receiver: R_i^sum must not exceed its Gelfand-Pinsker rate C_i."""
    if capacity < 0:
        raise ValueError('Capacity must be nonnegative')
    return max_uncertainty_rate(matrix, receiver, rates) <= capacity + 1e-12


def side_information(matrix, message, receiver):
    """The messages receiver ``receiver`` knows a priori under ``matrix``."""
    return {j: message[j] for j in matrix.known_messages(receiver)}
