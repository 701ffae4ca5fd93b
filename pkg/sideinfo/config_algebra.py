"""
Combinatorics over receiver message side information for three receivers.

A routing matrix ``a[i][j] == 1`` means receiver ``i`` knows message ``W_j``
a priori. Receivers are labelled 1, 2, 3 and ordered by noise variance
(receiver 1 is the strongest). Receiver sets are frozensets of labels.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations

logger = logging.getLogger('sideinfo')

RECEIVERS = (1, 2, 3)

# Bit k of a config id is the off-diagonal entry at CONFIG_BIT_ORDER[k].
CONFIG_BIT_ORDER = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))

CASE1 = 'case1'
CASE2 = 'case2'
CASE3 = 'case3'
CASE4 = 'case4'
OPEN = 'open'


class InvalidRoutingMatrix(ValueError):
    pass


def receiver_set(*members):
    return frozenset(members)


def all_subsets(receivers=RECEIVERS):
    """Every subset of the receivers, empty set first, by size then labels."""
    out = []
    for size in range(len(receivers) + 1):
        out.extend(frozenset(c) for c in combinations(receivers, size))
    return out


def nonempty_subsets(receivers=RECEIVERS):
    return [s for s in all_subsets(receivers) if s]


def set_label(members):
    """'{1,3}' style label, stable across runs."""
    return '{' + ','.join(str(i) for i in sorted(members)) + '}'


@dataclass(frozen=True)
class RoutingMatrix:
    a: tuple = field(default=((0, 0, 0), (0, 0, 0), (0, 0, 0)))

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.a)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise InvalidRoutingMatrix('Routing matrix must be 3x3')
        for i in range(3):
            for j in range(3):
                if rows[i][j] not in (0, 1):
                    raise InvalidRoutingMatrix(
                        f'Entry a{i + 1}{j + 1}={rows[i][j]} is not binary')
            if rows[i][i] != 0:
                raise InvalidRoutingMatrix(
                    f'Receiver {i + 1} cannot know its own message (a{i + 1}{i + 1} must be 0)')
        object.__setattr__(self, 'a', rows)

    @classmethod
    def from_entries(cls, *pairs):
        """Build a matrix from (i, j) pairs that are set to 1, e.g. ``from_entries((3, 1))``."""
        rows = [[0, 0, 0] for _ in range(3)]
        for i, j in pairs:
            rows[i - 1][j - 1] = 1
        return cls(tuple(tuple(r) for r in rows))

    def knows(self, i, j):
        """True if receiver i knows message W_j a priori."""
        return self.a[i - 1][j - 1] == 1

    def known_messages(self, i):
        """O_i = {j : a_ij = 1}."""
        return frozenset(j for j in RECEIVERS if self.knows(i, j))

    @property
    def config_id(self):
        return encode_config(self)

    def __str__(self):
        return f'config {self.config_id} ({config_bits(self)})'


def encode_config(matrix):
    config_id = 0
    for bit, (i, j) in enumerate(CONFIG_BIT_ORDER):
        if matrix.knows(i, j):
            config_id |= 1 << bit
    return config_id


def decode_config(config_id):
    if isinstance(config_id, bool) or not isinstance(config_id, int):
        raise InvalidRoutingMatrix(f'Config id must be an integer, got {config_id!r}')
    if not 0 <= config_id <= 63:
        raise InvalidRoutingMatrix(f'Config id {config_id} is outside 0-63')
    pairs = [pair for bit, pair in enumerate(CONFIG_BIT_ORDER) if config_id >> bit & 1]
    return RoutingMatrix.from_entries(*pairs)


def config_bits(matrix):
    """Six-character bit string; character k is bit k of the config id."""
    return ''.join('1' if matrix.knows(i, j) else '0' for i, j in CONFIG_BIT_ORDER)


def parse_config(text):
    """Accept a decimal id ("52") or a six-character bit string ("001011")."""
    text = str(text).strip()
    if len(text) == 6 and set(text) <= {'0', '1'}:
        pairs = [pair for ch, pair in zip(text, CONFIG_BIT_ORDER) if ch == '1']
        return RoutingMatrix.from_entries(*pairs)
    if text.isdigit():
        return decode_config(int(text))
    raise InvalidRoutingMatrix(f'Cannot read config {text!r}: expected 0-63 or a 6-bit string')


def all_configs():
    return [decode_config(config_id) for config_id in range(64)]


# --- Acyclic sets ---------------------------------------------------------------

def is_acyclic(matrix, members):
    members = frozenset(members)
    for i, j in combinations(sorted(members), 2):
        if matrix.knows(i, j) and matrix.knows(j, i):
            return False
    if len(members) == 3:
        for i, j, k in ((1, 2, 3), (1, 3, 2)):
            if matrix.knows(i, j) and matrix.knows(j, k) and matrix.knows(k, i):
                return False
    return True


def acyclic_family(matrix):
    """L_I: every acyclic subset of the receivers, the empty set included."""
    return [s for s in all_subsets() if is_acyclic(matrix, s)]


# --- Complete sets and layer assignment -----------------------------------------

def is_complete(matrix, members):
    """Every weaker member knows the message of every stronger member."""
    return all(matrix.knows(j, i) for i, j in combinations(sorted(members), 2))


def complete_sets(matrix):
    return [s for s in nonempty_subsets() if is_complete(matrix, s)]


def maximum_complete_sets(matrix):
    """K_I, ordered by (min + max, size) so the family prints the same way every time."""
    complete = complete_sets(matrix)
    family = [s for s in complete if not any(s < other for other in complete)]
    return sorted(family, key=lambda s: (min(s) + max(s), len(s), sorted(s)))


def layer_key(members):
    return min(members) + max(members)


@dataclass(frozen=True)
class CompleteSetFamily:
    k_family: tuple
    layer_of: dict

    def layers(self):
        return tuple(self.layer_of[l] for l in RECEIVERS)


def layer_assignment(matrix):
    """Pick K_l for each layer l: the maximum complete set containing l with smallest min+max."""
    family = maximum_complete_sets(matrix)
    layer_of = {}
    for l in RECEIVERS:
        candidates = [k for k in family if l in k]
        best = min(layer_key(k) for k in candidates)
        winners = [k for k in candidates if layer_key(k) == best]
        assert len(winners) == 1, (
            f'Layer {l} of {matrix} has {len(winners)} maximum complete sets with equal min+max')
        layer_of[l] = winners[0]
    return CompleteSetFamily(k_family=tuple(family), layer_of=layer_of)


# --- Weaker sets and degraded sequences -----------------------------------------

def is_weaker(matrix, weaker, stronger):
    """True if ``weaker`` is a weaker set of ``stronger``."""
    if not weaker or not stronger:
        return False
    if min(weaker) <= max(stronger):
        return False
    return not any(matrix.knows(i, j) for i in weaker for j in stronger)


@dataclass(frozen=True)
class DegradedSequence:
    sets: tuple

    def __post_init__(self):
        if not self.sets:
            raise ValueError('A degraded sequence needs at least one set')

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def label(self):
        return '(' + ','.join(set_label(s) for s in self.sets) + ')'


def degraded_sequences(matrix, consecutive_only=False):
    """
    All degraded sequences (D_1, ..., D_J) of nonempty acyclic sets.

    With ``consecutive_only`` each D_j only has to be weaker than D_{j-1};
    otherwise it has to be weaker than every earlier set.
    """
    candidates = [s for s in nonempty_subsets() if is_acyclic(matrix, s)]
    found = []

    def extend(prefix):
        found.append(DegradedSequence(tuple(prefix)))
        for nxt in candidates:
            earlier = prefix[-1:] if consecutive_only else prefix
            if all(is_weaker(matrix, nxt, prev) for prev in earlier):
                extend(prefix + [nxt])

    for first in candidates:
        extend([first])
    return found


# --- Decoding rate condition ---------------------------------------------------

def max_uncertainty_rate(matrix, receiver, rates):
    """
    R_i^sum: the largest total rate of messages unknown to ``receiver`` inside
    any acyclic set, i.e. the number of subcodebooks it still has to search.
    """
    rates = tuple(float(r) for r in rates)
    if any(r < 0 for r in rates):
        raise ValueError('Rates must be nonnegative')
    known = matrix.known_messages(receiver)
    return max(
        sum(rates[j - 1] for j in members if j not in known)
        for members in acyclic_family(matrix)
    )


# --- Tightness -------------------------------------------------------------------

@dataclass(frozen=True)
class TightnessVerdict:
    case_id: str
    detail: dict

    @property
    def is_tight(self):
        return self.case_id != OPEN


def tightness_classify(matrix):
    family = set(maximum_complete_sets(matrix))
    if family == {frozenset(RECEIVERS)}:
        return TightnessVerdict(CASE1, {'K_I': [[1, 2, 3]]})
    if family == {frozenset({1}), frozenset({2}), frozenset({3})}:
        return TightnessVerdict(CASE4, {'K_I': [[1], [2], [3]]})

    for k1, k2, k3 in permutations(RECEIVERS):
        pattern2 = {frozenset({k1, k2}), frozenset({k2, k3})}
        if family == pattern2 and k1 < k3:
            detail = {'k1': k1, 'k2': k2, 'k3': k3}
            if matrix.knows(k1, k2) and matrix.knows(k3, k2):
                return TightnessVerdict(CASE2, detail)
            return TightnessVerdict(OPEN, dict(detail, pattern='case2-shape'))
        pattern3 = {frozenset({k1, k2}), frozenset({k3})}
        if family == pattern3 and k1 < k2:
            detail = {'k1': k1, 'k2': k2, 'k3': k3}
            if k3 != 2:
                return TightnessVerdict(CASE3, detail)
            return TightnessVerdict(OPEN, dict(detail, pattern='case3-shape'))
    return TightnessVerdict(OPEN, {'K_I': [sorted(s) for s in family]})


def tightness_census():
    """Number of configurations (out of 64) with a non-open verdict."""
    count = sum(1 for matrix in all_configs() if tightness_classify(matrix).is_tight)
    logger.info(f'Tightness census: {count} of 64 configurations are tight')
    return count
