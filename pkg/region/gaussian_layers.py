"""
Gaussian rate evaluation and the layered dirty-paper transmission plan.

Layer l carries the bundle of messages for the complete set K_l. Its signal
x_l sees lower layers (m < l) as noise and is dirty-paper coded against the
higher layers (m > l), which the encoder generates first.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from sideinfo.config_algebra import RECEIVERS, layer_assignment

logger = logging.getLogger('region')

DIRECT = 'direct'
INTERFERENCE_KNOWN = 'interference_known'
NOT_DECODING = 'not_decoding'

CLAMP_TOLERANCE = 1e-12
SPLIT_TOLERANCE = 1e-12


class InvalidChannel(ValueError):
    pass


class InvalidPowerSplit(ValueError):
    pass


def log_scale(log_base):
    """Natural log of the rate base; accepts 2, '2', 'e' or math.e."""
    if log_base in (2, '2', 2.0):
        return math.log(2.0)
    if log_base in ('e', math.e):
        return 1.0
    raise InvalidChannel(f'Unsupported log base {log_base!r}; use 2 or e')


def base_label(log_base):
    return '2' if log_scale(log_base) != 1.0 else 'e'


def cap(x, log_base=2):
    """C(x) = 1/2 log(1 + x) in the chosen base; works on scalars and arrays."""
    values = np.asarray(x, dtype=float)
    if np.any(values < 0):
        raise ValueError(f'SNR must be nonnegative, got {x!r}')
    rate = 0.5 * np.log1p(values) / log_scale(log_base)
    if rate.ndim == 0:
        return float(rate)
    return rate


@dataclass(frozen=True)
class Channel:
    P: float
    noise: tuple
    log_base: str = '2'

    def __post_init__(self):
        noise = tuple(float(n) for n in self.noise)
        if len(noise) != 3:
            raise InvalidChannel('Exactly three noise variances are required')
        if not 0 < noise[0] < noise[1] < noise[2]:
            raise InvalidChannel(f'Noise variances must satisfy 0 < N1 < N2 < N3, got {noise}')
        if not self.P > 0:
            raise InvalidChannel(f'Transmit power must be positive, got {self.P}')
        object.__setattr__(self, 'P', float(self.P))
        object.__setattr__(self, 'noise', noise)
        object.__setattr__(self, 'log_base', base_label(self.log_base))

    def N(self, receiver):
        return self.noise[receiver - 1]

    def min_noise(self, members):
        return min(self.N(i) for i in members)

    def cap(self, x):
        return cap(x, self.log_base)

    def inverse_cap(self, rate):
        """Smallest SNR whose capacity is ``rate``: b^(2R) - 1."""
        return math.expm1(2.0 * rate * log_scale(self.log_base))


@dataclass(frozen=True)
class PowerSplit:
    parts: tuple

    def __post_init__(self):
        parts = tuple(float(p) for p in self.parts)
        if not parts:
            raise InvalidPowerSplit('A power split needs at least one part')
        if any(p < 0 for p in parts):
            raise InvalidPowerSplit(f'Layer powers must be nonnegative, got {parts}')
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def for_channel(cls, parts, channel, length=None):
        split = cls(tuple(parts))
        split.check(channel, length)
        return split

    def check(self, channel, length=None):
        if length is not None and len(self.parts) != length:
            raise InvalidPowerSplit(f'Expected {length} layer powers, got {len(self.parts)}')
        total = sum(self.parts)
        if abs(total - channel.P) > SPLIT_TOLERANCE * max(1.0, channel.P):
            raise InvalidPowerSplit(f'Layer powers sum to {total}, channel power is {channel.P}')
        return self

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, l):
        """1-based layer power."""
        return self.parts[l - 1]

    def below(self, l):
        """Power of the layers decoded as noise by layer l (indices m < l)."""
        return sum(self.parts[:l - 1])

    def above(self, l):
        """Power of the layers layer l is dirty-paper coded against (indices m > l)."""
        return sum(self.parts[l:])


@dataclass(frozen=True)
class DPCLayer:
    P_x: float
    Q: float
    N_noise: float
    alpha: float = 0.0

    def __post_init__(self):
        if self.P_x < 0 or self.Q < 0:
            raise ValueError('Signal and interference powers must be nonnegative')
        if not self.N_noise > 0:
            raise ValueError(f'Effective noise variance must be positive, got {self.N_noise}')


def dpc_rate(layer, log_base=2):
    """
    I(U;Y) - I(U;S) for U = alpha*S + X, Y = X + S + Z with X, S, Z independent Gaussians.

    With det(U,S) = P*Q the difference reduces to
    1/2 log( P*var(Y) / det(U,Y) ), det(U,Y) = P*Q*(1-alpha)^2 + N*(P + alpha^2*Q).
    """
    P, Q, N, alpha = layer.P_x, layer.Q, layer.N_noise, layer.alpha
    if P == 0:
        return 0.0
    if Q == 0:
        return cap(P / N, log_base)
    det_uy = P * Q * (1.0 - alpha) ** 2 + N * (P + alpha ** 2 * Q)
    rate = 0.5 * math.log(P * (P + Q + N) / det_uy) / log_scale(log_base)
    return max(rate, 0.0)


def dpc_rate_known_interference(layer, log_base=2):
    """I(U;Y|S): the decoder already knows S, so only the noise matters."""
    return cap(layer.P_x / layer.N_noise, log_base)


def optimal_alpha(P_x, noise):
    return P_x / (P_x + noise) if P_x > 0 else 0.0


@dataclass(frozen=True)
class Layer:
    index: int
    targets: frozenset
    power: float
    noise_floor: float
    interference: float
    alpha: float
    intended: int
    modes: dict = field(default_factory=dict)
    auxiliary: frozenset = frozenset()

    def mode(self, receiver):
        return self.modes.get(receiver, NOT_DECODING)

    def decoders(self):
        return frozenset(self.modes)


@dataclass(frozen=True)
class LayerPlan:
    case: int
    layers: tuple
    successive: frozenset

    def layer(self, l):
        for layer in self.layers:
            if layer.index == l:
                return layer
        raise ValueError(f'Plan has no layer {l}')


def transmission_case(matrix):
    """d = a31 + a32 + a21 selects the achievability construction."""
    return int(matrix.knows(3, 1)) + int(matrix.knows(3, 2)) + int(matrix.knows(2, 1))


def successive_decoders(matrix, family):
    """Receivers that decode layers top-down and cancel the renewed interference."""
    d = transmission_case(matrix)
    if d == 2:
        first, second = family.k_family
        return first & second
    if d == 1:
        if matrix.knows(3, 2):
            return frozenset({2, 3})
        return frozenset({1})
    return frozenset()


def build_layer_plan(matrix, channel, split):
    split.check(channel, length=3)
    d = transmission_case(matrix)
    if d == 3:
        # One layer, U = X and S = 0: every receiver decodes directly.
        everyone = frozenset(RECEIVERS)
        layer = Layer(
            index=1, targets=everyone, power=channel.P, noise_floor=0.0, interference=0.0,
            alpha=0.0, intended=1, modes={i: DIRECT for i in RECEIVERS},
        )
        return LayerPlan(case=1, layers=(layer,), successive=frozenset())

    family = layer_assignment(matrix)
    successive = successive_decoders(matrix, family)
    lowest_layer = {
        r: min(l for l in RECEIVERS if r in family.layer_of[l]) for r in successive
    }

    layers = []
    for l in RECEIVERS:
        targets = family.layer_of[l]
        plain = sorted(targets - successive)
        intended = plain[0] if plain else min(targets)
        noise_floor = split.below(l)
        power = split[l]
        alpha = power / (channel.N(intended) + noise_floor + power) if power > 0 else 0.0

        modes = {r: INTERFERENCE_KNOWN if r in successive else DIRECT for r in targets}
        auxiliary = set()
        for r, first in lowest_layer.items():
            if r not in targets and l > first:
                modes[r] = INTERFERENCE_KNOWN
                auxiliary.add(r)
        layers.append(Layer(
            index=l, targets=targets, power=power, noise_floor=noise_floor,
            interference=split.above(l), alpha=alpha, intended=intended,
            modes=modes, auxiliary=frozenset(auxiliary),
        ))
    return LayerPlan(case={2: 2, 1: 3, 0: 4}[d], layers=tuple(layers), successive=successive)


def layer_receiver_rate(plan, l, receiver, channel):
    """The rate receiver ``receiver`` supports on layer ``l`` under ``plan``."""
    layer = plan.layer(l)
    mode = layer.mode(receiver)
    if mode == NOT_DECODING:
        raise ValueError(f'Receiver {receiver} does not decode layer {l}')
    noise = channel.N(receiver) + layer.noise_floor
    if mode == INTERFERENCE_KNOWN:
        return dpc_rate_known_interference(DPCLayer(layer.power, layer.interference, noise, layer.alpha), channel.log_base)
    return dpc_rate(DPCLayer(layer.power, layer.interference, noise, layer.alpha), channel.log_base)


def intended_rate(plan, l, channel):
    """Right-hand side of the per-layer constraint for the receiver alpha_l is tuned to."""
    layer = plan.layer(l)
    return channel.cap(layer.power / (channel.N(layer.intended) + layer.noise_floor))
