"""Split AWGN wiretap channel model and its induced binary channels.

Antipodal signaling on {-1,+1} (bit 0 -> -1, bit 1 -> +1) through main-channel
noise of variance sigma_m_sq; the eavesdropper sees the main-channel output
plus independent noise of variance sigma_w_sq.  Two-level quantization turns
each leg into a BSC with crossover Phi(-1/sigma); finer A/D front ends are
modeled by Quantizer partitions of the real line.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .gf2 import BitVector

__all__ = [
    "AwgnSplitChannel",
    "Bsc",
    "Quantizer",
    "crossover_probabilities",
    "bsc_concatenate",
    "degrading_channel",
    "transmit",
    "bsc_transmit",
    "quantize",
    "uniform_quantizer",
    "default_half_range",
    "normal_cdf",
]


def normal_cdf(x: float) -> float:
    """Standard normal CDF."""
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


@dataclass(frozen=True)
class AwgnSplitChannel:
    """Main-channel noise variance and additional wiretap noise variance.

    Secrecy needs both variances positive; zero is accepted so degenerate
    noiseless setups remain testable.
    """

    sigma_m_sq: float
    sigma_w_sq: float

    def __post_init__(self):
        if self.sigma_m_sq < 0:
            raise ValueError("sigma_m_sq must be >= 0")
        if self.sigma_w_sq < 0:
            raise ValueError("sigma_w_sq must be >= 0")


@dataclass(frozen=True)
class Bsc:
    """Binary symmetric channel with crossover probability p <= 1/2."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 0.5:
            raise ValueError(f"crossover probability out of [0, 1/2]: {self.p}")


@dataclass(frozen=True)
class Quantizer:
    """L-level A/D converter given by L-1 strictly ascending thresholds.

    Cell i is (t_{i-1}, t_i] with unbounded extremes; a value exactly on a
    threshold belongs to the lower-indexed cell.
    """

    thresholds: tuple

    def __post_init__(self):
        if len(self.thresholds) < 1:
            raise ValueError("need at least one threshold (L >= 2)")
        for a, b in zip(self.thresholds, self.thresholds[1:]):
            if not a < b:
                raise ValueError("thresholds must be strictly ascending")

    @property
    def levels(self) -> int:
        return len(self.thresholds) + 1


def crossover_probabilities(ch: AwgnSplitChannel) -> tuple:
    """(p, p_w): sign-quantized crossover of the main and wiretap legs.

    p = Phi(-1/sqrt(sigma_m_sq)); p_w uses the total variance
    sigma_m_sq + sigma_w_sq seen by the eavesdropper.  Zero variance gives
    the noiseless limit Phi(-inf) = 0.
    """

    def crossover(variance: float) -> float:
        if variance == 0.0:
            return 0.0
        return normal_cdf(-1.0 / math.sqrt(variance))

    return crossover(ch.sigma_m_sq), crossover(ch.sigma_m_sq + ch.sigma_w_sq)


def bsc_concatenate(p: float, p_y: float) -> float:
    """Crossover of BSC(p) followed by BSC(p_y): p(1-p_y) + (1-p)p_y."""
    for value in (p, p_y):
        if not 0.0 <= value <= 0.5:
            raise ValueError(f"crossover probability out of [0, 1/2]: {value}")
    return p * (1.0 - p_y) + (1.0 - p) * p_y


def degrading_channel(p: float, p_w: float) -> Bsc:
    """The BSC(p_y) whose concatenation after BSC(p) gives BSC(p_w).

    Closed form p_y = (p_w - p) / (1 - 2p); requires p <= p_w < 1/2 (the
    wiretap leg must be the degraded one).
    """
    if not 0.0 <= p <= 0.5 or not 0.0 <= p_w < 0.5:
        raise ValueError("crossover probabilities out of range")
    if p > p_w:
        raise ValueError(f"not degraded: p={p} > p_w={p_w}")
    if p == p_w:
        return Bsc(0.0)
    return Bsc((p_w - p) / (1.0 - 2.0 * p))


def transmit(ch: AwgnSplitChannel, x: BitVector, rng) -> tuple:
    """Send x through the split channel; returns analog (y, w) sample lists.

    y_i = symbol(x_i) + N(0, sigma_m_sq) and w_i = y_i + N(0, sigma_w_sq),
    all noise i.i.d. from rng.
    """
    sd_m = math.sqrt(ch.sigma_m_sq)
    sd_w = math.sqrt(ch.sigma_w_sq)
    y = []
    w = []
    for i in range(x.len):
        symbol = 1.0 if x[i] else -1.0
        yi = symbol + sd_m * rng.gaussian()
        y.append(yi)
        w.append(yi + sd_w * rng.gaussian())
    return y, w


def bsc_transmit(bsc: Bsc, x: BitVector, rng) -> BitVector:
    """Flip each bit of x independently with probability bsc.p."""
    flips = 0
    for i in range(x.len):
        flips |= rng.bernoulli(bsc.p) << i
    return BitVector(x.len, x.bits ^ flips)


def quantize(q: Quantizer, w: float) -> int:
    """Index of the quantizer cell containing w."""
    return bisect_left(q.thresholds, w)


def uniform_quantizer(levels: int, half_range: float) -> Quantizer:
    """L-1 thresholds evenly spaced over [-half_range, +half_range].

    The endpoints themselves are thresholds when L > 2; L = 2 degenerates to
    the single sign threshold at 0.
    """
    if levels < 2:
        raise ValueError("levels must be >= 2")
    if half_range <= 0:
        raise ValueError("half_range must be > 0")
    if levels == 2:
        return Quantizer((0.0,))
    n_thresh = levels - 1
    step = 2.0 * half_range / (n_thresh - 1)
    return Quantizer(tuple(-half_range + i * step for i in range(n_thresh)))


def default_half_range(sigma_tot_sq: float) -> float:
    """Quantizer span covering >= 6 standard deviations past both symbols."""
    return 1.0 + 6.0 * math.sqrt(sigma_tot_sq)
