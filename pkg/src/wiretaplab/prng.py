"""Deterministic seeded bit streams.

A PrngStream expands a seed into an unbounded bit sequence by running
SHA-256 as a keyed compression function in counter mode.  Everything
stochastic in this package draws from such a stream, so any experiment is
reproducible from its seed.  Labels give independent substreams (domain
separation); Bernoulli and Gaussian draws are built on fixed-width integer
draws so results are bit-identical across platforms.
"""

from __future__ import annotations

import hashlib
from statistics import NormalDist

__all__ = ["PrngStream", "prng_stream"]

_MIN_SEED_BYTES = 16
_STD_NORMAL = NormalDist()


class PrngStream:
    """SHA-256 counter-mode bit stream; single-owner, stateful."""

    def __init__(self, key: bytes):
        self._key = key
        self._counter = 0
        self._buffer = 0
        self._buffered = 0

    def _refill(self):
        block = hashlib.sha256(self._key + self._counter.to_bytes(8, "big")).digest()
        self._counter += 1
        self._buffer |= int.from_bytes(block, "little") << self._buffered
        self._buffered += 256

    def next_bits(self, count: int) -> int:
        """The next `count` stream bits packed LSB-first into an int."""
        if count < 0:
            raise ValueError("negative bit count")
        while self._buffered < count:
            self._refill()
        out = self._buffer & ((1 << count) - 1)
        self._buffer >>= count
        self._buffered -= count
        return out

    def bernoulli(self, p: float) -> int:
        """One Bernoulli(p) draw via a 32-bit fixed-point threshold.

        The effective probability is round(p * 2**32) / 2**32, which keeps
        the draw exactly reproducible across platforms.
        """
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p out of range: {p}")
        threshold = round(p * 4294967296.0)
        return 1 if self.next_bits(32) < threshold else 0

    def gaussian(self) -> float:
        """One standard normal draw by inverse CDF on a 53-bit uniform."""
        u = (self.next_bits(53) + 0.5) * 2.0**-53
        return _STD_NORMAL.inv_cdf(u)

    def substream(self, label: str) -> "PrngStream":
        """Independent stream derived from this stream's key and a label.

        Derivation is stateless: it does not consume or depend on stream
        position, so substream layouts are stable.
        """
        key = hashlib.sha256(self._key + b"sub:" + label.encode()).digest()
        return PrngStream(key)


def prng_stream(seed: bytes, label: str = "") -> PrngStream:
    """Stream keyed by (seed, label); seed must be at least 16 bytes."""
    if len(seed) < _MIN_SEED_BYTES:
        raise ValueError(f"seed must be >= {_MIN_SEED_BYTES} bytes, got {len(seed)}")
    key = hashlib.sha256(
        len(seed).to_bytes(8, "big") + seed + label.encode()
    ).digest()
    return PrngStream(key)
