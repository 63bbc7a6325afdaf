"""Coset-coding wiretap codes with exact and Monte Carlo equivocation.

A code is a full-rank parity-check matrix h of shape (n - k_coarse) x n whose
syndrome splits into a pinned-zero block (membership in the fine code Bob can
decode) and a message block.  Encoding a message s picks a uniformly random
solution of x @ h.T = [0 || s]; messages therefore index disjoint cosets of
the secrecy subcode (the kernel of h) inside the fine code.

Equivocation H(S|Z)/K against a BSC eavesdropper is computed exactly by
collapsing the 2^n output space onto syndrome classes: the noise distribution
is pushed through the syndrome map coordinate by coordinate, which costs
O((n + k_msg) * 2^(n - k_coarse)) instead of enumerating outputs against
codewords.  The Monte Carlo estimator samples outputs and evaluates the same
posterior by direct enumeration of the fine code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .channels import Bsc
from .gf2 import (
    BitMatrix,
    BitVector,
    kernel_basis,
    mat_vec_mul,
    rank,
    random_full_rank,
    solve_affine,
)
from .gf2 import _rref  # internal elimination shared with the solver cache
from .infometrics import binary_entropy

__all__ = [
    "WiretapCodeParams",
    "CosetCode",
    "EquivocationReport",
    "BlockErrorEstimate",
    "EnumerationBudgetError",
    "params_from_channel",
    "random_coset_code",
    "encode",
    "decode_ml",
    "exact_equivocation",
    "monte_carlo_equivocation",
    "block_error_rate",
    "example1_code",
    "uncoded_code",
    "code_to_text",
    "code_from_text",
]

# Enumeration budgets: exact equivocation walks 2^(n - k_coarse) syndrome
# classes n times; decoding and per-sample posteriors walk 2^k_fine codewords.
MAX_EXACT_N = 24
MAX_ENUM_K_FINE = 20

EQUIVOCATION_CSV_HEADER = "equivocation,rate,error_prob,method,stderr"


class EnumerationBudgetError(RuntimeError):
    """Requested computation exceeds the desk-scale enumeration budget."""


@dataclass(frozen=True)
class WiretapCodeParams:
    """Block length and dimension split of a wiretap code.

    k_fine is the dimension of the Bob-decodable fine code, k_coarse the
    dimension of the secrecy subcode whose cosets carry the k_msg message
    bits, epsilon the rate slack the dimensions were derived with.
    """

    n: int
    k_fine: int
    k_coarse: int
    k_msg: int
    epsilon: float

    def __post_init__(self):
        if not 0 <= self.k_coarse <= self.k_fine <= self.n:
            raise ValueError(
                f"need 0 <= k_coarse <= k_fine <= n, got "
                f"({self.k_coarse}, {self.k_fine}, {self.n})"
            )
        if self.k_msg != self.k_fine - self.k_coarse:
            raise ValueError("k_msg must equal k_fine - k_coarse")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")

    @property
    def rate(self) -> float:
        return self.k_msg / self.n


def params_from_channel(n: int, p: float, p_w: float, epsilon: float) -> WiretapCodeParams:
    """Code dimensions for a BSC(p)/BSC(p_w) pair at slack epsilon.

    k_fine = floor(n(1 - h(p) - 2 eps)) and k_coarse = floor(n(1 - h(p_w) -
    2 eps)), clamped at zero (p_w near 1/2 pushes the formula negative; no
    secrecy subcode redundancy is needed there).  The message dimension is
    k_fine - k_coarse, which keeps the rate at least h(p_w) - h(p) - 3 eps
    for large n.
    """
    if not p < p_w:
        if p == p_w:
            k_fine = math.floor(n * (1.0 - binary_entropy(p) - 2.0 * epsilon))
            if k_fine <= 0:
                raise ValueError("nonpositive fine-code dimension")
            return WiretapCodeParams(n, k_fine, k_fine, 0, epsilon)
        raise ValueError(f"need p <= p_w, got p={p}, p_w={p_w}")
    k_fine = math.floor(n * (1.0 - binary_entropy(p) - 2.0 * epsilon))
    k_coarse = max(0, math.floor(n * (1.0 - binary_entropy(p_w) - 2.0 * epsilon)))
    if k_fine <= 0:
        raise ValueError(
            f"nonpositive fine-code dimension for n={n}, p={p}, eps={epsilon}"
        )
    return WiretapCodeParams(n, k_fine, k_coarse, k_fine - k_coarse, epsilon)


class CosetCode:
    """Parity-check matrix plus syndrome layout; immutable after construction."""

    def __init__(self, h: BitMatrix, zero_len: int, msg_len: int):
        if zero_len < 0 or msg_len < 0:
            raise ValueError("negative syndrome block length")
        if zero_len + msg_len != h.rows:
            raise ValueError(
                f"syndrome layout {zero_len}+{msg_len} != {h.rows} rows"
            )
        if rank(h) != h.rows:
            raise ValueError("parity-check matrix must have full row rank")
        self.h = h
        self.zero_len = zero_len
        self.msg_len = msg_len

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def k_coarse(self) -> int:
        return self.h.cols - self.h.rows

    @property
    def k_fine(self) -> int:
        return self.h.cols - self.zero_len

    @property
    def k_msg(self) -> int:
        return self.msg_len

    @property
    def rate(self) -> float:
        return self.msg_len / self.n

    def syndrome(self, x: BitVector) -> BitVector:
        return mat_vec_mul(self.h, x)

    def syndrome_target(self, s: BitVector) -> BitVector:
        """[0^zero_len || s], the right-hand side the encoder solves for."""
        if s.len != self.msg_len:
            raise ValueError(f"message length {s.len} != {self.msg_len}")
        return BitVector.zeros(self.zero_len).concat(s)

    def __repr__(self):
        return (
            f"CosetCode(n={self.n}, k_fine={self.k_fine}, "
            f"k_coarse={self.k_coarse}, k_msg={self.k_msg})"
        )

    def __eq__(self, other):
        if not isinstance(other, CosetCode):
            return NotImplemented
        return (
            self.h == other.h
            and self.zero_len == other.zero_len
            and self.msg_len == other.msg_len
        )

    def __hash__(self):
        return hash((self.h, self.zero_len, self.msg_len))

    @cached_property
    def _solver(self):
        """Pivots and elimination-record rows for fast particular solutions."""
        n = self.n
        words = [w | (1 << (n + i)) for i, w in enumerate(self.h.row_words)]
        pivots = _rref(words, n)
        e_rows = [w >> n for w in words]
        return pivots, e_rows

    def _particular(self, target_bits: int) -> int:
        pivots, e_rows = self._solver
        x = 0
        for i, pivot in enumerate(pivots):
            if (e_rows[i] & target_bits).bit_count() & 1:
                x |= 1 << pivot
        return x

    @cached_property
    def _subcode_words(self) -> np.ndarray:
        """All 2^k_coarse secrecy-subcode words, index = basis coefficients."""
        arr = np.zeros(1, dtype=np.uint64)
        for vec in kernel_basis(self.h):
            arr = np.concatenate([arr, arr ^ np.uint64(vec.bits)])
        return arr

    @cached_property
    def _coset_leaders(self) -> np.ndarray:
        """Particular solution per message, index = message integer."""
        arr = np.zeros(1, dtype=np.uint64)
        for j in range(self.msg_len):
            gen = self._particular(1 << (self.zero_len + j))
            arr = np.concatenate([arr, arr ^ np.uint64(gen)])
        return arr

    @cached_property
    def _fine_words(self) -> np.ndarray:
        """Fine-code words, flat index = message * 2^k_coarse + coset index."""
        if self.k_fine > MAX_ENUM_K_FINE:
            raise EnumerationBudgetError(
                f"fine-code enumeration needs k_fine <= {MAX_ENUM_K_FINE}, "
                f"got {self.k_fine}"
            )
        flat = self._coset_leaders[:, None] ^ self._subcode_words[None, :]
        return flat.reshape(-1)


def random_coset_code(rng, params: WiretapCodeParams) -> CosetCode:
    """Random full-rank parity-check matrix realizing the given dimensions."""
    h = random_full_rank(rng, params.n - params.k_coarse, params.n)
    return CosetCode(h, params.n - params.k_fine, params.k_msg)


def encode(code: CosetCode, s: BitVector, rng) -> BitVector:
    """Uniformly random codeword of the coset carrying message s."""
    return solve_affine(code.h, code.syndrome_target(s), rng)


def _lex_key(word: int, n: int) -> tuple:
    """Coordinate-order bit tuple, so min() is the lexicographic smallest."""
    return tuple((word >> i) & 1 for i in range(n))


def decode_ml(code: CosetCode, y: BitVector, p: float) -> BitVector:
    """Maximum-likelihood message for a BSC(p) observation y.

    Enumerates the fine code, picks the codeword nearest to y in Hamming
    distance (ML for p < 1/2) and returns the message block of its syndrome;
    ties go to the lexicographically smallest codeword.
    """
    if y.len != code.n:
        raise ValueError(f"received length {y.len} != n = {code.n}")
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"crossover probability out of [0, 1/2]: {p}")
    if code.n > 63:
        raise EnumerationBudgetError("enumeration packing requires n <= 63")
    words = code._fine_words
    dist = np.bitwise_count(words ^ np.uint64(y.bits))
    best = int(dist.min())
    candidates = np.flatnonzero(dist == best)
    idx = min(candidates, key=lambda i: _lex_key(int(words[i]), code.n))
    return BitVector(code.k_msg, int(idx) >> code.k_coarse)


@dataclass(frozen=True)
class EquivocationReport:
    """Normalized equivocation H(S|Z)/K with rate and estimate metadata."""

    equivocation: float
    rate: float
    error_prob: float
    method: str
    stderr: float

    def to_csv_row(self) -> str:
        return (
            f"{self.equivocation:.17g},{self.rate:.17g},{self.error_prob:.17g},"
            f"{self.method},{self.stderr:.17g}"
        )


def _xlog2_sum(values: np.ndarray) -> float:
    nz = values[values > 0]
    return float((nz * np.log2(nz)).sum())


def _syndrome_pushforward(code: CosetCode, p: float) -> np.ndarray:
    """Distribution of the syndrome of Bernoulli(p)^n noise.

    W[u] = sum over noise patterns t with t @ h.T = u of p^wt(t) (1-p)^(n-wt),
    built coordinate by coordinate; W is constant on cosets of the secrecy
    subcode, which is exactly the collapse that makes exact equivocation
    tractable.
    """
    size = 1 << code.h.rows
    columns = code.h.transpose().row_words
    w = np.zeros(size, dtype=float)
    w[0] = 1.0
    indices = np.arange(size, dtype=np.int64)
    q = 1.0 - p
    for col in columns:
        if col == 0:
            continue  # zero column never moves the syndrome
        w = q * w + p * w[indices ^ col]
    return w


def exact_equivocation(code: CosetCode, wiretap: Bsc) -> EquivocationReport:
    """Exact H(S|Z^n)/K for uniform messages and uniform coset choice.

    Z is the codeword through BSC(wiretap.p).  The eavesdropper's posterior
    over messages depends on z only through its syndrome, so the sum over all
    2^n outputs collapses onto 2^(n - k_coarse) syndrome classes.
    """
    if code.n > MAX_EXACT_N or code.k_fine > MAX_ENUM_K_FINE:
        raise EnumerationBudgetError(
            f"exact equivocation budget is n <= {MAX_EXACT_N} and "
            f"k_fine <= {MAX_ENUM_K_FINE}; got n={code.n}, k_fine={code.k_fine}"
        )
    if code.k_msg == 0:
        raise ValueError("code carries no message bits")
    w = _syndrome_pushforward(code, wiretap.p)
    # T[u] = sum over messages s of W[u ^ embed(s)], folded bit by bit.
    t = w
    size = w.shape[0]
    indices = np.arange(size, dtype=np.int64)
    for j in range(code.msg_len):
        t = t + t[indices ^ (1 << (code.zero_len + j))]
    h_s_given_z = _xlog2_sum(t) / (1 << code.k_msg) - _xlog2_sum(w)
    delta = h_s_given_z / code.k_msg
    delta = min(max(delta, 0.0), 1.0)
    return EquivocationReport(
        equivocation=delta,
        rate=code.rate,
        error_prob=math.nan,
        method="exact",
        stderr=0.0,
    )


def _posterior_entropy_bits(code: CosetCode, z_bits: int, p: float) -> float:
    """H(S | Z = z) by enumerating the fine code."""
    words = code._fine_words
    d = np.bitwise_count(words ^ np.uint64(z_bits)).astype(float)
    likelihood = p**d * (1.0 - p) ** (code.n - d)
    per_message = likelihood.reshape(1 << code.k_msg, 1 << code.k_coarse).sum(axis=1)
    total = per_message.sum()
    posterior = per_message / total
    return -_xlog2_sum(posterior)


def monte_carlo_equivocation(
    code: CosetCode, wiretap: Bsc, samples: int, rng, workers: int = 1
) -> EquivocationReport:
    """Estimate H(S|Z)/K by sampling outputs and exact per-sample posteriors.

    Each sample draws (s, coset member, noise), then computes H(S|Z=z) by
    Bayes over all fine-code words.  Work is split into per-worker substreams
    derived from rng, so a fixed (seed, workers) pair reproduces exactly.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if code.k_fine > MAX_ENUM_K_FINE:
        raise EnumerationBudgetError(
            f"per-sample posterior needs k_fine <= {MAX_ENUM_K_FINE}, "
            f"got {code.k_fine}"
        )
    if code.k_msg == 0:
        raise ValueError("code carries no message bits")
    if code.n > 63:
        raise EnumerationBudgetError("enumeration packing requires n <= 63")

    leaders = code._coset_leaders
    subcode = code._subcode_words
    p = wiretap.p
    per_sample = np.empty(samples, dtype=float)
    base = samples // workers
    extra = samples % workers
    pos = 0
    for worker in range(workers):
        count = base + (1 if worker < extra else 0)
        stream = rng.substream(f"worker-{worker}")
        for _ in range(count):
            s = stream.next_bits(code.k_msg)
            x = int(leaders[s]) ^ int(subcode[stream.next_bits(code.k_coarse)])
            noise = 0
            for i in range(code.n):
                noise |= stream.bernoulli(p) << i
            per_sample[pos] = _posterior_entropy_bits(code, x ^ noise, p) / code.k_msg
            pos += 1
    mean = float(per_sample.mean())
    stderr = (
        float(per_sample.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    )
    return EquivocationReport(
        equivocation=mean,
        rate=code.rate,
        error_prob=math.nan,
        method="monte-carlo",
        stderr=stderr,
    )


class BlockErrorEstimate(NamedTuple):
    """Block error point estimate with a two-sided 95% normal interval."""

    estimate: float
    ci_low: float
    ci_high: float


def block_error_rate(code: CosetCode, main: Bsc, trials: int, rng) -> BlockErrorEstimate:
    """Fraction of (random message, ML decode) trials over BSC(main.p) that fail."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    errors = 0
    for _ in range(trials):
        s = BitVector(code.k_msg, rng.next_bits(code.k_msg))
        x = encode(code, s, rng)
        noise = 0
        for i in range(code.n):
            noise |= rng.bernoulli(main.p) << i
        y = BitVector(code.n, x.bits ^ noise)
        if decode_ml(code, y, main.p) != s:
            errors += 1
    estimate = errors / trials
    half = 1.96 * math.sqrt(max(estimate * (1.0 - estimate), 0.0) / trials)
    return BlockErrorEstimate(
        estimate, max(estimate - half, 0.0), min(estimate + half, 1.0)
    )


def example1_code() -> CosetCode:
    """The length-2, rate-1/2 parity code: s=0 maps to {00, 11}, s=1 to {01, 10}."""
    return CosetCode(BitMatrix.from_rows([[1, 1]]), zero_len=0, msg_len=1)


def uncoded_code(n: int = 1) -> CosetCode:
    """Direct transmission of n message bits (identity parity check)."""
    return CosetCode(BitMatrix.identity(n), zero_len=0, msg_len=n)


def code_to_text(code: CosetCode) -> str:
    """Two-line form: 'n,k_fine,k_coarse' header, then h in hex."""
    return f"{code.n},{code.k_fine},{code.k_coarse}\n{code.h.to_hex()}\n"


def code_from_text(text: str) -> CosetCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ValueError("expected a header line and a matrix line")
    n, k_fine, k_coarse = (int(v) for v in lines[0].split(","))
    h = BitMatrix.from_hex(lines[1])
    if h.cols != n or h.rows != n - k_coarse:
        raise ValueError(
            f"matrix shape {h.rows}x{h.cols} inconsistent with header "
            f"n={n}, k_coarse={k_coarse}"
        )
    return CosetCode(h, zero_len=n - k_fine, msg_len=k_fine - k_coarse)
