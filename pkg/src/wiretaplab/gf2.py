"""Dense GF(2) linear algebra on bit-packed integers.

Vectors and matrices are stored as Python integers, bit i of a row being
coordinate i (LSB-first).  Gauss-Jordan elimination with XOR row operations
covers rank, inversion, kernel bases and affine solving; everything here is
desk-scale, no attempt at asymptotically fast multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "BitVector",
    "BitMatrix",
    "SingularMatrixError",
    "InconsistentSystemError",
    "mat_vec_mul",
    "mat_mul",
    "rank",
    "invert",
    "solve_affine",
    "kernel_basis",
    "random_full_rank",
    "random_invertible",
]


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix with rank below its size."""


class InconsistentSystemError(ValueError):
    """Raised when an affine system x @ h.T = target has no solution."""


@dataclass(frozen=True)
class BitVector:
    """Immutable GF(2) vector: ``len`` bits packed into ``bits`` LSB-first."""

    len: int
    bits: int

    def __post_init__(self):
        if self.len < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError("padding bits beyond len must be zero")

    @classmethod
    def from_bits(cls, seq) -> "BitVector":
        """Build from an iterable of 0/1 values, index 0 first."""
        bits = 0
        n = 0
        for b in seq:
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            bits |= b << n
            n += 1
        return cls(n, bits)

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    def to_bits(self) -> list:
        return [(self.bits >> i) & 1 for i in range(self.len)]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.len:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return BitVector(self.len, self.bits ^ other.bits)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.len + other.len, self.bits | (other.bits << self.len))

    def slice(self, start: int, stop: int) -> "BitVector":
        if not 0 <= start <= stop <= self.len:
            raise ValueError(f"bad slice [{start}:{stop}] of len {self.len}")
        width = stop - start
        return BitVector(width, (self.bits >> start) & ((1 << width) - 1))

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_hex(self) -> str:
        """Serialize as ``len:hex`` with little-endian bytes of the packing."""
        nbytes = (self.len + 7) // 8
        return f"{self.len}:{self.bits.to_bytes(nbytes, 'little').hex()}"

    @classmethod
    def from_hex(cls, text: str) -> "BitVector":
        head, _, hexpart = text.strip().partition(":")
        n = int(head)
        bits = int.from_bytes(bytes.fromhex(hexpart), "little")
        return cls(n, bits)

    def __repr__(self):
        return f"BitVector({''.join(str(b) for b in self.to_bits())})"


@dataclass(frozen=True)
class BitMatrix:
    """Immutable GF(2) matrix: each entry of ``row_words`` packs one row."""

    rows: int
    cols: int
    row_words: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.row_words) != self.rows:
            raise ValueError("row count mismatch")
        for w in self.row_words:
            if w < 0 or w >> self.cols:
                raise ValueError("row padding bits beyond cols must be zero")

    @classmethod
    def from_rows(cls, rows_of_bits) -> "BitMatrix":
        """Build from a list of rows, each an iterable of 0/1 values."""
        words = []
        cols = None
        for r in rows_of_bits:
            v = BitVector.from_bits(r)
            if cols is None:
                cols = v.len
            elif v.len != cols:
                raise ValueError("ragged rows")
            words.append(v.bits)
        if cols is None:
            raise ValueError("need explicit shape for an empty matrix")
        return cls(len(words), cols, tuple(words))

    @classmethod
    def from_row_words(cls, words, cols: int) -> "BitMatrix":
        return cls(len(words), cols, tuple(words))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    def __getitem__(self, rc) -> int:
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        return (self.row_words[r] >> c) & 1

    def row(self, r: int) -> BitVector:
        return BitVector(self.cols, self.row_words[r])

    def transpose(self) -> "BitMatrix":
        words = [0] * self.cols
        for r, w in enumerate(self.row_words):
            while w:
                c = (w & -w).bit_length() - 1
                words[c] |= 1 << r
                w &= w - 1
        return BitMatrix(self.cols, self.rows, tuple(words))

    def to_hex(self) -> str:
        """Serialize as ``rows,cols:hex`` of the row-major packed bits."""
        packed = 0
        for r, w in enumerate(self.row_words):
            packed |= w << (r * self.cols)
        nbytes = (self.rows * self.cols + 7) // 8
        return f"{self.rows},{self.cols}:{packed.to_bytes(nbytes, 'little').hex()}"

    @classmethod
    def from_hex(cls, text: str) -> "BitMatrix":
        head, _, hexpart = text.strip().partition(":")
        rows_s, cols_s = head.split(",")
        rows, cols = int(rows_s), int(cols_s)
        packed = int.from_bytes(bytes.fromhex(hexpart), "little")
        mask = (1 << cols) - 1
        words = tuple((packed >> (r * cols)) & mask for r in range(rows))
        return cls(rows, cols, words)

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"


def mat_vec_mul(m: BitMatrix, v: BitVector) -> BitVector:
    """m @ v over GF(2); result_i = parity(row_i & v)."""
    if v.len != m.cols:
        raise ValueError(f"dimension mismatch: {m.rows}x{m.cols} @ len {v.len}")
    out = 0
    for i, w in enumerate(m.row_words):
        out |= ((w & v.bits).bit_count() & 1) << i
    return BitVector(m.rows, out)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """a @ b over GF(2)."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    bt = b.transpose()
    words = []
    for wa in a.row_words:
        w = 0
        for j, wb in enumerate(bt.row_words):
            w |= ((wa & wb).bit_count() & 1) << j
        words.append(w)
    return BitMatrix(a.rows, b.cols, tuple(words))


def _rref(words, cols):
    """In-place Gauss-Jordan on a list of packed rows.

    Returns the pivot column list; rows end up reduced both below and above
    each pivot, pivot rows first in pivot-column order.
    """
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, len(words)):
            if (words[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        words[r], words[pivot] = words[pivot], words[r]
        for i in range(len(words)):
            if i != r and (words[i] >> c) & 1:
                words[i] ^= words[r]
        pivots.append(c)
        r += 1
        if r == len(words):
            break
    return pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank via elimination."""
    words = list(m.row_words)
    return len(_rref(words, m.cols))


def invert(m: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix; raises SingularMatrixError if rank < n."""
    if m.rows != m.cols:
        raise ValueError(f"not square: {m.rows}x{m.cols}")
    n = m.rows
    # Augment each row with the identity in the high bits.
    words = [w | (1 << (n + i)) for i, w in enumerate(m.row_words)]
    pivots = _rref(words, n)
    if len(pivots) < n:
        raise SingularMatrixError(f"rank {len(pivots)} < {n}")
    return BitMatrix(n, n, tuple(w >> n for w in words))


def _kernel_from_rref(words, pivots, cols):
    """Kernel basis vectors from a reduced system (one per free column)."""
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, p in enumerate(pivots):
            if (words[i] >> free) & 1:
                v |= 1 << p
        basis.append(BitVector(cols, v))
    return basis


def kernel_basis(h: BitMatrix) -> list:
    """Basis of {x : x @ h.T = 0}; size cols - rank(h)."""
    words = list(h.row_words)
    pivots = _rref(words, h.cols)
    return _kernel_from_rref(words, pivots, h.cols)


def solve_affine(h: BitMatrix, target: BitVector, rng) -> BitVector:
    """A uniformly random solution x of x @ h.T = target.

    The particular solution (free variables pinned to 0) is XORed with an
    rng-chosen combination of kernel basis vectors, so the draw is uniform
    over the full solution coset and reproducible given the stream.
    Raises InconsistentSystemError when no solution exists.
    """
    if target.len != h.rows:
        raise ValueError(f"dimension mismatch: target len {target.len}, {h.rows} rows")
    n = h.cols
    # Augmented column holds the target bit per row.
    words = [w | (((target.bits >> i) & 1) << n) for i, w in enumerate(h.row_words)]
    pivots = _rref(words, n)
    for i in range(len(pivots), h.rows):
        if words[i] >> n:
            raise InconsistentSystemError("target not in the row space of h")
    x = 0
    for i, p in enumerate(pivots):
        if (words[i] >> n) & 1:
            x |= 1 << p
    basis = _kernel_from_rref(words, pivots, n)
    if basis:
        coeffs = rng.next_bits(len(basis))
        for j, kv in enumerate(basis):
            if (coeffs >> j) & 1:
                x ^= kv.bits
    return BitVector(n, x)


def random_full_rank(rng, rows: int, cols: int) -> BitMatrix:
    """Uniform full-row-rank matrix by rejection sampling."""
    if rows > cols:
        raise ValueError(f"rows {rows} > cols {cols}")
    while True:
        m = BitMatrix(rows, cols, tuple(rng.next_bits(cols) for _ in range(rows)))
        if rank(m) == rows:
            return m


def random_invertible(rng, n: int) -> BitMatrix:
    """Uniform invertible n x n matrix by rejection sampling."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return random_full_rank(rng, n, n)
