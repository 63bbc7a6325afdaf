import pytest

from wiretaplab.gf2 import (
    BitMatrix,
    BitVector,
    InconsistentSystemError,
    SingularMatrixError,
    invert,
    kernel_basis,
    mat_mul,
    mat_vec_mul,
    random_full_rank,
    random_invertible,
    rank,
    solve_affine,
)
from wiretaplab.prng import prng_stream


def _rng(label):
    return prng_stream(b"gf2-test-seed-0123", label)


# Standard [7,4] Hamming parity check; column j is the binary expansion of j+1.
HAMMING_H = BitMatrix.from_rows(
    [
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]
)


def test_mat_vec_mul_identity():
    v = BitVector.from_bits([1, 0, 1])
    assert mat_vec_mul(BitMatrix.identity(3), v) == v


def test_mat_vec_mul_zero_matrix():
    out = mat_vec_mul(BitMatrix.zeros(2, 3), BitVector.from_bits([1, 1, 1]))
    assert out == BitVector.zeros(2)


def test_mat_vec_mul_hand_computed():
    m = BitMatrix.from_rows([[1, 1], [0, 1]])
    out = mat_vec_mul(m, BitVector.from_bits([1, 1]))
    assert out.to_bits() == [0, 1]


def test_mat_vec_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_vec_mul(BitMatrix.identity(3), BitVector.from_bits([1, 0]))


def test_rank_identity():
    assert rank(BitMatrix.identity(4)) == 4


def test_rank_zero():
    assert rank(BitMatrix.zeros(3, 3)) == 0


def test_rank_duplicate_rows():
    assert rank(BitMatrix.from_rows([[1, 1], [1, 1]])) == 1


def test_invert_identity():
    assert invert(BitMatrix.identity(5)) == BitMatrix.identity(5)


def test_invert_self_inverse():
    m = BitMatrix.from_rows([[1, 1], [0, 1]])
    assert invert(m) == m


def test_invert_singular():
    with pytest.raises(SingularMatrixError):
        invert(BitMatrix.from_rows([[1, 1], [1, 1]]))


def test_invert_not_square():
    with pytest.raises(ValueError):
        invert(BitMatrix.zeros(2, 3))


def test_invert_succeeds_iff_full_rank():
    rng = _rng("invert-iff")
    for _ in range(200):
        m = BitMatrix.from_row_words(
            [rng.next_bits(5) for _ in range(5)], 5
        )
        if rank(m) == 5:
            assert mat_mul(invert(m), m) == BitMatrix.identity(5)
        else:
            with pytest.raises(SingularMatrixError):
                invert(m)


def test_solve_affine_unique_solution():
    target = BitVector.from_bits([1, 0, 1])
    x = solve_affine(BitMatrix.identity(3), target, _rng("unique"))
    assert x == target


def test_solve_affine_inconsistent():
    with pytest.raises(InconsistentSystemError):
        solve_affine(BitMatrix.zeros(1, 3), BitVector.from_bits([1]), _rng("bad"))


def test_solve_affine_hamming_codeword():
    rng = _rng("hamming")
    for _ in range(50):
        x = solve_affine(HAMMING_H, BitVector.zeros(3), rng)
        assert mat_vec_mul(HAMMING_H, x) == BitVector.zeros(3)


def test_solve_affine_postcondition_random_systems():
    rng = _rng("post")
    for _ in range(200):
        rows = 1 + rng.next_bits(2)
        cols = rows + rng.next_bits(2)
        h = BitMatrix.from_row_words([rng.next_bits(cols) for _ in range(rows)], cols)
        target = BitVector(rows, rng.next_bits(rows))
        try:
            x = solve_affine(h, target, rng)
        except InconsistentSystemError:
            assert rank(h) < rows
            continue
        assert mat_vec_mul(h, x) == target


def test_solve_affine_uniform_over_solution_set():
    # Hamming kernel has 16 members; 10^4 draws, each count within 5 sigma.
    rng = _rng("uniform")
    draws = 10_000
    counts = {}
    for _ in range(draws):
        x = solve_affine(HAMMING_H, BitVector.zeros(3), rng)
        counts[x.bits] = counts.get(x.bits, 0) + 1
    assert len(counts) == 16
    expected = draws / 16
    sigma = (draws * (1 / 16) * (15 / 16)) ** 0.5
    for count in counts.values():
        assert abs(count - expected) <= 5 * sigma


def test_kernel_basis_identity_empty():
    assert kernel_basis(BitMatrix.identity(3)) == []


def test_kernel_basis_zero_row():
    assert len(kernel_basis(BitMatrix.zeros(1, 3))) == 3


def test_kernel_basis_hamming():
    basis = kernel_basis(HAMMING_H)
    assert len(basis) == 4
    for v in basis:
        assert mat_vec_mul(HAMMING_H, v) == BitVector.zeros(3)
    stacked = BitMatrix.from_row_words([v.bits for v in basis], 7)
    assert rank(stacked) == 4  # independent, spans the kernel


def test_random_full_rank_one_by_one():
    m = random_full_rank(_rng("1x1"), 1, 1)
    assert m == BitMatrix.from_rows([[1]])


def test_random_full_rank_shape_and_rank():
    m = random_full_rank(_rng("3x7"), 3, 7)
    assert (m.rows, m.cols) == (3, 7)
    assert rank(m) == 3


def test_random_full_rank_always_full_rank():
    rng = _rng("bulk")
    for _ in range(1000):
        assert rank(random_full_rank(rng, 4, 8)) == 4


def test_random_full_rank_rejects_tall():
    with pytest.raises(ValueError):
        random_full_rank(_rng("tall"), 3, 2)


def test_random_invertible_one():
    assert random_invertible(_rng("inv1"), 1) == BitMatrix.from_rows([[1]])


def test_random_invertible_inverts():
    m = random_invertible(_rng("inv8"), 8)
    assert mat_mul(m, invert(m)) == BitMatrix.identity(8)


def test_random_invertible_many_seeds():
    for i in range(100):
        rng = prng_stream(b"gf2-invertible-00", f"seed-{i}")
        m = random_invertible(rng, 6)
        assert mat_mul(m, invert(m)) == BitMatrix.identity(6)


def test_mat_mul_associates_with_mat_vec_mul():
    rng = _rng("assoc")
    for _ in range(100):
        a = BitMatrix.from_row_words([rng.next_bits(4) for _ in range(3)], 4)
        b = BitMatrix.from_row_words([rng.next_bits(5) for _ in range(4)], 5)
        v = BitVector(5, rng.next_bits(5))
        assert mat_vec_mul(mat_mul(a, b), v) == mat_vec_mul(a, mat_vec_mul(b, v))


def test_transpose_involution_and_entries():
    rng = _rng("transpose")
    m = BitMatrix.from_row_words([rng.next_bits(5) for _ in range(3)], 5)
    t = m.transpose()
    assert t.transpose() == m
    for r in range(3):
        for c in range(5):
            assert m[r, c] == t[c, r]


def test_bitvector_packing_and_hex():
    v = BitVector.from_bits([1, 1, 0, 1])
    assert v.bits == 0b1011  # index 0 is the least significant bit
    assert v.to_hex() == "4:0b"
    assert BitVector.from_hex("4:0b") == v


def test_bitvector_hex_roundtrip_lengths():
    rng = _rng("vec-hex")
    for n in (0, 1, 7, 8, 9, 63, 64, 65):
        v = BitVector(n, rng.next_bits(n))
        assert BitVector.from_hex(v.to_hex()) == v


def test_bitmatrix_hex_row_major():
    m = BitMatrix.from_rows([[1, 0], [1, 1]])
    # Row-major packed bits 1,0,1,1 -> 0b1101 = 0x0d.
    assert m.to_hex() == "2,2:0d"
    assert BitMatrix.from_hex("2,2:0d") == m


def test_bitmatrix_hex_roundtrip():
    rng = _rng("mat-hex")
    for rows, cols in ((1, 1), (3, 7), (5, 5), (2, 13)):
        m = BitMatrix.from_row_words([rng.next_bits(cols) for _ in range(rows)], cols)
        assert BitMatrix.from_hex(m.to_hex()) == m


def test_bitvector_rejects_padding():
    with pytest.raises(ValueError):
        BitVector(2, 0b100)


def test_bitvector_concat_slice():
    a = BitVector.from_bits([1, 0])
    b = BitVector.from_bits([1, 1, 0])
    c = a.concat(b)
    assert c.to_bits() == [1, 0, 1, 1, 0]
    assert c.slice(0, 2) == a
    assert c.slice(2, 5) == b
