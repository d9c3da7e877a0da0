import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from expander_bounds.analysis import analyze
from expander_bounds.constituent import rs_parity_check
from expander_bounds.ensemble import EnsembleSpec, E1, sample
from expander_bounds.galois import field_of_order
from expander_bounds.matrix import ColumnMap, MatrixGF, apply_column_map, nullspace, rank, rref, vstack
from oracles import OracleField, kernel_bruteforce

GF2, GF4, GF8 = field_of_order(2), field_of_order(4), field_of_order(8)


def random_matrix(field, rows, cols, seed):
    return MatrixGF(field, np.random.default_rng(seed).integers(0, field.q, size=(rows, cols)))


def test_rank_identity_and_zero():
    assert rank(MatrixGF.identity(GF4, 4)) == 4
    assert rank(MatrixGF.zeros(GF4, 3, 5)) == 0


def test_rank_nullity_on_seeded_sample():
    s = sample(EnsembleSpec(E1, GF4, 4, 2, 2, seed=11))
    r = rank(s.H)
    assert r <= 2 * (1 - s.spec.r0) * s.spec.n
    assert r + nullspace(s.H).rows == s.H.cols


def test_nullspace_trivial_cases():
    assert nullspace(MatrixGF.identity(GF4, 5)).rows == 0
    basis = nullspace(MatrixGF.zeros(GF2, 1, 3))
    assert basis.shape == (3, 3)
    assert rank(basis) == 3


def test_nullspace_of_rs_parity_check():
    H0 = rs_parity_check(GF4, 4, 2).H0
    basis = nullspace(H0)
    assert basis.rows == 2
    assert not np.any(H0.syndrome(basis.entries))


@pytest.mark.parametrize("q,rows,cols,seed", [(2, 3, 6, 0), (3, 2, 5, 1), (4, 3, 5, 2), (5, 2, 4, 3), (8, 2, 4, 4)])
def test_nullspace_spans_bruteforce_kernel(q, rows, cols, seed):
    f = field_of_order(q)
    M = random_matrix(f, rows, cols, seed)
    brute = list(kernel_bruteforce(OracleField(f.p, f.m, f.reduction_poly), M.entries.tolist()))
    basis = nullspace(M)
    assert len(brute) == q ** basis.rows
    assert rank(M) + basis.rows == cols
    if basis.rows:
        assert not np.any(M.syndrome(basis.entries))
    # each kernel word is in the row span of the basis
    for w in brute[:50]:
        assert rank(vstack([basis, MatrixGF(f, [w])])) == basis.rows


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 8, 16]), st.integers(1, 6), st.integers(1, 8), st.integers(0, 10**6))
def test_rank_nullity_and_rref_idempotent(q, rows, cols, seed):
    f = field_of_order(q)
    M = random_matrix(f, rows, cols, seed)
    R, piv = rref(M)
    assert len(piv) == rank(M) <= min(rows, cols)
    assert rank(M) + nullspace(M).rows == cols
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    N = nullspace(M)
    if N.rows:
        assert not np.any(M.syndrome(N.entries))
        assert rank(N) == N.rows


def test_apply_identity_map_is_noop():
    M = random_matrix(GF4, 3, 6, 5)
    assert apply_column_map(M, ColumnMap.identity(6)) == M


def test_apply_column_map_semantics():
    M = random_matrix(GF8, 2, 5, 6)
    phi = ColumnMap([3, 0, 4, 1, 2], [1, 2, 3, 4, 5])
    out = apply_column_map(M, phi)
    for j in range(5):
        assert np.array_equal(out.entries[:, j], GF8.mul(M.entries[:, phi.perm[j]], phi.scalars[j]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_column_map_preserves_rank_and_inverse_roundtrips(seed):
    rng = np.random.default_rng(seed)
    M = random_matrix(GF8, 3, 7, seed)
    phi = ColumnMap(rng.permutation(7), rng.integers(1, 8, 7))
    out = apply_column_map(M, phi)
    assert rank(out) == rank(M)
    assert apply_column_map(out, phi.inverse(GF8)) == M
    # kernel words are carried across by map_word
    for v in nullspace(M).entries:
        assert not np.any(out.syndrome(phi.map_word(GF8, v)))


def test_column_map_preserves_weight_enumerator():
    H0 = rs_parity_check(GF4, 4, 2).H0
    rng = np.random.default_rng(9)
    phi = ColumnMap(rng.permutation(4), rng.integers(1, 4, 4))
    before = analyze(H0).enumerator
    after = analyze(apply_column_map(H0, phi)).enumerator
    assert before == after and before.coeffs == (1, 0, 0, 12, 3)


def test_column_map_validation():
    with pytest.raises(ValueError):
        ColumnMap([0, 0, 1], [1, 1, 1])
    with pytest.raises(ValueError):
        ColumnMap([0, 1, 2], [1, 0, 1])
    with pytest.raises(ValueError):
        apply_column_map(MatrixGF.identity(GF4, 3), ColumnMap.identity(4))


def test_matrix_validation_and_text_roundtrip():
    with pytest.raises(ValueError):
        MatrixGF(GF4, [[0, 4]])
    M = random_matrix(GF8, 3, 4, 1)
    assert MatrixGF.from_text(M.to_text()) == M
    assert M.to_text().splitlines()[0] == "8 3 4"
    with pytest.raises(ValueError):
        MatrixGF.from_text("4 2 2\n0 1\n")


def test_matmul_against_oracle():
    A, B = random_matrix(GF4, 2, 3, 1), random_matrix(GF4, 3, 2, 2)
    o = OracleField(2, 2, GF4.reduction_poly)
    C = A.matmul(B)
    for i in range(2):
        for j in range(2):
            s = 0
            for k in range(3):
                s = o.add(s, o.mul(int(A.entries[i, k]), int(B.entries[k, j])))
            assert C.entries[i, j] == s
