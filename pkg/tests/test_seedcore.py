import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gencluster.errors import DimensionError, IncompatibilityError, InputError, NotSkewSymmetrizableError
from gencluster.seedcore import (
    CompatiblePair,
    MutationData,
    as_matrix,
    check_compatible,
    e_matrix,
    f_matrix,
    mutate_exchange_classical,
    mutate_pair,
    principal_lift,
    skew_symmetrizer,
)
from gencluster.verify import random_exchange_matrix

B2 = [[0, 1], [-1, 0]]


def fz_mutate(B, k):
    """Ordinary matrix mutation, written independently of the library."""
    B = [list(map(int, row)) for row in B]
    m, n = len(B), len(B[0])
    k -= 1
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


def generalized_by_scaling(B, r, k):
    # mutating B with multiplicities r is ordinary mutation of B R, columns rescaled
    B = [list(map(int, row)) for row in B]
    BR = [[B[i][j] * r[j] for j in range(len(r))] for i in range(len(B))]
    M = fz_mutate(BR, k)
    return [[M[i][j] // r[j] for j in range(len(r))] for i in range(len(B))]


def test_g2_compatibility():
    assert check_compatible(B2, B2) == (1, 1)


def test_rectangular_compatibility():
    assert check_compatible([[0], [1]], [[0, -1], [1, 0]]) == (1,)


def test_incompatible_pair():
    with pytest.raises(IncompatibilityError):
        check_compatible(B2, [[0, 0], [0, 0]])
    with pytest.raises(IncompatibilityError):
        # off-diagonal entries in Btilde^T Lambda
        check_compatible([[0, 1], [-1, 0], [0, 0]], [[0, 1, 1], [-1, 0, 0], [-1, 0, 0]])
    with pytest.raises(DimensionError):
        check_compatible(B2, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]])


def test_non_skew_lambda():
    with pytest.raises(InputError):
        CompatiblePair(B2, [[0, 1], [1, 0]])


def test_e_matrix_ex1():
    E = e_matrix(B2, (2, 1), 1, 1)
    assert E.tolist() == [[-1, 0], [2, 1]]


def test_f_matrix_ex1():
    F = f_matrix(B2, (2, 1), 1, 1)
    assert F.tolist() == [[-1, 2], [0, 1]]


def test_g2_pair_mutation():
    p = mutate_pair(CompatiblePair(B2, B2), (3, 1), 1, 1)
    assert p.Btilde.tolist() == [[0, -1], [1, 0]]
    assert p.Lambda.tolist() == [[0, -1], [1, 0]]


def test_rank3_entry_formula():
    B = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    r = (2, 1, 1)
    want = generalized_by_scaling(B, r, 2)
    assert want[0][2] == 1 and want[2][0] == -1
    for eps in (1, -1):
        assert mutate_exchange_classical(B, r, 2, eps).tolist() == want


def test_ordinary_case_matches_fz():
    rng = random.Random(5)
    for _ in range(40):
        B = random_exchange_matrix(rng, 3)
        for k in (1, 2, 3):
            assert mutate_exchange_classical(B, (1, 1, 1), k).tolist() == fz_mutate(B, k)


def test_rectangular_mutation_uses_top_rows():
    Bt = [[0, 2], [-1, 0], [1, 0], [0, 1]]
    want = generalized_by_scaling(Bt, (1, 2), 1)
    assert mutate_exchange_classical(Bt, (1, 2), 1).tolist() == want


def test_skew_symmetrizer():
    assert skew_symmetrizer([[0, 1], [-3, 0]]) == (3, 1)
    assert skew_symmetrizer([[0, 2, 0], [-1, 0, 0], [0, 0, 0]]) == (1, 2, 1)
    with pytest.raises(NotSkewSymmetrizableError):
        skew_symmetrizer([[0, 1], [1, 0]])
    with pytest.raises(NotSkewSymmetrizableError):
        # cycle with inconsistent ratios
        skew_symmetrizer([[0, 1, 1], [-1, 0, 1], [-2, -1, 0]])


def test_principal_lift_is_compatible():
    B = [[0, 1], [-3, 0]]
    d = skew_symmetrizer(B)
    pair = principal_lift(B, d)
    assert pair.dinv == d
    BtL = pair.Btilde.T.dot(pair.Lambda)
    assert BtL[:, :2].tolist() == np.diag(d).tolist()
    assert not BtL[:, 2:].any()


def test_mutation_data_validation():
    MutationData([2, 1], h=[[1, "h", 1], [1, 1]])
    with pytest.raises(InputError):
        MutationData([2, 1], h=[[1, "h", "q"], [1, 1]])
    with pytest.raises(InputError):
        MutationData([2], h=[[2, 1, 2]])
    with pytest.raises(DimensionError):
        MutationData([2, 1], h=[[1, 1], [1, 1]])
    with pytest.raises(InputError):
        MutationData([0])


def test_default_z_is_reciprocal():
    md = MutationData([4])
    z = md.z[0]
    assert z[1] == z[3] and z[1] != z[2]


def test_z_from_h():
    md = MutationData([3], h=[[1, "h*q + 2", "h*q + 2", 1]]).with_z_from_h()
    assert str(md.z[0][1]) == "h + 2"
    assert MutationData([2], h=[[1, "q^(1/2) + q^(-1/2)", 1]]).h_positive_at_one() is True
    assert MutationData([2], h=[[1, "q - 1", 1]]).h_positive_at_one() is False
    assert MutationData([2], h=[[1, "h", 1]]).h_positive_at_one() is None


def test_eps_validation():
    with pytest.raises(InputError):
        mutate_exchange_classical(B2, (1, 1), 1, 0)
    with pytest.raises(InputError):
        mutate_exchange_classical(B2, (1, 1), 3)


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_involution_and_sign_independence(seed, n):
    rng = random.Random(seed)
    B = random_exchange_matrix(rng, n)
    r = tuple(rng.randint(1, 3) for _ in range(n))
    pair = principal_lift(B, skew_symmetrizer(B))
    for k in range(1, n + 1):
        once = mutate_pair(pair, r, k, 1)
        assert once == mutate_pair(pair, r, k, -1)
        assert mutate_pair(once, r, k, rng.choice((1, -1))) == pair
        Bk = mutate_exchange_classical(B, r, k, 1)
        assert np.array_equal(Bk, mutate_exchange_classical(B, r, k, -1))
        assert np.array_equal(mutate_exchange_classical(Bk, r, k), as_matrix(B))
        assert Bk.tolist() == generalized_by_scaling(B, r, k)
