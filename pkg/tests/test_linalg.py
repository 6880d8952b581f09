from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from richlines.linalg import Matrix, bareiss_rank, rref_rank, right_nullspace
from richlines.scalars import GaussianRational

F = Fraction


def test_rank_identity():
    assert Matrix.identity(3).rank() == 3


def test_rank_proportional_rows():
    assert Matrix([[F(1), F(2)], [F(2), F(4)]]).rank() == 1


def test_rank_empty():
    assert Matrix([]).rank() == 0
    assert bareiss_rank([]) == 0


def test_rank_veronese_collinear():
    # degree-2 monomial images of 4 collinear points drop exactly one rank
    from richlines.pointsets import pointset_from
    from richlines.veronese import veronese_matrix

    ps = pointset_from([(F(t), F(2 * t)) for t in range(4)])
    assert veronese_matrix(ps, 2).rank() == 3


def test_nullspace_single_equation():
    assert Matrix([[F(1), F(1)]]).right_nullspace() == [(F(1), F(-1))]


def test_nullspace_identity_empty():
    assert Matrix.identity(4).right_nullspace() == []


def test_left_nullspace_third_difference():
    # rows (1, t, t^2) for t = 0..3: the dependency is the third difference
    M = Matrix([[F(1), F(t), F(t * t)] for t in range(4)])
    kernel = M.left_nullspace()
    assert kernel == [(F(1), F(-3), F(3), F(-1))]


def test_nullspace_vectors_are_normalized_and_annihilated():
    M = Matrix([[F(1), F(2), F(3)], [F(2), F(4), F(6)]])
    basis = M.right_nullspace()
    assert len(basis) == 2
    for v in basis:
        first = next(c for c in v if c != 0)
        assert first == 1
        assert all(x == 0 for x in M.matvec(v))


small_entries = st.integers(min_value=-6, max_value=6)


@settings(max_examples=120, deadline=None)
@given(
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=6),
    st.data(),
)
def test_bareiss_agrees_with_rref(m, n, data):
    rows = [
        [F(data.draw(small_entries)) for _ in range(n)] for _ in range(m)
    ]
    assert bareiss_rank(rows) == rref_rank(rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.data())
def test_bareiss_gaussian_agrees_with_rref(n, data):
    rows = [
        [
            GaussianRational(F(data.draw(small_entries)), F(data.draw(small_entries)))
            for _ in range(n)
        ]
        for _ in range(n)
    ]
    assert bareiss_rank(rows) == rref_rank(rows)


def test_rank_equals_transpose_rank():
    rng = Random(3)
    for _ in range(25):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = Matrix([[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(m)])
        assert M.rank() == M.transpose().rank()


def test_rank_invariant_under_permutation_and_scaling():
    rng = Random(7)
    for _ in range(25):
        m, n = rng.randint(2, 6), rng.randint(2, 6)
        rows = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
        base = bareiss_rank(rows)
        perm = rows[:]
        rng.shuffle(perm)
        scaled = [
            [F(rng.choice([1, 2, 3, -1, -2])) * x for x in row] for row in perm
        ]
        assert bareiss_rank(scaled) == base


def test_rank_plus_kernel_dimension():
    rng = Random(11)
    for _ in range(20):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = Matrix([[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)])
        assert M.rank() + len(M.right_nullspace()) == n
        assert M.rank() + len(M.left_nullspace()) == m


def test_matmul_and_matvec():
    A = Matrix([[F(1), F(2)], [F(0), F(1)]])
    B = Matrix([[F(1), F(0)], [F(3), F(1)]])
    assert A.matmul(B).row_list() == [[F(7), F(2)], [F(3), F(1)]]
    assert A.matvec((F(1), F(1))) == (F(3), F(1))
    with pytest.raises(ValueError):
        A.matvec((F(1),))


def test_nullspace_of_empty_row_list():
    basis = right_nullspace([], 3)
    assert len(basis) == 3
    assert basis[0] == (F(1), F(0), F(0))


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        Matrix([[F(1)], [F(1), F(2)]])
