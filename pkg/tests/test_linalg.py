from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigvar.linalg import (
    det,
    hermite_rows,
    int_det,
    integer_kernel,
    lattice_index,
    nullspace,
    rank,
    row_echelon,
    solve,
)

small = st.integers(-6, 6)


def int_matrix(nrows, ncols):
    return st.lists(st.lists(small, min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows)


@given(st.integers(1, 5).flatmap(lambda n: int_matrix(n, n)))
def test_det_matches_numpy(m):
    assert det(m) == int_det(m)
    assert abs(float(det(m)) - np.linalg.det(np.array(m, dtype=float))) < 1e-6 * max(1.0, abs(float(det(m))))


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: int_matrix(r, c))))
def test_rank_matches_numpy(m):
    assert rank(m) == np.linalg.matrix_rank(np.array(m, dtype=float))
    assert len(row_echelon(m)[1]) == rank(m)


@given(st.integers(1, 4).flatmap(lambda r: int_matrix(r, 5)))
def test_nullspace_is_kernel(m):
    basis = nullspace(m, 5)
    assert len(basis) == 5 - rank(m)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.integers(1, 4).flatmap(lambda r: int_matrix(r, 5)))
def test_integer_kernel_is_saturated(m):
    basis = integer_kernel(m, 5)
    assert len(basis) == 5 - rank(m)
    for v in basis:
        assert all(isinstance(x, int) for x in v)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if basis:
        # saturated in Z^5 iff the maximal minors are coprime
        k = len(basis)
        minors = [int_det([[v[c] for c in cols] for v in basis]) for cols in combinations(range(5), k)]
        assert reduce(gcd, minors) == 1


def test_solve_consistent_and_not():
    assert solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_lattice_index_of_diagonal():
    assert lattice_index([[2, 0], [0, 3]]) == 6
    assert lattice_index([[1, 1], [1, -1]]) == 2


def test_hermite_drops_dependent_rows():
    h = hermite_rows([[2, 4], [1, 2], [3, 6]])
    assert h == [[1, 2]]


def test_det_of_non_square_rejected():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])
