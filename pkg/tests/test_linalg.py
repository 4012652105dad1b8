from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kacmoody.linalg import Echelon, det, inverse, matmul, nullspace, q, qstr, rank, solve, vadd

small = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_qstr_is_canonical():
    assert qstr(q("6/4")) == "3/2"
    assert qstr(q(-4)) == "-4"
    assert qstr(q(Fraction(0, 5))) == "0"


def test_vadd_drops_cancelled_entries():
    acc = {"a": q(1), "b": q(2)}
    vadd(acc, {"a": q(1)}, -1)
    assert acc == {"b": q(2)}


@given(square(3))
def test_det_of_product(m):
    n = [[1, 2, 0], [0, 1, -1], [3, 0, 1]]
    assert det(matmul([[q(x) for x in r] for r in m], [[q(x) for x in r] for r in n])) == det(m) * det(n)


@given(square(3), st.lists(small, min_size=3, max_size=3))
def test_solve_roundtrip(m, b):
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            solve(m, b)
        return
    x = solve(m, b)
    assert [sum(q(a) * xi for a, xi in zip(row, x)) for row in m] == [q(v) for v in b]


@given(square(3))
def test_inverse(m):
    if det(m) == 0:
        return
    ident = matmul([[q(x) for x in r] for r in m], inverse(m))
    assert ident == [[q(i == j) for j in range(3)] for i in range(3)]


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_rank_nullity(m):
    kernel = nullspace(m)
    assert rank(m) + len(kernel) == 4
    for v in kernel:
        assert all(sum(q(a) * x for a, x in zip(row, v)) == 0 for row in m)


def test_echelon_coordinates():
    ech = Echelon()
    assert ech.add({1: q(1), 2: q(1)}, {"u": q(1)})
    assert ech.add({2: q(1)}, {"v": q(1)})
    assert not ech.add({1: q(2), 2: q(5)})
    assert ech.coordinates({1: q(2), 2: q(5)}) == {"u": q(2), "v": q(3)}
    with pytest.raises(ValueError):
        ech.coordinates({3: q(1)})
