import random

import pytest

from kacmoody.errors import NotSmear, WrongDegree
from kacmoody.liealg import AlgebraElement
from kacmoody.linalg import ONE, q
from kacmoody.modules import adjoint_module
from kacmoody.prosum import (
    ShiftOperator,
    WindowOperator,
    exp_apply,
    exp_operator,
    is_smear,
    ordered_product_apply,
    reconstruct,
    smear_decompose,
)
from kacmoody.verify import (
    check_exp_reference,
    check_ordered_product,
    check_smear_decomposition,
    check_stabilization,
)

from conftest import A2, AFF, B2, HYP, algebra


@pytest.fixture(params=[A2, B2, AFF, HYP], ids=["A2", "B2", "A1^(1)", "H(3)"])
def module(request):
    return adjoint_module(algebra(request.param, 6))


def test_exp_series_matches_reference(module):
    assert check_exp_reference(module, random.Random(1), 8) is None


def test_stabilization(module):
    assert check_stabilization(module, random.Random(2), 8) is None


def test_smear_decomposition(module):
    assert check_smear_decomposition(module, random.Random(3), 4) is None


def test_ordered_product(module):
    assert check_ordered_product(module, random.Random(4), 4) is None


def test_sl2_exponential_terminates():
    alg = algebra([[2]], 2)
    m = adjoint_module(alg, (-1, 2))
    out = exp_apply(alg.e(1), m.vector(alg.f(1)), m)
    assert dict(out) == dict(alg.f(1) + alg.coroot(1) - alg.e(1))


def test_negative_elements_rejected():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    with pytest.raises(ValueError):
        exp_apply(alg.f(1), m.vector(alg.e(1)), m)


def test_wrong_degree_factor():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    with pytest.raises(WrongDegree):
        ordered_product_apply({2: alg.e(1)}, m.vector(alg.f(1)), m)


def test_not_smear():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    op = WindowOperator.identity(m).scale(2)
    assert not is_smear(op)
    with pytest.raises(NotSmear):
        smear_decompose(op)


def test_shift_operator_pattern_checked():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    with pytest.raises(ValueError):
        ShiftOperator(m, 1, {((1, 0), 0): {((1, 0), 0): ONE}})


def test_operator_composition_is_exponential_law():
    alg = algebra(HYP, 6)
    m = adjoint_module(alg)
    x = alg.e(1) * q("2/3")
    assert exp_operator(x, m) @ exp_operator(x, m) == exp_operator(x * 2, m)
    assert (exp_operator(x, m) @ exp_operator(-x, m)).is_identity()


def test_shift_blocks_in_json():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    shifts = smear_decompose(exp_operator(alg.e(1) + alg.e(2), m))
    assert reconstruct(shifts, m) == exp_operator(alg.e(1) + alg.e(2), m)
    data = shifts[0].to_json()
    assert data["shift"] == 1
    assert all(b["to"] == b["from"] + 1 for b in data["blocks"])
    assert "e1" in {c for b in data["blocks"] for c in b["rows"]}
