import random

import pytest

from kacmoody.cartan import validate
from kacmoody.errors import (
    CutoffExceeded,
    DepthExceedsCutoff,
    GradingAxiomFailed,
    NotRestrictedLattice,
    WindowExceeded,
    WindowFloorLoss,
)
from kacmoody.liealg import random_element
from kacmoody.linalg import ONE, q
from kacmoody.modules import (
    ModuleVector,
    adjoint_grading,
    adjoint_module,
    kostant_partition,
    make_grading_function,
    verma_module,
    verma_weight_multiplicity_oracle,
    weight_from_labels,
)

from conftest import A2, AFF, HYP, algebra


def test_grading_constants():
    assert make_grading_function(validate(A2)).a == 1
    assert make_grading_function(validate([[2]])).a == 2
    assert adjoint_grading(validate(HYP)).a == 1


def test_grading_rejects_bad_lattice():
    with pytest.raises(NotRestrictedLattice):
        make_grading_function(validate(A2), lattice=[(2, 0), (0, 2)])


def test_grading_axiom_failure_reported():
    with pytest.raises(GradingAxiomFailed):
        make_grading_function(validate(A2), simple_values=[1, -1], roots=[(1, 0), (0, 1), (1, 1)])


def test_adjoint_window_dims():
    m = adjoint_module(algebra(A2, 4), (-2, 2))
    assert m.dims() == {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}


def test_adjoint_window_must_fit_cutoff():
    with pytest.raises(CutoffExceeded):
        adjoint_module(algebra(A2, 2), (-1, 3))


def test_order_of_vector():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    v = m.vector(alg.f(1) + alg.bracket(alg.e(1), alg.e(2)))
    assert v.order == -1
    assert v.pi(2) == {((1, 1), 0): ONE}


def test_window_errors():
    alg = algebra(AFF, 6)
    m = adjoint_module(alg, (0, 2))
    v = m.vector(alg.e(1))
    with pytest.raises(WindowFloorLoss):
        m.apply(alg.f(1) + alg.f(2), m.vector(alg.h(1)))
    with pytest.raises(WindowExceeded):
        m.apply(alg.basis_element((1, 1)) + alg.e(2), m.vector(alg.basis_element((1, 1))))
    assert m.apply(alg.basis_element((2, 2)), v, truncate=True) == {}


def test_adjoint_module_axiom():
    alg = algebra(HYP, 6)
    m = adjoint_module(alg, (-1, 5))
    rng = random.Random(11)
    for _ in range(10):
        x = random_element(alg, rng, [1])
        y = random_element(alg, rng, [1, 2])
        v = m.vector({k: q(1) for k in rng.sample(m.basis(0) + m.basis(1), 2)})
        lhs = m.apply(x, m.apply(y, v)) - m.apply(y, m.apply(x, v))
        assert lhs == m.apply(alg.bracket(x, y), v)


def test_verma_matches_kostant():
    gcm = validate(HYP)
    alg = algebra(HYP, 5)
    lam = weight_from_labels(gcm, [1, 0])
    m = verma_module(alg, lam, 4)
    for mu, keys in sorted(m.weight_spaces(m.top - 3).items()):
        assert keys
    for beta in [(1, 0), (1, 1), (2, 1), (2, 2)]:
        weight = tuple(a - b for a, b in zip(lam, alg.realization.root_to_weight(beta)))
        count = sum(1 for k in m.keys() if m.weight(k) == weight)
        assert count == verma_weight_multiplicity_oracle(gcm, beta)


def test_verma_sl2_raising():
    alg = algebra([[2]], 3)
    c = 5
    lam = weight_from_labels(alg.gcm, [c])
    m = verma_module(alg, lam, 3)
    f2v = m.basis_vector((((-1,), 0), ((-1,), 0)))
    out = m.apply(alg.e(1), f2v)
    assert out == {(((-1,), 0),): q(2 * c - 2)}


def test_verma_module_axiom():
    alg = algebra(AFF, 4)
    lam = weight_from_labels(alg.gcm, [1, 2])
    m = verma_module(alg, lam, 3)
    rng = random.Random(5)
    for _ in range(6):
        x = random_element(alg, rng, [-1, 1])
        y = random_element(alg, rng, [-1, 1])
        v = m.highest_weight_vector()
        v = m.apply(alg.f(1), v)
        lhs = m.apply(x, m.apply(y, v)) - m.apply(y, m.apply(x, v))
        assert lhs == m.apply(alg.bracket(x, y), v)


def test_verma_depth_limit():
    alg = algebra(A2, 3)
    with pytest.raises(DepthExceedsCutoff):
        verma_module(alg, weight_from_labels(alg.gcm, [1, 1]), 4)


def test_kostant_partition_small():
    assert kostant_partition({(1, 0): 1, (0, 1): 1, (1, 1): 1}, (1, 1)) == 2
    assert kostant_partition({(1, 0): 1, (0, 1): 1, (1, 1): 1}, (2, 2)) == 3


def test_vector_json_is_deterministic():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    v = ModuleVector(m, {((1, 0), 0): q("1/2"), ((0, 0), 1): q(-3)})
    assert m.vector_to_json(v) == m.vector_to_json(ModuleVector(m, dict(reversed(list(v.items())))))
    assert m.vector_to_json(v)["terms"][0]["deg"] == 0
