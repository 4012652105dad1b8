import random

import pytest

from kacmoody.errors import (
    NegativeImaginaryExponential,
    NonIntegrableLowering,
    NotNegativeNorm,
    NotRealRoot,
    TruncationMismatch,
)
from kacmoody.freelie import MagnusSeries, magnus_commutator, magnus_exp
from kacmoody.groups import (
    ChiReal,
    ExpPos,
    Torus,
    WTilde,
    abelian_embedding,
    bch,
    bch_free,
    commutator_rootspan,
    evaluate_word,
    factorize_ordered,
    group_commutator,
    magnus_embedding,
    root_group_element,
    token_from_json,
    unipotent,
    word_inverse,
)
from kacmoody.liealg import AlgebraElement
from kacmoody.linalg import q
from kacmoody.modules import adjoint_module, verma_module, weight_from_labels
from kacmoody.prosum import exp_operator, is_smear
from kacmoody.verify import (
    check_bch_operator,
    check_braid,
    check_commutator,
    check_factorization,
    check_magnus,
    check_quotient,
    check_smear_words,
    check_torus,
    check_tower,
    check_weyl_conjugation,
    check_weyl_roots,
)

from conftest import A2, AFF, B2, HYP, REFERENCE, algebra


def test_bch_a2_closed_form():
    alg = algebra(A2, 3)
    z = bch(alg, alg.e(1), alg.e(2))
    assert z == alg.e(1) + alg.e(2) + alg.bracket(alg.e(1), alg.e(2)) * q("1/2")


def test_bch_commuting():
    alg = algebra(AFF, 6)
    x = alg.basis_element((1, 1))
    y = alg.basis_element((2, 2))
    assert bch(alg, x, y) == x + y


def test_bch_free_third_order():
    z = bch_free({(1,): q(1)}, {(2,): q(1)}, 3)
    expected = {(1,): 1, (2,): 1, (1, 2): q("1/2"), (2, 1): q("-1/2")}
    # (1/12)([x,[x,y]] - [y,[x,y]])
    for w, c in {(1, 1, 2): 1, (1, 2, 1): -2, (2, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): -2, (2, 2, 1): 1}.items():
        expected[w] = q(c) / 12
    assert z == expected


def test_bch_associative():
    alg = algebra(HYP, 5)
    rng = random.Random(9)
    from kacmoody.liealg import random_element

    x, y, z = (random_element(alg, rng, [1, 2], 0.5) for _ in range(3))
    assert bch(alg, bch(alg, x, y), z) == bch(alg, x, bch(alg, y, z))


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_bch_operator_equality(name):
    assert check_bch_operator(algebra(REFERENCE[name], 5).gcm, 5, random.Random(1), 5) is None


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_tower_and_quotient(name):
    alg = algebra(REFERENCE[name], 6)
    assert check_tower(alg, random.Random(2), 10) is None
    assert check_quotient(alg, random.Random(3), 10) is None


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_factorization(name):
    assert check_factorization(algebra(REFERENCE[name], 6), random.Random(4), 6, operator_samples=2) is None


def test_factorization_a2_example():
    alg = algebra(A2, 4)
    c = q("5/7")
    x12 = alg.bracket(alg.e(1), alg.e(2))
    parts = factorize_ordered(unipotent(alg, alg.e(1) + alg.e(2) + x12 * c))
    assert parts[0] == alg.e(1) + alg.e(2)
    assert parts[1] == x12 * c
    assert not any(parts[2:])


def test_unipotent_product_and_inverse():
    alg = algebra(HYP, 6)
    g = unipotent(alg, alg.e(1))
    h = unipotent(alg, alg.e(2) * 3)
    assert (g * h) * h.inverse() == g
    with pytest.raises(TruncationMismatch):
        g * unipotent(alg, alg.e(2), K=5)


def test_rootspan_examples():
    assert commutator_rootspan(algebra(A2, 4), (1, 0), (0, 1)) == [(1, 1)]
    assert commutator_rootspan(algebra(AFF, 6), (1, 0), (0, 1), 3) == [(1, 1), (1, 2), (2, 1)]
    assert commutator_rootspan(algebra(A2, 4), (1, 0), (1, 1)) == []


def test_trivial_commutator_when_sum_not_root():
    alg = algebra(A2, 4)
    x = alg.e(1)
    y = alg.bracket(alg.e(1), alg.e(2))
    assert group_commutator(alg, x, y) == AlgebraElement()


@pytest.mark.parametrize("rows", [A2, AFF, B2])
def test_commutator_formula(rows):
    assert check_commutator(algebra(rows, 5), (1, 0), (0, 1), random.Random(5)) is None


def test_weyl_lift_maps_root_spaces():
    alg = algebra(A2, 4)
    image = alg.wtilde(1, alg.e(2))
    assert image.roots() == [(1, 1)]


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_weyl_roots(name):
    assert check_weyl_roots(algebra(REFERENCE[name], 6), random.Random(6), 20) is None


@pytest.mark.parametrize("rows", [A2, B2])
def test_braid_and_conjugation(rows):
    gcm = algebra(rows, 2).gcm
    assert check_braid(gcm) is None
    assert check_weyl_conjugation(gcm, random.Random(7), 4) is None


def test_braid_differs_for_non_reduced_word():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    # w_1^2 acts on g_{a2} by -1, so it is not the identity
    assert evaluate_word([WTilde((1, 1))], m) != evaluate_word([], m)


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_torus_relation_and_smear(name):
    m = adjoint_module(algebra(REFERENCE[name], 6))
    assert check_torus(m, random.Random(8), 4) is None
    assert check_smear_words(m, random.Random(9), 4) is None


def test_torus_needs_integral_exponent():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-1, 2))
    with pytest.raises(ValueError):
        evaluate_word([Torus((q("1/2"), 0), 2)], m)


def test_real_root_tokens():
    alg = algebra(HYP, 6)
    m = adjoint_module(alg, (-1, 5))
    with pytest.raises(NotRealRoot):
        evaluate_word([ChiReal((1, 1), 1)], m)
    op = evaluate_word([ChiReal((3, 1), q("1/2"))], m)
    assert is_smear(op)
    assert op == exp_operator(alg.real_root_vector((3, 1)) * q("1/2"), m)


def test_lowering_on_verma_rejected():
    alg = algebra(A2, 4)
    m = verma_module(alg, weight_from_labels(alg.gcm, [1, 1]), 3)
    with pytest.raises(NonIntegrableLowering):
        evaluate_word([ChiReal((-1, 0), 1)], m)


def test_word_inverse_and_json():
    alg = algebra(A2, 4)
    m = adjoint_module(alg, (-2, 2))
    word = [WTilde((1, 2), q(2)), ChiReal((0, 1), q(3)), Torus((1, -1), q(-2)), ExpPos(alg.e(1))]
    assert [token_from_json(t.to_json()) for t in word][:3] == word[:3]
    assert (evaluate_word(word, m) @ evaluate_word(word_inverse(word), m)).is_identity()


def test_negative_imaginary_rejected():
    alg = algebra(HYP, 6)
    with pytest.raises(NegativeImaginaryExponential):
        root_group_element(alg, (-1, -1), {(1,): 1})


def test_negative_real_root_group_allowed():
    alg = algebra(HYP, 6)
    g = root_group_element(alg, (-1, 0), {(1,): 2})
    assert abelian_embedding(g) == {1: 2}


def test_abelian_root_group_affine():
    alg = algebra(AFF, 6)
    g = root_group_element(alg, (1, 1), {(1,): q("1/3")})
    h = root_group_element(alg, (1, 1), {(1,): q("2/3")})
    assert (g * h).coords == {(1,): 1}
    with pytest.raises(NotNegativeNorm):
        magnus_embedding(g)


def test_magnus_single_direction():
    alg = algebra(HYP, 6)
    g = root_group_element(alg, (3, 2), {(1,): q(2)}, kmax=6)
    assert magnus_embedding(g, 6) == magnus_exp(MagnusSeries.letter(1, 2, trunc=6))


def test_magnus_homomorphism():
    alg = algebra(HYP, 6)
    assert check_magnus(alg, (3, 2), random.Random(10), 5) is None


def test_magnus_commutator_image():
    alg = algebra(HYP, 6)
    g = root_group_element(alg, (3, 2), {(1,): 1}, kmax=6)
    h = root_group_element(alg, (3, 2), {(2,): 1}, kmax=6)
    c = g * h * g.inverse() * h.inverse()
    mu = magnus_embedding(c, 6)
    assert mu == magnus_commutator(magnus_embedding(g, 6), magnus_embedding(h, 6))
    assert mu.degree_part(1) == {}
    assert mu.degree_part(2) == {(1, 2): 1, (2, 1): -1}


def test_layer_coordinates_match_algebra():
    alg = algebra(HYP, 10)
    g = root_group_element(alg, (3, 2), {(1,): 1, (1, 2): q("1/2")}, kmax=2)
    x = g.log_in_g()
    assert set(x.roots()) == {(3, 2), (6, 4)}
