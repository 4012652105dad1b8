import pytest
from hypothesis import given
from hypothesis import strategies as st

from kacmoody.cartan import validate
from kacmoody.errors import NotRealRoot
from kacmoody.weyl import (
    act,
    braid_word,
    check_coroot,
    coroot,
    height,
    length,
    real_roots_up_to,
    reduce_word,
    reflect_root,
)

from conftest import A2, AFF, B2, HYP


def test_a2_has_three_positive_roots():
    roots = real_roots_up_to(validate(A2), 10)
    assert sorted(roots) == [(0, 1), (1, 0), (1, 1)]


def test_b2_roots():
    roots = real_roots_up_to(validate(B2), 10)
    assert sorted(roots) == [(0, 1), (1, 0), (1, 1), (1, 2)]


def test_witness_reconstructs_root():
    gcm = validate(HYP)
    for root, (word, i) in real_roots_up_to(gcm, 12).items():
        simple = tuple(int(k == i - 1) for k in range(2))
        assert act(gcm, word, simple) == root


def test_reflection_is_involution():
    gcm = validate(AFF)
    for x in [(1, 0), (3, 2), (5, 5)]:
        for i in (1, 2):
            assert reflect_root(gcm, i, reflect_root(gcm, i, x)) == x


@pytest.mark.parametrize("rows, m", [(A2, 3), (B2, 4)])
def test_longest_element(rows, m):
    gcm = validate(rows)
    w1, w2 = braid_word(1, 2, m), braid_word(2, 1, m)
    assert length(gcm, w1) == m
    assert reduce_word(gcm, w1 + w2) == ()


@given(st.lists(st.sampled_from([1, 2]), max_size=10))
def test_reduce_word_preserves_action(word):
    gcm = validate(HYP)
    red = reduce_word(gcm, tuple(word))
    assert len(red) <= len(word)
    for x in [(1, 0), (0, 1)]:
        assert act(gcm, tuple(word), x) == act(gcm, red, x)


def test_affine_words_never_shrink_alternating():
    gcm = validate(AFF)
    for m in range(1, 8):
        assert length(gcm, braid_word(1, 2, m)) == m


def test_coroot_of_b2_long_sum():
    gcm = validate(B2)
    # (a1 + a2)^vee = 2 a1^vee + a2^vee here
    assert coroot(gcm, (1, 1)) == (2, 1)
    for alpha in real_roots_up_to(gcm, 5):
        assert check_coroot(gcm, alpha, coroot(gcm, alpha))


def test_coroot_rejects_imaginary():
    with pytest.raises(NotRealRoot):
        coroot(validate(AFF), (1, 1))


def test_heights_increase_along_witnesses():
    gcm = validate(HYP)
    for root, (word, i) in real_roots_up_to(gcm, 15).items():
        x = tuple(int(k == i - 1) for k in range(2))
        for j in reversed(word):
            y = reflect_root(gcm, j, x)
            assert height(y) > height(x)
            x = y
