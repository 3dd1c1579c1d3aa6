from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyadic_weil.weyl import (
    INF,
    AffineWeylElement,
    b_tilde_extended,
    base_point,
    c_tilde,
    coxeter_m,
    counts_by_length,
    element_order,
    enumerate_up_to_length,
    from_word,
    left_descents,
    length,
    reduced_word,
    simple_reflection,
)

a, b = Fraction(2, 7), Fraction(-3, 5)


def test_simple_reflection_examples():
    assert simple_reflection(1, 2)((a, b)) == (b, a)
    assert simple_reflection(2, 2)((a, b)) == (a, -b)
    assert simple_reflection(0, 2)((a, b)) == (1 - a, b)
    with pytest.raises(ValueError):
        simple_reflection(3, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_involutions(n):
    for i in range(n + 1):
        s = simple_reflection(i, n)
        assert (s * s).is_identity
        assert s.inverse() == s
        assert length(s) == 1


def test_orders_in_rank_two():
    s0, s1, s2 = (simple_reflection(i, 2) for i in range(3))
    x = s1 * s2
    assert not (x * x * x).is_identity
    assert element_order(x) == 4
    assert element_order(s0 * s1) == 4
    assert element_order(s0 * s2) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_braid_relations_match_diagram(n):
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = coxeter_m(i, j, n)
            order = element_order(simple_reflection(i, n) * simple_reflection(j, n), limit=41)
            assert order == m
            if n == 1:
                assert m == INF


def test_length_examples():
    assert length(AffineWeylElement.identity(2)) == 0
    assert length(from_word([0, 1, 0], 2)) == 3
    assert length(from_word([1, 0], 1)) == 2


def test_reduced_word_examples():
    assert reduced_word(AffineWeylElement.identity(3)) == []
    assert reduced_word(from_word([1, 0], 1)) == [1, 0]
    w = from_word([1, 2, 1], 2)
    word = reduced_word(w)
    assert len(word) == 3 and from_word(word, 2) == w


def test_enumeration_examples():
    assert enumerate_up_to_length(0, 2) == [AffineWeylElement.identity(2)]
    assert counts_by_length(enumerate_up_to_length(1, 2)) == {0: 1, 1: 3}
    els = enumerate_up_to_length(2, 1)
    expected = {from_word(w, 1) for w in ([], [0], [1], [0, 1], [1, 0])}
    assert set(els) == expected and len(els) == 5


@pytest.mark.parametrize("n,L", [(1, 8), (2, 8), (3, 6)])
def test_words_round_trip(n, L):
    els = enumerate_up_to_length(L, n)
    assert len(set(els)) == len(els)
    for w in els:
        word = reduced_word(w)
        assert from_word(word, n) == w
        assert len(word) == length(w) <= L


def test_growth_rank_one():
    counts = counts_by_length(enumerate_up_to_length(10, 1))
    assert counts == {0: 1, **{k: 2 for k in range(1, 11)}}


def test_base_point_inside_alcove():
    for n in (1, 2, 3):
        q = base_point(n)
        assert all(c_tilde(n).wall_value(i, q) > 0 for i in range(n + 1))
        assert all(b_tilde_extended(n).wall_value(i, q) > 0 for i in range(n + 1))


def test_json_round_trip():
    w = from_word([0, 1, 2, 1], 2)
    data = w.to_json()
    assert set(data) == {"perm", "trans"}
    assert AffineWeylElement.from_json(data) == w


words = st.lists(st.integers(0, 3), max_size=10)


@given(words, words)
def test_group_axioms(u, v):
    n = 3
    x, y = from_word(u, n), from_word(v, n)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert (x * x.inverse()).is_identity
    assert from_word(u + v, n) == x * y
    assert length(x * y) <= length(x) + length(y)
    assert length(x.inverse()) == length(x)


@given(st.integers(1, 3), st.data())
def test_exchange_property(n, data):
    word = data.draw(st.lists(st.integers(0, n), max_size=8))
    w = from_word(word, n)
    for s in range(n + 1):
        sw = simple_reflection(s, n) * w
        assert abs(length(sw) - length(w)) == 1
        if length(sw) < length(w):
            assert s in left_descents(w)
            # a reduced word of w starting with s
            alt = [s] + reduced_word(sw)
            assert from_word(alt, n) == w and len(alt) == length(w)


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_independent_reduced_words_have_equal_length(n, seed):
    rng = random.Random(seed)
    w = from_word([rng.randint(0, n) for _ in range(rng.randint(0, 9))], n)
    first = reduced_word(w)
    # a second reduced word via right descents of the inverse
    second = list(reversed(reduced_word(w.inverse())))
    assert from_word(second, n) == w
    assert len(first) == len(second) == length(w)
