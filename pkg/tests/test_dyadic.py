from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyadic_weil.cyclotomic import ONE, cyc, root_of_unity
from dyadic_weil.dyadic import (
    INFINITY,
    STANDARD_PSI,
    AdditiveCharacter,
    coset_representatives,
    evaluate_character,
    frac_part,
    valuation,
)

dyadics = st.builds(lambda k, e: Fraction(k, 2**e), st.integers(-200, 200), st.integers(0, 6))
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=96)


def test_valuation_examples():
    assert valuation(4) == 2
    assert valuation(Fraction(3, 2)) == -1
    assert valuation(0) == INFINITY
    assert valuation(Fraction(9, 5), 3) == 2


def test_frac_part_examples():
    assert frac_part(Fraction(5, 4)) == Fraction(1, 4)
    assert frac_part(7) == 0
    # 1/6 - 1/2 = -1/3, and 3 is a 2-adic unit
    assert frac_part(Fraction(1, 6)) == Fraction(1, 2)
    assert valuation(Fraction(1, 6) - Fraction(1, 2)) >= 0


def test_standard_character_values():
    assert STANDARD_PSI.conductor == 1
    assert evaluate_character(STANDARD_PSI, 2) == ONE
    assert evaluate_character(STANDARD_PSI, 1) == cyc(-1)
    assert evaluate_character(STANDARD_PSI, Fraction(-1, 2)) == -root_of_unity(Fraction(1, 4))
    assert evaluate_character(STANDARD_PSI, Fraction(-1, 2)) == root_of_unity(Fraction(3, 4))


def test_character_json_round_trip():
    assert STANDARD_PSI.to_json() == {"p": 2, "a": "1/2"}
    assert AdditiveCharacter.from_json(STANDARD_PSI.to_json()) == STANDARD_PSI


def test_zero_shift_rejected():
    with pytest.raises(ValueError):
        AdditiveCharacter(2, 0)


def test_coset_representatives_examples():
    assert coset_representatives(0, 1) == [(0,), (1,)]
    assert coset_representatives(-1, 1) == [(0,), (Fraction(1, 2),), (1,), (Fraction(3, 2),)]
    assert coset_representatives(0, 0) == [(0,)]
    with pytest.raises(ValueError):
        coset_representatives(2, 1)


@pytest.mark.parametrize("m,N,p,n", [(0, 2, 2, 2), (-1, 1, 3, 1), (-2, 0, 2, 3)])
def test_coset_representatives_distinct(m, N, p, n):
    reps = coset_representatives(m, N, p, n)
    assert len(reps) == p ** ((N - m) * n)
    scale = Fraction(p) ** (-N)
    # distinct modulo p^N: no difference lies in p^N Z_p^n
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            assert any(valuation((x - y) * scale, p) < 0 for x, y in zip(a, b))


@given(dyadics, dyadics)
def test_character_additive(x, y):
    assert STANDARD_PSI(x + y) == STANDARD_PSI(x) * STANDARD_PSI(y)


@given(rationals, st.sampled_from([2, 3, 5]))
def test_frac_part_difference_integral(x, p):
    r = frac_part(x, p)
    assert 0 <= r < 1
    assert valuation(x - r, p) >= 0


@pytest.mark.parametrize(
    "p,a", [(2, Fraction(1, 2)), (2, 1), (2, 2), (2, Fraction(1, 4)), (3, 1), (3, Fraction(1, 3))]
)
def test_conductor_law(p, a):
    psi = AdditiveCharacter(p, a)
    c = psi.conductor
    assert c == -valuation(a, p)
    lattice = Fraction(p) ** c
    assert all(psi(lattice * k) == ONE for k in range(-6, 7))
    assert any(psi(lattice / p * k) != ONE for k in range(1, p + 1))
