from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyadic_weil.cyclotomic import (
    ONE,
    ZERO,
    CycMatrix,
    CyclotomicNumber,
    canonicalize,
    cyc,
    gauss_sqrt,
    kernel_basis,
    rank,
    root_of_unity,
)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=64)
small_roots = st.builds(lambda k, d: Fraction(k, d), st.integers(0, 63), st.integers(1, 64))


@st.composite
def cyclotomics(draw):
    level = draw(st.sampled_from([1, 3, 4, 8, 12, 24]))
    terms = draw(st.dictionaries(st.integers(0, level - 1), st.integers(-3, 3), max_size=4))
    return CyclotomicNumber.from_exponents(level, terms)


def test_root_of_unity_examples():
    assert root_of_unity(0) == ONE
    assert root_of_unity(Fraction(1, 2)) == cyc(-1)
    z8 = root_of_unity(Fraction(1, 8))
    assert z8**4 == cyc(-1)
    assert z8**8 == ONE


def test_arithmetic_examples():
    z8 = root_of_unity(Fraction(1, 8))
    z4 = root_of_unity(Fraction(1, 4))
    assert z8 * z8**3 == cyc(-1)
    assert z8 + ZERO == z8
    assert z4.conjugate() == -z4
    assert 2 * z4 - z4 == z4


def test_canonical_level():
    z8 = root_of_unity(Fraction(1, 8))
    assert (z8 * z8).level == 4
    s = z8 + (-z8)
    assert s.level == 1 and s == ZERO
    assert canonicalize(z8 * z8) == root_of_unity(Fraction(1, 4))


def test_mixed_level_descent():
    # zeta_12^4 + zeta_12^8 = -1 lands back in Q
    z12 = root_of_unity(Fraction(1, 12))
    s = z12**4 + z12**8
    assert s == cyc(-1) and s.level == 1
    w = root_of_unity(Fraction(1, 108)) ** 9
    assert w == z12 and w.level == 12


def test_gauss_sqrt_squares():
    for p in (2, 3, 5, 7, 11):
        r = gauss_sqrt(p)
        assert r * r == cyc(p)


def test_kernel_examples():
    assert kernel_basis(CycMatrix.identity(3)) == []
    assert len(kernel_basis(CycMatrix.zeros(2, 3))) == 3
    z4 = root_of_unity(Fraction(1, 4))
    m = CycMatrix([[ONE, z4], [z4, cyc(-1)]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    assert all(v == ZERO for v in m.apply(basis[0]))
    assert rank(m) == 1


def test_json_round_trip():
    a = CyclotomicNumber.from_exponents(24, {1: 2, 5: -1})
    assert CyclotomicNumber.from_json(a.to_json()) == a


def test_inverse_and_division():
    a = CyclotomicNumber.from_exponents(8, {0: 1, 1: 2})
    assert a * a.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(small_roots, small_roots)
def test_roots_multiply_additively(r, s):
    assert root_of_unity(r) * root_of_unity(s) == root_of_unity(r + s)


@given(cyclotomics(), cyclotomics())
def test_conjugation_is_multiplicative_involution(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO


@given(cyclotomics())
def test_canonicalize_idempotent_and_cross_level(a):
    assert canonicalize(canonicalize(a)) == canonicalize(a)
    # lifting through an extra root of unity and back changes nothing
    z = root_of_unity(Fraction(1, 40))
    assert (a * z) * z.conjugate() == a


@st.composite
def matrices(draw):
    rows, cols = draw(st.integers(1, 3)), draw(st.integers(1, 4))
    return CycMatrix([[draw(cyclotomics()) for _ in range(cols)] for _ in range(rows)])


@given(matrices())
def test_kernel_annihilates(m):
    basis = kernel_basis(m)
    for v in basis:
        assert all(x == ZERO for x in m.apply(v))
    assert len(basis) + rank(m) == len(m.entries[0])


@given(rationals)
def test_rationals_stay_level_one(q):
    assert cyc(q).level == 1 and cyc(q).to_fraction() == q
