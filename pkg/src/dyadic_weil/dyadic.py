"""Rationals regarded as elements of Q_p, and the additive characters psi_a.

Elements of Q_p are plain ``fractions.Fraction`` values; the prime is passed
explicitly.  Every group entry and function argument used in this package is
rational, so no truncated p-adic expansions are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Union

from .cyclotomic import CyclotomicNumber, root_of_unity

Rational = Union[int, Fraction]

INFINITY = math.inf


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def int_valuation(k: int, p: int) -> int:
    if k == 0:
        return INFINITY
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def valuation(x: Rational, p: int = 2):
    """p-adic valuation; ``math.inf`` for zero."""
    x = as_fraction(x)
    if not x:
        return INFINITY
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def min_valuation(values: Iterable[Rational], p: int = 2):
    return min((valuation(v, p) for v in values), default=INFINITY)


def frac_part(x: Rational, p: int = 2) -> Fraction:
    """The unique r = m / p^k in [0, 1) with x - r in Z_p."""
    x = as_fraction(x)
    den = x.denominator
    k = int_valuation(den, p)
    if k == 0:
        return Fraction(0)
    pk = p**k
    odd = den // pk
    m = (x.numerator * pow(odd, -1, pk)) % pk
    return Fraction(m, pk)


def reduce_mod(x: Rational, k: int, p: int = 2) -> int:
    """For x in Z_p, the integer in [0, p^k) congruent to x modulo p^k."""
    x = as_fraction(x)
    if valuation(x, p) < 0:
        raise ValueError(f"{x} is not in Z_{p}")
    if k <= 0:
        return 0
    pk = p**k
    return (x.numerator * pow(x.denominator, -1, pk)) % pk


def is_integral(x: Rational, p: int = 2) -> bool:
    return valuation(x, p) >= 0


@dataclass(frozen=True)
class AdditiveCharacter:
    """psi_a(x) = exp(2 pi i {a x}_p), of conductor -val(a)."""

    p: int = 2
    a: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        if not self.a:
            raise ValueError("the shift a must be nonzero")

    @property
    def conductor(self) -> int:
        return -valuation(self.a, self.p)

    def __call__(self, x: Rational) -> CyclotomicNumber:
        return root_of_unity(frac_part(self.a * as_fraction(x), self.p))

    def to_json(self) -> dict:
        return {"p": self.p, "a": str(self.a)}

    @classmethod
    def from_json(cls, data) -> AdditiveCharacter:
        return cls(int(data["p"]), Fraction(data["a"]))


# The conductor-1 character of Q_2 fixed throughout the package.
STANDARD_PSI = AdditiveCharacter(2, Fraction(1, 2))


def evaluate_character(psi: AdditiveCharacter, x: Rational) -> CyclotomicNumber:
    return psi(x)


def coset_representatives(m: int, N: int, p: int = 2, n_dims: int = 1) -> list[tuple[Fraction, ...]]:
    """Representatives of p^m Z_p^n / p^N Z_p^n, base-p digits in positions m..N-1."""
    if N < m:
        raise ValueError(f"constancy exponent {N} below support exponent {m}")
    base = Fraction(p) ** m
    one_dim = [base * k for k in range(p ** (N - m))]
    return [tuple(v) for v in product(one_dim, repeat=n_dims)]
