"""Small dense matrices over Q, stored as tuples of row tuples of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

QMatrix = tuple[tuple[Fraction, ...], ...]


def qmat(rows: Sequence[Sequence]) -> QMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> QMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> QMatrix:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def unit(n: int, i: int, j: int, value=1) -> QMatrix:
    return tuple(
        tuple(Fraction(value) if (a, b) == (i, j) else Fraction(0) for b in range(n)) for a in range(n)
    )


def transpose(a: QMatrix) -> QMatrix:
    return tuple(zip(*a)) if a else a


def mul(a: QMatrix, b: QMatrix) -> QMatrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def add(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def scale(a: QMatrix, t) -> QMatrix:
    t = Fraction(t)
    return tuple(tuple(x * t for x in r) for r in a)


def apply(a: QMatrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def is_symmetric(a: QMatrix) -> bool:
    return a == transpose(a)


def inverse(a: QMatrix) -> QMatrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def power(a: QMatrix, k: int) -> QMatrix:
    if k < 0:
        return power(inverse(a), -k)
    out = identity(len(a))
    for _ in range(k):
        out = mul(out, a)
    return out


def to_json(a: QMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a]


def from_json(data) -> QMatrix:
    return qmat(data)
