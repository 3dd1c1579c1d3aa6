"""Exact arithmetic in cyclotomic fields.

An element of Q(zeta_M) is stored as its coefficient vector in the power basis
1, zeta_M, ..., zeta_M^(phi(M)-1), i.e. as a polynomial reduced modulo the M-th
cyclotomic polynomial.  Every value is kept at the smallest level M whose field
contains it, so equal field elements have identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Rational = Union[int, Fraction]

ZERO_Q = Fraction(0)
ONE_Q = Fraction(1)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _factor(m: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
        d += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result = m
    for q, _ in _factor(m):
        result = result // q * (q - 1)
    return result


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Polynomial long division, coefficient lists in ascending degree."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = Fraction(num[k + len(den) - 1]) / lead
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending degree."""
    r = _radical(m)
    if r != m:
        # Phi_m(x) = Phi_r(x^(m/r)) for r the radical of m
        s = m // r
        out = [0] * (totient(r) * s + 1)
        for i, c in enumerate(cyclotomic_polynomial(r)):
            out[i * s] = c
        return tuple(out)
    # Moebius product over the divisors d of a squarefree m: prod (x^d - 1)^mu(m/d)
    primes = [q for q, _ in _factor(m)]
    num, den = [], []
    for mask in range(1 << len(primes)):
        d = m
        for i, q in enumerate(primes):
            if mask >> i & 1:
                d //= q
        (num if bin(mask).count("1") % 2 == 0 else den).append(d)
    poly = [1] + [0] * sum(num)
    deg = 0
    for d in num:
        # multiply by (x^d - 1)
        for i in range(deg + d, -1, -1):
            poly[i] = (poly[i - d] if i >= d else 0) - poly[i]
        deg += d
    for d in den:
        # exact division by (x^d - 1): quotient q has q[i] = q[i + d] - p[i + d], read top down
        quo = [0] * (deg - d + 1)
        for i in range(deg - d, -1, -1):
            quo[i] = poly[i + d] + (quo[i + d] if i + d <= deg - d else 0)
        poly = quo + [0] * (len(poly) - len(quo))
        deg -= d
    return tuple(poly[: deg + 1])


def _radical(m: int) -> int:
    out = 1
    for q, _ in _factor(m):
        out *= q
    return out


@lru_cache(maxsize=4)
def _squarefree_table(r: int) -> np.ndarray:
    """Row k: integer coefficients of y^k modulo Phi_r(y), for 0 <= k < r."""
    phi = totient(r)
    poly = np.array(cyclotomic_polynomial(r)[:phi], dtype=np.int64)
    rows = np.zeros((r, phi), dtype=np.int64)
    cur = np.zeros(phi, dtype=np.int64)
    cur[0] = 1
    for k in range(r):
        rows[k] = cur
        # multiply by y, folding the overflow back with the monic relation
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        if top:
            cur -= top * poly
    return rows


def _reduce_exponent(m: int, k: int) -> tuple[tuple[int, Fraction], ...]:
    """zeta_m^k in the power basis, as sparse (index, coefficient) pairs.

    With r the radical of m and s = m / r, Phi_m(x) = Phi_r(x^s); writing
    k = s u + v reduces the problem to y^u modulo Phi_r(y).
    """
    return _reduce_cached(m, k % m)


@lru_cache(maxsize=1 << 16)
def _reduce_cached(m: int, k: int) -> tuple[tuple[int, Fraction], ...]:
    s = m // _radical(m)
    u, v = divmod(k, s)
    r = m // s
    if u < totient(r):
        return ((v + s * u, ONE_Q),)
    row = _squarefree_table(r)[u]
    return tuple((v + s * int(i), Fraction(int(row[i]))) for i in np.flatnonzero(row))


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k holds zeta_m^k reduced into the power basis, for 0 <= k < m."""
    phi = totient(m)
    rows = []
    for k in range(m):
        row = [ZERO_Q] * phi
        for i, c in _reduce_exponent(m, k):
            row[i] = c
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _prime_power(m: int) -> tuple[int, int] | None:
    f = _factor(m)
    return f[0] if len(f) == 1 else None


def _try_descend(m: int, coeffs: tuple[Fraction, ...], q: int) -> tuple[Fraction, ...] | None:
    """Coefficients at level m/q if the element lies in Q(zeta_(m/q)), else None."""
    sub = m // q
    if sub % q == 0:
        # Phi_m(x) = Phi_(m/q)(x^q): the subfield is spanned by the powers divisible by q
        if any(c for j, c in enumerate(coeffs) if j % q):
            return None
        return tuple(coeffs[::q])
    if sub == 1:
        return None if any(coeffs[1:]) else (coeffs[0],)
    # q exactly divides m: zeta_m = zeta_sub^a zeta_q^b with a q + b sub = 1, and
    # Q(zeta_m) = Q(zeta_sub) (x) Q(zeta_q); collect the coefficient of each zeta_q^c
    b = pow(sub, -1, q)
    a = (1 - b * sub) // q
    phi_sub = totient(sub)
    parts = [[ZERO_Q] * phi_sub for _ in range(q)]
    for j, c in enumerate(coeffs):
        if c:
            row = parts[(b * j) % q]
            for i, v in _reduce_exponent(sub, a * j):
                row[i] += c * v
    # 1, zeta_q, ..., zeta_q^(q-2) is a basis over Q(zeta_sub) and zeta_q^(q-1) = -(1 + ... + zeta_q^(q-2))
    last = parts[q - 1]
    if any(parts[c] != last for c in range(1, q - 1)):
        return None
    return tuple(x - y for x, y in zip(parts[0], last))


def _canonical(m: int, coeffs: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    if not any(coeffs):
        return 1, (ZERO_Q,)
    changed = True
    while changed and m > 1:
        changed = False
        for q, _ in _factor(m):
            sub = _try_descend(m, coeffs, q)
            if sub is not None:
                m //= q
                coeffs = sub
                changed = True
                break
    return m, coeffs


def _lift(m: int, coeffs: tuple[Fraction, ...], target: int) -> list[Fraction]:
    if m == target:
        return list(coeffs)
    scale = target // m
    phi_t = totient(target)
    out = [ZERO_Q] * phi_t
    if _prime_power(target) is not None:
        # exponents stay inside the reduced range for prime-power levels
        for j, c in enumerate(coeffs):
            if c:
                out[j * scale] += c
        return out
    for j, c in enumerate(coeffs):
        if c:
            for i, v in _reduce_exponent(target, j * scale):
                out[i] += c * v
    return out


def _reduce_long(prod: list[Fraction], m: int) -> list[Fraction]:
    phi = totient(m)
    out = prod[:phi] + [ZERO_Q] * max(0, phi - len(prod))
    if len(prod) <= phi:
        return out
    pp = _prime_power(m)
    if pp is not None and pp[0] == 2:
        # zeta^(phi) = -1 for 2-power levels
        for k in range(phi, len(prod)):
            c = prod[k]
            if c:
                out[k - phi] -= c
        return out
    for k in range(phi, len(prod)):
        c = prod[k]
        if c:
            for i, v in _reduce_exponent(m, k):
                out[i] += c * v
    return out


class CyclotomicNumber:
    """Immutable element of a cyclotomic field, canonicalized on construction."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs: Sequence[Rational]):
        if level < 1:
            raise ValueError("level must be positive")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != totient(level):
            raise ValueError(f"level {level} needs {totient(level)} coefficients")
        self.level, self.coeffs = _canonical(level, coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, level: int, coeffs: Sequence[Fraction]) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj.level, obj.coeffs = _canonical(level, tuple(coeffs))
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, q: Rational) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj.level, obj.coeffs, obj._hash = 1, (Fraction(q),), None
        return obj

    @classmethod
    def from_exponents(cls, level: int, terms: Mapping[int, Rational]) -> CyclotomicNumber:
        """Build sum c_j zeta_level^j, any integer exponents allowed."""
        out = [ZERO_Q] * totient(level)
        for j, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            for i, v in _reduce_exponent(level, j):
                out[i] += c * v
        return cls._raw(level, out)

    # ----- predicates / conversions
    def is_zero(self) -> bool:
        return self.level == 1 and not self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.level == 1

    def to_fraction(self) -> Fraction:
        if self.level != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # ----- arithmetic
    @staticmethod
    def _coerce(other) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other)
        return None

    def _binary(self, other: CyclotomicNumber):
        if self.level == other.level:
            return self.level, list(self.coeffs), list(other.coeffs)
        lvl = _lcm(self.level, other.level)
        return lvl, _lift(self.level, self.coeffs, lvl), _lift(other.level, other.coeffs, lvl)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.level == 1 and other.level == 1:
            return CyclotomicNumber.from_rational(self.coeffs[0] + other.coeffs[0])
        lvl, a, b = self._binary(other)
        return CyclotomicNumber._raw(lvl, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(CyclotomicNumber)
        obj.level, obj.coeffs, obj._hash = self.level, tuple(-c for c in self.coeffs), None
        return obj

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.level == 1:
            if self.level == 1:
                return CyclotomicNumber.from_rational(self.coeffs[0] * other.coeffs[0])
            return self.scale(other.coeffs[0])
        if self.level == 1:
            return other.scale(self.coeffs[0])
        lvl, a, b = self._binary(other)
        prod = [ZERO_Q] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(lvl, _reduce_long(prod, lvl))

    __rmul__ = __mul__

    def scale(self, q: Rational) -> CyclotomicNumber:
        q = Fraction(q)
        if not q:
            return ZERO
        obj = object.__new__(CyclotomicNumber)
        obj.level, obj.coeffs, obj._hash = self.level, tuple(c * q for c in self.coeffs), None
        return obj

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.level == 1:
            return CyclotomicNumber.from_rational(1 / self.coeffs[0])
        m = self.level
        # extended Euclid: a*u + Phi_m*v = 1 in Q[x]
        r0 = [Fraction(c) for c in cyclotomic_polynomial(m)]
        r1 = _trim(list(self.coeffs))
        u0, u1 = [ZERO_Q], [ONE_Q]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r = _trim(r)
            r0, r1 = r1, r
            u0, u1 = u1, _trim(_poly_sub(u0, _poly_mul(q, u1)))
        # r1 is a nonzero constant
        c = r1[0]
        u = [x / c for x in u1]
        _, u = _poly_divmod(u + [ZERO_Q] * totient(m), r0_full(m))
        return CyclotomicNumber._raw(m, u)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> CyclotomicNumber:
        """Apply the automorphism zeta_M -> zeta_M^k (k coprime to M)."""
        if gcd(k, self.level) != 1:
            raise ValueError("exponent must be a unit modulo the level")
        if self.level == 1:
            return self
        return CyclotomicNumber.from_exponents(
            self.level, {(j * k) % self.level: c for j, c in enumerate(self.coeffs) if c}
        )

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(-1)

    def abs2(self) -> CyclotomicNumber:
        return self * self.conjugate()

    # ----- equality / hashing
    def __eq__(self, other):
        if self is other:
            return True
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.coeffs)) if self.level > 1 else hash(self.coeffs[0])
        return self._hash

    # ----- formatting and serialization
    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                sym = f"z{self.level}" + (f"^{j}" if j > 1 else "")
                body = sym if mag == 1 else f"{mag}*{sym}"
            parts.append((c < 0, body))
        first_neg, first = parts[0]
        out = ("-" if first_neg else "") + first
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self})"

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "coeffs": {str(j): str(c) for j, c in enumerate(self.coeffs) if c},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> CyclotomicNumber:
        return cls.from_exponents(int(data["level"]), {int(j): Fraction(v) for j, v in data["coeffs"].items()})


def r0_full(m: int) -> list[Fraction]:
    return [Fraction(c) for c in cyclotomic_polynomial(m)]


def _trim(p: list) -> list:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [ZERO_Q] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [ZERO_Q] * (n - len(a))
    b = b + [ZERO_Q] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


ZERO = CyclotomicNumber.from_rational(0)
ONE = CyclotomicNumber.from_rational(1)


def cyc(q: Rational) -> CyclotomicNumber:
    return CyclotomicNumber.from_rational(q)


def root_of_unity(r: Rational) -> CyclotomicNumber:
    """exp(2 pi i r); r is read modulo 1."""
    r = Fraction(r) % 1
    if not r:
        return ONE
    return CyclotomicNumber.from_exponents(r.denominator, {r.numerator: 1})


def canonicalize(a: CyclotomicNumber) -> CyclotomicNumber:
    # construction already canonicalizes; kept as an explicit, idempotent entry point
    return CyclotomicNumber._raw(a.level, a.coeffs)


def gauss_sqrt(p: int) -> CyclotomicNumber:
    """The positive square root of an odd prime p, or of 2, as a cyclotomic number."""
    if p == 2:
        return root_of_unity(Fraction(1, 8)) + root_of_unity(Fraction(-1, 8))
    g = ZERO
    for a in range(1, p):
        g = g + root_of_unity(Fraction(a, p)).scale(_legendre(a, p))
    # g^2 = (-1/p) p; for p = 3 mod 4 divide by i
    if p % 4 == 3:
        g = g * root_of_unity(Fraction(-1, 4))
    return g


def _legendre(a: int, p: int) -> int:
    v = pow(a, (p - 1) // 2, p)
    return -1 if v == p - 1 else v


# ---------------------------------------------------------------------------
# dense matrices and exact elimination


class CycMatrix:
    """Dense rectangular matrix with cyclotomic entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        data = []
        for row in entries:
            data.append(tuple(e if isinstance(e, CyclotomicNumber) else cyc(e) for e in row))
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged matrix")
        self.rows, self.cols, self.entries = len(data), width, tuple(data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> CycMatrix:
        return cls([[ZERO] * cols for _ in range(rows)])

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def apply(self, vec: Sequence[CyclotomicNumber]) -> list[CyclotomicNumber]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.entries:
            acc = ZERO
            for a, v in zip(row, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def stack(self, other: CycMatrix) -> CycMatrix:
        if other.cols != self.cols:
            raise ValueError("column mismatch")
        return CycMatrix(self.entries + other.entries)

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        return CycMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    @classmethod
    def identity(cls, n: int) -> CycMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def row_reduce(m: CycMatrix) -> tuple[list[list[CyclotomicNumber]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for col in range(m.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv if v else v for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: CycMatrix) -> int:
    return len(row_reduce(m)[1])


def kernel_basis(m: CycMatrix) -> list[list[CyclotomicNumber]]:
    """Basis of the right null space {v : m v = 0}."""
    rref, pivots = row_reduce(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for row, pc in zip(rref, pivots):
            if row[fc]:
                v[pc] = -row[fc]
        basis.append(v)
    return basis
