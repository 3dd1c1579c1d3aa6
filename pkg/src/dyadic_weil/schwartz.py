"""Schwartz-Bruhat functions on Q_p^n as exact finite data.

A function is stored on a uniform box: it vanishes off p^m Z_p^n and is
constant on cosets of p^N Z_p^n.  Values live in a numpy object array of shape
(P,)*n with P = p^(N-m); the entry at digit vector k is the value on the coset
of p^m k.  Every constructor returns the canonical (trimmed) form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import qmatrix as qm
from .cyclotomic import ONE, ZERO, CyclotomicNumber, _power_table, cyc, gauss_sqrt, root_of_unity
from .dyadic import (
    INFINITY,
    STANDARD_PSI,
    AdditiveCharacter,
    as_fraction,
    frac_part,
    int_valuation,
    min_valuation,
    reduce_mod,
    valuation,
)

Vector = tuple[Fraction, ...]


def _as_cyc(c) -> CyclotomicNumber:
    return c if isinstance(c, CyclotomicNumber) else cyc(c)


def _filled(shape: tuple[int, ...], value=ZERO) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(value)
    return arr


def _all_zero(arr: np.ndarray) -> bool:
    return all(not v for v in arr.flat)


def _arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


@dataclass(frozen=True)
class CharacterData:
    """The character psi together with the self-dual measure normalization."""

    psi: AdditiveCharacter = STANDARD_PSI

    @property
    def p(self) -> int:
        return self.psi.p

    @property
    def delta(self) -> int:
        return 1 if self.psi.p == 2 else 0

    @property
    def conductor(self) -> int:
        return self.psi.conductor

    @property
    def shift(self) -> int:
        """c - delta: the exponent shift of the transform."""
        return self.conductor - self.delta

    @cached_property
    def vol_zp(self) -> CyclotomicNumber:
        """vol(Z_p) = p^((c - delta)/2), the measure making the transform an involution up to y -> -y."""
        e = self.shift
        half, odd = divmod(e, 2)
        out = cyc(Fraction(self.p) ** half)
        if odd:
            out = out * gauss_sqrt(self.p)
        return out

    def vol_lattice(self, k: int) -> CyclotomicNumber:
        """vol(p^k Z_p)."""
        return self.vol_zp.scale(Fraction(self.p) ** (-k))


STANDARD_CHAR = CharacterData(STANDARD_PSI)


class SchwartzFunction:
    __slots__ = ("p", "n", "m", "N", "_arr")

    def __init__(self, p: int, n: int, m: int, N: int, values: np.ndarray):
        """Low-level; prefer the module constructors, which canonicalize."""
        self.p, self.n, self.m, self.N = p, n, m, N
        self._arr = values

    # ----- construction
    @classmethod
    def from_array(cls, p: int, n: int, m: int, N: int, arr: np.ndarray) -> SchwartzFunction:
        return _canonical(p, n, m, N, arr)

    @classmethod
    def build(
        cls, p: int, n: int, m: int, N: int, fn: Callable[[Vector], CyclotomicNumber]
    ) -> SchwartzFunction:
        """Function on the box (m, N) whose coset of rep y carries fn(y)."""
        if N < m:
            raise ValueError("constancy exponent below support exponent")
        P = p ** (N - m)
        base = Fraction(p) ** m
        arr = np.empty((P,) * n, dtype=object)
        for k in product(range(P), repeat=n):
            arr[k] = _as_cyc(fn(tuple(base * d for d in k)))
        return _canonical(p, n, m, N, arr)

    @classmethod
    def zero(cls, p: int = 2, n: int = 1) -> SchwartzFunction:
        return cls(p, n, 0, 0, np.empty((0,) * n, dtype=object))

    # ----- inspection
    @property
    def is_zero(self) -> bool:
        return self._arr.size == 0

    @property
    def shape(self) -> tuple[int, ...]:
        return self._arr.shape

    def cells(self) -> Iterator[tuple[Vector, CyclotomicNumber]]:
        """(representative, value) over all cells of the stored box."""
        if self.is_zero:
            return
        base = Fraction(self.p) ** self.m
        for k in np.ndindex(*self._arr.shape):
            yield tuple(base * d for d in k), self._arr[k]

    @property
    def values(self) -> dict[Vector, CyclotomicNumber]:
        return dict(self.cells())

    def array(self) -> np.ndarray:
        return self._arr.copy()

    def __call__(self, y: Sequence) -> CyclotomicNumber:
        return self.eval(y)

    def eval(self, y: Sequence) -> CyclotomicNumber:
        if len(y) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")
        if self.is_zero:
            return ZERO
        scale = Fraction(self.p) ** (-self.m)
        idx = []
        for yi in y:
            z = as_fraction(yi) * scale
            if valuation(z, self.p) < 0:
                return ZERO
            idx.append(reduce_mod(z, self.N - self.m, self.p))
        return self._arr[tuple(idx)]

    def refined(self, m: int, N: int) -> np.ndarray:
        """Value array on the finer box (m, N) with m <= self.m, N >= self.N."""
        if self.is_zero:
            return _filled((self.p ** (N - m),) * self.n)
        if m > self.m or N < self.N:
            raise ValueError("refinement box must contain the stored box")
        arr = self._arr
        for axis in range(self.n):
            arr = _refine_axis(arr, axis, self.p, (self.m, self.N), (m, N))
        return arr

    # ----- equality and arithmetic
    def __eq__(self, other) -> bool:
        if not isinstance(other, SchwartzFunction):
            return NotImplemented
        return (self.p, self.n, self.m, self.N) == (other.p, other.n, other.m, other.N) and _arrays_equal(
            self._arr, other._arr
        )

    def __hash__(self):
        return hash((self.p, self.n, self.m, self.N, tuple(self._arr.flat)))

    def __add__(self, other: SchwartzFunction) -> SchwartzFunction:
        return linear_combine([1, 1], [self, other])

    def __sub__(self, other: SchwartzFunction) -> SchwartzFunction:
        return linear_combine([1, -1], [self, other])

    def __neg__(self) -> SchwartzFunction:
        return self.scale(-1)

    def scale(self, c) -> SchwartzFunction:
        c = _as_cyc(c)
        if not c or self.is_zero:
            return SchwartzFunction.zero(self.p, self.n)
        out = np.empty(self._arr.shape, dtype=object)
        for k in np.ndindex(*out.shape):
            out[k] = self._arr[k] * c
        return SchwartzFunction(self.p, self.n, self.m, self.N, out)

    def __rmul__(self, c) -> SchwartzFunction:
        return self.scale(c)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"SchwartzFunction(p={self.p}, n={self.n}, zero)"
        nz = sum(1 for v in self._arr.flat if v)
        return f"SchwartzFunction(p={self.p}, n={self.n}, m={self.m}, N={self.N}, nonzero_cells={nz})"

    # ----- serialization
    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "N": self.N,
            "values": [{"rep": [str(x) for x in rep], "val": v.to_json()} for rep, v in self.cells()],
        }

    @classmethod
    def from_json(cls, data) -> SchwartzFunction:
        p, n, m, N = (int(data[k]) for k in ("p", "n", "m", "N"))
        entries = {
            tuple(Fraction(x) for x in e["rep"]): CyclotomicNumber.from_json(e["val"]) for e in data["values"]
        }
        if not entries:
            return cls.zero(p, n)
        return cls.build(p, n, m, N, lambda y: entries[y])


def _canonical(p: int, n: int, m: int, N: int, arr: np.ndarray) -> SchwartzFunction:
    if arr.size == 0 or _all_zero(arr):
        return SchwartzFunction.zero(p, n)
    # shrink the support box while everything outside p^(m+1) vanishes
    while N > m:
        inner = (slice(None, None, p),) * n
        mask = np.ones(arr.shape, dtype=bool)
        mask[inner] = False
        if any(arr[mask]):
            break
        arr = arr[inner]
        m += 1
    # coarsen constancy while the top base-p digit is irrelevant
    while N > m:
        P = arr.shape[0]
        Q = P // p
        view = arr.reshape(sum(((p, Q) for _ in range(n)), ()))
        first = view[(0, slice(None)) * n]
        if not all(
            _arrays_equal(view[sum(((t, slice(None)) for t in top), ())], first)
            for top in product(range(p), repeat=n)
        ):
            break
        arr = np.ascontiguousarray(first)
        N -= 1
    arr.flags.writeable = False
    return SchwartzFunction(p, n, m, N, arr)


def _check_compatible(functions: Sequence[SchwartzFunction]) -> tuple[int, int]:
    p, n = functions[0].p, functions[0].n
    for f in functions:
        if (f.p, f.n) != (p, n):
            raise ValueError("functions live on different spaces")
    return p, n


def _box(functions: Iterable[SchwartzFunction]) -> tuple[int, int] | None:
    live = [f for f in functions if not f.is_zero]
    if not live:
        return None
    return min(f.m for f in live), max(f.N for f in live)


# ----- constructors


def phi_lattice(m: int, p: int = 2, n: int = 1) -> SchwartzFunction:
    """Indicator of p^m Z_p^n."""
    return SchwartzFunction(p, n, m, m, np.full((1,) * n, ONE, dtype=object))


def indicator_coset(a: Sequence, m: int, p: int = 2) -> SchwartzFunction:
    """Indicator of a + p^m Z_p^n."""
    return translate(phi_lattice(m, p, len(a)), [-as_fraction(x) for x in a])


def lattice_indicator(p: int = 2, n: int = 1) -> SchwartzFunction:
    """Indicator of Z_p^n."""
    return phi_lattice(0, p, n)


def linear_combine(scalars: Sequence, functions: Sequence[SchwartzFunction]) -> SchwartzFunction:
    if len(scalars) != len(functions) or not functions:
        raise ValueError("need matching non-empty lists of scalars and functions")
    p, n = _check_compatible(functions)
    box = _box(functions)
    if box is None:
        return SchwartzFunction.zero(p, n)
    m, N = box
    total = _filled((p ** (N - m),) * n)
    for c, f in zip(scalars, functions):
        c = _as_cyc(c)
        if not c or f.is_zero:
            continue
        arr = f.refined(m, N)
        for k in np.ndindex(*total.shape):
            v = arr[k]
            if v:
                total[k] = total[k] + c * v
    return _canonical(p, n, m, N, total)


def pointwise_map(f: SchwartzFunction, m: int, N: int, weight: Callable[[Vector], CyclotomicNumber]) -> SchwartzFunction:
    """g(y) = weight(y) f(y), where weight is constant on cells of the box (m, N) containing f's box."""
    arr = f.refined(m, N)
    base = Fraction(f.p) ** m
    out = np.empty(arr.shape, dtype=object)
    for k in np.ndindex(*arr.shape):
        v = arr[k]
        out[k] = v * weight(tuple(base * d for d in k)) if v else ZERO
    return _canonical(f.p, f.n, m, N, out)


# ----- operations


def mult_quadratic_character(
    f: SchwartzFunction, b: Sequence[Sequence], char: CharacterData = STANDARD_CHAR
) -> SchwartzFunction:
    """g(y) = psi(y^t b y) f(y)."""
    b = qm.qmat(b)
    if not qm.is_symmetric(b):
        raise ValueError("b must be symmetric")
    if len(b) != f.n:
        raise ValueError("dimension mismatch")
    vb = min_valuation((x for row in b for x in row), f.p)
    if vb == INFINITY or f.is_zero:
        return f
    c = char.conductor
    v2 = valuation(2, f.p)
    n0 = max(c - v2 - vb - f.m, -((vb - c) // 2))
    N = max(f.N, n0)
    # psi(y^t b y) at y = p^m k is zeta_pJ^(sum c_ij k_i k_j)
    base2 = Fraction(f.p) ** (2 * f.m) * char.psi.a
    mults = [[_frac_multiplier(base2 * b[i][j], f.p) for j in range(f.n)] for i in range(f.n)]
    pJ = max(pj for row in mults for _, pj in row)
    arr = f.refined(f.m, N)
    grid = np.indices(arr.shape, dtype=object)
    expo = np.zeros(arr.shape, dtype=object)
    for i in range(f.n):
        for j in range(f.n):
            c, pj = mults[i][j]
            if c:
                expo = expo + grid[i] * grid[j] * (c * (pJ // pj))
    out = np.empty(arr.shape, dtype=object)
    for k in np.ndindex(*arr.shape):
        v = arr[k]
        if not v:
            out[k] = ZERO
        else:
            e = int(expo[k]) % pJ
            out[k] = v * _root(pJ, e) if e else v
    return _canonical(f.p, f.n, f.m, N, out)


def mult_linear_character(
    f: SchwartzFunction, a: Sequence, char: CharacterData = STANDARD_CHAR
) -> SchwartzFunction:
    """g(y) = psi(a^t y) f(y)."""
    a = tuple(as_fraction(x) for x in a)
    if len(a) != f.n:
        raise ValueError("dimension mismatch")
    va = min_valuation(a, f.p)
    if va == INFINITY or f.is_zero:
        return f
    N = max(f.N, char.conductor - va)
    psi = char.psi
    return pointwise_map(f, f.m, N, lambda y: psi(sum((x * yi for x, yi in zip(a, y)), Fraction(0))))


def substitute_linear(f: SchwartzFunction, b: Sequence[Sequence]) -> SchwartzFunction:
    """g(y) = f(b^t y)."""
    b = qm.qmat(b)
    if len(b) != f.n:
        raise ValueError("dimension mismatch")
    bt = qm.transpose(b)
    binv = qm.inverse(bt)  # raises on singular input
    if f.is_zero:
        return f
    v_b = min_valuation((x for row in bt for x in row), f.p)
    v_c = min_valuation((x for row in binv for x in row), f.p)
    m, N = f.m + v_c, f.N - v_b
    return SchwartzFunction.build(f.p, f.n, m, N, lambda y: f.eval(qm.apply(bt, y)))


def translate(f: SchwartzFunction, a: Sequence) -> SchwartzFunction:
    """g(y) = f(y + a)."""
    a = tuple(as_fraction(x) for x in a)
    if len(a) != f.n:
        raise ValueError("dimension mismatch")
    if f.is_zero:
        return f
    va = min_valuation(a, f.p)
    if va >= f.N:
        return f
    m = min(f.m, va)
    return SchwartzFunction.build(f.p, f.n, m, f.N, lambda y: f.eval([yi + ai for yi, ai in zip(y, a)]))


def reflect(f: SchwartzFunction) -> SchwartzFunction:
    """g(y) = f(-y)."""
    if f.is_zero:
        return f
    arr = f._arr
    P = arr.shape[0]
    idx = np.ix_(*[[(-k) % P for k in range(P)] for _ in range(f.n)])
    return SchwartzFunction(f.p, f.n, f.m, f.N, arr[idx])


def _refine_axis(arr: np.ndarray, axis: int, p: int, box: tuple[int, int], target: tuple[int, int]) -> np.ndarray:
    """Re-express one axis from cells of box (m, N) on the finer box (m', N')."""
    (m, N), (m2, N2) = box, target
    if N2 > N:
        reps = [1] * arr.ndim
        reps[axis] = p ** (N2 - N)
        arr = np.tile(arr, reps)
    if m2 < m:
        stride = p ** (m - m2)
        shape = list(arr.shape)
        shape[axis] *= stride
        big = _filled(tuple(shape))
        sl = [slice(None)] * arr.ndim
        sl[axis] = slice(None, None, stride)
        big[tuple(sl)] = arr
        arr = big
    return arr


def _lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _exponent_block(values: Sequence[CyclotomicNumber], L: int, D: int, dtype) -> np.ndarray:
    """Rows of integer coefficients D*c_j of sum c_j zeta_L^j, one row per value."""
    out = np.zeros((len(values), L), dtype=dtype)
    for r, v in enumerate(values):
        step = L // v.level
        for j, c in enumerate(v.coeffs):
            if c:
                out[r, j * step] = int(c * D)
    return out


def _frac_multiplier(x: Fraction, p: int) -> tuple[int, int]:
    """(c, p^j) with frac_p(x k) = (c k mod p^j) / p^j for every integer k."""
    j = int_valuation(x.denominator, p)
    pj = p**j
    if j == 0:
        return 0, 1
    return (x.numerator * pow(x.denominator // pj, -1, pj)) % pj, pj


def _from_exponent_rows(rows: np.ndarray, L: int, D: int, factor: Fraction = Fraction(1)) -> list[CyclotomicNumber]:
    """Inverse of ``_exponent_block`` times a rational factor, reducing through the power table in one product."""
    table, integral = _reduction_table(L)
    reduced = rows @ table if integral and rows.dtype != object else rows.astype(object) @ table
    scale = factor / D
    sn, sd = scale.numerator, scale.denominator
    out = []
    for row in reduced.tolist():
        if not any(row):
            out.append(ZERO)
        elif integral:
            out.append(CyclotomicNumber._raw(L, [Fraction(x * sn, sd) for x in row]))
        else:
            out.append(CyclotomicNumber._raw(L, [Fraction(x) * scale for x in row]))
    return out


@lru_cache(maxsize=None)
def _reduction_table(L: int) -> tuple[np.ndarray, bool]:
    table = np.array(_power_table(L), dtype=object)
    if all(x.denominator == 1 for x in table.flat):
        return table.astype(np.int64), True
    return table, False


@lru_cache(maxsize=4096)
def _root(level: int, e: int) -> CyclotomicNumber:
    return root_of_unity(Fraction(e, level))


def fourier_partial(f: SchwartzFunction, i: int, char: CharacterData = STANDARD_CHAR) -> SchwartzFunction:
    """Transform in coordinate i: y_i -> integral of psi(2 u y_i) f(.., u, ..) du."""
    if not 0 <= i < f.n:
        raise IndexError("coordinate out of range")
    if char.p != f.p:
        raise ValueError("character and function use different primes")
    if f.is_zero:
        return f
    p, e = f.p, char.shift
    # in coordinate i the output lives on cells of p^(-N+e) / p^(-m+e)
    m_out, N_out = -f.N + e, -f.m + e
    P = p ** (f.N - f.m)
    moved = np.moveaxis(f._arr, i, 0)
    rest = moved.shape[1:]
    flat = moved.reshape(P, -1)
    R = flat.shape[1]

    # kernel psi(2 u y) as exponents of a single root of unity
    scale = 2 * Fraction(p) ** (f.m + m_out) * char.psi.a
    c0, pj = _frac_multiplier(scale, p)
    values = [v for v in flat.flat if v]
    L = _lcm_all([pj] + [v.level for v in values])
    vol = char.vol_lattice(f.N)
    rational_vol = vol.level == 1
    D = _lcm_all(c.denominator for v in values for c in v.coeffs)
    ks = np.arange(P, dtype=object)
    E = ((np.outer(ks, ks) * c0) % pj * (L // pj)).astype(np.int64)

    bound = P * max(abs(c.numerator) * (D // c.denominator) for v in values for c in v.coeffs)
    dtype = np.int64 if bound < 2**40 else object
    karr = np.arange(P)[:, None]
    jarr = np.arange(L)[None, :]
    shifts = [(jarr - E[l][:, None]) % L for l in range(P)]
    W = np.zeros((P, R, L), dtype=dtype)
    chunk = max(1, (1 << 22) // (P * L))
    for r0 in range(0, R, chunk):
        r1 = min(R, r0 + chunk)
        A = np.zeros((P, L, r1 - r0), dtype=dtype)
        for k in range(P):
            live = [(r, flat[k, r]) for r in range(r0, r1) if flat[k, r]]
            if live:
                block = _exponent_block([v for _, v in live], L, D, dtype)
                for (r, _), row in zip(live, block):
                    A[k, :, r - r0] = row
        for l in range(P):
            W[l, r0:r1] = A[karr, shifts[l]].sum(axis=0).T
    if rational_vol:
        results = _from_exponent_rows(W.reshape(P * R, L), L, D, vol.coeffs[0])
    else:
        results = [v * vol if v else ZERO for v in _from_exponent_rows(W.reshape(P * R, L), L, D)]
    out = np.empty((P, R), dtype=object)
    for t, v in enumerate(results):
        out[t // R, t % R] = v
    out = np.moveaxis(out.reshape((P,) + rest), 0, i)
    m, N = min(f.m, m_out), max(f.N, N_out)
    for axis in range(f.n):
        box = (m_out, N_out) if axis == i else (f.m, f.N)
        out = _refine_axis(out, axis, p, box, (m, N))
    return _canonical(p, f.n, m, N, out)


def fourier_full(f: SchwartzFunction, char: CharacterData = STANDARD_CHAR) -> SchwartzFunction:
    for i in range(f.n):
        f = fourier_partial(f, i, char)
    return f


def inverse_fourier_full(f: SchwartzFunction, char: CharacterData = STANDARD_CHAR) -> SchwartzFunction:
    return reflect(fourier_full(f, char))


def tensor(f: SchwartzFunction, g: SchwartzFunction) -> SchwartzFunction:
    """(f (x) g)(y, z) = f(y) g(z)."""
    if f.p != g.p:
        raise ValueError("different primes")
    if f.is_zero or g.is_zero:
        return SchwartzFunction.zero(f.p, f.n + g.n)
    m, N = min(f.m, g.m), max(f.N, g.N)
    a = f.refined(m, N)
    b = g.refined(m, N)
    out = np.empty(a.shape + b.shape, dtype=object)
    for k in np.ndindex(*a.shape):
        x = a[k]
        for l in np.ndindex(*b.shape):
            out[k + l] = x * b[l] if x else ZERO
    return _canonical(f.p, f.n + g.n, m, N, out)


def tensor_power(f: SchwartzFunction, k: int) -> SchwartzFunction:
    out = f
    for _ in range(k - 1):
        out = tensor(out, f)
    return out


def equals(f: SchwartzFunction, g: SchwartzFunction) -> bool:
    return f == g


def l2_norm_squared(f: SchwartzFunction, char: CharacterData = STANDARD_CHAR) -> CyclotomicNumber:
    """Sum over cells of vol(cell) |f|^2."""
    if f.is_zero:
        return ZERO
    vol = char.vol_lattice(f.N) ** f.n
    total = ZERO
    for v in f._arr.flat:
        if v:
            total = total + v.abs2()
    return total * vol


def random_schwartz(
    rng,
    p: int = 2,
    n: int = 1,
    m_range: tuple[int, int] = (-1, 1),
    max_width: int = 2,
    levels: Sequence[int] = (1, 4, 8),
    density: float = 0.6,
) -> SchwartzFunction:
    """A random function with small cyclotomic values; rng is a ``random.Random``."""
    m = rng.randint(*m_range)
    N = m + rng.randint(0, max_width)
    P = p ** (N - m)
    arr = np.empty((P,) * n, dtype=object)
    for k in np.ndindex(*arr.shape):
        if rng.random() < density:
            lvl = rng.choice(list(levels))
            if lvl == 1:
                arr[k] = cyc(rng.randint(-3, 3))
            else:
                arr[k] = CyclotomicNumber.from_exponents(lvl, {rng.randrange(lvl): rng.randint(-2, 2)})
        else:
            arr[k] = ZERO
    return _canonical(p, n, m, N, arr)
