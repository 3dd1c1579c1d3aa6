"""Finite symplectic and orthogonal groups over F_2 and their Borel/parabolic subgroups.

A 2n x 2n bit matrix is a tuple of row ints (bit c of row r is entry (r, c)).
Groups are enumerated by breadth-first closure under left multiplication by
the generators, which in a finite group already yields the generated subgroup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .chevalley import Root, all_roots, chevalley_matrix, positive_roots, reduce_mod2, simple_roots

BitMatrix = tuple[int, ...]

SIZE_CAP = 10**7


def bit_identity(k: int) -> BitMatrix:
    return tuple(1 << r for r in range(k))


def from_rows(rows: Sequence[Sequence[int]]) -> BitMatrix:
    return tuple(sum((v & 1) << c for c, v in enumerate(row)) for row in rows)


def to_rows(M: BitMatrix) -> list[list[int]]:
    k = len(M)
    return [[(row >> c) & 1 for c in range(k)] for row in M]


def bit_mul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    out = []
    for row in A:
        acc = 0
        c = 0
        while row:
            if row & 1:
                acc ^= B[c]
            row >>= 1
            c += 1
        out.append(acc)
    return tuple(out)


def bit_transpose(M: BitMatrix) -> BitMatrix:
    k = len(M)
    return tuple(sum(((M[r] >> c) & 1) << r for r in range(k)) for c in range(k))


def _form_value(u: int, v: int, n: int) -> int:
    """Alternating form on bit vectors, x in bits 0..n-1 and y in bits n..2n-1."""
    mask = (1 << n) - 1
    ux, uy, vx, vy = u & mask, u >> n, v & mask, v >> n
    return (bin(ux & vy).count("1") + bin(uy & vx).count("1")) & 1


def _columns(M: BitMatrix) -> list[int]:
    return list(bit_transpose(M))


def preserves_form(M: BitMatrix) -> bool:
    n = len(M) // 2
    cols = _columns(M)
    k = 2 * n
    for a in range(k):
        for b in range(a + 1, k):
            if _form_value(cols[a], cols[b], n) != _form_value(1 << a, 1 << b, n):
                return False
    return True


def quadratic_form(v: int, n: int) -> int:
    """q(x, y) = sum x_i y_i."""
    mask = (1 << n) - 1
    return bin((v & mask) & (v >> n)).count("1") & 1


def preserves_quadratic(M: BitMatrix) -> bool:
    n = len(M) // 2
    return preserves_form(M) and all(quadratic_form(c, n) == 0 for c in _columns(M))


def root_element(alpha: Root) -> BitMatrix:
    """x_alpha(1) reduced mod 2."""
    return from_rows(reduce_mod2(chevalley_matrix(alpha, 1)))


def orthogonal_transvection(a: int, n: int) -> BitMatrix:
    """v -> v + B(v, a) a for q(a) = 1."""
    if quadratic_form(a, n) != 1:
        raise ValueError("transvection vector must be anisotropic")
    k = 2 * n
    cols = []
    for c in range(k):
        v = 1 << c
        cols.append(v ^ a if _form_value(v, a, n) else v)
    return bit_transpose(tuple(cols))


@dataclass
class FiniteSubgroup:
    name: str
    n: int
    generators: tuple[BitMatrix, ...]
    cap: int = SIZE_CAP
    _elements: frozenset[BitMatrix] | None = field(default=None, repr=False)

    @property
    def elements(self) -> frozenset[BitMatrix]:
        if self._elements is None:
            self._elements = closure(self.generators, 2 * self.n, self.cap)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, M: BitMatrix) -> bool:
        return M in self.elements

    def issubset(self, other: FiniteSubgroup) -> bool:
        return self.elements <= other.elements


def closure(generators: Iterable[BitMatrix], k: int, cap: int = SIZE_CAP) -> frozenset[BitMatrix]:
    gens = list(dict.fromkeys(generators))
    # row r of s*g is the xor of the rows of g picked out by row r of s
    picks = [[[c for c in range(k) if (row >> c) & 1] for row in s] for s in gens]
    start = bit_identity(k)
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for pick in picks:
            h = tuple(g[cs[0]] if len(cs) == 1 else _xor_rows(g, cs) for cs in pick)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise RuntimeError(f"group enumeration exceeded {cap} elements")
                queue.append(h)
    return frozenset(seen)


def _xor_rows(g: BitMatrix, cs: list[int]) -> int:
    acc = 0
    for c in cs:
        acc ^= g[c]
    return acc


def _short(roots: Iterable[Root]) -> list[Root]:
    return [r for r in roots if r.is_short]


def enumerate_group(kind: str, n: int, i: int | None = None, cap: int = SIZE_CAP) -> FiniteSubgroup:
    """Sp, O, B, B', or P'_i (parabolic of O for the short simple root alpha_i, 1 <= i < n)."""
    if n == 0:
        return FiniteSubgroup(kind, 0, (), cap, frozenset({()}))
    if kind == "Sp":
        # the simple root groups and their opposites already generate
        gens = [root_element(r) for a in simple_roots(n) for r in (a, -a)]
    elif kind == "B":
        gens = [root_element(r) for r in positive_roots(n)]
    elif kind == "B'":
        gens = [root_element(r) for r in _short(positive_roots(n))]
    elif kind == "O":
        gens = [root_element(r) for r in _short(all_roots(n))]
        gens.append(orthogonal_transvection(1 | (1 << n), n))
    elif kind == "P'":
        if i is None or not 1 <= i < n:
            raise ValueError("P'_i needs 1 <= i < n")
        alpha = simple_roots(n)[i - 1]
        gens = [root_element(r) for r in _short(positive_roots(n))] + [root_element(-alpha)]
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    if not gens:
        gens = [bit_identity(2 * n)]
    label = f"P'_{i}" if kind == "P'" else kind
    return FiniteSubgroup(label, n, tuple(gens), cap)


def orthogonal_by_filter(n: int) -> frozenset[BitMatrix]:
    """O_2n(F_2) as the q-preserving elements of Sp_2n(F_2)."""
    return frozenset(M for M in enumerate_group("Sp", n).elements if preserves_quadratic(M))


def sp_order_formula(n: int) -> int:
    out = 2 ** (n * n)
    for i in range(1, n + 1):
        out *= 4**i - 1
    return out


def index(G: FiniteSubgroup, H: FiniteSubgroup) -> int:
    if not H.issubset(G):
        raise ValueError(f"{H.name} is not a subgroup of {G.name}")
    q, r = divmod(G.order, H.order)
    if r:
        raise ArithmeticError("order does not divide")
    return q


def dim_U0(n: int) -> int:
    """(|SL_2| |B'_(n-1)|) / (|B_2| |B_(n-1)|) times [B_n : B'_n]."""
    if n < 1:
        raise ValueError("n must be positive")
    sl2, b2 = enumerate_group("Sp", 1), enumerate_group("B", 1)
    bp_rest, b_rest = enumerate_group("B'", n - 1), enumerate_group("B", n - 1)
    i_over_j = index(enumerate_group("B", n), enumerate_group("B'", n))
    value = Fraction(sl2.order * bp_rest.order, b2.order * b_rest.order) * i_over_j
    if value.denominator != 1:
        raise ArithmeticError("volume ratio is not an integer")
    return int(value)


def type_eigenvalue(dim_u: int, dim_v: int) -> Fraction:
    """lambda = (dim U - dim V) / dim V."""
    if dim_v <= 0:
        raise ValueError("dim V must be positive")
    if dim_v >= dim_u:
        raise ValueError("needs dim V < dim U")
    return Fraction(dim_u - dim_v, dim_v)
