"""The affine Weyl group of type C_n as affine maps of R^n.

An element acts by (w mu)_i = sign_i * mu[perm_i] + trans_i.  The fundamental
alcove is C = {1/2 > mu_1 > ... > mu_n > 0}; its walls are the zero sets of
the affine simple roots a_0 = 1 - 2 mu_1, a_i = mu_i - mu_(i+1), a_n = 2 mu_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

INF = math.inf


@dataclass(frozen=True, order=True)
class AffineWeylElement:
    perm: tuple[int, ...]  # 0-based source coordinate per output coordinate
    signs: tuple[int, ...]
    trans: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> AffineWeylElement:
        return cls(tuple(range(n)), (1,) * n, (Fraction(0),) * n)

    def __call__(self, mu: Sequence) -> tuple[Fraction, ...]:
        return tuple(s * Fraction(mu[p]) + b for p, s, b in zip(self.perm, self.signs, self.trans))

    def __mul__(self, other: AffineWeylElement) -> AffineWeylElement:
        """self o other."""
        if other.n != self.n:
            raise ValueError("rank mismatch")
        perm = tuple(other.perm[p] for p in self.perm)
        signs = tuple(s * other.signs[p] for p, s in zip(self.perm, self.signs))
        trans = tuple(s * other.trans[p] + b for p, s, b in zip(self.perm, self.signs, self.trans))
        return AffineWeylElement(perm, signs, trans)

    def inverse(self) -> AffineWeylElement:
        n = self.n
        perm = [0] * n
        signs = [1] * n
        trans = [Fraction(0)] * n
        # mu_i' = s mu_p + b  =>  mu_p = s (mu_i' - b)
        for i, (p, s, b) in enumerate(zip(self.perm, self.signs, self.trans)):
            perm[p] = i
            signs[p] = s
            trans[p] = -s * b
        return AffineWeylElement(tuple(perm), tuple(signs), tuple(trans))

    @property
    def is_identity(self) -> bool:
        return self == AffineWeylElement.identity(self.n)

    def to_json(self) -> dict:
        return {
            "perm": [s * (p + 1) for p, s in zip(self.perm, self.signs)],
            "trans": [str(b) for b in self.trans],
        }

    @classmethod
    def from_json(cls, data) -> AffineWeylElement:
        perm = tuple(abs(v) - 1 for v in data["perm"])
        signs = tuple(1 if v > 0 else -1 for v in data["perm"])
        return cls(perm, signs, tuple(Fraction(b) for b in data["trans"]))

    def __str__(self) -> str:
        word = reduced_word(self)
        return "e" if not word else "s" + ".s".join(str(i) for i in word)


def simple_reflection(i: int, n: int) -> AffineWeylElement:
    if not 0 <= i <= n:
        raise ValueError(f"generator index {i} out of range for rank {n}")
    perm = list(range(n))
    signs = [1] * n
    trans = [Fraction(0)] * n
    if i == 0:
        signs[0] = -1
        trans[0] = Fraction(1)
    elif i == n:
        signs[n - 1] = -1
    else:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return AffineWeylElement(tuple(perm), tuple(signs), tuple(trans))


def from_word(word: Iterable[int], n: int) -> AffineWeylElement:
    out = AffineWeylElement.identity(n)
    for i in word:
        out = out * simple_reflection(i, n)
    return out


def base_point(n: int) -> tuple[Fraction, ...]:
    """A rational point strictly inside C (and inside the type-B alcove)."""
    return tuple(Fraction(n + 1 - i, 2 * n + 2) for i in range(1, n + 1))


Label = Union[int, str]


@dataclass(frozen=True, eq=False)
class AlcoveSystem:
    """Affine maps of R^n generated by wall reflections of an alcove plus length-zero symmetries.

    ``walls[i] = (c, a)`` is the affine simple root mu -> c + a.mu of node i;
    ``roots`` lists positive root functionals whose integer level sets are the
    hyperplanes counted by the length function.
    """

    name: str
    n: int
    walls: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]
    roots: tuple[tuple[int, ...], ...]
    reflections: tuple[AffineWeylElement, ...]
    symmetries: tuple[tuple[str, AffineWeylElement], ...] = ()

    @property
    def labels(self) -> list[Label]:
        return list(range(len(self.reflections))) + [name for name, _ in self.symmetries]

    def generator(self, label: Label) -> AffineWeylElement:
        if isinstance(label, str):
            return dict(self.symmetries)[label]
        return self.reflections[label]

    def identity(self) -> AffineWeylElement:
        return AffineWeylElement.identity(self.n)

    def _root_values(self, mu: Sequence[Fraction]) -> list[Fraction]:
        return [sum((c * m for c, m in zip(a, mu)), Fraction(0)) for a in self.roots]

    def length(self, w: AffineWeylElement) -> int:
        return _cached_length(self, w)

    def wall_value(self, i: int, mu: Sequence[Fraction]) -> Fraction:
        c, a = self.walls[i]
        return c + sum((x * m for x, m in zip(a, mu)), Fraction(0))

    def left_descents(self, w: AffineWeylElement) -> list[int]:
        q = w(base_point(self.n))
        return [i for i in range(len(self.walls)) if self.wall_value(i, q) < 0]

    def word(self, w: AffineWeylElement) -> list[Label]:
        """Lowest-index descent walk, then the length-zero remainder."""
        out: list[Label] = []
        while True:
            desc = self.left_descents(w)
            if not desc:
                break
            out.append(desc[0])
            w = self.reflections[desc[0]] * w
        if not w.is_identity:
            name = next((nm for nm, g in self.symmetries if g == w), None)
            if name is None:
                raise ValueError("length-zero remainder is not a known symmetry")
            out.append(name)
        return out

    def from_word(self, word: Iterable[Label]) -> AffineWeylElement:
        out = self.identity()
        for label in word:
            out = out * self.generator(label)
        return out


@lru_cache(maxsize=None)
def _cached_length(system: AlcoveSystem, w: AffineWeylElement) -> int:
    p0 = base_point(system.n)
    return sum(
        abs(math.floor(a) - math.floor(b))
        for a, b in zip(system._root_values(w(p0)), system._root_values(p0))
    )


def _unit(n: int, entries: dict[int, int]) -> tuple[Fraction, ...]:
    return tuple(Fraction(entries.get(k, 0)) for k in range(n))


@lru_cache(maxsize=None)
def c_tilde(n: int) -> AlcoveSystem:
    """C~_n with alcove {1/2 > mu_1 > ... > mu_n > 0}."""
    walls = [(Fraction(1), _unit(n, {0: -2}))]
    walls += [(Fraction(0), _unit(n, {i: 1, i + 1: -1})) for i in range(n - 1)]
    walls.append((Fraction(0), _unit(n, {n - 1: 2})))
    roots = [tuple(2 if k == i else 0 for k in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(tuple(1 if k == i else (-1 if k == j else 0) for k in range(n)))
            roots.append(tuple(1 if k in (i, j) else 0 for k in range(n)))
    return AlcoveSystem(
        f"C~{n}", n, tuple(walls), tuple(roots), tuple(simple_reflection(i, n) for i in range(n + 1))
    )


@lru_cache(maxsize=None)
def b_tilde_extended(n: int) -> AlcoveSystem:
    """B~_n extended by the alcove symmetry tau: mu_1 -> 1 - mu_1.

    Alcove {mu_1 > ... > mu_n > 0, mu_1 + mu_2 < 1}; for n = 1 it is (0, 1).
    """
    ident = AffineWeylElement.identity(n)
    if n == 1:
        walls = [(Fraction(1), (Fraction(-1),)), (Fraction(0), (Fraction(1),))]
        s0 = AffineWeylElement((0,), (-1,), (Fraction(2),))
    else:
        walls = [(Fraction(1), _unit(n, {0: -1, 1: -1}))]
        perm = list(range(n))
        perm[0], perm[1] = 1, 0
        signs = [-1, -1] + [1] * (n - 2)
        trans = [Fraction(1), Fraction(1)] + [Fraction(0)] * (n - 2)
        s0 = AffineWeylElement(tuple(perm), tuple(signs), tuple(trans))
    if n > 1:
        walls += [(Fraction(0), _unit(n, {i: 1, i + 1: -1})) for i in range(n - 1)]
    walls.append((Fraction(0), _unit(n, {n - 1: 1})))
    roots = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(tuple(1 if k == i else (-1 if k == j else 0) for k in range(n)))
            roots.append(tuple(1 if k in (i, j) else 0 for k in range(n)))
    refl = [s0] + [simple_reflection(i, n) for i in range(1, n + 1)]
    signs = (-1,) + (1,) * (n - 1)
    tau = AffineWeylElement(ident.perm, signs, (Fraction(1),) + (Fraction(0),) * (n - 1))
    return AlcoveSystem(f"B~{n}+tau", n, tuple(walls), tuple(roots), tuple(refl), (("tau", tau),))


def length(w: AffineWeylElement) -> int:
    """Number of affine root hyperplanes separating C from w(C)."""
    return c_tilde(w.n).length(w)


def left_descents(w: AffineWeylElement) -> list[int]:
    return c_tilde(w.n).left_descents(w)


def reduced_word(w: AffineWeylElement) -> list[int]:
    """Lowest-index left descent walk."""
    return c_tilde(w.n).word(w)


def affine_simple_root(i: int, mu: Sequence[Fraction]) -> Fraction:
    return c_tilde(len(mu)).wall_value(i, mu)


def coxeter_m(i: int, j: int, n: int) -> float:
    """Order of s_i s_j from the C~_n diagram (inf for n = 1)."""
    if i == j:
        return 1
    if n == 1:
        return INF
    a, b = sorted((i, j))
    if b - a != 1:
        return 2
    if a == 0 or b == n:
        return 4
    return 3


def element_order(w: AffineWeylElement, limit: int = 64) -> float:
    x = w
    for k in range(1, limit + 1):
        if x.is_identity:
            return k
        x = x * w
    return INF


def enumerate_up_to_length(L: int, n: int, budget: int = 2_000_000) -> list[AffineWeylElement]:
    """All elements of length <= L, sorted by (length, canonical form)."""
    layer = [AffineWeylElement.identity(n)]
    seen = set(layer)
    out = list(layer)
    gens = [simple_reflection(i, n) for i in range(n + 1)]
    for k in range(1, L + 1):
        nxt = set()
        for w in layer:
            for s in gens:
                v = s * w
                if v not in seen and length(v) == k:
                    nxt.add(v)
        seen |= nxt
        layer = sorted(nxt)
        out += layer
        if len(out) > budget:
            raise RuntimeError("enumeration budget exceeded")
    return out


def counts_by_length(elements: Iterable[AffineWeylElement]) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in elements:
        k = length(w)
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))
