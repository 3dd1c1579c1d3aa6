"""Iwahori-Hecke algebras with unequal parameters over an alcove system.

The algebra H has basis T_w (w in the affine Weyl group of type C~_n) with
T_s T_w = T_sw when the length goes up and (lambda_s - 1) T_w + lambda_s T_sw
otherwise.  The parameters are lambda_i = 2 for i < n and lambda_n = 1.

H' is the algebra of the extended group B~_n x <tau>, all reflection
parameters equal to 2 and T_tau of length zero.  ``phi`` sends tau -> T_n and
t_i -> T_(n-i).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .cyclotomic import ONE, ZERO, CyclotomicNumber, cyc
from .weyl import AffineWeylElement, AlcoveSystem, Label, b_tilde_extended, c_tilde

Coeff = CyclotomicNumber


def _c(x) -> CyclotomicNumber:
    return x if isinstance(x, CyclotomicNumber) else cyc(x)


@dataclass(frozen=True)
class HeckeParams:
    n: int
    lambdas: tuple[Fraction, ...]

    @classmethod
    def standard(cls, n: int) -> HeckeParams:
        return cls(n, tuple(Fraction(2) for _ in range(n)) + (Fraction(1),))


class HeckeElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeckeAlgebra, terms: Mapping[AffineWeylElement, CyclotomicNumber]):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + other.scale(-1)

    def __neg__(self) -> HeckeElement:
        return self.scale(-1)

    def scale(self, c) -> HeckeElement:
        c = _c(c)
        return HeckeElement(self.algebra, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, c) -> HeckeElement:
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, w: AffineWeylElement) -> CyclotomicNumber:
        return self.terms.get(w, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda x: (self.algebra.length(x), x)):
            word = self.algebra.system.word(w)
            name = "T_e" if not word else "T_" + ".".join(str(i) for i in word)
            parts.append(f"({self.terms[w]})*{name}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"w": w.to_json(), "coeff": c.to_json()}
            for w, c in sorted(self.terms.items(), key=lambda kv: (self.algebra.length(kv[0]), kv[0]))
        ]


class HeckeAlgebra:
    def __init__(self, system: AlcoveSystem, lambdas: Mapping[int, Fraction]):
        self.system = system
        self.n = system.n
        self.lambdas = {i: _c(v) for i, v in lambdas.items()}
        for i in range(len(system.reflections)):
            if i not in self.lambdas:
                raise ValueError(f"missing parameter for node {i}")

    @property
    def e(self) -> AffineWeylElement:
        return self.system.identity()

    def length(self, w: AffineWeylElement) -> int:
        return self.system.length(w)

    # ----- constructors
    def one(self) -> HeckeElement:
        return HeckeElement(self, {self.e: ONE})

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def basis(self, w: AffineWeylElement) -> HeckeElement:
        return HeckeElement(self, {w: ONE})

    def gen(self, label: Label) -> HeckeElement:
        return self.basis(self.system.generator(label))

    def from_dict(self, terms: Mapping[AffineWeylElement, object]) -> HeckeElement:
        return HeckeElement(self, {w: _c(c) for w, c in terms.items()})

    # ----- generator actions
    def _left_gen_terms(self, label: Label, terms: Mapping[AffineWeylElement, CyclotomicNumber]) -> dict:
        s = self.system.generator(label)
        out: dict[AffineWeylElement, CyclotomicNumber] = {}

        def add(w, c):
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)

        if isinstance(label, str):
            for w, c in terms.items():
                add(s * w, c)
            return out
        lam = self.lambdas[label]
        for w, c in terms.items():
            sw = s * w
            if self.length(sw) > self.length(w):
                add(sw, c)
            else:
                add(w, c * (lam - 1))
                add(sw, c * lam)
        return out

    def _right_gen_terms(self, terms: Mapping[AffineWeylElement, CyclotomicNumber], label: Label) -> dict:
        s = self.system.generator(label)
        out: dict[AffineWeylElement, CyclotomicNumber] = {}

        def add(w, c):
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)

        if isinstance(label, str):
            for w, c in terms.items():
                add(w * s, c)
            return out
        lam = self.lambdas[label]
        for w, c in terms.items():
            ws = w * s
            if self.length(ws) > self.length(w):
                add(ws, c)
            else:
                add(w, c * (lam - 1))
                add(ws, c * lam)
        return out

    def left_gen(self, label: Label, a: HeckeElement) -> HeckeElement:
        return HeckeElement(self, self._left_gen_terms(label, a.terms))

    def right_gen(self, a: HeckeElement, label: Label) -> HeckeElement:
        return HeckeElement(self, self._right_gen_terms(a.terms, label))

    # ----- products
    def word_product(self, word: Sequence[Label]) -> HeckeElement:
        """T_(i1) T_(i2) ... T_(ik)."""
        terms = {self.e: ONE}
        for label in reversed(list(word)):
            terms = self._left_gen_terms(label, terms)
        return HeckeElement(self, terms)

    def t_basis(self, w: AffineWeylElement, word: Sequence[Label] | None = None) -> HeckeElement:
        """T_w as the product along a reduced word (the canonical one by default)."""
        return self.word_product(self.system.word(w) if word is None else word)

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        out: dict[AffineWeylElement, CyclotomicNumber] = {}
        for u, c in a.terms.items():
            terms = dict(b.terms)
            for label in reversed(self.system.word(u)):
                terms = self._left_gen_terms(label, terms)
            for w, v in terms.items():
                out[w] = out.get(w, ZERO) + c * v
        return HeckeElement(self, out)

    def multiply_right(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """Independent product: expand b and act on a from the right."""
        out: dict[AffineWeylElement, CyclotomicNumber] = {}
        for v, c in b.terms.items():
            terms = dict(a.terms)
            for label in self.system.word(v):
                terms = self._right_gen_terms(terms, label)
            for w, x in terms.items():
                out[w] = out.get(w, ZERO) + c * x
        return HeckeElement(self, out)

    # ----- Hilbert algebra structure
    def star(self, a: HeckeElement) -> HeckeElement:
        return HeckeElement(self, {w.inverse(): c.conjugate() for w, c in a.terms.items()})

    def trace(self, a: HeckeElement) -> CyclotomicNumber:
        return a.coefficient(self.e)

    def trace_product(self, a: HeckeElement, b: HeckeElement) -> CyclotomicNumber:
        """tr(a b), dropping terms that can no longer reach the identity."""
        total = ZERO
        for u, c in a.terms.items():
            word = self.system.word(u)
            terms = dict(b.terms)
            for k, label in enumerate(reversed(word)):
                remaining = len(word) - k
                terms = {w: v for w, v in terms.items() if self.length(w) <= remaining}
                terms = self._left_gen_terms(label, terms)
            total = total + c * terms.get(self.e, ZERO)
        return total

    def trace_row(self, u: AffineWeylElement) -> dict[AffineWeylElement, CyclotomicNumber]:
        """All nonzero values w -> tr(T_u T_w), via the transpose of left multiplication."""
        ell = {self.e: ONE}
        for label in self.system.word(u):
            s = self.system.generator(label)
            s_inv = s.inverse()
            nxt: dict[AffineWeylElement, CyclotomicNumber] = {}
            candidates = {s_inv * x for x in ell} | (set() if isinstance(label, str) else set(ell))
            for w in candidates:
                sw = s * w
                if isinstance(label, str) or self.length(sw) > self.length(w):
                    v = ell.get(sw, ZERO)
                else:
                    lam = self.lambdas[label]
                    v = ell.get(w, ZERO) * (lam - 1) + ell.get(sw, ZERO) * lam
                if v:
                    nxt[w] = v
            ell = nxt
        return ell

    def inner(self, a: HeckeElement, b: HeckeElement) -> CyclotomicNumber:
        """[a, b] = tr(a* b)."""
        return self.trace_product(self.star(a), b)

    def weight(self, w: AffineWeylElement) -> CyclotomicNumber:
        """Product of the parameters along a reduced word: the value of [T_w, T_w]."""
        out = ONE
        for label in self.system.word(w):
            if not isinstance(label, str):
                out = out * self.lambdas[label]
        return out

    def character(self, a: HeckeElement, values: Mapping[Label, CyclotomicNumber] | None = None) -> CyclotomicNumber:
        """One-dimensional representation T_i -> values[i] (default lambda_i), T_tau -> 1."""
        vals = dict(self.lambdas) if values is None else {k: _c(v) for k, v in values.items()}
        total = ZERO
        for w, c in a.terms.items():
            x = ONE
            for label in self.system.word(w):
                x = x * (vals.get(label, ONE) if isinstance(label, str) else vals[label])
            total = total + c * x
        return total

    def enumerate(self, L: int) -> list[AffineWeylElement]:
        return enumerate_system(self.system, L)


def enumerate_system(system: AlcoveSystem, L: int) -> list[AffineWeylElement]:
    """All group elements of length <= L (length-zero symmetries included)."""
    sym = [g for _, g in system.symmetries]
    e = system.identity()
    zero_layer = {e}
    grow = [e]
    while grow:
        nxt = []
        for w in grow:
            for g in sym:
                v = g * w
                if v not in zero_layer:
                    zero_layer.add(v)
                    nxt.append(v)
        grow = nxt
    layers = [sorted(zero_layer)]
    seen = set(zero_layer)
    for k in range(1, L + 1):
        nxt = set()
        for w in layers[-1]:
            for s in system.reflections:
                v = s * w
                if v not in seen and system.length(v) == k:
                    nxt.add(v)
        for w in list(nxt):
            for g in sym:
                nxt.add(g * w)
        seen |= nxt
        layers.append(sorted(nxt))
    return [w for layer in layers for w in layer]


@lru_cache(maxsize=None)
def standard_algebra(n: int) -> HeckeAlgebra:
    """H: type C~_n with lambda_i = 2 (i < n), lambda_n = 1."""
    params = HeckeParams.standard(n)
    return HeckeAlgebra(c_tilde(n), dict(enumerate(params.lambdas)))


@lru_cache(maxsize=None)
def type_b_algebra(n: int) -> HeckeAlgebra:
    """H': extended B~_n, every reflection parameter 2."""
    return HeckeAlgebra(b_tilde_extended(n), {i: Fraction(2) for i in range(n + 1)})


def quadratic_relation_holds(H: HeckeAlgebra, label: int) -> bool:
    """(T - lambda)(T + 1) = 0."""
    T = H.gen(label)
    lam = H.lambdas[label]
    return (T - H.one().scale(lam)) * (T + H.one()) == H.zero()


def braid_relation_holds(H: HeckeAlgebra, i: Label, j: Label, m: int) -> bool:
    left = [i, j] * (m // 2) + ([i] if m % 2 else [])
    right = [j, i] * (m // 2) + ([j] if m % 2 else [])
    return H.word_product(left) == H.word_product(right)


# ----- type-B presentation and the map phi


def _phi_letter(label: Label, n: int) -> list[int]:
    if label == "tau":
        return [n]
    if label == 0:
        return [n, n - 1, n]  # t_0 = tau t_1 tau
    return [n - label]


def typeB_eval(word: Sequence[Label], n: int) -> HeckeElement:
    """Image in H of the word in tau, t_0, ..., t_n."""
    H = standard_algebra(n)
    out: list[int] = []
    for label in word:
        out += _phi_letter(label, n)
    return H.word_product(out)


def phi(a: HeckeElement) -> HeckeElement:
    """Linear extension of T'_x -> image of the normal word of x."""
    n = a.algebra.n
    H = standard_algebra(n)
    out = H.zero()
    for x, c in a.terms.items():
        out = out + typeB_eval(a.algebra.system.word(x), n).scale(c)
    return out


def type_b_diagram(n: int) -> dict[tuple[int, int], float]:
    """Coxeter numbers m(t_i, t_j) of B~_n, i < j."""
    import math

    out: dict[tuple[int, int], float] = {}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            out[i, j] = 2
    if n == 1:
        out[0, 1] = math.inf
        return out
    if n == 2:
        out[0, 2] = out[1, 2] = 4
        return out
    out[0, 2] = out[1, 2] = 3
    for i in range(2, n - 1):
        out[i, i + 1] = 3
    out[n - 1, n] = 4
    return out


def _sparse_rank(vectors: Iterable[Mapping]) -> int:
    """Rank of finitely supported vectors with cyclotomic entries."""
    pivots: dict = {}
    r = 0
    for vec in vectors:
        v = {k: c for k, c in vec.items() if c}
        while v:
            key = min(v)
            if key not in pivots:
                lead = v[key]
                pivots[key] = {k: c / lead for k, c in v.items()}
                r += 1
                break
            row = pivots[key]
            f = v[key]
            for k, c in row.items():
                nv = v.get(k, ZERO) - f * c
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return r


def random_word(rng: random.Random, labels: Sequence[Label], max_len: int) -> list[Label]:
    return [rng.choice(labels) for _ in range(rng.randint(0, max_len))]


def verify_typeB_relations(n: int, max_len: int = 6, pairs: int = 100, seed: int = 0) -> list[tuple[str, bool, str]]:
    """Checks of the presentation of H' inside H, and of phi as a map H' -> H."""
    H = standard_algebra(n)
    Hp = type_b_algebra(n)
    rng = random.Random(seed)
    report: list[tuple[str, bool, str]] = []

    def img(word):
        return typeB_eval(word, n)

    report.append(("tau_squared", img(["tau", "tau"]) == H.one(), "phi(tau)^2 = 1"))
    for i in range(0, n + 1):
        t = img([i])
        ok = (t - H.one().scale(2)) * (t + H.one()) == H.zero()
        report.append((f"quadratic_t{i}", ok, f"(phi(t_{i}) - 2)(phi(t_{i}) + 1) = 0"))
    for (i, j), m in type_b_diagram(n).items():
        if m == float("inf"):
            continue
        m = int(m)
        left = [i, j] * (m // 2) + ([i] if m % 2 else [])
        right = [j, i] * (m // 2) + ([j] if m % 2 else [])
        report.append((f"braid_t{i}_t{j}", img(left) == img(right), f"m = {m}"))
    report.append(("tau_conjugates_t1_to_t0", img(["tau", 1, "tau"]) == img([0]), "t_0 = tau t_1 tau"))
    if n >= 2:
        report.append(
            ("tau_t1_braid", img(["tau", 1, "tau", 1]) == img([1, "tau", 1, "tau"]), "tau t_1 tau t_1 = t_1 tau t_1 tau")
        )
    for i in range(2, n + 1):
        report.append((f"tau_commutes_t{i}", img(["tau", i]) == img([i, "tau"]), "assumed from the diagram symmetry"))

    labels: list[Label] = ["tau"] + list(range(1, n + 1))
    hom_ok = True
    for _ in range(pairs):
        u, v = random_word(rng, labels, max_len // 2 + 1), random_word(rng, labels, max_len // 2 + 1)
        prod_hp = Hp.multiply(Hp.word_product(u), Hp.word_product(v))
        if phi(prod_hp) != H.multiply(phi(Hp.word_product(u)), phi(Hp.word_product(v))):
            hom_ok = False
            break
    report.append(("homomorphism", hom_ok, f"{pairs} random word pairs"))

    covered = all(
        any(typeB_eval([lab], n) == H.gen(i) for lab in labels) for i in range(n + 1)
    )
    report.append(("coverage", covered, "every T_i is the image of a generator"))

    elements = enumerate_system(Hp.system, max_len)
    images = [phi(Hp.basis(x)).terms for x in elements]
    rk = _sparse_rank(images)
    report.append(("independence", rk == len(elements), f"rank {rk} of {len(elements)} normal words"))

    trace_ok = star_ok = True
    for _ in range(pairs):
        support = rng.sample(elements, min(3, len(elements)))
        a = Hp.from_dict({x: cyc(rng.randint(-3, 3)) for x in support})
        a = a + Hp.basis(rng.choice(elements)).scale(CyclotomicNumber.from_exponents(4, {1: 1}))
        trace_ok &= H.trace(phi(a)) == Hp.trace(a)
        star_ok &= phi(Hp.star(a)) == H.star(phi(a))
    report.append(("trace_transport", trace_ok, "tr o phi = tr"))
    report.append(("star_transport", star_ok, "phi o * = * o phi"))
    return report
