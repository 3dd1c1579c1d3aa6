"""The C_n root system, Chevalley generators of Sp_2n over Q, and congruence subgroups.

Matrices act on column vectors (x; y) with x, y in Q^n, and preserve the form
Q(u, v) = u_x . v_y - u_y . v_x.  Positive roots are l_i - l_j (i < j),
l_i + l_j and 2 l_i; the simple roots are l_i - l_(i+1) and 2 l_n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import qmatrix as qm
from .dyadic import as_fraction, is_integral, reduce_mod, valuation
from .qmatrix import QMatrix


@dataclass(frozen=True, order=True)
class Root:
    """A root of C_n as its coefficient vector in the basis l_1..l_n."""

    vec: tuple[int, ...]

    def __post_init__(self):
        nz = [c for c in self.vec if c]
        ok = (len(nz) == 1 and abs(nz[0]) == 2) or (len(nz) == 2 and all(abs(c) == 1 for c in nz))
        if not ok:
            raise ValueError(f"{self.vec} is not a root of type C")

    # ----- constructors
    @classmethod
    def long(cls, n: int, i: int, sign: int = 1) -> Root:
        v = [0] * n
        v[i] = 2 * sign
        return cls(tuple(v))

    @classmethod
    def diff(cls, n: int, i: int, j: int) -> Root:
        """l_i - l_j."""
        if i == j:
            raise ValueError("difference root needs i != j")
        v = [0] * n
        v[i], v[j] = 1, -1
        return cls(tuple(v))

    @classmethod
    def sum(cls, n: int, i: int, j: int, sign: int = 1) -> Root:
        """sign (l_i + l_j)."""
        if i == j:
            raise ValueError("sum root needs i != j")
        v = [0] * n
        v[i] = v[j] = sign
        return cls(tuple(v))

    @classmethod
    def parse(cls, text: str, n: int) -> Root:
        """Names such as '2l1', '-2l2', 'l1-l2', '-l1+l2', '-l1-l2' (1-based indices)."""
        s = text.replace(" ", "")
        v = [0] * n
        terms = re.findall(r"([+-]?)(\d*)l(\d+)", s)
        if not terms or "".join(a + b + "l" + c for a, b, c in terms) != s:
            raise ValueError(f"cannot parse root {text!r}")
        for sign, coef, idx in terms:
            k = int(idx) - 1
            if not 0 <= k < n:
                raise ValueError(f"index {idx} out of range for rank {n}")
            v[k] += (-1 if sign == "-" else 1) * (int(coef) if coef else 1)
        return cls(tuple(v))

    # ----- properties
    @property
    def n(self) -> int:
        return len(self.vec)

    @property
    def is_long(self) -> bool:
        return any(abs(c) == 2 for c in self.vec)

    @property
    def is_short(self) -> bool:
        return not self.is_long

    @property
    def kind(self) -> str:
        if self.is_long:
            return "long"
        return "diff" if sum(self.vec) == 0 else "sum"

    @property
    def is_positive(self) -> bool:
        return next(c for c in self.vec if c) > 0

    @property
    def sign(self) -> int:
        return 1 if self.is_positive else -1

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.vec) if c)

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.vec))

    def __add__(self, other: Root) -> Root:
        return Root(tuple(a + b for a, b in zip(self.vec, other.vec)))

    def pairing(self, coroot_of: Root) -> int:
        """<self, beta^vee> = 2 (self, beta) / (beta, beta)."""
        ip = sum(a * b for a, b in zip(self.vec, coroot_of.vec))
        nn = sum(b * b for b in coroot_of.vec)
        return 2 * ip // nn

    def name(self) -> str:
        out = ""
        for k, c in enumerate(self.vec):
            if not c:
                continue
            mag = abs(c)
            out += ("-" if c < 0 else ("+" if out else "")) + (str(mag) if mag > 1 else "") + f"l{k + 1}"
        return out

    def __str__(self) -> str:
        return self.name()


def is_root_vector(vec: Sequence[int]) -> bool:
    try:
        Root(tuple(vec))
    except ValueError:
        return False
    return True


def all_roots(n: int) -> list[Root]:
    out = []
    for i in range(n):
        out += [Root.long(n, i, 1), Root.long(n, i, -1)]
        for j in range(n):
            if i != j:
                out.append(Root.diff(n, i, j))
        for j in range(i + 1, n):
            out += [Root.sum(n, i, j, 1), Root.sum(n, i, j, -1)]
    return sorted(out)


def positive_roots(n: int) -> list[Root]:
    return [r for r in all_roots(n) if r.is_positive]


def simple_roots(n: int) -> list[Root]:
    return [Root.diff(n, i, i + 1) for i in range(n - 1)] + [Root.long(n, n - 1)]


def highest_root(n: int) -> Root:
    return Root.long(n, 0)


@dataclass(frozen=True)
class AffineRoot:
    """The affine function alpha + m."""

    root: Root
    m: int

    def __str__(self) -> str:
        return f"{self.root}{self.m:+d}"


def alpha_zero(n: int) -> AffineRoot:
    """1 - alpha_*."""
    return AffineRoot(-highest_root(n), 1)


# ----- matrices


def _zeros(k: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * k for _ in range(k)]


def root_matrix(alpha: Root) -> QMatrix:
    """X_alpha in the 2n x 2n matrix algebra."""
    n = alpha.n
    X = _zeros(2 * n)
    pos = alpha if alpha.is_positive else -alpha
    idx = pos.indices
    if pos.is_long:
        (i,) = idx
        X[i][n + i] = Fraction(1)
    elif pos.kind == "sum":
        i, j = idx
        X[i][n + j] = X[j][n + i] = Fraction(1)
    else:
        i = next(k for k in idx if pos.vec[k] == 1)
        j = next(k for k in idx if pos.vec[k] == -1)
        X[i][j] = Fraction(1)
        X[n + j][n + i] = Fraction(-1)
    M = qm.qmat(X)
    return M if alpha.is_positive else qm.transpose(M)


def omega(n: int) -> QMatrix:
    O = _zeros(2 * n)
    for i in range(n):
        O[i][n + i] = Fraction(1)
        O[n + i][i] = Fraction(-1)
    return qm.qmat(O)


def is_symplectic(M: QMatrix) -> bool:
    n = len(M) // 2
    return qm.mul(qm.mul(qm.transpose(M), omega(n)), M) == omega(n)


def chevalley_matrix(alpha: Root, t) -> QMatrix:
    """x_alpha(t) = 1 + t X_alpha."""
    return qm.add(qm.identity(2 * alpha.n), qm.scale(root_matrix(alpha), t))


def x_block(b: QMatrix) -> QMatrix:
    """[[1, b], [0, 1]]."""
    n = len(b)
    return _blocks(qm.identity(n), b, qm.zeros(n, n), qm.identity(n))


def h_block(b: QMatrix) -> QMatrix:
    """[[b, 0], [0, b^-t]]."""
    n = len(b)
    return _blocks(b, qm.zeros(n, n), qm.zeros(n, n), qm.transpose(qm.inverse(b)))


def w_block(n: int) -> QMatrix:
    """[[0, 1], [-1, 0]]."""
    return omega(n)


def _blocks(a: QMatrix, b: QMatrix, c: QMatrix, d: QMatrix) -> QMatrix:
    top = tuple(ra + rb for ra, rb in zip(a, b))
    bottom = tuple(rc + rd for rc, rd in zip(c, d))
    return top + bottom


def split_blocks(M: QMatrix) -> tuple[QMatrix, QMatrix, QMatrix, QMatrix]:
    n = len(M) // 2
    a = tuple(row[:n] for row in M[:n])
    b = tuple(row[n:] for row in M[:n])
    c = tuple(row[:n] for row in M[n:])
    d = tuple(row[n:] for row in M[n:])
    return a, b, c, d


# ----- group words


@dataclass(frozen=True)
class Letter:
    root: Root
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))

    def inverse(self) -> Letter:
        return Letter(self.root, -self.t)

    def to_json(self) -> dict:
        return {"root": self.root.name(), "t": str(self.t)}


@dataclass(frozen=True)
class GroupWord:
    """An ordered product of root-group letters x_alpha(t), read left to right."""

    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if letter.root.n != self.n:
                raise ValueError(f"root {letter.root} does not belong to rank {self.n}")

    def __mul__(self, other: GroupWord) -> GroupWord:
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return GroupWord(self.n, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(self.n, tuple(l.inverse() for l in reversed(self.letters)))

    def matrix(self) -> QMatrix:
        out = qm.identity(2 * self.n)
        for letter in self.letters:
            out = qm.mul(out, chevalley_matrix(letter.root, letter.t))
        return out

    def to_json(self) -> list[dict]:
        return [l.to_json() for l in self.letters]

    @classmethod
    def from_json(cls, n: int, data: Iterable[dict]) -> GroupWord:
        return cls(n, tuple(Letter(Root.parse(d["root"], n), Fraction(d["t"])) for d in data))


def word_x(alpha: Root, t) -> GroupWord:
    return GroupWord(alpha.n, (Letter(alpha, t),))


def word_w(alpha: Root, t) -> GroupWord:
    """w_alpha(t) = x_alpha(t) x_-alpha(-1/t) x_alpha(t)."""
    t = as_fraction(t)
    if not t:
        raise ValueError("w_alpha(t) needs t != 0")
    return GroupWord(alpha.n, (Letter(alpha, t), Letter(-alpha, -1 / t), Letter(alpha, t)))


def word_h(alpha: Root, t) -> GroupWord:
    """h_alpha(t) = w_alpha(t) w_alpha(-1)."""
    return word_w(alpha, t) * word_w(alpha, -1)


def derived_elements(alpha: Root, t) -> tuple[QMatrix, QMatrix]:
    """(w_alpha(t), h_alpha(t)) as matrices."""
    return word_w(alpha, t).matrix(), word_h(alpha, t).matrix()


def affine_root_letter(gamma: AffineRoot, t) -> Letter:
    """x_gamma(t) = x_alpha(2^m t) for t in Z_2."""
    t = as_fraction(t)
    if not is_integral(t, 2):
        raise ValueError(f"{t} is not in Z_2")
    return Letter(gamma.root, Fraction(2) ** gamma.m * t)


# ----- Steinberg relations


def commutator_decomposition(alpha: Root, beta: Root, t, u) -> dict[Root, Fraction] | None:
    """Solve (x_a(t), x_b(u)) = prod x_(ia+jb)(s_ij) over the ordered combination roots.

    Returns the coefficients, or None when the commutator is not such a product.
    """
    if alpha == -beta:
        raise ValueError("commutator relation needs alpha + beta != 0")
    t, u = as_fraction(t), as_fraction(u)
    xa, xb = chevalley_matrix(alpha, t), chevalley_matrix(beta, u)
    C = qm.mul(qm.mul(xa, xb), qm.mul(chevalley_matrix(alpha, -t), chevalley_matrix(beta, -u)))
    combos = []
    for i in range(1, 4):
        for j in range(1, 4):
            vec = tuple(i * a + j * b for a, b in zip(alpha.vec, beta.vec))
            if is_root_vector(vec):
                combos.append((i + j, Root(vec)))
    combos.sort(key=lambda c: c[0])
    coeffs: dict[Root, Fraction] = {}
    for _, gamma in combos:
        X = root_matrix(gamma)
        r, c = next((r, c) for r in range(len(X)) for c in range(len(X)) if X[r][c])
        s = C[r][c] / X[r][c]
        coeffs[gamma] = s
        C = qm.mul(chevalley_matrix(gamma, -s), C)
    return coeffs if C == qm.identity(len(C)) else None


def steinberg_check(relation: str, alpha: Root, t, u=None, beta: Root | None = None) -> bool:
    t = as_fraction(t)
    u = as_fraction(u) if u is not None else None
    if relation == "R1":
        lhs = qm.mul(chevalley_matrix(alpha, t), chevalley_matrix(alpha, u))
        return lhs == chevalley_matrix(alpha, t + u)
    if relation == "R2":
        return commutator_decomposition(alpha, beta, t, u) is not None
    if relation == "R3":
        w_t, _ = derived_elements(alpha, t)
        w_mt, _ = derived_elements(alpha, -t)
        lhs = qm.mul(qm.mul(w_t, chevalley_matrix(alpha, u)), w_mt)
        return lhs == chevalley_matrix(-alpha, -u / (t * t))
    if relation == "R4":
        beta = alpha if beta is None else beta
        _, h = derived_elements(alpha, t)
        lhs = qm.mul(qm.mul(h, chevalley_matrix(beta, u)), qm.inverse(h))
        return lhs == chevalley_matrix(beta, t ** beta.pairing(alpha) * u)
    if relation == "R5":
        _, ht = derived_elements(alpha, t)
        _, hu = derived_elements(alpha, u)
        _, htu = derived_elements(alpha, t * u)
        return qm.mul(ht, hu) == htu
    raise ValueError(f"unknown relation {relation!r}")


# ----- congruence subgroups


def _mod2(M: QMatrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(reduce_mod(x, 1, 2) for x in row) for row in M)


def reduce_mod2(M: QMatrix) -> tuple[tuple[int, ...], ...]:
    """Entrywise reduction of an integral matrix."""
    return _mod2(M)


def _in_borel_mod2(R: tuple[tuple[int, ...], ...]) -> bool:
    n = len(R) // 2
    for i in range(n):
        for j in range(n):
            if R[n + i][j]:
                return False
            if i > j and R[i][j]:
                return False
            if i == j and R[i][j] != 1:
                return False
    return True


def preserves_quadratic_form_mod2(R: Sequence[Sequence[int]]) -> bool:
    """Whether v -> R v fixes q(x, y) = sum x_i y_i on every basis vector (with the form preserved)."""
    n = len(R) // 2
    for col in range(2 * n):
        v = [R[r][col] for r in range(2 * n)]
        q_img = sum(v[i] * v[n + i] for i in range(n)) % 2
        if q_img != 0:  # q vanishes on every standard basis vector
            return False
    return True


def in_subgroup(M: QMatrix, which: str) -> bool:
    """Membership in K = Sp_2n(Z_2), the Iwahori I, or J (reduction in B')."""
    if which not in ("K", "I", "J"):
        raise ValueError(f"unknown subgroup {which!r}")
    if not all(is_integral(x, 2) for row in M for x in row) or not is_symplectic(M):
        return False
    if which == "K":
        return True
    R = _mod2(M)
    if not _in_borel_mod2(R):
        return False
    return which == "I" or preserves_quadratic_form_mod2(R)


def valuation_matrix(M: QMatrix) -> list[list[float]]:
    return [[valuation(x, 2) for x in row] for row in M]
