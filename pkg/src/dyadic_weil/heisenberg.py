"""The Heisenberg group over Q_2, its Schroedinger model, and Weil operators.

Operators are lists of primitive moves applied right to left, so the list
[A, B, C] is the composite A o B o C.  The generators are normalized with
trivial constants: x(b) multiplies by psi(y^t b y), h(b) substitutes b^t y and
w is the full Fourier transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import qmatrix as qm
from .chevalley import GroupWord, Letter, Root, h_block, w_block, x_block, word_h
from .cyclotomic import ONE, CycMatrix, CyclotomicNumber, cyc
from .dyadic import as_fraction
from .qmatrix import QMatrix
from .schwartz import (
    STANDARD_CHAR,
    CharacterData,
    SchwartzFunction,
    fourier_full,
    fourier_partial,
    inverse_fourier_full,
    mult_linear_character,
    mult_quadratic_character,
    phi_lattice,
    substitute_linear,
    translate,
)

# ----- Heisenberg group


@dataclass(frozen=True)
class HeisenbergElement:
    """(x + y, t) with x in X, y in Y."""

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    t: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(as_fraction(v) for v in self.x))
        object.__setattr__(self, "y", tuple(as_fraction(v) for v in self.y))
        object.__setattr__(self, "t", as_fraction(self.t))
        if len(self.x) != len(self.y):
            raise ValueError("x and y parts must have the same dimension")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def w_part(self) -> tuple[Fraction, ...]:
        return self.x + self.y

    @classmethod
    def central(cls, n: int, t) -> HeisenbergElement:
        z = (Fraction(0),) * n
        return cls(z, z, t)

    @classmethod
    def from_vector(cls, v: Sequence, t=0) -> HeisenbergElement:
        n = len(v) // 2
        return cls(tuple(v[:n]), tuple(v[n:]), t)

    def inverse(self) -> HeisenbergElement:
        return HeisenbergElement(tuple(-a for a in self.x), tuple(-a for a in self.y), -self.t)


def symplectic_form(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Q(u, v) = u_x . v_y - u_y . v_x."""
    n = len(u) // 2
    return sum((u[i] * v[n + i] - u[n + i] * v[i] for i in range(n)), Fraction(0))


def heisenberg_mul(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    u, v = a.w_part, b.w_part
    w = tuple(p + q for p, q in zip(u, v))
    return HeisenbergElement.from_vector(w, a.t + b.t + symplectic_form(u, v))


def act_linear(g: QMatrix, h: HeisenbergElement) -> HeisenbergElement:
    """g(v, t) = (g v, t)."""
    return HeisenbergElement.from_vector(qm.apply(g, h.w_part), h.t)


def rho_action(h: HeisenbergElement, f: SchwartzFunction, char: CharacterData = STANDARD_CHAR) -> SchwartzFunction:
    """rho(x + y, t) f (y0) = psi(t - x.y - 2 x.y0) f(y + y0)."""
    if h.n != f.n:
        raise ValueError("dimension mismatch")
    g = translate(f, h.y)
    g = mult_linear_character(g, [-2 * a for a in h.x], char)
    phase = h.t - sum((a * b for a, b in zip(h.x, h.y)), Fraction(0))
    return g.scale(char.psi(phase))


# ----- primitive moves and operators


@dataclass(frozen=True)
class MultQuadratic:
    b: QMatrix


@dataclass(frozen=True)
class Substitute:
    b: QMatrix


@dataclass(frozen=True)
class PartialFourier:
    i: int


@dataclass(frozen=True)
class FullFourier:
    pass


@dataclass(frozen=True)
class InverseFullFourier:
    pass


@dataclass(frozen=True)
class Scalar:
    c: CyclotomicNumber


Move = Union[MultQuadratic, Substitute, PartialFourier, FullFourier, InverseFullFourier, Scalar]


def apply_move(move: Move, f: SchwartzFunction, char: CharacterData = STANDARD_CHAR) -> SchwartzFunction:
    if isinstance(move, MultQuadratic):
        return mult_quadratic_character(f, move.b, char)
    if isinstance(move, Substitute):
        return substitute_linear(f, move.b)
    if isinstance(move, PartialFourier):
        return fourier_partial(f, move.i, char)
    if isinstance(move, FullFourier):
        return fourier_full(f, char)
    if isinstance(move, InverseFullFourier):
        return inverse_fourier_full(f, char)
    if isinstance(move, Scalar):
        return f.scale(move.c)
    raise TypeError(f"unknown move {move!r}")


def _inverse_move(move: Move, n: int) -> tuple[Move, ...]:
    if isinstance(move, MultQuadratic):
        return (MultQuadratic(qm.scale(move.b, -1)),)
    if isinstance(move, Substitute):
        return (Substitute(qm.inverse(move.b)),)
    if isinstance(move, PartialFourier):
        flip = tuple(tuple(Fraction(-1 if (r == c == move.i) else int(r == c)) for c in range(n)) for r in range(n))
        return (Substitute(flip), PartialFourier(move.i))
    if isinstance(move, FullFourier):
        return (InverseFullFourier(),)
    if isinstance(move, InverseFullFourier):
        return (FullFourier(),)
    if isinstance(move, Scalar):
        return (Scalar(move.c.inverse()),)
    raise TypeError(f"unknown move {move!r}")


def fuse_moves(moves: Sequence[Move], n: int) -> tuple[Move, ...]:
    """Merge adjacent substitutions (matrix product) and adjacent quadratic characters (sum).

    F next to F^-1 cancels, and scalars commute with every move so they are
    collected into one.  Applying a long run of substitutions one at a time
    can blow up the coset boxes of the intermediate functions, while the
    fused move never leaves the final box.
    """
    out: list[Move] = []
    scalar = ONE
    ident = qm.identity(n)
    for move in moves:
        if isinstance(move, Scalar):
            scalar = scalar * move.c
            continue
        last = out[-1] if out else None
        if isinstance(move, FullFourier) and isinstance(last, InverseFullFourier) or (
            isinstance(move, InverseFullFourier) and isinstance(last, FullFourier)
        ):
            out.pop()
            continue
        if isinstance(move, Substitute) and isinstance(last, Substitute):
            out[-1] = Substitute(qm.mul(last.b, move.b))
        elif isinstance(move, MultQuadratic) and isinstance(last, MultQuadratic):
            out[-1] = MultQuadratic(qm.add(last.b, move.b))
        else:
            out.append(move)
        last = out[-1]
        if isinstance(last, Substitute) and last.b == ident:
            out.pop()
        elif isinstance(last, MultQuadratic) and last.b == qm.zeros(n, n):
            out.pop()
    if scalar != ONE:
        out.insert(0, Scalar(scalar))
    return tuple(out)


@dataclass(frozen=True)
class WeilOperator:
    n: int
    moves: tuple[Move, ...] = ()
    char: CharacterData = field(default=STANDARD_CHAR, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    def __call__(self, f: SchwartzFunction) -> SchwartzFunction:
        return self.apply(f)

    def apply(self, f: SchwartzFunction) -> SchwartzFunction:
        if f.n != self.n:
            raise ValueError("dimension mismatch")
        for move in reversed(fuse_moves(self.moves, self.n)):
            f = apply_move(move, f, self.char)
        return f

    def compose(self, other: WeilOperator) -> WeilOperator:
        """self o other."""
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return WeilOperator(self.n, self.moves + other.moves, self.char)

    __matmul__ = compose

    def inverse(self) -> WeilOperator:
        out: tuple[Move, ...] = ()
        for move in self.moves:
            out = _inverse_move(move, self.n) + out
        return WeilOperator(self.n, out, self.char)

    def scaled(self, c) -> WeilOperator:
        c = c if isinstance(c, CyclotomicNumber) else cyc(c)
        return WeilOperator(self.n, (Scalar(c),) + self.moves, self.char)

    def with_fourier_rescaled(self, c: CyclotomicNumber) -> WeilOperator:
        """Replace every full transform F by c F (and its inverse by c^-1 F^-1)."""
        out: list[Move] = []
        for move in self.moves:
            if isinstance(move, FullFourier):
                out += [Scalar(c), move]
            elif isinstance(move, InverseFullFourier):
                out += [Scalar(c.inverse()), move]
            else:
                out.append(move)
        return WeilOperator(self.n, tuple(out), self.char)

    @property
    def fourier_balance(self) -> int:
        """(number of F) - (number of F^-1)."""
        return sum(isinstance(m, FullFourier) for m in self.moves) - sum(
            isinstance(m, InverseFullFourier) for m in self.moves
        )


def identity_operator(n: int, char: CharacterData = STANDARD_CHAR) -> WeilOperator:
    return WeilOperator(n, (), char)


def weil_generator(kind: str, arg=None, n: int | None = None, char: CharacterData = STANDARD_CHAR) -> WeilOperator:
    """Operators for x(b), h(b), w and w_i (partial transform in coordinate i)."""
    if kind == "x":
        b = qm.qmat(arg)
        if not qm.is_symmetric(b):
            raise ValueError("x(b) needs symmetric b")
        return WeilOperator(len(b), (MultQuadratic(b),), char)
    if kind == "h":
        b = qm.qmat(arg)
        qm.inverse(b)
        return WeilOperator(len(b), (Substitute(b),), char)
    if kind == "w":
        return WeilOperator(n, (FullFourier(),), char)
    if kind == "w_i":
        return WeilOperator(n, (PartialFourier(arg),), char)
    raise ValueError(f"unknown generator {kind!r}")


def generator_matrix(kind: str, arg=None, n: int | None = None) -> QMatrix:
    """The image in Sp_2n(Q) of a generator."""
    if kind == "x":
        return x_block(qm.qmat(arg))
    if kind == "h":
        return h_block(qm.qmat(arg))
    if kind == "w":
        return w_block(n)
    raise ValueError(f"no matrix for generator {kind!r}")


# ----- word compiler


def _positive_letter_moves(alpha: Root, t: Fraction) -> tuple[Move, ...]:
    n = alpha.n
    if alpha.kind == "long":
        (i,) = alpha.indices
        return (MultQuadratic(qm.unit(n, i, i, t)),)
    if alpha.kind == "sum":
        i, j = alpha.indices
        return (MultQuadratic(qm.add(qm.unit(n, i, j, t), qm.unit(n, j, i, t))),)
    i = alpha.vec.index(1)
    j = alpha.vec.index(-1)
    return (Substitute(qm.add(qm.identity(n), qm.unit(n, i, j, t))),)


def letter_moves(letter: Letter, direct_short: bool = False) -> tuple[Move, ...]:
    """Moves for one letter.  Negative roots go through w^-1 x_a(-t) w.

    With ``direct_short`` a negative difference root l_i - l_j (i > j) is
    compiled straight to the substitution by 1 + t E_ij instead.
    """
    alpha, t = letter.root, letter.t
    if not t:
        return ()
    if alpha.is_positive:
        return _positive_letter_moves(alpha, t)
    if direct_short and alpha.kind == "diff":
        n = alpha.n
        i = alpha.vec.index(1)
        j = alpha.vec.index(-1)
        return (Substitute(qm.add(qm.identity(n), qm.unit(n, i, j, t))),)
    return (InverseFullFourier(),) + _positive_letter_moves(-alpha, -t) + (FullFourier(),)


def compile_word(
    word: GroupWord, char: CharacterData = STANDARD_CHAR, direct_short: bool = False
) -> WeilOperator:
    moves: tuple[Move, ...] = ()
    for letter in word:
        moves += letter_moves(letter, direct_short)
    return WeilOperator(word.n, moves, char)


# ----- line stabilization and operator comparison


def proportionality(g: SchwartzFunction, f: SchwartzFunction) -> CyclotomicNumber | None:
    """c with g = c f, else None."""
    if f.is_zero:
        raise ValueError("reference function is zero")
    y, v = next((rep, val) for rep, val in f.cells() if val)
    c = g.eval(y) / v
    return c if g == f.scale(c) else None


def stabilizes_line(op: WeilOperator, f: SchwartzFunction) -> CyclotomicNumber | None:
    if f.is_zero:
        raise ValueError("cannot stabilize the zero line")
    return proportionality(op(f), f)


def truncation_basis(n: int, N: int, p: int = 2) -> list[SchwartzFunction]:
    """Cell indicators spanning V_N: support p^-N Z^n, constancy p^N Z^n."""
    from .dyadic import coset_representatives

    return [
        translate(phi_lattice(N, p, n), [-a for a in rep]) for rep in coset_representatives(-N, N, p, n)
    ]


def operators_equal(a: WeilOperator, b: WeilOperator, N: int) -> bool:
    """Exact equality of images of every basis vector of V_N."""
    return all(a(f) == b(f) for f in truncation_basis(a.n, N))


def operator_ratio(a: WeilOperator, b: WeilOperator, N: int) -> CyclotomicNumber | None:
    """c with a = c b on V_N, or None when not proportional."""
    c = None
    for f in truncation_basis(a.n, N):
        af, bf = a(f), b(f)
        if bf.is_zero:
            if not af.is_zero:
                return None
            continue
        ratio = proportionality(af, bf)
        if ratio is None or (c is not None and ratio != c):
            return None
        c = ratio
    return c


def operator_matrix(op: WeilOperator, N: int) -> CycMatrix:
    """Matrix of op on V_N in the cell-indicator basis; requires op(V_N) within V_N."""
    basis = truncation_basis(op.n, N)
    reps = [_rep(b) for b in basis]
    columns = []
    for f in basis:
        g = op(f)
        if not g.is_zero and (g.m < -N or g.N > N):
            raise ValueError("operator leaves the truncation space")
        columns.append([g.eval(y) for y in reps])
    return CycMatrix([[col[r] for col in columns] for r in range(len(basis))])


def _rep(f: SchwartzFunction) -> tuple[Fraction, ...]:
    return next(rep for rep, v in f.cells() if v)


def intertwining_check(
    kind: str, arg, h: HeisenbergElement, f: SchwartzFunction, char: CharacterData = STANDARD_CHAR
) -> bool:
    """T(g)(rho(h) f) == rho(g h)(T(g) f)."""
    n = f.n
    T = weil_generator(kind, arg, n=n, char=char)
    g = generator_matrix(kind, arg, n=n)
    lhs = T(rho_action(h, f, char))
    rhs = rho_action(act_linear(g, h), T(f), char)
    return lhs == rhs


def metaplectic_defect(t, u, alpha: Root, N: int = 2, char: CharacterData = STANDARD_CHAR) -> CyclotomicNumber:
    """c with h_a(t) h_a(u) = c h_a(tu) as operators on V_N."""
    t, u = as_fraction(t), as_fraction(u)
    if not t or not u:
        raise ValueError("defect needs nonzero arguments")
    lhs = compile_word(word_h(alpha, t) * word_h(alpha, u), char)
    rhs = compile_word(word_h(alpha, t * u), char)
    c = operator_ratio(lhs, rhs, N)
    if c is None:
        raise ArithmeticError("operators are not proportional")
    return c


def joint_fixed_space(ops: Sequence[WeilOperator], N: int) -> list[list[CyclotomicNumber]]:
    """Basis (coordinate vectors on V_N) of the common kernel of op - 1."""
    from .cyclotomic import kernel_basis

    mats = [operator_matrix(op, N) for op in ops]
    dim = len(mats[0].entries)
    stacked = None
    for M in mats:
        D = M - CycMatrix.identity(dim)
        stacked = D if stacked is None else stacked.stack(D)
    return kernel_basis(stacked)


def function_from_coordinates(coords: Sequence[CyclotomicNumber], n: int, N: int) -> SchwartzFunction:
    from .schwartz import linear_combine

    return linear_combine(list(coords), truncation_basis(n, N))


__all__ = [
    "HeisenbergElement",
    "heisenberg_mul",
    "rho_action",
    "act_linear",
    "symplectic_form",
    "MultQuadratic",
    "Substitute",
    "PartialFourier",
    "FullFourier",
    "InverseFullFourier",
    "Scalar",
    "WeilOperator",
    "weil_generator",
    "generator_matrix",
    "compile_word",
    "letter_moves",
    "stabilizes_line",
    "proportionality",
    "operators_equal",
    "operator_ratio",
    "operator_matrix",
    "truncation_basis",
    "intertwining_check",
    "metaplectic_defect",
    "joint_fixed_space",
    "function_from_coordinates",
    "identity_operator",
]
