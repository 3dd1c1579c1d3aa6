"""Verification suites wiring the modules together, plus the report format."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from . import qmatrix as qm
from .chevalley import GroupWord, Letter, Root, all_roots, steinberg_check, word_h, word_w, word_x
from .cyclotomic import ONE, CyclotomicNumber, cyc
from .dyadic import STANDARD_PSI, AdditiveCharacter, evaluate_character, valuation
from .finite_groups import (
    dim_U0,
    enumerate_group,
    index,
    orthogonal_by_filter,
    sp_order_formula,
    type_eigenvalue,
)
from .hecke import enumerate_system, standard_algebra, verify_typeB_relations
from .heisenberg import (
    HeisenbergElement,
    compile_word,
    function_from_coordinates,
    intertwining_check,
    joint_fixed_space,
    metaplectic_defect,
    operator_matrix,
    operators_equal,
    proportionality,
    stabilizes_line,
    weil_generator,
)
from .schwartz import (
    STANDARD_CHAR,
    CharacterData,
    fourier_full,
    fourier_partial,
    inverse_fourier_full,
    phi_lattice,
    random_schwartz,
    reflect,
    tensor,
    tensor_power,
)
from .weyl import coxeter_m, element_order, simple_reflection

SUITES = ("fourier", "weil", "minimal-type", "hecke", "finite-indices")
FIXED_SPACE_BUDGET = 4096


def default_trunc(n: int) -> int:
    return 2 if n == 1 else 1


@dataclass(frozen=True)
class SuiteConfig:
    n: int = 2
    trunc: int | None = None
    max_len: int = 6
    seed: int = 0
    samples: int = 50
    corrupt: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.trunc is not None and self.trunc < 1:
            raise ValueError("truncation must be at least 1")
        if self.max_len < 1:
            raise ValueError("max length must be at least 1")

    @property
    def N(self) -> int:
        return default_trunc(self.n) if self.trunc is None else self.trunc

    def echo(self) -> dict:
        out = asdict(self)
        out["trunc"] = self.N
        return out


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    anchor: str
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    suite: str
    config: dict
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, anchor: str, details: str = "") -> bool:
        if not anchor:
            raise ValueError("every check needs an anchor")
        self.checks.append(Check(name, "pass" if ok else "fail", anchor, details))
        return ok

    @property
    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"pass": passed, "fail": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "checks": [asdict(c) for c in self.checks],
            "summary": self.summary,
        }

    def text_lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'} {self.suite}/{c.name} {c.anchor}" for c in self.checks]


def emit_report(reports: Iterable[Report], path: str | None = None, fmt: str = "json") -> str:
    reports = list(reports)
    if fmt == "json":
        data = [r.to_json() for r in reports]
        text = json.dumps(data[0] if len(data) == 1 else data, indent=2, sort_keys=True) + "\n"
    elif fmt == "text":
        text = "".join(line + "\n" for r in reports for line in r.text_lines())
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# ----- sampling helpers


def _rand_dyadic(rng: random.Random, span: int = 4, depth: int = 2) -> Fraction:
    return Fraction(rng.randint(-span, span), 2 ** rng.randint(0, depth))


def random_heisenberg(rng: random.Random, n: int) -> HeisenbergElement:
    return HeisenbergElement(
        tuple(_rand_dyadic(rng) for _ in range(n)),
        tuple(_rand_dyadic(rng) for _ in range(n)),
        Fraction(rng.randint(-3, 3), 4),
    )


def random_symmetric(rng: random.Random, n: int) -> qm.QMatrix:
    b = [[Fraction(rng.randint(-2, 2), 2 ** rng.randint(0, 1)) for _ in range(n)] for _ in range(n)]
    return qm.add(b, qm.transpose(b))


def random_invertible(rng: random.Random, n: int) -> qm.QMatrix:
    while True:
        diag = [Fraction(rng.choice([1, -1, 3, 2, -2])) ** rng.choice([1, -1]) for _ in range(n)]
        b = [[diag[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        if n > 1:
            i, j = rng.sample(range(n), 2)
            b = qm.mul(b, qm.add(qm.identity(n), qm.unit(n, i, j, rng.randint(-2, 2))))
        try:
            qm.inverse(b)
            return b
        except ValueError:
            continue


# ----- fourier


def _phi_hat_expected(m: int, char: CharacterData):
    return phi_lattice(char.shift - m, char.p).scale(char.vol_lattice(m))


def suite_fourier(cfg: SuiteConfig) -> Report:
    rep = Report("fourier", cfg.echo())
    rng = random.Random(cfg.seed)
    chars = [STANDARD_CHAR, CharacterData(AdditiveCharacter(3, Fraction(1, 3))), CharacterData(AdditiveCharacter(2, Fraction(1, 8)))]

    def transform(f, char):
        g = fourier_full(f, char)
        return g.scale(2) if cfg.corrupt else g

    ok = all(transform(phi_lattice(m), STANDARD_CHAR) == phi_lattice(-m).scale(Fraction(2) ** -m) for m in range(-2, 3))
    rep.add("phi_hat_dyadic", ok, "F phi_m = 2^-m phi_-m (p = 2, c = 1)", "m in -2..2")

    ok = True
    for char in chars:
        for m in range(-2, 3):
            ok &= transform(phi_lattice(m, char.p), char) == _phi_hat_expected(m, char)
    rep.add("support_law", ok, "F phi_m = vol(p^m Z_p) phi_(c - delta - m)", "p = 2, 3; c = 1, 3")

    count = 0
    ok = True
    for p, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        char = STANDARD_CHAR if p == 2 else chars[1]
        width = 2 if n == 1 else 1
        levels = (1, 4, 8) if p == 2 else (1, 3)
        for _ in range(max(25, cfg.samples // 2)):
            f = random_schwartz(rng, p, n, m_range=(-1, 0), max_width=width, levels=levels)
            ok &= transform(transform(f, char), char) == reflect(f)
            count += 1
    rep.add("inversion", ok, "F F f (y) = f(-y)", f"{count} random functions, p in 2, 3")

    ok = True
    for _ in range(20):
        f = random_schwartz(rng, 2, 1, m_range=(-1, 0), max_width=2)
        g = random_schwartz(rng, 2, 1, m_range=(-1, 0), max_width=2)
        ok &= transform(tensor(f, g), STANDARD_CHAR) == tensor(transform(f, STANDARD_CHAR), transform(g, STANDARD_CHAR))
    rep.add("tensor_law", ok, "F (f (x) g) = F f (x) F g", "20 random pairs")

    ok = True
    for _ in range(20):
        f = random_schwartz(rng, 2, 2, m_range=(-1, 0), max_width=1)
        ok &= fourier_partial(fourier_partial(f, 0), 1) == fourier_full(f)
        ok &= inverse_fourier_full(fourier_full(f)) == f
    rep.add("partial_composition", ok, "F = F_1 o F_2, F^-1 F = 1", "20 random functions, n = 2")
    return rep


# ----- weil


def suite_weil(cfg: SuiteConfig, ranks: Iterable[int] | None = None) -> Report:
    rep = Report("weil", cfg.echo())
    rng = random.Random(cfg.seed)
    ranks = [cfg.n] if ranks is None else list(ranks)
    for n in ranks:
        for kind in ("x", "h", "w"):
            ok = True
            for _ in range(cfg.samples):
                arg = random_symmetric(rng, n) if kind == "x" else random_invertible(rng, n) if kind == "h" else None
                h = random_heisenberg(rng, n)
                f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=2 if n == 1 else 1)
                ok &= intertwining_check(kind, arg, h, f)
            rep.add(f"intertwining_{kind}_n{n}", ok, "T(g) rho(h) = rho(g.h) T(g)", f"{cfg.samples} random (h, f)")

    n = cfg.n
    roots = all_roots(n)
    vals = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(-3, 4)]
    for rel in ("R1", "R2", "R3", "R4", "R5"):
        ok = True
        for _ in range(60):
            a, b = rng.choice(roots), rng.choice(roots)
            t, u = rng.choice(vals), rng.choice(vals)
            if rel == "R2":
                if a == -b:
                    continue
                ok &= steinberg_check(rel, a, t, u, b)
            elif rel == "R4":
                ok &= steinberg_check(rel, a, t, u, b)
            else:
                ok &= steinberg_check(rel, a, t, u)
        rep.add(f"matrix_{rel}", ok, f"Steinberg relation {rel} in Sp_2n(Q)", "60 sampled instances")

    N = cfg.N
    # unit scalars keep the truncated boxes small; non-units are covered at matrix level
    units, small = [Fraction(k) for k in (1, -1, 3, -3)], [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2)]
    ok = True
    for a in roots:
        t, u = rng.choice(units), rng.choice(small)
        lhs = compile_word(word_x(a, t) * word_x(a, u))
        ok &= operators_equal(lhs, compile_word(word_x(a, t + u)), N)
    rep.add("operator_R1", ok, "x_a(t) x_a(u) = x_a(t + u) on V_N", f"every root, N = {N}")

    ok = True
    for a in roots:
        t, u = rng.choice(units), rng.choice(small)
        lhs = compile_word(word_w(a, t) * word_x(a, u) * word_w(a, -t))
        ok &= operators_equal(lhs, compile_word(word_x(-a, -u / (t * t))), N)
    rep.add("operator_R3", ok, "w_a(t) x_a(u) w_a(-t) = x_-a(-t^-2 u) on V_N", f"every root, N = {N}")

    rep.checks += metaplectic_checks(n, N).checks
    return rep


def metaplectic_checks(n: int, N: int, grid: Iterable = (-1, 3, 5)) -> Report:
    """R5 at matrix level versus operator level, and the cocycle identity of the defect."""
    rep = Report("weil", {"n": n, "trunc": N})
    alpha = Root.long(n, 0)
    grid = [Fraction(g) for g in grid]
    memo: dict[tuple[Fraction, Fraction], CyclotomicNumber] = {}

    def c(t, u):
        if (t, u) not in memo:
            memo[t, u] = metaplectic_defect(t, u, alpha, N)
        return memo[t, u]

    matrix_ok = all(steinberg_check("R5", alpha, t, u) for t, u in product(grid, repeat=2))
    rep.add("matrix_R5", matrix_ok, "h_a(t) h_a(u) = h_a(tu) in Sp_2n(Q)", f"grid {[str(g) for g in grid]}")
    bad = [(t, u) for t, u in product(grid, repeat=2) if c(t, u) != ONE]
    rep.add(
        "operator_R5_fails",
        bool(bad),
        "R5 fails for the Weil operators",
        "defect != 1 at " + ", ".join(f"({t},{u})={c(t, u)}" for t, u in bad[:4]),
    )
    cocycle = all(c(t, u) * c(t * u, v) == c(t, u * v) * c(u, v) for t, u, v in product(grid, repeat=3))
    rep.add("defect_cocycle", cocycle, "c(t,u) c(tu,v) = c(t,uv) c(u,v)", f"{len(grid) ** 3} triples")
    return rep


# ----- minimal type


def chi_bar_word(n: int, t) -> GroupWord:
    """x_a(1) x_-a(t) x_a(-1) for a = 2 l_1."""
    a = Root.long(n, 0)
    return GroupWord(n, (Letter(a, 1), Letter(-a, t), Letter(a, -1)))


def fixed_space_generators(n: int):
    W = weil_generator("w", n=n)
    ops = []
    for i in range(n):
        a = Root.long(n, i)
        ops.append(compile_word(word_x(a, 2)))
        ops.append(W.inverse().compose(compile_word(word_x(a, -2))).compose(W))
    return ops


def stabilizer_mismatches(n: int) -> list[str]:
    # negative difference roots compile to substitutions here; conjugating by F
    # at n = 3 with non-unit t builds enormous intermediate boxes
    f = tensor_power(phi_lattice(0), n)
    out = []
    for a in all_roots(n):
        threshold = 1 if a.is_long else 0
        for m in range(-2, 4):
            observed = all(
                stabilizes_line(compile_word(word_x(a, Fraction(2) ** m * k), direct_short=True), f) is not None
                for k in range(1, 8)
            )
            if observed != (m >= threshold):
                out.append(f"x {a.name()} m={m}")
    samples = [Fraction(k) for k in range(-7, 8) if k] + [Fraction(1, 2), Fraction(3, 2), Fraction(-5, 4)]
    for a in all_roots(n):
        for t in samples:
            observed = stabilizes_line(compile_word(word_h(a, t), direct_short=True), f) is not None
            if observed != (valuation(t) == 0):
                out.append(f"h {a.name()} t={t}")
    return out


def suite_minimal_type(cfg: SuiteConfig) -> Report:
    rep = Report("minimal-type", cfg.echo())
    n, N = cfg.n, cfg.N
    dim = 2 ** (2 * N * n)
    if dim > FIXED_SPACE_BUDGET:
        raise ValueError(f"truncated space of dimension {dim} exceeds the budget {FIXED_SPACE_BUDGET}")
    f = tensor_power(phi_lattice(0), n)

    bad = stabilizer_mismatches(n)
    rep.add(
        "stabilizer_table",
        not bad,
        "X_(a+m) stabilizes C f iff m >= 1 (long), m >= 0 (short); h_a(t) iff t unit",
        "zero mismatches" if not bad else "; ".join(bad[:6]),
    )

    ok = True
    details = []
    for t in (2, 4, 6, -2):
        c = stabilizes_line(compile_word(chi_bar_word(n, t)), f)
        want = evaluate_character(STANDARD_PSI, Fraction(-t, 4))
        ok &= c == want
        details.append(f"t={t}: {c}")
    rep.add("chi_bar_values", ok, "x_a(1) x_-a(t) x_a(-1) f = psi(-t/4) f", ", ".join(details))

    ops = fixed_space_generators(n)
    kernel = joint_fixed_space(ops, N)
    rep.add("fixed_space_dimension", len(kernel) == 1, "V^(J, chi) = C f", f"dimension {len(kernel)} of {dim}")
    if len(kernel) == 1:
        g = function_from_coordinates(kernel[0], n, N)
        rep.add("fixed_space_spanned_by_f", proportionality(g, f) is not None, "V^(J, chi) = C f", "kernel vector is a multiple of f")
        mats = [operator_matrix(op, N) for op in ops]
        round_trip = all(M.apply(kernel[0]) == list(kernel[0]) for M in mats)
        rep.add("fixed_space_round_trip", round_trip, "M v = v for every generator", f"{len(mats)} generator matrices")

    z = evaluate_character(STANDARD_PSI, Fraction(-1, 2))
    primitive = z * z != ONE and z * z * z * z == ONE
    chi = stabilizes_line(compile_word(chi_bar_word(n, 2)), f)
    rep.add("support_obstruction", primitive and chi == z, "psi(-1/2) is a primitive 4th root of 1", f"psi(-1/2) = {z}")
    return rep


# ----- hecke


def _random_reduced_word(system, w, rng: random.Random) -> list:
    out = []
    while True:
        desc = system.left_descents(w)
        if not desc:
            break
        i = rng.choice(desc)
        out.append(i)
        w = system.reflections[i] * w
    if not w.is_identity:
        out.append(next(name for name, g in system.symmetries if g == w))
    return out


def suite_hecke(cfg: SuiteConfig) -> Report:
    rep = Report("hecke", cfg.echo())
    n, L = cfg.n, cfg.max_len
    rng = random.Random(cfg.seed)
    H = standard_algebra(n)
    one = H.one()

    for i in range(n + 1):
        T = H.gen(i)
        lam = H.lambdas[i]
        rep.add(f"quadratic_T{i}", T * T == one.scale(lam) + T.scale(lam - 1), f"T_{i}^2 = ({lam} - 1) T_{i} + {lam}")

    if n == 1:
        rep.add("no_braid_relation", element_order(simple_reflection(0, 1) * simple_reflection(1, 1)) > 40, "s_0 s_1 has infinite order", "order > 64")
    else:
        ok = True
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                m = int(coxeter_m(i, j, n))
                left = [i, j] * (m // 2) + ([i] if m % 2 else [])
                right = [j, i] * (m // 2) + ([j] if m % 2 else [])
                ok &= H.word_product(left) == H.word_product(right)
                ok &= element_order(simple_reflection(i, n) * simple_reflection(j, n)) == m
        rep.add("braid_relations", ok, "braid relations of the C~_n diagram", "4-3-...-3-4")

    elements = enumerate_system(H.system, L)
    ok = ok_right = True
    for _ in range(max(200, cfg.samples)):
        a, b, c = (H.basis(rng.choice(elements)) for _ in range(3))
        ab = a * b
        ok &= ab * c == a * (b * c)
        ok_right &= H.multiply_right(a, b) == ab
    rep.add("associativity", ok, "(ab)c = a(bc)", f"{max(200, cfg.samples)} random basis triples, length <= {L}")
    rep.add("right_multiplication_oracle", ok_right, "left and right recursions agree", "same triples")

    ok = True
    for w in rng.sample(elements, min(60, len(elements))):
        ok &= H.t_basis(w, _random_reduced_word(H.system, w, rng)) == H.basis(w)
    rep.add("matsumoto", ok, "T_w is independent of the reduced word", "60 random elements")

    ok = True
    for _ in range(60):
        a = H.from_dict({rng.choice(elements): rng.randint(-2, 2) for _ in range(2)})
        b = H.from_dict({rng.choice(elements): rng.randint(-2, 2) for _ in range(2)})
        ok &= H.star(a * b) == H.star(b) * H.star(a)
        ok &= H.star(H.star(a)) == a
    rep.add("star_antiautomorphism", ok, "(ab)* = b* a*, a** = a", "60 random pairs")

    ok = True
    for w in elements:
        row = H.trace_row(w.inverse())
        diag = row.get(w)
        ok &= set(row) == {w} and diag is not None and diag.level == 1 and diag.coeffs[0] > 0
        ok &= diag == H.weight(w)
    rep.add("gram_diagonal", ok, "[T_v, T_w] = 0 (v != w), [T_w, T_w] > 0 rational", f"{len(elements)} elements, length <= {L}")

    ok = True
    for _ in range(30):
        v, w = rng.choice(elements), rng.choice(elements)
        ok &= H.inner(H.basis(v), H.basis(w)) == H.trace_row(v.inverse()).get(w, cyc(0))
    rep.add("gram_cross_check", ok, "pruned trace equals the dual trace row", "30 random pairs")

    ok = True
    for _ in range(60):
        a = H.from_dict({rng.choice(elements): rng.randint(-2, 2) for _ in range(2)})
        b = H.from_dict({rng.choice(elements): rng.randint(-2, 2) for _ in range(2)})
        ok &= H.character(a * b) == H.character(a) * H.character(b)
    rep.add("one_dimensional_character", ok, "T_i -> lambda_i is multiplicative", "60 random products")

    dims = {
        "affine": (dim_U0(n), 2),
        "middle": (index(enumerate_group("Sp", 1), enumerate_group("B", 1)), 1),
        "end": (index(enumerate_group("B", 1), enumerate_group("B'", 1)), 1),
    }
    if n >= 2:
        dims["middle"] = (index(enumerate_group("P'", 2, 1), enumerate_group("B'", 2)), 1)
    nodes = {"affine": [0], "middle": list(range(1, n)), "end": [n]}
    ok = True
    for key, (du, dv) in dims.items():
        lam = type_eigenvalue(du, dv)
        ok &= all(H.lambdas[i] == cyc(lam) for i in nodes[key])
    rep.add("eigenvalue_cross_check", ok, "lambda = (dim U - dim V) / dim V matches the parameters", str({k: f"{v[0]}/{v[1]}" for k, v in dims.items()}))

    for name, passed, detail in verify_typeB_relations(n, max_len=L, pairs=100, seed=cfg.seed):
        rep.add(f"typeB_{name}", passed, "phi: tau -> T_n, t_i -> T_(n-i)", detail)
    return rep


# ----- finite counts


def suite_finite_indices(cfg: SuiteConfig) -> Report:
    rep = Report("finite-indices", cfg.echo())
    top = min(max(cfg.n, 1), 3)
    sl2, b2 = enumerate_group("Sp", 1), enumerate_group("B", 1)
    rep.add("order_SL2", sl2.order == 6, "|SL_2(F_2)| = 6", str(sl2.order))
    rep.add("index_SL2_B2", index(sl2, b2) == 3, "[SL_2(F_2) : B_2(F_2)] = 3", str(index(sl2, b2)))
    for k in range(1, top + 1):
        B, Bp = enumerate_group("B", k), enumerate_group("B'", k)
        rep.add(f"borel_orders_n{k}", B.order == 2 ** (k * k) and Bp.order == 2 ** (k * k - k), "|B| = 2^(n^2), |B'| = 2^(n^2 - n)", f"{B.order}, {Bp.order}")
        rep.add(f"index_B_Bprime_n{k}", index(B, Bp) == 2**k, "[B : B'] = 2^n", str(index(B, Bp)))
        Sp = enumerate_group("Sp", k)
        rep.add(f"order_Sp_n{k}", Sp.order == sp_order_formula(k), "|Sp_2n(F_2)| = 2^(n^2) prod (4^i - 1)", str(Sp.order))
        if k <= 2:
            O = enumerate_group("O", k)
            rep.add(f"orthogonal_in_Sp_n{k}", O.issubset(Sp) and O.elements == orthogonal_by_filter(k), "O_2n(F_2) inside Sp_2n(F_2)", str(O.order))
        for i in range(1, k):
            P = enumerate_group("P'", k, i)
            rep.add(f"index_P{i}_Bprime_n{k}", index(P, Bp) == 3, "[P'_i : B'] = 3", str(index(P, Bp)))
        d = dim_U0(k)
        rep.add(f"dim_U0_n{k}", d == 6, "dim U_0 = [J_0 : J] = 6", str(d))
    for (du, dv), want in (((2, 1), 1), ((3, 1), 2), ((6, 2), 2)):
        lam = type_eigenvalue(du, dv)
        rep.add(f"eigenvalue_{du}_{dv}", lam == want, "lambda = (dim U - dim V) / dim V", str(lam))
    return rep


RUNNERS: dict[str, Callable[[SuiteConfig], Report]] = {
    "fourier": suite_fourier,
    "weil": suite_weil,
    "minimal-type": suite_minimal_type,
    "hecke": suite_hecke,
    "finite-indices": suite_finite_indices,
}


def run_suites(name: str, cfg: SuiteConfig) -> list[Report]:
    if name == "all":
        return [RUNNERS[s](cfg) for s in SUITES]
    return [RUNNERS[name](cfg)]
