"""Acceptance criteria, one test each, with wall-clock budgets.

Every test prints a single ``PASS`` or ``FAIL`` line (visible under ``pytest -v``)
and then asserts, so a failure is both reported and fatal.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from dyadic_weil.chevalley import Root, steinberg_check
from dyadic_weil.cyclotomic import ONE
from dyadic_weil.dyadic import STANDARD_PSI, AdditiveCharacter, evaluate_character
from dyadic_weil.finite_groups import dim_U0, enumerate_group, index, type_eigenvalue
from dyadic_weil.hecke import braid_relation_holds, standard_algebra, verify_typeB_relations
from dyadic_weil.heisenberg import (
    HeisenbergElement,
    compile_word,
    function_from_coordinates,
    intertwining_check,
    joint_fixed_space,
    operator_matrix,
    proportionality,
    stabilizes_line,
)
from dyadic_weil.schwartz import (
    STANDARD_CHAR,
    CharacterData,
    fourier_full,
    phi_lattice,
    random_schwartz,
    reflect,
    tensor_power,
)
from dyadic_weil.suites import (
    chi_bar_word,
    fixed_space_generators,
    metaplectic_checks,
    random_heisenberg,
    random_invertible,
    random_symmetric,
    stabilizer_mismatches,
)
from dyadic_weil.weyl import coxeter_m, from_word


class Criterion:
    def __init__(self, capsys, number: int, title: str, budget: float | None):
        self.capsys, self.number, self.title, self.budget = capsys, number, title, budget

    def __enter__(self):
        self.start = time.perf_counter()
        self.failures: list[str] = []
        return self

    def require(self, ok: bool, what: str):
        if not ok:
            self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if self.budget is not None and elapsed >= self.budget:
            self.failures.append(f"runtime {elapsed:.1f}s over budget {self.budget}s")
        status = "FAIL" if self.failures else "PASS"
        line = f"{status} criterion {self.number}: {self.title} ({elapsed:.2f}s)"
        if self.failures:
            line += " -- " + "; ".join(self.failures[:5])
        with self.capsys.disabled():
            print("\n" + line)
        assert not self.failures, line
        return False


def test_criterion_01_fourier_of_lattice_indicators(capsys):
    with Criterion(capsys, 1, "F phi_m = 2^-m phi_-m, p = 2, c = 1", 1.0) as c:
        for m in range(-2, 3):
            c.require(fourier_full(phi_lattice(m), STANDARD_CHAR) == phi_lattice(-m).scale(Fraction(2) ** -m), f"m={m}")


def test_criterion_02_fourier_inversion(capsys):
    rng = random.Random(2)
    chars = {2: STANDARD_CHAR, 3: CharacterData(AdditiveCharacter(3, Fraction(1, 3)))}
    with Criterion(capsys, 2, "F F f(y) = f(-y) on 100+ random functions, p in {2, 3}", 10.0) as c:
        count = 0
        for p, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
            for _ in range(30):
                f = random_schwartz(rng, p, n, m_range=(-1, 0), max_width=2 if n == 1 else 1, levels=(1, 4, 8) if p == 2 else (1, 3))
                c.require(fourier_full(fourier_full(f, chars[p]), chars[p]) == reflect(f), f"p={p} n={n}")
                count += 1
        c.require(count >= 100, "sample count")


def test_criterion_03_intertwining(capsys):
    rng = random.Random(3)
    with Criterion(capsys, 3, "T(g) rho(h) = rho(g.h) T(g), 50 pairs per family, n in {1, 2}", 60.0) as c:
        for n in (1, 2):
            for kind in ("x", "h", "w"):
                for _ in range(50):
                    arg = random_symmetric(rng, n) if kind == "x" else random_invertible(rng, n) if kind == "h" else None
                    f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=2 if n == 1 else 1)
                    c.require(intertwining_check(kind, arg, random_heisenberg(rng, n), f), f"{kind} n={n}")


def test_criterion_04_stabilizer_table(capsys):
    with Criterion(capsys, 4, "stabilizer iff-conditions for n = 2", 60.0) as c:
        bad = stabilizer_mismatches(2)
        c.require(not bad, "mismatches: " + ", ".join(bad[:5]))


def test_criterion_05_character_values(capsys):
    with Criterion(capsys, 5, "x(1) w x(-t) w^-1 x(-1) phi_0 = psi(-t/4) phi_0", 5.0) as c:
        for t in (2, 4, 6, -2):
            got = stabilizes_line(compile_word(chi_bar_word(1, t)), phi_lattice(0))
            c.require(got == evaluate_character(STANDARD_PSI, Fraction(-t, 4)), f"t={t}: {got}")
        z = stabilizes_line(compile_word(chi_bar_word(1, 2)), phi_lattice(0))
        c.require(z is not None and z * z != ONE and z**4 == ONE, "t = 2 must give a primitive 4th root of unity")


@pytest.mark.parametrize("n,N", [(1, 2), (2, 1)])
def test_criterion_06_minimal_type_fixed_space(capsys, n, N):
    with Criterion(capsys, 6, f"joint fixed space is C phi_0^(x)n, (n, N) = ({n}, {N})", 120.0) as c:
        ops = fixed_space_generators(n)
        kernel = joint_fixed_space(ops, N)
        c.require(len(kernel) == 1, f"dimension {len(kernel)}")
        if len(kernel) == 1:
            g = function_from_coordinates(kernel[0], n, N)
            c.require(proportionality(g, tensor_power(phi_lattice(0), n)) is not None, "not a multiple of phi_0")
            c.require(all(operator_matrix(op, N).apply(kernel[0]) == list(kernel[0]) for op in ops), "round trip")


def test_criterion_07_index_counts(capsys):
    with Criterion(capsys, 7, "finite group orders and indices", 120.0) as c:
        sl2, b2 = enumerate_group("Sp", 1), enumerate_group("B", 1)
        c.require(sl2.order == 6, "|SL_2(F_2)|")
        c.require(index(sl2, b2) == 3, "[SL_2 : B_2]")
        for n in (1, 2, 3):
            c.require(index(enumerate_group("B", n), enumerate_group("B'", n)) == 2**n, f"[B : B'] n={n}")
            c.require(dim_U0(n) == 6, f"dim U_0 n={n}")
        Bp = enumerate_group("B'", 2)
        c.require(index(enumerate_group("P'", 2, i=1), Bp) == 3, "[P'_1 : B'] n=2")


def test_criterion_08_eigenvalue_formula(capsys):
    with Criterion(capsys, 8, "type_eigenvalue at (2,1), (3,1), (6,2)", 1.0) as c:
        for (du, dv), want in (((2, 1), 1), ((3, 1), 2), ((6, 2), 2)):
            c.require(type_eigenvalue(du, dv) == want, f"({du},{dv})")


def test_criterion_09_hecke_algebra(capsys):
    with Criterion(capsys, 9, "Hecke relations, associativity, Gram diagonal, n <= 3", 120.0) as c:
        for n in (1, 2, 3):
            H = standard_algebra(n)
            one = H.one()
            c.require(H.gen(n) * H.gen(n) == one, f"T_n^2 n={n}")
            for i in range(n):
                c.require(H.gen(i) * H.gen(i) == H.gen(i) + one.scale(2), f"T_{i}^2 n={n}")
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    m = coxeter_m(i, j, n)
                    if m != float("inf"):
                        c.require(braid_relation_holds(H, i, j, int(m)), f"braid {i},{j} n={n}")
            rng = random.Random(9 + n)

            def basis_element():
                return H.basis(from_word([rng.randint(0, n) for _ in range(rng.randint(0, 6))], n))

            for _ in range(200):
                a, b, d = basis_element(), basis_element(), basis_element()
                if (a * b) * d != a * (b * d):
                    c.require(False, f"associativity n={n}")
                    break
            elements = H.enumerate(6)
            index_set = set(elements)
            for v in elements:
                row = {w: x for w, x in H.trace_row(v.inverse()).items() if w in index_set}
                g = H.weight(v)
                if row != {v: g} or not (g.is_rational() and g.to_fraction() > 0):
                    c.require(False, f"Gram at {v} n={n}")
                    break


def test_criterion_10_type_b_isomorphism(capsys):
    with Criterion(capsys, 10, "phi: H' -> H relations, homomorphism, coverage, independence, transport", 120.0) as c:
        for n in (1, 2, 3):
            report = verify_typeB_relations(n, max_len=6, pairs=100)
            names = {name for name, _, _ in report}
            c.require({"homomorphism", "coverage", "independence", "trace_transport", "star_transport"} <= names, "missing checks")
            for name, ok, detail in report:
                c.require(ok, f"n={n} {name} ({detail})")


def test_criterion_11_metaplectic_nontriviality(capsys):
    with Criterion(capsys, 11, "operator R5 fails, matrix R5 holds, defect is a cocycle", 60.0) as c:
        rep = metaplectic_checks(1, 2)
        for name in ("matrix_R5", "operator_R5_fails", "defect_cocycle"):
            c.require(rep.check(name).passed, name)
        # matrix R5 holds beyond the operator grid as well
        rng = random.Random(11)
        alpha = Root.long(2, 1)
        for _ in range(50):
            t, u = (Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.choice([1, 2, 4])) for _ in range(2))
            c.require(steinberg_check("R5", alpha, t, u), f"matrix R5 at ({t},{u})")
