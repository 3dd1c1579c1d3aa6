from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadic_weil.chevalley import GroupWord, Root, all_roots, word_h, word_x
from dyadic_weil.cyclotomic import ONE, cyc, root_of_unity
from dyadic_weil.dyadic import STANDARD_PSI
from dyadic_weil.heisenberg import (
    FullFourier,
    HeisenbergElement,
    InverseFullFourier,
    WeilOperator,
    compile_word,
    heisenberg_mul,
    identity_operator,
    intertwining_check,
    metaplectic_defect,
    operator_ratio,
    operators_equal,
    rho_action,
    stabilizes_line,
    weil_generator,
)
from dyadic_weil.schwartz import (
    linear_combine,
    mult_linear_character,
    phi_lattice,
    random_schwartz,
    tensor_power,
)
from dyadic_weil.suites import chi_bar_word, random_heisenberg, random_invertible, random_symmetric

half = Fraction(1, 2)
f0 = phi_lattice(0)


def test_heisenberg_mul_examples():
    assert heisenberg_mul(HeisenbergElement.central(2, 3), HeisenbergElement.central(2, half)) == (
        HeisenbergElement.central(2, Fraction(7, 2))
    )
    e1 = HeisenbergElement((1,), (0,))
    f1 = HeisenbergElement((0,), (1,))
    assert heisenberg_mul(e1, f1) == HeisenbergElement((1,), (1,), 1)
    a = HeisenbergElement((3, half), (-1, 2), Fraction(5, 4))
    assert heisenberg_mul(a, a.inverse()) == HeisenbergElement.central(2, 0)
    with pytest.raises(ValueError):
        heisenberg_mul(a, e1)


def test_rho_examples():
    f = random_schwartz(random.Random(2))
    t = Fraction(3, 4)
    assert rho_action(HeisenbergElement.central(1, t), f) == f.scale(STANDARD_PSI(t))
    assert rho_action(HeisenbergElement((0,), (1,)), f0) == f0
    assert rho_action(HeisenbergElement((1,), (0,)), f0) == mult_linear_character(f0, [-2])


@given(st.integers(0, 10**6), st.integers(1, 2))
def test_rho_is_a_representation(seed, n):
    rng = random.Random(seed)
    a, b = random_heisenberg(rng, n), random_heisenberg(rng, n)
    f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=1)
    assert rho_action(a, rho_action(b, f)) == rho_action(heisenberg_mul(a, b), f)


def test_generator_examples():
    f = random_schwartz(random.Random(4), n=2)
    assert weil_generator("x", [[0, 0], [0, 0]])(f) == f
    assert weil_generator("h", [[1, 0], [0, 1]])(f) == f
    assert weil_generator("w", n=1)(phi_lattice(1)) == phi_lattice(-1).scale(half)
    with pytest.raises(ValueError):
        weil_generator("x", [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        weil_generator("h", [[1, 2], [2, 4]])


def test_compile_examples():
    f = tensor_power(f0, 2)
    assert compile_word(word_x(Root.long(2, 0), 2))(f) == f
    assert stabilizes_line(compile_word(chi_bar_word(1, 2)), f0) == -root_of_unity(Fraction(1, 4))
    assert compile_word(GroupWord(2))(f) == f
    assert compile_word(GroupWord(2)) == identity_operator(2)


def test_stabilizes_line_examples():
    f = tensor_power(f0, 2)
    assert stabilizes_line(compile_word(word_x(Root.long(2, 0), 1)), f) is None
    assert stabilizes_line(compile_word(word_x(Root.long(2, 0), 2)), f) == ONE
    assert stabilizes_line(weil_generator("w", n=1), f0) == ONE
    with pytest.raises(ValueError):
        stabilizes_line(identity_operator(1), phi_lattice(0) - phi_lattice(0))


@pytest.mark.parametrize("kind", ["x", "h", "w"])
@pytest.mark.parametrize("n", [1, 2])
def test_intertwining_examples(kind, n):
    rng = random.Random(17 * n)
    arg = random_symmetric(rng, n) if kind == "x" else random_invertible(rng, n) if kind == "h" else None
    f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=1)
    assert intertwining_check(kind, arg, HeisenbergElement.central(n, Fraction(5, 4)), f)


@settings(max_examples=50)
@given(st.integers(0, 10**6), st.sampled_from(["x", "h", "w"]), st.integers(1, 2))
def test_intertwining(seed, kind, n):
    rng = random.Random(seed)
    arg = random_symmetric(rng, n) if kind == "x" else random_invertible(rng, n) if kind == "h" else None
    h = random_heisenberg(rng, n)
    f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=2 if n == 1 else 1)
    assert intertwining_check(kind, arg, h, f)


@pytest.mark.parametrize("n,N", [(1, 2), (2, 1)])
@pytest.mark.parametrize("t", [Fraction(1), Fraction(2), half])
def test_conjugation_dictionary(n, N, t):
    w = weil_generator("w", n=n)
    for alpha in all_roots(n):
        lhs = WeilOperator(n, (InverseFullFourier(),)) @ compile_word(word_x(alpha, t)) @ w
        assert operators_equal(lhs, compile_word(word_x(-alpha, -t)), N)


@pytest.mark.parametrize("n,N", [(1, 2), (2, 1)])
def test_operator_r1(n, N):
    for alpha in all_roots(n):
        lhs = compile_word(word_x(alpha, 3) * word_x(alpha, half))
        assert operators_equal(lhs, compile_word(word_x(alpha, Fraction(7, 2))), N)


def _stabilizer_words(n):
    a = Root.long(n, 0)
    return [word_x(a, 1), word_x(a, 2), word_x(-a, 1), word_x(-a, 2), chi_bar_word(n, 2)]


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("k", [1, 3])
def test_stabilization_scalar_robust(n, k):
    f = tensor_power(f0, n)
    c = root_of_unity(Fraction(k, 8))
    for word in _stabilizer_words(n):
        op = compile_word(word)
        plain, twisted = stabilizes_line(op, f), stabilizes_line(op.with_fourier_rescaled(c), f)
        assert (plain is None) == (twisted is None)
        if plain is not None and op.fourier_balance == 0:
            assert plain == twisted


def test_metaplectic_defect_examples():
    a = Root.long(1, 0)
    assert metaplectic_defect(1, 1, a) == ONE
    c = metaplectic_defect(-1, -1, a)
    assert c**4 == ONE
    assert c == cyc(-1)
    assert metaplectic_defect(2, 2, a) in (ONE, cyc(-1))
    with pytest.raises(ValueError):
        metaplectic_defect(0, 1, a)


def test_defect_cocycle():
    a = Root.long(1, 0)
    grid = [Fraction(g) for g in (-1, 3, 5)]
    memo = {}

    def c(t, u):
        if (t, u) not in memo:
            memo[t, u] = metaplectic_defect(t, u, a)
        return memo[t, u]

    for t in grid:
        for u in grid:
            for v in grid:
                assert c(t, u) * c(t * u, v) == c(t, u * v) * c(u, v)
    assert any(c(t, u) != ONE for t in grid for u in grid)


def test_operator_ratio_detects_scalars():
    op = compile_word(word_x(Root.long(1, 0), 1))
    assert operator_ratio(op.scaled(cyc(-1)), op, 2) == cyc(-1)
    assert operator_ratio(op, identity_operator(1), 2) is None


def test_chi_bar_example_function():
    # x(-1) phi_0 = -phi_0 + 2 phi_1
    g = compile_word(word_x(Root.long(1, 0), -1))(f0)
    assert g == linear_combine([-1, 2], [phi_lattice(0), phi_lattice(1)])


@pytest.mark.parametrize("t", [Fraction(1), Fraction(-3), half])
def test_direct_short_compilation_agrees(t):
    n = 2
    rng = random.Random(5)
    alpha = Root.diff(n, 1, 0)
    plain = compile_word(word_x(alpha, t))
    direct = compile_word(word_x(alpha, t), direct_short=True)
    for _ in range(5):
        f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=1)
        assert plain(f) == direct(f)


def _apply_unfused(op, f):
    from dyadic_weil.heisenberg import apply_move

    for move in reversed(op.moves):
        f = apply_move(move, f, op.char)
    return f


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_fused_moves_match_step_by_step(seed, n):
    rng = random.Random(seed)
    rs = all_roots(n)
    word = GroupWord(n)
    for _ in range(rng.randint(1, 3)):
        word = word * word_x(rng.choice(rs), rng.choice([1, -1, 2]))
    op = compile_word(word).scaled(cyc(-1))
    f = random_schwartz(rng, 2, n, m_range=(-1, 0), max_width=1)
    assert op(f) == _apply_unfused(op, f)


def test_fusion_collapses_substitution_runs():
    from dyadic_weil.heisenberg import FullFourier, Scalar, Substitute, fuse_moves

    n = 2
    word_moves = compile_word(word_h(Root.diff(n, 0, 1), Fraction(-5, 4)), direct_short=True).moves
    fused = fuse_moves(word_moves, n)
    assert len(fused) == 1 and isinstance(fused[0], Substitute)
    assert fuse_moves((FullFourier(), InverseFullFourier(), Scalar(cyc(2)), Scalar(cyc(3))), n) == (Scalar(cyc(6)),)


def test_stabilizer_outcomes_agree_across_routes():
    n = 2
    f = tensor_power(f0, n)
    for alpha in all_roots(n):
        for word in (word_x(alpha, half), word_x(alpha, 3), word_h(alpha, Fraction(3)), word_h(alpha, Fraction(-5, 4))):
            plain = stabilizes_line(compile_word(word), f)
            direct = stabilizes_line(compile_word(word, direct_short=True), f)
            assert plain == direct
