from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import Fock, brute_min_associativity, brute_min_commutativity
from vertexrb.exact import Basis, Vector, ZERO
from vertexrb.series import (InconclusiveError, Rect, Window2, WindowError, iterate_window,
                             jacobi_pair_check, minimal_killing_power, mul_binomial_power,
                             product_window, reversed_product_window, substitute_shift)
from vertexrb.zoo.commutative import dp
from vertexrb.zoo.heisenberg import heis

X = Basis("x", 0)
Y = Basis("y", 0)


def to_heis(state):
    return Vector({heis(*[(0, n) for n in modes]): c for modes, c in state.items()})


def test_k_zero_is_identity():
    S = Window2.from_grid({(0, 0): Vector.of(X), (1, -1): Vector.of(Y)}, Rect.square(-2, 2))
    assert mul_binomial_power(S, -1, 0) is S


def test_single_term_times_difference():
    S = Window2.from_grid({(0, 0): Vector.of(X)}, Rect.square(-3, 3))
    T = mul_binomial_power(S, -1, 1)
    assert T[1, 0] == Vector.of(X)
    assert T[0, 1] == Vector.of(X, -1)
    assert T[0, 0] == ZERO


def test_certified_rectangle_shrinks_at_the_lower_edges():
    S = Window2.from_grid({}, Rect.square(0, 4))
    T = mul_binomial_power(S, 1, 2)
    assert T.is_certified(2, 2) and T.is_certified(4, 4)
    assert not T.is_certified(1, 4) and not T.is_certified(4, 1)


def test_heisenberg_commutator_killed_by_square(build):
    V = build("heis", cutoff=6)
    a = heis((0, 1))
    one = V.vacuum
    A = product_window(V.op, a, V.op, a, one)
    B = reversed_product_window(V.op, a, V.op, a, one)
    rect = Rect.square(-3, 3)
    D2 = mul_binomial_power(A - B, -1, 2)
    assert all(not D2[pq] for pq in rect.points())
    k, _ = minimal_killing_power(A, B, -1, rect, 4)
    assert k == 2


def test_heisenberg_product_window_matches_fock_model(build):
    V = build("heis", cutoff=6)
    F = Fock()
    a = heis((0, 1))
    A = product_window(V.op, a, V.op, a, V.vacuum)
    for p in range(-3, 4):
        for q in range(-3, 4):
            want = F.alpha(-p - 1, F.alpha(-q - 1, {(): Fraction(1)}))
            assert A[p, q] == to_heis(want)


def test_minimal_killing_power_agrees_with_brute_force(build):
    V = build("heis", cutoff=6)
    F = Fock()

    def fock_window(first, second):
        return lambda p, q: to_heis(F.alpha(-(p if first else q) - 1,
                                            F.alpha(-(q if first else p) - 1, {(): Fraction(1)})))
    A, B = fock_window(True, True), fock_window(False, False)
    want = brute_min_commutativity(lambda p, q: A(p, q).terms(), lambda p, q: B(p, q).terms(), -3, 3, 4)
    a = heis((0, 1))
    got, _ = minimal_killing_power(product_window(V.op, a, V.op, a, V.vacuum),
                                   reversed_product_window(V.op, a, V.op, a, V.vacuum), -1, Rect.square(-3, 3), 4)
    assert got == want == 2


def test_shift_substitution_on_divided_powers(build):
    V = build("dp", cutoff=6)
    A = product_window(V.op, dp(1), V.op, dp(1), dp(0))
    assert substitute_shift(A)[0, 0] == Vector.of(dp(2), 2)


def test_shift_needs_a_floor():
    with pytest.raises(WindowError):
        substitute_shift(Window2(lambda p, q: ZERO))


def test_zero_windows_give_zero_witnesses():
    Z = Window2(lambda p, q: ZERO, floor2=0)
    rep = jacobi_pair_check(Z, Z, Window2.zero(("z0", "z2")), 3, Rect.square(-2, 2))
    assert rep.passed and rep.witnesses == {"k": 0, "l": 0}


def test_nothing_certified_is_inconclusive():
    S = Window2.from_grid({}, Rect.square(10, 12))
    with pytest.raises(InconclusiveError):
        minimal_killing_power(S, S, -1, Rect.square(0, 2), 2)


def test_jacobi_pair_for_heisenberg_generators(build):
    V = build("heis", cutoff=6)
    a = heis((0, 1))
    rep = jacobi_pair_check(product_window(V.op, a, V.op, a, a), reversed_product_window(V.op, a, V.op, a, a),
                            iterate_window(V.op, V.op, a, a, a), 4, Rect.square(-3, 3))
    assert rep.passed


def test_associativity_exponent_agrees_with_brute_force(build):
    V = build("heis", cutoff=6)
    a = heis((0, 1))
    A = product_window(V.op, a, V.op, a, a)
    C = iterate_window(V.op, V.op, a, a, a)
    got, _ = minimal_killing_power(substitute_shift(A), C, 1, Rect.square(-3, 3), 4)
    want = brute_min_associativity(lambda p, q: A[p, q].terms(), lambda r, s: C[r, s].terms(), -3, 3, 4, A.floor2)
    assert got == want


grids = st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                        st.integers(-3, 3).map(lambda c: Vector.of(X, c)), max_size=6)


@given(grids, st.integers(0, 3), st.integers(0, 3), st.sampled_from([1, -1]))
def test_binomial_powers_compose(g, i, j, sign):
    S = Window2.from_grid(g, Rect.square(-10, 10))
    lhs = mul_binomial_power(mul_binomial_power(S, sign, i), sign, j)
    rhs = mul_binomial_power(S, sign, i + j)
    for pq in Rect.square(-3, 5).points():
        assert lhs[pq] == rhs[pq]


@given(grids, st.integers(-2, 2), st.integers(-2, 2))
def test_shift_substitution_matches_direct_sum(g, r, s):
    def gb(n, i):
        out = Fraction(1)
        for t in range(i):
            out *= Fraction(n - t, t + 1)
        return out
    S = Window2.from_grid(g, Rect.square(-10, 10), floor2=-2)
    want = ZERO
    for (p, q), v in g.items():
        i = p - r
        if i >= 0 and q == s - i:
            want = want + v * gb(p, i)
    assert substitute_shift(S)[r, s] == want
