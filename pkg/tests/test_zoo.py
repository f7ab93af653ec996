from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from conftest import algebra
from vertexrb.exact import Vector, ZERO
from vertexrb.kernel import check_vertex_algebra_axioms, check_voa_axioms
from vertexrb.zoo.commutative import (ddp, divided_power_integration, divided_to_polynomial, dp, epsilon_multiplication,
                                      mono, polynomial_integration)
from vertexrb.zoo.heisenberg import (HeisenbergSpec, heis, heisenberg_build, heisenberg_integration_operator,
                                     heisenberg_mode_rule, sign_automorphism)
from vertexrb.zoo.lattice import LatticeRank1Spec, lat
from vertexrb.zoo.tensor import LaurentWindow, laurent_projection, tensor_basis, tensor_build


def partition_count(n, colors=1):
    """Number of multisets of (color, part) with parts summing to n, by direct recursion."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for _ in range(colors):
            for s in range(part, n + 1):
                ways[s] += ways[s - part]
    return ways[n]


# ---------------------------------------------------------------- commutative

@given(st.integers(0, 5), st.integers(0, 5), st.integers(-3, 5))
def test_realization_is_a_vertex_algebra_isomorphism(m, n, j):
    D, P = algebra("dp", cutoff=12), algebra("poly", cutoff=12)
    phi = divided_to_polynomial()
    assert phi(D.mode(dp(m), j, dp(n))) == P.mode(phi(dp(m)), j, phi(dp(n)))


@given(st.integers(0, 10))
def test_realization_intertwines_integration(m):
    phi = divided_to_polynomial()
    assert phi(divided_power_integration()(dp(m))) == polynomial_integration()(phi(dp(m)))
    assert phi(dp(m)) == Vector.of(mono(m), Fraction(1, factorial(m)))


def test_derivation_lowers_index(build):
    V = build("dp")
    assert V.D(dp(3)) == Vector.of(dp(2))
    assert V.D(dp(0)) == ZERO
    assert build("poly").D(mono(3)) == Vector.of(mono(2), 3)


def test_dual_numbers_square_to_zero(build):
    V = build("ddp", cutoff=4)
    assert V.mode(ddp(1, 1), -1, ddp(1, 1)) == ZERO
    assert V.mode(ddp(1, 1), -1, ddp(1, 0)) == Vector.of(ddp(2, 1), 2)
    eps = epsilon_multiplication()
    assert eps(ddp(2)) == Vector.of(ddp(2, 1)) and eps(ddp(2, 1)) == ZERO


def test_commutative_axioms(build):
    assert check_vertex_algebra_axioms(build("dp", cutoff=5)).passed
    assert check_vertex_algebra_axioms(build("ddp", cutoff=3)).passed


# ---------------------------------------------------------------- Heisenberg

@pytest.mark.parametrize("rank", [1, 2])
def test_heisenberg_dimensions_are_partition_counts(rank):
    V = heisenberg_build(HeisenbergSpec(rank=rank, cutoff=6))
    assert [len(V.basis(w)) for w in range(7)] == [partition_count(w, rank) for w in range(7)]


def test_heisenberg_spec_validation():
    with pytest.raises(ValueError):
        HeisenbergSpec(level=0)
    with pytest.raises(ValueError):
        HeisenbergSpec(rank=2, gram=[[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        HeisenbergSpec(rank=2, gram=[[1, 1], [1, 1]])
    assert HeisenbergSpec(level="3/2").level == Fraction(3, 2)


def test_integration_is_a_right_inverse_of_alpha_one(build):
    V = build("heis", level=2, cutoff=6)
    P = heisenberg_integration_operator(V)
    a1 = heisenberg_mode_rule(V, 0, 1)
    for w in range(6):
        for b in V.basis(w):
            assert a1(P(b)) == Vector.of(b)


def test_sign_automorphism_is_a_homomorphism(build):
    V = build("heis", cutoff=4)
    s = sign_automorphism()
    for a, b in V.carrier.pairs():
        for n in range(-3, 3):
            assert s(V.mode(a, n, b)) == V.mode(s(a), n, s(b))
    assert s(V.omega) == V.omega


def test_rank_two_heisenberg_axioms():
    V = heisenberg_build(HeisenbergSpec(rank=2, cutoff=3))
    assert check_vertex_algebra_axioms(V, triples=V.carrier.triples()[:40]).passed
    rep = check_voa_axioms(V)
    assert rep.passed and rep.values["central_charge"] == 2


# ---------------------------------------------------------------- lattice

def test_lattice_dimensions(build):
    V = build("lat", cutoff=6)
    want = [sum(partition_count(w - m * m) for m in range(-3, 4) if m * m <= w) for w in range(7)]
    assert [len(V.basis(w)) for w in range(7)] == want == [1, 3, 4, 7, 13, 19, 29]


def test_lattice_spec_validation():
    with pytest.raises(ValueError):
        LatticeRank1Spec(N=0)
    with pytest.raises(ValueError):
        LatticeRank1Spec(N=2, cutoff=3)


def test_lattice_charge_is_additive(build):
    V = build("lat", cutoff=6)
    for a, b in V.carrier.pairs()[:200]:
        for n in range(-3, 3):
            for t in V.mode(a, n, b):
                assert t.label.charge == a.label.charge + b.label.charge


def test_lattice_voa(build):
    V = build("lat", cutoff=4)
    rep = check_voa_axioms(V)
    assert rep.passed and rep.values["central_charge"] == 1
    sample = V.carrier.triples()[::25]
    assert check_vertex_algebra_axioms(V, triples=sample).passed


def test_lattice_parse_roundtrip(build):
    V = build("lat", cutoff=4)
    for b in V.carrier.all_basis():
        assert V.parse(repr(b.label)) == b


# ---------------------------------------------------------------- tensor

def test_tensor_modes_multiply_exponents():
    V = tensor_build(algebra("dp", cutoff=4), LaurentWindow(-3, 3))
    x, y = tensor_basis(dp(1), -1), tensor_basis(dp(1), 2)
    assert V.mode(x, -1, y) == Vector.of(tensor_basis(dp(2), 1), 2)


def test_tensor_pairs_stay_in_the_window():
    V = tensor_build(algebra("dp", cutoff=4), LaurentWindow(-3, 3))
    for a, b in V.carrier.pairs():
        assert -3 <= a.label[1] + b.label[1] <= 3


def test_laurent_projection():
    assert laurent_projection(-2) == {-2: 1}
    assert laurent_projection(0) == {} and laurent_projection(3) == {}


def test_tensor_axioms():
    V = tensor_build(algebra("dp", cutoff=3), LaurentWindow(-2, 2))
    assert check_vertex_algebra_axioms(V, triples=V.carrier.triples()[::7]).passed


def test_heis_and_lat_labels():
    assert heis((0, 1), (0, 1)).weight == 2
    assert lat((1,), -1).weight == 2
    assert lat((), 1, N=2).weight == 2
