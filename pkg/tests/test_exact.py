from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vertexrb.exact import (Basis, CoverageError, DegreeError, DomainError, GradedSpan, GradedSubspace,
                            LinearRule, Vector, ZERO, identity_rule, scalar, zero_rule)
from vertexrb.zoo.commutative import divided_power_integration, dp, mono
from vertexrb.zoo.heisenberg import heis, heisenberg_integration_operator


def t(n):
    return Basis(f"t^{n}", -n)


# ---------------------------------------------------------------- vectors

def test_cancellation_leaves_empty_vector():
    assert Vector.of(t(2), 1) + Vector.of(t(2), -1) == ZERO
    assert not (Vector.of(t(2), 1) + Vector.of(t(2), -1))


def test_halves_add_up():
    v = Vector.of(t(1), Fraction(1, 2)) + Vector.of(t(1), Fraction(1, 2))
    assert v.terms() == {t(1): Fraction(1)}


def test_disjoint_support_is_kept():
    v = Vector.of(dp(2), 2) + Vector.of(dp(1), 1)
    assert v.terms() == {dp(2): 2, dp(1): 1}


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        scalar(0.5)
    assert scalar("3/2") == Fraction(3, 2)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
vectors = st.dictionaries(st.integers(0, 6).map(dp), coeffs, max_size=5).map(Vector)


@given(vectors, vectors, vectors)
def test_vector_addition_is_an_abelian_group(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x - x == ZERO
    assert x + ZERO == x


@given(vectors, coeffs, coeffs)
def test_scalar_multiplication_distributes(x, a, b):
    assert x * (a + b) == x * a + x * b
    assert (x * a) * b == x * (a * b)


# ---------------------------------------------------------------- rules

def test_divided_power_integration_on_t0():
    assert divided_power_integration()(Vector.of(dp(0), 3)) == Vector.of(dp(1), 3)


def test_zero_rule():
    assert zero_rule()(Vector.of(dp(3), 7)) == ZERO


def test_heisenberg_integration_of_vacuum_at_level_2(build):
    V = build("heis", level=2, cutoff=4)
    P = heisenberg_integration_operator(V)
    assert P(Vector.of(V.vacuum)) == Vector.of(heis((0, 1)), Fraction(1, 2))


def test_declared_degree_is_enforced():
    bad = LinearRule(lambda b: Vector.of(dp(b.label + 2)), degree=-1, name="bad")
    with pytest.raises(DegreeError):
        bad(dp(0))


def test_domain_is_enforced():
    f = identity_rule().restricted(lambda b: b.weight == 0)
    assert f(dp(0)) == Vector.of(dp(0))
    with pytest.raises(DomainError):
        f(dp(1))


@given(vectors, vectors, coeffs)
def test_rules_are_linear(x, y, c):
    P = divided_power_integration()
    assert P(x + y * c) == P(x) + P(y) * c


@given(vectors)
def test_rule_algebra(x):
    P = divided_power_integration()
    Id = identity_rule()
    assert (P + Id)(x) == P(x) + x
    assert (P - P)(x) == ZERO
    assert (P @ P)(x) == P(P(x))
    assert P.scaled(3)(x) == P(x) * 3


# ---------------------------------------------------------------- subspaces

def test_membership_coordinates():
    S = GradedSubspace([Vector.of(t(1))])
    assert S.coordinates(Vector.of(t(1), 5)) == (Fraction(5),)
    assert S.coordinates(Vector.of(t(2))) is None


def test_echelon_rank():
    assert GradedSubspace([Vector.of(t(1)), Vector.of(t(1), 2)]).rank == 1
    assert GradedSubspace([]).rank == 0
    S = GradedSubspace([Vector({t(1): 1, t(2): 1}), Vector.of(t(2))])
    assert S.rank == 2
    assert set(S.basis) == {Vector.of(t(1)), Vector.of(t(2))}


def test_relations_record_dependent_generators():
    S = GradedSubspace([Vector.of(t(1)), Vector.of(t(1), 2)])
    assert S.relations == [{0: Fraction(-2), 1: Fraction(1)}]


def test_coverage_error_outside_enumerated_degrees():
    S = GradedSubspace([Vector.of(dp(1))], degrees=[-1])
    with pytest.raises(CoverageError):
        S.coordinates(Vector.of(dp(2)))
    U = GradedSpan(lambda w: [Vector.of(dp(-w))], degrees=[0, -1])
    assert Vector.of(dp(1)) in U
    with pytest.raises(CoverageError):
        Vector.of(dp(3)) in U


def test_lattice_nonnegative_charge_span_contains_heisenberg_vectors(build):
    from vertexrb.rota_baxter import Split, _split_parts
    from vertexrb.workbench.registry import SPLITS
    V = build("lat", cutoff=4)
    V1, V2 = _split_parts(V, Split.by_index(SPLITS["charge-nonnegative"]))
    for w in range(0, 5):
        for b in V.basis(w):
            if b.label.charge == 0:
                assert V1.coordinates(Vector.of(b)) is not None


@given(st.lists(vectors, max_size=5), vectors)
def test_combination_reproduces_members(gens, x):
    S = GradedSubspace(gens)
    combo = S.combination(x)
    if combo is None:
        assert x not in S
    else:
        acc = ZERO
        for j, c in combo.items():
            acc = acc + gens[j] * c
        assert acc == x
    for g in gens:
        assert g in S


@given(st.lists(vectors, max_size=5))
def test_rank_plus_relations_counts_generators(gens):
    S = GradedSubspace(gens)
    assert S.rank + len(S.relations) == len(gens)
    for rel in S.relations:
        acc = ZERO
        for j, c in rel.items():
            acc = acc + gens[j] * c
        assert acc == ZERO


@given(st.lists(vectors, max_size=5), st.permutations(range(5)))
def test_echelon_basis_depends_only_on_span(gens, perm):
    shuffled = [gens[i] for i in perm if i < len(gens)]
    assert GradedSubspace(gens).basis == GradedSubspace(shuffled).basis


def test_mono_weights():
    assert mono(3).weight == -3
    assert dp(3).weight == -3
