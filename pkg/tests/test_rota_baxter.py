from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import algebra
from vertexrb.exact import LinearRule, Vector, ZERO, identity_rule, zero_rule
from vertexrb.kernel import ModuleSpec
from vertexrb import rota_baxter as rb
from vertexrb.rota_baxter import (ClosureError, LambdaDerivationSpec, PreconditionError, RBOSpec, Split, SplitError,
                                  adjoint, check_lambda_derivation, check_m_rbo, check_modified_yang_baxter,
                                  check_ordinary_rbo, check_projection_star_formula, check_relative_rbo,
                                  check_translation_invariance, check_weak_local_rbo, derivation_automorphism_roundtrip,
                                  homogeneous_structure_check, inverse_of_derivation, projection_operator,
                                  projection_rbo, rb_from_modified_yang_baxter, rescaled, tensor_rbo)
from vertexrb.zoo.commutative import divided_power_integration, dp, mono, polynomial_integration
from vertexrb.zoo.heisenberg import heis, heisenberg_integration_operator, heisenberg_mode_rule, sign_automorphism
from vertexrb.zoo.tensor import LaurentWindow, laurent_projection, tensor_build

A1 = heis((0, 1))
charge_nonnegative = Split.by_index(lambda b: b.label.charge >= 0, "charge-nonnegative")


def shift_by_two():
    return LinearRule(lambda b: Vector.of(dp(b.label + 2)), degree=-2, name="t_m -> t_m+2")


# ---------------------------------------------------------------- single-mode and ordinary identity

@pytest.mark.parametrize("kind,lam", [("dp", 2), ("heis", Fraction(-1, 3)), ("lat", 1)])
def test_minus_lambda_identity_is_an_rbo(build, kind, lam):
    V = build(kind, cutoff=3)
    P = identity_rule().scaled(-lam)
    assert check_m_rbo(V, P, (-4, 3), lam=lam).passed


def test_divided_power_integration_negative_modes(build):
    V = build("dp", cutoff=12)
    assert check_m_rbo(V, divided_power_integration(), (-6, -1)).passed


def test_shift_by_two_fails_at_t0_t0(build):
    V = build("dp", cutoff=12)
    rep = check_m_rbo(V, shift_by_two(), (-1, -1))
    assert rep.failed and rep.subject == "(t_0, t_0)" and rep.counterexample["at"] == {"m": -1}
    wide = check_m_rbo(V, shift_by_two(), (-6, -1))
    assert wide.failed and wide.subject == "(t_0, t_0)"


def test_polynomial_example(build):
    V = build("poly", cutoff=6)
    P = polynomial_integration()
    one = mono(0)
    lhs = V.series(P(one), P(one), -2, 2)
    assert lhs[0] == Vector.of(mono(2)) and lhs[1] == Vector.of(mono(1)) and lhs[2] == ZERO
    rhs = [P(V.mode(P(one), -j - 1, one) + V.mode(one, -j - 1, P(one))) for j in range(3)]
    assert rhs == [lhs[0], lhs[1], lhs[2]]
    assert check_ordinary_rbo(V, P, modes=(-8, 2)).passed


def test_lattice_projection_is_an_rbo(build):
    V = build("lat", cutoff=4)
    P = projection_operator(V, charge_nonnegative)
    assert check_ordinary_rbo(V, P).passed


def test_heisenberg_integration_is_not_ordinary(build):
    V = build("heis", cutoff=6)
    P = RBOSpec(heisenberg_integration_operator(V), 0, kind="weak-global")
    rep = check_ordinary_rbo(V, P)
    assert rep.failed
    closure = rep.find("image-closure")
    assert closure.failed and closure.counterexample is not None


@pytest.mark.parametrize("level", [1, 2])
def test_heisenberg_integration_is_weak_global(build, level):
    V = build("heis", level=level, cutoff=6)
    P = RBOSpec(heisenberg_integration_operator(V), 0, kind="weak-global")
    rep = check_weak_local_rbo(V, P)
    assert rep.passed and rep.counts["checked"] > 0
    assert rb.check_homogeneity(V, P).values["degree"] == 1


def test_ordinary_rbo_is_weak_global(build):
    V = build("dp", cutoff=8)
    rep = check_weak_local_rbo(V, RBOSpec(divided_power_integration(), 0))
    assert rep.passed and rep.counts["vacuous"] == 0


# ---------------------------------------------------------------- inverse of a derivation

def test_inverse_of_translation(build):
    V = build("heis", cutoff=6)
    P = inverse_of_derivation(V, V.D)
    assert P.kind == "weak-local" and P.degree == -1
    for w in sorted(P.domain.degrees):
        for u in P.domain.basis(w):
            assert V.D(P(u)) == u
    assert check_weak_local_rbo(V, P).passed
    assert check_translation_invariance(V, P).passed
    rep = check_ordinary_rbo(V, P)
    assert rep.failed and rep.find("image-closure").failed


def test_inverse_of_alpha_one_agrees_with_integration_modulo_kernel(build):
    V = build("heis", level=2, cutoff=6)
    d = heisenberg_mode_rule(V, 0, 1)
    P = inverse_of_derivation(V, d)
    Q = heisenberg_integration_operator(V)
    for w in sorted(P.domain.degrees):
        for u in P.domain.basis(w):
            assert d(P(u)) == u
            assert d(P(u) - Q(u)) == ZERO


def test_inverse_of_zero_has_empty_domain(build):
    V = build("dp", cutoff=4)
    P = inverse_of_derivation(V, LinearRule(lambda b: ZERO, degree=1, name="0"))
    assert all(P.domain.dim(w) == 0 for w in P.domain.degrees)
    rep = check_weak_local_rbo(V, P)
    assert rep.passed and rep.counts["pairs"] == 0


# ---------------------------------------------------------------- derivations

def test_alpha_one_is_a_weak_derivation(build):
    V = build("heis", cutoff=6)
    rep = check_lambda_derivation(V, LambdaDerivationSpec(heisenberg_mode_rule(V, 0, 1), 0))
    assert rep.passed


def test_identity_is_not_a_derivation(build):
    V = build("heis", cutoff=4)
    rep = check_lambda_derivation(V, identity_rule(), 0)
    assert rep.failed
    assert rep.find("derivation-identity").subject == "(1, 1)"


def test_sign_minus_identity_is_a_one_derivation(build):
    V = build("heis", cutoff=6)
    d = sign_automorphism() - identity_rule()
    rep = check_lambda_derivation(V, LambdaDerivationSpec(d, 1, voa=True))
    assert rep.passed
    assert rep.find("d(vacuum)=0").passed and rep.find("d(omega)=0").passed


def test_roundtrip_examples(build):
    V = build("heis", cutoff=4)
    zero = derivation_automorphism_roundtrip(V, zero_rule())
    assert zero.passed
    sig = derivation_automorphism_roundtrip(V, sign_automorphism() - identity_rule())
    assert sig.passed and sig.find("homomorphism").passed
    with pytest.raises(PreconditionError):
        derivation_automorphism_roundtrip(V, identity_rule())


# ---------------------------------------------------------------- projections

def test_lattice_projection_rbo(build):
    V = build("lat", cutoff=4)
    P, rep = projection_rbo(V, charge_nonnegative)
    assert rep.passed and P.translation_invariant
    assert rep.find("idempotent").passed and rep.find("complement-rbo").passed


def test_non_closed_split_raises_with_witness(build):
    V = build("heis", cutoff=6)
    with pytest.raises(ClosureError) as e:
        projection_rbo(V, Split.by_index(lambda b: len(b.label) % 2 == 1))
    assert e.value.witness["subspace"] == "V1" and "m" in e.value.witness


def test_single_vector_is_not_a_split(build):
    V = build("heis", cutoff=4)
    split = Split.by_spans(lambda w: [Vector.of(A1)] if w == 1 else [],
                           lambda w: [], "alpha only")
    with pytest.raises(SplitError):
        projection_rbo(V, split)


def test_overlapping_spans_are_rejected(build):
    V = build("dp", cutoff=3)
    split = Split.by_spans(lambda w: [Vector.of(dp(-w))], lambda w: [Vector.of(dp(-w))])
    with pytest.raises(SplitError):
        projection_operator(V, split)


def test_tensor_projection(build):
    Vh = tensor_build(algebra("dp", cutoff=4), LaurentWindow(-3, 3))
    P, rep = tensor_rbo(Vh, laurent_projection, -1)
    assert rep.passed
    S, rep2 = projection_rbo(Vh, Split.by_index(lambda b: b.label[1] < 0))
    assert rep2.passed
    for b in Vh.carrier.all_basis():
        assert P(b) == S(b)


def test_tensor_minus_lambda_identity(build):
    Vh = tensor_build(algebra("dp", cutoff=3), LaurentWindow(-2, 2))
    P, rep = tensor_rbo(Vh, lambda e: {e: Fraction(-2)}, 2)
    assert rep.passed
    for b in Vh.carrier.all_basis():
        assert P(b) == Vector.of(b, -2)


def test_tensor_failure_propagates(build):
    Vh = tensor_build(algebra("dp", cutoff=3), LaurentWindow(-2, 2))
    _, rep = tensor_rbo(Vh, lambda e: {e: 1}, 0)
    assert rep.failed and rep.find("commutative-rb").counterexample is not None


# ---------------------------------------------------------------- homogeneous RBOs and transforms

@pytest.mark.parametrize("lam", [1, 3, -2])
def test_rescaled_lattice_projection(build, lam):
    V = build("lat", cutoff=4)
    P = projection_operator(V, charge_nonnegative)
    Pl = RBOSpec(P.map.scaled(-lam), lam, degree=0, name="P'")
    Pl.split = P.split
    rep = homogeneous_structure_check(V, Pl)
    assert rep.passed
    assert Pl(Vector.of(V.vacuum)) == Vector.of(V.vacuum, -lam)
    assert rep.find("matches-split").passed


def test_zero_and_scalar_branches(build):
    V = build("lat", cutoff=3)
    zero = homogeneous_structure_check(V, RBOSpec(zero_rule(), 2, degree=0))
    assert zero.passed and zero.find("P(1)").values["branch"] == "P(1) = 0"
    assert all(d1 == 0 for d1, _ in zero.find("direct-sum").values["dimensions"].values())
    full = homogeneous_structure_check(V, RBOSpec(identity_rule().scaled(-2), 2, degree=0))
    assert full.passed and full.find("P(1)").values["branch"] == "P(1) = -lambda 1"
    assert all(d2 == 0 for _, d2 in full.find("direct-sum").values["dimensions"].values())


def test_zero_weight_is_rejected(build):
    with pytest.raises(PreconditionError):
        homogeneous_structure_check(build("lat", cutoff=3), RBOSpec(zero_rule(), 0, degree=0))


def test_metamorphic_transforms(build):
    V = build("lat", cutoff=3)
    P = projection_operator(V, charge_nonnegative)
    P3 = RBOSpec(P.map.scaled(-3), 3, degree=0)
    assert check_ordinary_rbo(V, rescaled(P3)).passed
    assert check_ordinary_rbo(V, adjoint(P3)).passed
    with pytest.raises(PreconditionError):
        rescaled(RBOSpec(divided_power_integration(), 0))


def test_adjoint_at_weight_zero_is_negation(build):
    V = build("dp", cutoff=8)
    Q = adjoint(RBOSpec(divided_power_integration(), 0))
    assert Q(dp(2)) == Vector.of(dp(3), -1)
    assert check_ordinary_rbo(V, Q, modes=(-10, 2)).passed


def test_modified_yang_baxter(build):
    V = build("lat", cutoff=3)
    P = projection_operator(V, charge_nonnegative)
    R = identity_rule() - P.map.scaled(2)
    assert check_modified_yang_baxter(V, R, -1).passed
    Q = rb_from_modified_yang_baxter(R)
    for b in V.carrier.all_basis():
        assert Q(b) == P(b)
    assert check_modified_yang_baxter(V, R, 1).failed


# ---------------------------------------------------------------- derived structure

def test_star_formula(build):
    V = build("lat", cutoff=4)
    P = projection_operator(V, charge_nonnegative)
    assert check_projection_star_formula(V, P, V.carrier.pairs()[::10]).passed


def test_derived_structure_on_lattice(build):
    V = build("lat", cutoff=4)
    P, _ = projection_rbo(V, charge_nonnegative)
    _, rep = rb.derived_structure(V, P, n_triples=6, n_pairs=8)
    assert rep.passed and rep.values["kind"] == "vertex algebra without vacuum"


def test_derived_structure_on_divided_powers(build):
    V = build("dp", cutoff=6)
    P = RBOSpec(divided_power_integration(), 0)
    _, rep = rb.derived_structure(V, P, n_triples=6, n_pairs=8)
    assert rep.passed and rep.values["kind"] == "vertex Leibniz"


# ---------------------------------------------------------------- relative RBOs

def test_relative_rbo_zero_map(build):
    V = build("dp", cutoff=4)
    W = ModuleSpec("adjoint", V.carrier, V.op, V.op)
    assert check_relative_rbo(V, W, zero_rule()).passed


def test_relative_rbo_adjoint_identity_fails(build):
    V = build("dp", cutoff=4)
    W = ModuleSpec("adjoint", V.carrier, V.op, V.op)
    assert check_relative_rbo(V, W, identity_rule()).failed
    with pytest.raises(PreconditionError):
        check_relative_rbo(V, ModuleSpec("left only", V.carrier, V.op), identity_rule())


# ---------------------------------------------------------------- properties

@settings(max_examples=20)
@given(st.integers(-3, 3).filter(bool))
def test_scaled_projection_properties(lam):
    V = algebra("lat", cutoff=3)
    P = projection_operator(V, charge_nonnegative)
    Pl = RBOSpec(P.map.scaled(-lam), lam, degree=0)
    for b in V.carrier.all_basis():
        assert Pl(Pl(b)) + Pl(b) * lam == ZERO
        assert adjoint(Pl)(b) == Vector.of(b, -lam) - Pl(b)


@settings(max_examples=20)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(-8, 1))
def test_divided_power_rb_identity_by_hand(m, n, j):
    V = algebra("dp", cutoff=12)
    P = divided_power_integration()
    lhs = V.mode(P(dp(m)), j, P(dp(n)))
    rhs = P(V.mode(P(dp(m)), j, dp(n)) + V.mode(dp(m), j, P(dp(n))))
    assert lhs == rhs
