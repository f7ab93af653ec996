from fractions import Fraction

import pytest

from conftest import algebra
from vertexrb.exact import Vector, ZERO, identity_rule, zero_rule
from vertexrb.kernel import VertexOperator, zero_operator
from vertexrb.dendriform import (BimoduleSpec, DendriformSpec, bimodule_check, check_dendriform_field,
                                 check_dendriform_jacobi, check_dendriform_leibniz, check_dendriform_suite,
                                 check_dendriform_vertex, dendriform_from_rbva, induced_bimodule, induced_module,
                                 sum_collapse)
from vertexrb.rota_baxter import PreconditionError, RBOSpec, Split, check_relative_rbo, projection_operator
from vertexrb.zoo.commutative import ddp, divided_power_integration, dp, epsilon_multiplication
from vertexrb.zoo.heisenberg import heis
from vertexrb.zoo.lattice import lat

A1 = heis((0, 1))


def dp_instance(cutoff=6):
    V = algebra("dp", cutoff=cutoff)
    return dendriform_from_rbva(V, RBOSpec(divided_power_integration(), 0))


def eps_instance(cutoff=4):
    V = algebra("ddp", cutoff=cutoff)
    return dendriform_from_rbva(V, RBOSpec(epsilon_multiplication(), 0, degree=0), translation_invariant=True)


def lattice_instance(cutoff=4):
    V = algebra("lat", cutoff=cutoff)
    P = projection_operator(V, Split.by_index(lambda b: b.label.charge >= 0))
    P.translation_invariant = True
    return dendriform_from_rbva(V, P)


def halves(V):
    half = V.op.scaled(Fraction(1, 2))
    return DendriformSpec("halves", V, half, half, D=V.D, kind="vertex")


DP_TRIPLES = [(dp(1), dp(1), dp(1)), (dp(2), dp(0), dp(1)), (dp(0), dp(3), dp(2))]


# ---------------------------------------------------------------- construction

def test_divided_power_splitting_values():
    Dn = dp_instance()
    assert Dn.kind == "vertex Leibniz"
    t0 = dp(0)
    assert Dn.succ.mode(t0, -1, t0) == Vector.of(dp(1)) and Dn.succ.mode(t0, -2, t0) == Vector.of(dp(0))
    assert Dn.prec.mode(t0, -1, t0) == Vector.of(dp(1)) and Dn.prec.mode(t0, -2, t0) == ZERO
    Y, _ = sum_collapse(Dn)
    assert Y.mode(t0, -1, t0) == Vector.of(dp(1), 2) and Y.mode(t0, -2, t0) == Vector.of(dp(0))


def test_kinds():
    assert eps_instance().kind == "vertex"
    assert lattice_instance().kind == "field"
    with pytest.raises(ValueError):
        DendriformSpec("x", algebra("dp", cutoff=3), zero_operator(), zero_operator(), kind="bogus")


# ---------------------------------------------------------------- field and Leibniz

@pytest.mark.parametrize("t", DP_TRIPLES)
def test_divided_power_field_and_leibniz_have_zero_witness(t):
    Dn = dp_instance()
    f, l = check_dendriform_field(Dn, *t), check_dendriform_leibniz(Dn, *t)
    assert f.passed and f.witnesses["N"] == 0
    assert l.passed and l.witnesses["N"] == 0


def test_lattice_field_reports_finite_witness():
    Dn = lattice_instance()
    e, f = lat((), 1), lat((), -1)
    rep = check_dendriform_field(Dn, e, e, f)
    assert rep.passed and rep.witnesses["N"] is not None
    leib = check_dendriform_leibniz(Dn, e, e, lat())
    assert leib.passed and leib.witnesses["N"] is not None


def test_trivial_splitting_passes():
    # with succ = 0 the field identities reduce to associativity of Y and to 0 = 0
    V = algebra("heis", cutoff=4)
    Dn = DendriformSpec("Y+0", V, V.op, zero_operator(), D=V.D)
    assert check_dendriform_field(Dn, A1, A1, A1).passed


def test_halves_fail_the_field_identities():
    V = algebra("heis", cutoff=4)
    rep = check_dendriform_field(halves(V), A1, A1, A1)
    assert rep.failed and rep.find("sum-succ").counterexample is not None


def test_zero_splitting_is_vacuous():
    V = algebra("heis", cutoff=4)
    Dn = dendriform_from_rbva(V, RBOSpec(zero_rule(), 0, degree=0))
    assert check_dendriform_leibniz(Dn, A1, A1, A1).passed
    assert check_dendriform_field(Dn, A1, A1, A1).passed


# ---------------------------------------------------------------- vertex

def test_translation_invariant_instance_passes_vertex_checks():
    Dn = eps_instance()
    assert check_dendriform_vertex(Dn).passed


def test_divided_power_instance_fails_D_compatibility():
    Dn = dp_instance()
    rep = check_dendriform_vertex(Dn)
    assert rep.failed
    assert rep.find("D-bracket prec").failed and rep.find("D-derivative succ").failed
    assert rep.find("skew prec->succ").passed


def test_lattice_instance_fails_skew_symmetry():
    Dn = lattice_instance()
    rep = check_dendriform_vertex(Dn, [(lat((), 1), lat((), -1))])
    assert rep.find("skew prec->succ").failed


def test_zero_translation_on_noncommutative_base_fails():
    V = algebra("heis", cutoff=4)
    half = V.op.scaled(Fraction(1, 2))
    Dn = DendriformSpec("halves, D=0", V, half, half, D=zero_rule(), kind="vertex")
    rep = check_dendriform_vertex(Dn, [(A1, A1)])
    assert rep.failed and rep.find("D-bracket prec").failed


def test_symmetric_halves_on_commutative_base():
    # D-compatible, but a quarter of a product never equals half of it
    Dn = halves(algebra("dp", cutoff=4))
    assert check_dendriform_vertex(Dn).passed
    rep = check_dendriform_jacobi(Dn, dp(1), dp(1), dp(1))
    assert rep.failed and rep.values["verdicts"] == ["fail"] * 3
    assert check_dendriform_jacobi(Dn, dp(0), dp(0), dp(0)).failed


# ---------------------------------------------------------------- Jacobi splittings

@pytest.mark.parametrize("t", DP_TRIPLES)
def test_divided_power_jacobi_splittings(t):
    rep = check_dendriform_jacobi(dp_instance(), *t)
    assert rep.passed
    for name in ("succ-prec", "succ-succ", "prec-prec"):
        assert rep.find(name).witnesses == {"k": 0, "l": 0}
    assert rep.find("jacobi-sum").passed


def test_jacobi_sum_reproduces_collapsed_windows_on_lattice():
    Dn = lattice_instance(cutoff=3)
    e, f = lat((), 1), lat((), -1)
    assert check_dendriform_jacobi(Dn, e, f, e).find("jacobi-sum").passed


def test_sum_collapse_equals_derived_operator():
    _, rep = sum_collapse(dp_instance(), triples=DP_TRIPLES)
    assert rep.passed and rep.find("collapse-equals-Y*").counts["coefficients"] > 0


def test_suite_groups_witnesses():
    rep = check_dendriform_suite(eps_instance(), [(ddp(1), ddp(0, 1), ddp(1))])
    assert rep.passed and rep.find("dendriform-field").witnesses["max N"] == 0


# ---------------------------------------------------------------- modules

def test_induced_module_and_relative_rbo():
    Dn = eps_instance()
    W, rep = induced_module(Dn, triples=[(ddp(1), ddp(0, 1), ddp(2)), (ddp(0, 1), ddp(1), ddp(1))])
    assert rep.passed
    Y, _ = sum_collapse(Dn)
    assert check_relative_rbo(Y, W, identity_rule()).passed


def test_induced_module_needs_vertex_kind():
    with pytest.raises(PreconditionError):
        induced_module(dp_instance())


def test_degenerate_instance_module():
    V = algebra("dp", cutoff=4)
    Dn = dendriform_from_rbva(V, RBOSpec(identity_rule().scaled(-2), 2, degree=0), translation_invariant=True)
    Dn.kind = "vertex"
    _, rep = induced_module(Dn, triples=DP_TRIPLES)
    assert rep.passed


def test_bimodule_verdicts_equal_jacobi_verdicts():
    Dn = dp_instance()
    B = induced_bimodule(Dn)
    rep = bimodule_check(Dn.total, B, DP_TRIPLES)
    jac = [check_dendriform_jacobi(Dn, *t).values["verdicts"] for t in DP_TRIPLES]
    assert rep.passed and rep.values["verdicts"] == jac


def test_empty_bimodule_is_vacuous():
    Dn = dp_instance()
    assert bimodule_check(Dn.total, induced_bimodule(Dn), []).passed


def test_zero_right_action_is_a_bimodule():
    # every term of the three identities carries a right action, so all vanish
    V = algebra("heis", cutoff=4)
    B = BimoduleSpec("zero right action", V.carrier, V.op, zero_operator())
    assert bimodule_check(V.op, B, [(A1, A1, A1)]).passed


def test_doubled_right_action_fails():
    V = algebra("heis", cutoff=4)
    double = VertexOperator(lambda a, n, b: V.op.basis_mode(a, n, b) * 2, V.op.support, name="2Y", shift=V.op.shift)
    rep = bimodule_check(V.op, BimoduleSpec("2Y on the right", V.carrier, V.op, double), [(A1, A1, A1)])
    assert rep.failed and rep.values["verdicts"][0][2] == "fail"
