from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import algebra
from oracles import Fock, brute_min_associativity, brute_min_commutativity, divided_power_mode, polynomial_mode
from vertexrb.exact import Vector, ZERO
from vertexrb.kernel import (CheckReport, ModuleSpec, adjoint_module, aggregate, check_D_properties, check_jacobi,
                             check_module_axioms, check_skew_symmetry, check_vertex_algebra_axioms,
                             check_voa_axioms, check_weak_associativity, check_weak_commutativity, locality_order,
                             vertex_series)
from vertexrb.series import iterate_window, product_window, reversed_product_window
from vertexrb.zoo.commutative import dp, mono
from vertexrb.zoo.heisenberg import heis
from vertexrb.zoo.lattice import lat

A1 = heis((0, 1))


def as_dp(d):
    return Vector({dp(i): c for i, c in d.items()})


def as_mono(d):
    return Vector({mono(i): c for i, c in d.items()})


# ---------------------------------------------------------------- modes

def test_polynomial_mode_example(build):
    V = build("poly", cutoff=6)
    assert V.mode(mono(2), -2, mono(1)) == Vector.of(mono(2), 2)


@pytest.mark.parametrize("kind", ["dp", "heis", "lat"])
def test_vacuum_mode_is_identity(build, kind):
    V = build(kind, cutoff=4)
    for b in V.carrier.all_basis():
        assert V.mode(V.vacuum, -1, b) == Vector.of(b)


@pytest.mark.parametrize("level", [1, 2, Fraction(3, 2)])
def test_heisenberg_first_mode_gives_level(build, level):
    V = build("heis", level=level, cutoff=4)
    assert V.mode(A1, 1, A1) == Vector.of(V.vacuum, level)


def test_divided_power_series(build):
    V = build("dp", cutoff=6)
    s = vertex_series(V, dp(1), dp(1), (0, 2))
    assert s[0] == Vector.of(dp(2), 2) and s[1] == Vector.of(dp(1)) and s[2] == ZERO


def test_lattice_series_has_a_double_pole(build):
    V = build("lat", cutoff=4)
    s = vertex_series(V, lat((), 1), lat((), -1), (-2, -1))
    assert s[-2] == Vector.of(lat()) and s[-1] == Vector.of(lat((1,)))


@given(st.integers(0, 6), st.integers(0, 6), st.integers(-2, 8))
def test_divided_power_modes_match_closed_form(m, n, j):
    V = algebra("dp", cutoff=12)
    assert V.mode(dp(m), -j - 1, dp(n)) == as_dp(divided_power_mode(m, j, n))


@given(st.integers(0, 6), st.integers(0, 6), st.integers(-2, 8))
def test_polynomial_modes_match_closed_form(m, n, j):
    V = algebra("poly", cutoff=12)
    assert V.mode(mono(m), -j - 1, mono(n)) == as_mono(polynomial_mode(m, j, n))


@settings(max_examples=25)
@given(st.lists(st.integers(1, 3), max_size=3), st.integers(-4, 4), st.sampled_from([1, 2]))
def test_heisenberg_generator_modes_match_fock_model(modes, n, level):
    V = algebra("heis", level=level, cutoff=6)
    if sum(modes) - n > 6:
        return
    F = Fock(level)
    state = {tuple(sorted(modes)): Fraction(1)}
    want = Vector({heis(*[(0, x) for x in k]): c for k, c in F.alpha(n, state).items()})
    assert V.mode(A1, n, heis(*[(0, x) for x in modes])) == want


# ---------------------------------------------------------------- killing powers

def test_polynomial_triples_commute_exactly(build):
    V = build("poly", cutoff=6)
    for t in [(mono(1), mono(2), mono(0)), (mono(2), mono(2), mono(1))]:
        rep = check_weak_commutativity(V, *t)
        assert rep.passed and rep.witnesses["k"] == 0


def _commutativity_oracle(V, a, b, c, lo, hi):
    A = product_window(V.op, a, V.op, b, c)
    B = reversed_product_window(V.op, b, V.op, a, c)
    return brute_min_commutativity(lambda p, q: A[p, q].terms(), lambda p, q: B[p, q].terms(), lo, hi, 6)


def test_heisenberg_commutativity_exponent(build):
    V = build("heis", cutoff=6)
    rep = check_weak_commutativity(V, A1, A1, V.vacuum, window=(-3, 3))
    assert rep.witnesses["k"] == 2 == _commutativity_oracle(V, A1, A1, V.vacuum, -3, 3)


def test_lattice_commutativity_exponent_matches_brute_force(build):
    V = build("lat", cutoff=6)
    e, f = lat((), 1), lat((), -1)
    rep = check_weak_commutativity(V, e, e, f, window=(-4, 2))
    assert rep.passed
    assert rep.witnesses["k"] == _commutativity_oracle(V, e, e, f, -4, 2) == 0


def test_commutative_associativity_is_exact(build):
    V = build("dp", cutoff=6)
    rep = check_weak_associativity(V, dp(1), dp(2), dp(1))
    assert rep.passed and rep.witnesses["l"] == 0


def test_vacuum_associativity_is_exact(build):
    V = build("heis", cutoff=6)
    rep = check_weak_associativity(V, V.vacuum, A1, A1)
    assert rep.passed and rep.witnesses["l"] == 0


def test_lattice_associativity_reports_finite_exponent(build):
    V = build("lat", cutoff=6)
    e, f = lat((), 1), lat((), -1)
    rep = check_weak_associativity(V, e, f, e)
    assert rep.passed and rep.witnesses["l"] is not None
    A = product_window(V.op, e, V.op, f, e)
    C = iterate_window(V.op, V.op, e, f, e)
    lo = rep.window[0]
    assert rep.witnesses["l"] == brute_min_associativity(
        lambda p, q: A[p, q].terms(), lambda r, s: C[r, s].terms(), lo, 2, 10, A.floor2)


# ---------------------------------------------------------------- skew symmetry, D, Jacobi

def test_skew_symmetry_examples(build):
    D = build("dp", cutoff=6)
    H = build("heis", cutoff=6)
    assert check_skew_symmetry(D, dp(1), dp(1)).passed
    assert check_skew_symmetry(D, dp(1), dp(0)).passed
    assert check_skew_symmetry(H, A1, H.vacuum).passed


def test_D_properties_on_polynomials(build):
    V = build("poly", cutoff=6)
    assert check_D_properties(V, mono(2), mono(1)).passed


def test_jacobi_witnesses(build):
    H = build("heis", cutoff=6)
    D = build("dp", cutoff=6)
    assert check_jacobi(H, H.vacuum, A1, A1).witnesses == {"k": 0, "l": 0}
    assert check_jacobi(D, dp(1), dp(1), dp(1)).witnesses == {"k": 0, "l": 0}
    rep = check_jacobi(H, A1, A1, A1, window=(-3, 3))
    A = product_window(H.op, A1, H.op, A1, A1)
    B = reversed_product_window(H.op, A1, H.op, A1, A1)
    C = iterate_window(H.op, H.op, A1, A1, A1)
    k = brute_min_commutativity(lambda p, q: A[p, q].terms(), lambda p, q: B[p, q].terms(), -3, 3, 6)
    l = brute_min_associativity(lambda p, q: A[p, q].terms(), lambda r, s: C[r, s].terms(), -3, 3, 6, A.floor2)
    assert rep.passed and rep.witnesses == {"k": k, "l": l} == {"k": 2, "l": 2}


def test_locality_order(build):
    H = build("heis", cutoff=6)
    assert locality_order(H.op, A1, A1) == 2
    assert locality_order(H.op, H.vacuum, A1) == 0


def test_broken_operator_fails_jacobi(build):
    from vertexrb.kernel import VertexOperator
    H = build("heis", cutoff=6)
    skewed = VertexOperator(lambda a, n, b: H.op.basis_mode(a, n, b) * (3 if n == 1 else 1),
                             H.op.support, name="broken", shift=H.op.shift)
    rep = check_jacobi(H, A1, A1, A1, op=skewed)
    assert rep.failed and rep.counterexample is not None


def test_full_axioms_on_small_heisenberg(build):
    rep = check_vertex_algebra_axioms(build("heis", cutoff=4))
    assert rep.passed


def test_voa_axioms_report_central_charge(build):
    rep = check_voa_axioms(build("heis", cutoff=4))
    assert rep.passed and rep.values["central_charge"] == 1
    assert rep.find("L(-1)=D, L(0)=weight").passed


def test_L0_eigenvalue(build):
    V = build("heis", cutoff=4)
    x = heis((0, 1), (0, 1))
    assert V.mode(V.omega, 1, x) == Vector.of(x, 2)


def test_adjoint_module_agrees_with_jacobi(build):
    V = build("dp", cutoff=4)
    W = adjoint_module(V)
    triples = [(dp(1), dp(1), dp(0)), (dp(0), dp(2), dp(1))]
    rep = check_module_axioms(V, W, triples=triples)
    assert rep.passed
    for t in triples:
        assert check_jacobi(V, *t).passed


# ---------------------------------------------------------------- reports

def test_aggregate_is_pure():
    assert aggregate([]) == "pass"
    assert aggregate(["pass", "inconclusive"]) == "inconclusive"
    assert aggregate(["inconclusive", "fail", "pass"]) == "fail"


@given(st.lists(st.sampled_from(["pass", "fail", "inconclusive"])))
def test_aggregate_is_order_independent(vs):
    assert aggregate(vs) == aggregate(list(reversed(vs))) == aggregate(sorted(vs))


def test_report_serialization_has_no_floats(build):
    import json
    rep = check_voa_axioms(build("heis", level=Fraction(3, 2), cutoff=3))
    text = json.dumps(rep.to_dict())
    assert "3/2" in text or "3" in text
    assert not any(isinstance(x, float) for x in _leaves(rep.to_dict()))


def _leaves(x):
    if isinstance(x, dict):
        for v in x.values():
            yield from _leaves(v)
    elif isinstance(x, list):
        for v in x:
            yield from _leaves(v)
    else:
        yield x


def test_group_verdicts():
    p = CheckReport.passed("a")
    f = CheckReport.failed("b", counterexample={})
    assert CheckReport.group("g", [p, f]).failed
    assert CheckReport.group("g", [p]).passed
    assert CheckReport.group("g", [p, f]).find("b") is f
