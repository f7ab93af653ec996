"""Names the workbench understands: algebras, operator constructors, split predicates and checks."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .. import dendriform as dd
from .. import kernel as K
from .. import rota_baxter as rb
from ..exact import ZERO, Basis, LinearRule, Vector, identity_rule, zero_rule
from ..zoo import commutative as cm
from ..zoo.heisenberg import (HeisenbergSpec, heisenberg_build, heisenberg_integration_operator,
                              heisenberg_mode_rule, sign_automorphism)
from ..zoo.lattice import LatticeRank1Spec, lattice_rank1_build
from ..zoo.tensor import LaurentWindow, laurent_projection, lift_right_rule, tensor_build
from .config import ValidationError

__all__ = ["UnknownCheckError", "Context", "build_algebra", "build_operators", "CHECKS", "explain_check",
           "ALGEBRA_HELP", "parse_vector"]


class UnknownCheckError(KeyError):
    def __str__(self):
        return f"unknown check {self.args[0]!r}; known checks: {', '.join(sorted(CHECKS))}"


ALGEBRA_HELP = {
    "divided-power": "divided powers t_n with t_m t_n = C(m+n, n) t_{m+n} and d t_n = t_{n-1}; parameters: cutoff",
    "polynomial": "C[t] with d/dt; parameters: cutoff",
    "dual-divided-power": "divided powers over the dual numbers C[eps]/(eps^2); parameters: cutoff",
    "heisenberg": "rank-r Heisenberg VOA at level k with Gram matrix; parameters: rank, level, gram, cutoff",
    "lattice": "rank-1 lattice vertex algebra with (alpha|alpha) = 2N; parameters: N, cutoff",
    "tensor": "V (x) Laurent monomials on a window; parameters: left (an algebra section), window [lo, hi]",
}


def build_algebra(a: dict, cutoff: int | None = None) -> K.VertexAlgebra:
    name = a["name"]
    c = cutoff if cutoff is not None else a.get("cutoff")
    if name == "divided-power":
        return cm.divided_power_algebra(c if c is not None else 12)
    if name == "polynomial":
        return cm.polynomial_algebra(c if c is not None else 12)
    if name == "dual-divided-power":
        return cm.dual_divided_power_algebra(c if c is not None else 6)
    if name == "heisenberg":
        spec = HeisenbergSpec(rank=a.get("rank", 1), level=a.get("level", Fraction(1)), gram=a.get("gram"),
                              cutoff=c if c is not None else 6)
        return heisenberg_build(spec)
    if name == "lattice":
        return lattice_rank1_build(LatticeRank1Spec(N=a.get("N", 1), cutoff=c if c is not None else 6))
    if name == "tensor":
        left = build_algebra(a["left"], cutoff)
        lo, hi = a.get("window", [-3, 3])
        return tensor_build(left, LaurentWindow(lo, hi))
    raise ValidationError("algebra.name", f"unknown algebra {name!r}")


# ---------------------------------------------------------------- vectors and tables

_SPLIT_TERMS = re.compile(r"\s+([+-])\s+")
_COEF = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*\*\s*(.+)$")


def parse_vector(text: str, parse_basis: Callable[[str], Basis]) -> Vector:
    """'1/2*a(-1)^2 1 - b(-2) 1' -> Vector; terms are separated by ' + ' or ' - ' with spaces."""
    text = str(text).strip()
    if text in ("0", ""):
        return ZERO
    sign = 1
    if text.startswith("- "):
        sign, text = -1, text[2:]
    parts = _SPLIT_TERMS.split(text)
    terms = [(sign, parts[0])] + [(1 if parts[i] == "+" else -1, parts[i + 1]) for i in range(1, len(parts), 2)]
    out = ZERO
    for s, t in terms:
        m = _COEF.match(t)
        c, b = (Fraction(m.group(1)), m.group(2)) if m else (Fraction(1), t)
        out = out + Vector.of(parse_basis(b.strip()), c * s)
    return out


def table_operator(V: K.VertexAlgebra, table: dict, otherwise: str = "zero", degree=None, name="T") -> LinearRule:
    parsed = {V.parse(k): parse_vector(v, V.parse) for k, v in table.items()}

    def rule(b):
        if b in parsed:
            return parsed[b]
        if otherwise == "identity":
            return Vector.of(b)
        if otherwise == "error":
            raise KeyError(f"{name} is not defined on {b.label!r}")
        return ZERO

    return LinearRule(rule, degree=degree, name=name)


# ---------------------------------------------------------------- operators

SPLITS: dict[str, Callable[[Basis], bool]] = {
    "charge-nonnegative": lambda b: b.label.charge >= 0,
    "odd-mode-count": lambda b: len(b.label) % 2 == 1,
    "negative-exponent": lambda b: b.label[1] < 0,
}

RIGHT_MAPS = {
    "laurent-projection": laurent_projection,
    "identity": lambda e: {e: 1},
    "zero": lambda e: {},
}


def _derivation(V, o: dict, ops: dict):
    c = o["constructor"]
    if c == "sign-minus-identity":
        return sign_automorphism() - identity_rule()
    if c == "mode":
        return heisenberg_mode_rule(V, o.get("generator", 0), o.get("mode", 1))
    if c == "translation":
        return V.D
    if c == "zero":
        return zero_rule()
    if c == "identity":
        return identity_rule()
    if c == "table":
        return table_operator(V, o.get("table", {}), o.get("otherwise", "zero"), o.get("degree"), "d")
    raise ValidationError("operators", f"unknown derivation constructor {c!r}")


def _rbo(V, o: dict, ops: dict, name: str) -> rb.RBOSpec:
    c = o["constructor"]
    lam = o.get("weight", Fraction(0))
    if c == "divided-power-integration":
        return rb.RBOSpec(cm.divided_power_integration(), lam, name=name)
    if c == "polynomial-integration":
        return rb.RBOSpec(cm.polynomial_integration(), lam, name=name)
    if c == "epsilon":
        return rb.RBOSpec(cm.epsilon_multiplication(), lam, name=name)
    if c == "heisenberg-integration":
        return rb.RBOSpec(heisenberg_integration_operator(V, o.get("direction", 0)), lam, kind="weak-global", name=name)
    if c == "inverse-of-derivation":
        ref = o.get("derivation", "translation")
        d = V.D if ref == "translation" else ops[ref].map
        return rb.inverse_of_derivation(V, d, lam, name=name)
    if c == "projection":
        split = o.get("split")
        if split not in SPLITS:
            raise ValidationError(f"operators.{name}.split", f"unknown split {split!r} (known: {', '.join(SPLITS)})")
        P = rb.projection_operator(V, rb.Split.by_index(SPLITS[split], split))
        if "weight" in o and lam != -1:
            # -lam times an idempotent RBO of weight -1 is an RBO of weight lam
            P.map, P.weight = P.map.scaled(-lam), lam
        P.name = name
        P.split_name = split
        return P
    if c == "tensor-lift":
        right = o.get("right", "laurent-projection")
        if right == "scalar":
            s = o.get("scalar", Fraction(0))
            emap = lambda e: {e: s}
        else:
            emap = RIGHT_MAPS[right]
        P = rb.RBOSpec(lift_right_rule(emap, name=name), lam, degree=0, name=name)
        P.exponent_map = emap
        return P
    if c == "scalar":
        return rb.RBOSpec(identity_rule().scaled(o.get("scalar", -lam)), lam, degree=0, name=name)
    if c == "table":
        return rb.RBOSpec(table_operator(V, o.get("table", {}), o.get("otherwise", "zero"), o.get("degree"), name),
                          lam, name=name)
    if c == "rescaled":
        return rb.rescaled(ops[o["of"]])
    if c == "adjoint":
        return rb.adjoint(ops[o["of"]])
    raise ValidationError(f"operators.{name}.constructor", f"unknown RBO constructor {c!r}")


@dataclass
class Derivation:
    map: LinearRule
    weight: Fraction


def build_operators(V, ops_cfg: dict) -> dict:
    ops: dict[str, Any] = {}
    for name, o in ops_cfg.items():
        kind = o["kind"]
        if kind == "derivation":
            ops[name] = rb.LambdaDerivationSpec(_derivation(V, o, ops), o.get("weight", Fraction(0)),
                                                voa=o.get("voa", V.omega is not None))
        elif kind == "rbo":
            ops[name] = _rbo(V, o, ops, name)
        else:
            P = ops[o["from"]]
            if P.translation_invariant is None and V.D is not None:
                P.translation_invariant = rb.check_translation_invariance(V, P).ok
            ops[name] = dd.dendriform_from_rbva(V, P)
    return ops


# ---------------------------------------------------------------- checks

@dataclass
class Context:
    V: K.VertexAlgebra
    ops: dict
    params: dict
    seed: int = 0
    kmax: int | None = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def op(self, kinds=None):
        name = self.params.get("operator")
        if name is None:
            raise ValidationError(self.params["name"], "this check needs an 'operator'")
        return self.ops[name]

    @property
    def k(self):
        return self.params.get("kmax", self.kmax)

    def modes(self):
        m = self.params.get("modes")
        return tuple(m) if m else None

    def _sample(self, items):
        n = self.params.get("sample")
        if n is None or n >= len(items):
            return items
        rng = random.Random(self.seed)
        return [items[i] for i in sorted(rng.sample(range(len(items)), n))]

    def triples(self, default=None):
        if "triples" in self.params:
            return [tuple(self.V.parse(x) for x in t) for t in self.params["triples"]]
        return self._sample(default if default is not None else self.V.carrier.triples())

    def pairs(self, default=None):
        if "pairs" in self.params:
            return [tuple(self.V.parse(x) for x in t) for t in self.params["pairs"]]
        return self._sample(default if default is not None else self.V.carrier.pairs())


def _per_item(name, fn, items, jobs):
    return K._first_failure_group(name, K._run(list(items), fn, jobs))


def _with_witnesses(name, reports):
    rep = K._first_failure_group(name, reports)
    maxes: dict = {}
    for r in reports:
        for k, v in r.witnesses.items():
            if v is not None:
                maxes[k] = max(maxes.get(k, v), v)
    rep.witnesses = {f"max {k}": v for k, v in sorted(maxes.items())}
    return rep


def _triple_check(fn, name):
    def run(ctx: Context):
        w = ctx.params.get("window")
        reports = K._run(ctx.triples(), lambda t: fn(ctx.V, *t, window=w, kmax=ctx.k), ctx.jobs)
        return _with_witnesses(name, reports)
    return run


def _pair_check(fn, name):
    def run(ctx: Context):
        return _per_item(name, lambda p: fn(ctx.V, *p), ctx.pairs(), ctx.jobs)
    return run


def _rbo_check(ctx: Context, P=None):
    P = P or ctx.op()
    if P.kind in ("weak-local", "weak-global"):
        return rb.check_weak_local_rbo(ctx.V, P, modes=ctx.modes())
    return rb.check_ordinary_rbo(ctx.V, P, modes=ctx.modes())


def _projection(ctx: Context):
    P = ctx.op()
    split = rb.Split.by_index(SPLITS[P.split_name], P.split_name)
    _, rep = rb.projection_rbo(ctx.V, split, modes=ctx.modes())
    return rep


def _tensor(ctx: Context):
    P = ctx.op()
    _, rep = rb.tensor_rbo(ctx.V, P.exponent_map, P.weight, modes=ctx.modes())
    return rep


def _derived(ctx: Context):
    _, rep = rb.derived_structure(ctx.V, ctx.op(), modes=ctx.modes(), kmax=ctx.k, seed=ctx.seed,
                                  n_triples=ctx.params.get("sample", 12))
    return rep


def _star(ctx: Context):
    return rb.check_projection_star_formula(ctx.V, ctx.op(), ctx.pairs(), modes=ctx.modes())


def _derivation_check(ctx: Context):
    d = ctx.op()
    lam = ctx.params.get("weight", d.weight)
    return rb.check_lambda_derivation(ctx.V, d.map, lam, modes=ctx.modes(), voa_conditions=d.voa)


def _dn(ctx: Context):
    D = ctx.op()
    if not isinstance(D, dd.DendriformSpec):
        raise ValidationError(ctx.params["name"], "the operator must be a dendriform structure")
    return D


def _dn_triples(fn, name):
    def run(ctx: Context):
        D = _dn(ctx)
        w = ctx.params.get("window")
        reports = K._run(ctx.triples(), lambda t: fn(D, *t, window=w, kmax=ctx.k), ctx.jobs)
        return _with_witnesses(name, reports)
    return run


def _sum_collapse(ctx: Context):
    D = _dn(ctx)
    _, rep = dd.sum_collapse(D, triples=ctx.triples(), kmax=ctx.k, modes=ctx.modes())
    return rep


def _induced(ctx: Context):
    _, rep = dd.induced_module(_dn(ctx), triples=ctx.params.get("triples") and ctx.triples(), kmax=ctx.k, jobs=ctx.jobs)
    return rep


def _bimodule(ctx: Context):
    D = _dn(ctx)
    return dd.bimodule_check(D.total, dd.induced_bimodule(D), ctx.triples(), window=ctx.params.get("window"),
                             kmax=ctx.k, jobs=ctx.jobs)


def _relative(ctx: Context):
    D = _dn(ctx)
    V, _ = dd.sum_collapse(D)
    W = K.ModuleSpec(f"induced module of {D.name}", D.carrier, D.succ, D.prec)
    return rb.check_relative_rbo(V, W, identity_rule(), modes=ctx.modes())


def _module(ctx: Context):
    W = K.adjoint_module(ctx.V)
    return K.check_module_axioms(ctx.V, W, triples=ctx.triples(), window=ctx.params.get("window"),
                                 kmax=ctx.k, jobs=ctx.jobs)


def _transform(kind):
    def run(ctx: Context):
        P = ctx.op()
        Q = rb.rescaled(P) if kind == "rescaled" else rb.adjoint(P)
        rep = _rbo_check(ctx, Q)
        rep.name = f"{kind}-rbo"
        rep.values = {"weight": Q.weight}
        return rep
    return run


def _myb(ctx: Context):
    P = ctx.op()
    if P.weight == 0:
        return rb.check_modified_yang_baxter(ctx.V, P.map, 0, modes=ctx.modes())
    Q = rb.rescaled(P) if P.weight != -1 else P
    R = identity_rule() - Q.map.scaled(2)
    rep = rb.check_modified_yang_baxter(ctx.V, R, -1, modes=ctx.modes())
    back = rb.rb_from_modified_yang_baxter(R)
    rt = rb.check_ordinary_rbo(ctx.V, rb.RBOSpec(back, -1, degree=Q.degree), modes=ctx.modes(), closure=False)
    rt.name = "recovered-rbo"
    return K.CheckReport.group("modified-yang-baxter", [rep, rt])


def _agree(ctx: Context):
    other = ctx.params.get("other")
    if other not in ctx.ops:
        raise ValidationError(ctx.params["name"], "needs 'other': the name of a second operator")
    P, Q = ctx.op(), ctx.ops[other]
    basis = ctx.V.carrier.all_basis()
    for b in basis:
        x, y = P(b), Q(b)
        if x != y:
            return K.CheckReport.failed("operators-agree", b, counterexample=K.describe_difference(x, y, {}))
    return K.CheckReport.passed("operators-agree", values={"operators": [P.name, Q.name]},
                                counts={"basis": len(basis)})


@dataclass
class CheckEntry:
    run: Callable[[Context], K.CheckReport]
    identity: str
    window: str


_TRIPLE_WINDOW = ("square window of series exponents reaching two below the lowest exponent allowed by "
                  "the mode supports, or 'window: [lo, hi]'; the witness is searched up to kmax "
                  "(default max(4, 2(wt a + wt b) + 4))")
_MODE_WINDOW = "all basis pairs within the cutoff and every mode m in [-(cutoff+2), cutoff+2] unless 'modes' is given"

CHECKS: dict[str, CheckEntry] = {
    "vertex-algebra-axioms": CheckEntry(
        lambda c: K.check_vertex_algebra_axioms(c.V, triples=c.params.get("triples") and c.triples(),
                                                 kmax=c.k, jobs=c.jobs),
        "truncation a_n b = 0 for n >= support; vacuum 1_n b = delta_{n,-1} b; creation a_{-1} 1 = a; "
        "skew symmetry Y(a,z)b = e^{zD} Y(b,-z)a; D-derivative and D-bracket; Jacobi identity through "
        "(z1-z2)^k Y(a,z1)Y(b,z2)c = (z1-z2)^k Y(b,z2)Y(a,z1)c and "
        "(z0+z2)^l Y(a,z0+z2)Y(b,z2)c = (z0+z2)^l Y(Y(a,z0)b,z2)c", _TRIPLE_WINDOW),
    "voa-axioms": CheckEntry(
        lambda c: K.check_voa_axioms(c.V),
        "[L(m), L(n)] = (m-n)L(m+n) + (m^3-m)/12 delta_{m+n,0} c on the basis, L(-1) = D and "
        "L(0) = weight; the central charge is reported", "modes m, n in [-2, 2] on every basis element"),
    "weak-commutativity": CheckEntry(_triple_check(K.check_weak_commutativity, "weak-commutativity"),
                                     "(z1-z2)^k Y(a,z1)Y(b,z2)c = (z1-z2)^k Y(b,z2)Y(a,z1)c", _TRIPLE_WINDOW),
    "weak-associativity": CheckEntry(_triple_check(K.check_weak_associativity, "weak-associativity"),
                                     "(z0+z2)^l Y(a,z0+z2)Y(b,z2)c = (z0+z2)^l Y(Y(a,z0)b,z2)c", _TRIPLE_WINDOW),
    "jacobi": CheckEntry(_triple_check(K.check_jacobi, "jacobi"),
                         "the Jacobi identity, via the equivalent pair of killed identities with witnesses (k, l)",
                         _TRIPLE_WINDOW),
    "skew-symmetry": CheckEntry(_pair_check(K.check_skew_symmetry, "skew-symmetry"),
                                "Y(a,z)b = e^{zD} Y(b,-z)a", "seven consecutive powers of z from the lowest nonzero one"),
    "D-properties": CheckEntry(_pair_check(K.check_D_properties, "D-properties"),
                               "(Da)_n b = -n a_{n-1} b and D(a_n b) - a_n(Db) = -n a_{n-1} b",
                               "n from -4 to one past the support"),
    "module-axioms": CheckEntry(_module, "module Jacobi identity, vacuum and D-derivative for the adjoint module",
                                _TRIPLE_WINDOW),
    "m-rbo": CheckEntry(lambda c: rb.check_m_rbo(c.V, c.op(), c.modes() or rb.default_modes(c.V)),
                        "(Pa)_m(Pb) = P(a_m(Pb)) + P((Pa)_m b) + lambda P(a_m b) for each m in the given range",
                        _MODE_WINDOW),
    "ordinary-rbo": CheckEntry(lambda c: rb.check_ordinary_rbo(c.V, c.op(), modes=c.modes()),
                               "Y(Pa,z)Pb = P(Y(Pa,z)b) + P(Y(a,z)Pb) + lambda P(Y(a,z)b), plus closure of P(V) "
                               "under all modes", _MODE_WINDOW + "; closure cases beyond the cutoff are counted as boundary"),
    "weak-local-rbo": CheckEntry(lambda c: rb.check_weak_local_rbo(c.V, c.op(), modes=c.modes()),
                                 "whenever (Pa)_m(Pb) lies in P(U): a_m(Pb) + (Pa)_m b + lambda a_m b lies in U and "
                                 "P of it equals (Pa)_m(Pb)",
                                 _MODE_WINDOW + "; cases outside P(U) are vacuous, membership beyond the cutoff is boundary"),
    "rbo": CheckEntry(_rbo_check, "ordinary or weak-local RB identity according to the operator's kind", _MODE_WINDOW),
    "translation-invariance": CheckEntry(lambda c: rb.check_translation_invariance(c.V, c.op()),
                                         "PD = DP (and D(U) inside U for local operators)", "every enumerated basis element"),
    "homogeneity": CheckEntry(lambda c: rb.check_homogeneity(c.V, c.op()),
                              "P maps weight w to weight w + N", "every enumerated basis element"),
    "lambda-derivation": CheckEntry(_derivation_check,
                                    "d(a_m b) = (da)_m b + a_m(db) + lambda (da)_m(db); on a VOA also d1 = 0, "
                                    "d(omega) = 0 and dL(-1) = L(-1)d", _MODE_WINDOW),
    "derivation-automorphism": CheckEntry(
        lambda c: rb.derivation_automorphism_roundtrip(c.V, c.op().map, modes=c.modes()),
        "phi = d + Id satisfies phi(a_m b) = phi(a)_m phi(b), fixes 1 and omega, and phi - Id = d", _MODE_WINDOW),
    "projection-rbo": CheckEntry(_projection,
                                 "V = V1 + V2 with both summands closed under all modes; the projection onto V1 is an "
                                 "idempotent RBO of weight -1, and so is Id - P", _MODE_WINDOW),
    "tensor-rbo": CheckEntry(_tensor, "P^(a (x) f) = a (x) P_A(f) is an RBO when P_A is one on the Laurent factor",
                             _MODE_WINDOW + "; products leaving the Laurent window are skipped"),
    "homogeneous-structure": CheckEntry(lambda c: rb.homogeneous_structure_check(c.V, c.op(), modes=c.modes()),
                                        "P(1) is 0 or -lambda 1, P^2 + lambda P = 0, V = P(V) + ker P with both closed",
                                        "every enumerated degree"),
    "derived-structure": CheckEntry(_derived,
                                    "Y*(a,z)b = Y(a,z)Pb + Y(Pa,z)b + lambda Y(a,z)b satisfies P(Y*(a,z)b) = "
                                    "Y(Pa,z)Pb, is weakly commutative and associative, skew symmetric with the D "
                                    "properties when PD = DP, and P is again an RBO for it",
                                    _MODE_WINDOW + "; triples are a seeded sample"),
    "star-formula": CheckEntry(_star, "for a projection: Y*(a,z)b = Y(a1,z)b1 - Y(a2,z)b2", _MODE_WINDOW),
    "divided-power-coefficients": CheckEntry(
        lambda c: rb.check_divided_power_coefficients(c.V, seed=c.seed),
        "(m+n+2-j)!/((m+1-j)!(n+1)!j!) is the z^j coefficient of Y(t_{m+1},z)t_{n+1} and equals the sum of the "
        "two right-hand coefficients", "every pair within the cutoff, every j, plus three random rational points per degree"),
    "rescaled-rbo": CheckEntry(_transform("rescaled"), "-P/lambda is an RBO of weight -1", _MODE_WINDOW),
    "adjoint-rbo": CheckEntry(_transform("adjoint"), "-lambda Id - P is an RBO of weight lambda", _MODE_WINDOW),
    "modified-yang-baxter": CheckEntry(_myb,
                                       "R = Id - 2P satisfies Y(Ra,z)Rb - R(Y(Ra,z)b + Y(a,z)Rb) = -Y(a,z)b and "
                                       "(Id - R)/2 recovers an RBO of weight -1; at weight 0 the equation with "
                                       "R = P and right side 0", _MODE_WINDOW),
    "differential-rb": CheckEntry(lambda c: rb.check_differential_rb(c.V, c.op().map, modes=c.modes()),
                                  "Y(Pa,z)Pb - P(Y(Pa,z)b) - P(Y(a,z)Pb) has coefficients in ker D", _MODE_WINDOW),
    "dendriform-field": CheckEntry(_dn_triples(dd.check_dendriform_field, "dendriform-field"),
                                   "(z0+z2)^N (a<b)<c = (z0+z2)^N a<(b>c + b<c); (z0+z2)^N (a>b)<c = "
                                   "(z0+z2)^N a>(b<c); (z0+z2)^N (a>b + a<b)>c = (z0+z2)^N a>(b>c)", _TRIPLE_WINDOW),
    "dendriform-leibniz": CheckEntry(_dn_triples(dd.check_dendriform_leibniz, "dendriform-leibniz"),
                                     "(z1-z2)^N a>(b<c) = (z1-z2)^N b<(a>c + a<c); (z1-z2)^N a>(b>c) = "
                                     "(z1-z2)^N b>(a>c)", _TRIPLE_WINDOW),
    "dendriform-vertex": CheckEntry(lambda c: dd.check_dendriform_vertex(_dn(c), c.pairs()),
                                    "e^{zD}(a <_{-z} b) = b >_z a and the mirrored identity; D(a<b) - a<(Db) = "
                                    "d/dz(a<b) and likewise for >; cross-checked with (Da)<b = d/dz(a<b)",
                                    "seven consecutive powers of z per pair"),
    "dendriform-jacobi": CheckEntry(_dn_triples(dd.check_dendriform_jacobi, "dendriform-jacobi"),
                                    "the three splittings of the Jacobi identity with (A, B, C) = "
                                    "(a>(b<c), b<(Y(a)c), (a>b)<c), (a>(b>c), b>(a>c), (Y(a)b)>c), "
                                    "(a<(Y(b)c), b>(a<c), (a<b)<c); their sum is the Jacobi identity of Y = < + >",
                                    _TRIPLE_WINDOW),
    "sum-collapse": CheckEntry(_sum_collapse, "Y = < + > is re-checked for its kind and equals Y* for RBO-derived "
                               "splittings", _MODE_WINDOW),
    "induced-module": CheckEntry(_induced, "V acting on itself through >, as a module over (V, < + >)", _TRIPLE_WINDOW),
    "bimodule": CheckEntry(_bimodule, "the bimodule identities for left action > and right action <", _TRIPLE_WINDOW),
    "operators-agree": CheckEntry(_agree, "two named operators have identical images on every basis element",
                                  "every enumerated basis element"),
    "relative-rbo": CheckEntry(_relative, "T = Id: Y(Tu,z)Tv = T(Y_W(Tu,z)v) + T(Y_WV(u,z)Tv) on the induced module",
                               _MODE_WINDOW),
}


def explain_check(name: str) -> str:
    if name not in CHECKS:
        raise UnknownCheckError(name)
    e = CHECKS[name]
    return f"{name}\n  identity: {e.identity}\n  window:   {e.window}\n"
