"""Splittings Y = prec + succ of a vertex operator into two partial operators.

Both partial operators are VertexOperator mode oracles, so every window and
killing-power facility of the kernel applies to them unchanged.  Kind tags
(field, vertex Leibniz, vertex) are claims that the checks here verify.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import ZERO, LinearRule, Vector, accumulate, as_vector, basis_order, from_dict
from .kernel import (PASS, CheckReport, ModuleSpec, VertexAlgebra, VertexOperator, _first_failure_group,
                     _rect, _run, check_D_properties, check_module_axioms, check_skew_symmetry,
                     check_truncation, check_weak_associativity, check_weak_commutativity,
                     default_kmax, default_rect, describe_difference)
from .rota_baxter import PreconditionError, RBOSpec, derived_operator
from .series import (InconclusiveError, Rect, iterate_window, jacobi_pair_check, minimal_killing_power,
                     mul_binomial_power, product_window, reversed_product_window, substitute_shift)

__all__ = [
    "DendriformSpec", "BimoduleSpec", "dendriform_from_rbva", "check_dendriform_field",
    "check_dendriform_leibniz", "check_dendriform_vertex", "sum_collapse", "check_dendriform_jacobi",
    "jacobi_windows", "check_jacobi_sum", "induced_module", "induced_bimodule", "bimodule_check",
    "check_dendriform_suite",
]

KINDS = ("field", "vertex Leibniz", "vertex")


@dataclass
class DendriformSpec:
    """Two partial operators on the carrier of ``base``; ``source`` records (V, P) when derived from an RBVA."""

    name: str
    base: VertexAlgebra
    prec: VertexOperator
    succ: VertexOperator
    D: LinearRule | None = None
    kind: str = "field"
    source: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")

    @property
    def total(self) -> VertexOperator:
        return _sum_op(self.prec, self.succ)

    @property
    def carrier(self):
        return self.base.carrier


def _sum_op(x: VertexOperator, y: VertexOperator, name: str = "Y") -> VertexOperator:
    shift = x.shift if x.shift == y.shift else None
    return VertexOperator(lambda a, n, b: x.basis_mode(a, n, b) + y.basis_mode(a, n, b),
                          lambda a, b: max(x.support(a, b), y.support(a, b)), name=name, shift=shift)


def dendriform_from_rbva(V: VertexAlgebra, P: RBOSpec, lam=None, *, translation_invariant=None) -> DendriformSpec:
    """a prec b = Y(a, z)Pb + lambda Y(a, z)b and a succ b = Y(Pa, z)b.

    The kind claim is field in general, vertex Leibniz at weight 0, and vertex
    when additionally P commutes with D.
    """
    lam = P.weight if lam is None else Fraction(lam)
    op = V.op

    def prec(a, n, b):
        out = op.mode(a, n, P(b))
        if lam:
            out = out + op.basis_mode(a, n, b) * lam
        return out

    def prec_support(a, b):
        s = op.support(a, P(b))
        return max(s, op.support(a, b)) if lam else s

    def succ(a, n, b):
        return op.mode(P(a), n, b)

    def succ_support(a, b):
        return op.support(P(a), b)

    shift = None if op.shift is None or P.degree is None else op.shift + P.degree
    po = VertexOperator(prec, prec_support, name="prec", shift=shift if not lam or P.degree == 0 else None)
    so = VertexOperator(succ, succ_support, name="succ", shift=shift)
    ti = P.translation_invariant
    if translation_invariant is not None:
        ti = translation_invariant
    kind = "field"
    if lam == 0:
        kind = "vertex" if ti else "vertex Leibniz"
    return DendriformSpec(f"dendriform({V.name}, {P.name})", V, po, so, D=V.D, kind=kind, source=(V, P))


def _killing(name, wname, L, R, sign, rect, kmax, subject, vars):
    try:
        k, bad = minimal_killing_power(L, R, sign, rect, kmax)
    except InconclusiveError as e:
        return CheckReport.inconclusive(name, subject, window=rect, notes=[str(e)])
    if k is not None:
        return CheckReport.passed(name, subject, window=rect, witnesses={wname: k})
    kk, (p, q) = bad
    Lk, Rk = mul_binomial_power(L, sign, kk), mul_binomial_power(R, sign, kk)
    return CheckReport.failed(name, subject, window=rect, witnesses={wname: None},
                              counterexample=describe_difference(Lk[p, q], Rk[p, q], {vars[0]: p, vars[1]: q, wname: kk}),
                              notes=[f"no witness up to kmax={kmax}"])


def _defaults(Dn: DendriformSpec, a, b, c, window, kmax):
    Y = Dn.total
    kmax = default_kmax(a, b) if kmax is None else kmax
    rect = _rect(window) or default_rect(Y, a, b, c)
    return Y, rect, kmax


def _common(name, wname, children, subject, rect) -> CheckReport:
    rep = CheckReport.group(name, children, subject=subject, window=rect)
    ws = [c.witnesses.get(wname) for c in children]
    rep.witnesses = {wname: max(ws) if all(w is not None for w in ws) else None}
    return rep


def check_dendriform_field(Dn: DendriformSpec, a, b, c, window=None, kmax=None) -> CheckReport:
    """The three splittings of weak associativity, each as
    (z0+z2)^N X(z0+z2, z2) = (z0+z2)^N Z(z0, z2); the minimal common N is reported."""
    Y, rect, kmax = _defaults(Dn, a, b, c, window, kmax)
    pr, su = Dn.prec, Dn.succ
    t = (a, b, c)
    items = [
        ("prec-prec", product_window(pr, a, Y, b, c), iterate_window(pr, pr, a, b, c)),
        ("succ-prec", product_window(su, a, pr, b, c), iterate_window(pr, su, a, b, c)),
        ("sum-succ", product_window(su, a, su, b, c), iterate_window(su, Y, a, b, c)),
    ]
    out = [_killing(n, "N", substitute_shift(X), Z, 1, rect, kmax, t, ("z0", "z2")) for n, X, Z in items]
    return _common("dendriform-field", "N", out, t, rect)


def check_dendriform_leibniz(Dn: DendriformSpec, a, b, c, window=None, kmax=None) -> CheckReport:
    """The two splittings of weak commutativity, (z1-z2)^N X = (z1-z2)^N Z."""
    Y, rect, kmax = _defaults(Dn, a, b, c, window, kmax)
    pr, su = Dn.prec, Dn.succ
    t = (a, b, c)
    items = [
        ("succ-over-prec", product_window(su, a, pr, b, c), reversed_product_window(pr, b, Y, a, c)),
        ("succ-over-succ", product_window(su, a, su, b, c), reversed_product_window(su, b, su, a, c)),
    ]
    out = [_killing(n, "N", X, Z, -1, rect, kmax, t, ("z1", "z2")) for n, X, Z in items]
    return _common("dendriform-leibniz", "N", out, t, rect)


def _skew_between(name, left: VertexOperator, right: VertexOperator, D, a, b, window) -> CheckReport:
    """e^{zD}(a left_{-z} b) = b right_z a coefficient by coefficient."""
    a, b = as_vector(a), as_vector(b)
    sab = left.support(a, b)
    if window is None:
        lo = -max(sab, right.support(b, a)) - 1
        window = (lo, lo + 6)
    lo, hi = window
    for j in range(lo, hi + 1):
        rhs = right.mode(b, -j - 1, a)
        acc: dict = {}
        for i in range(0, j + sab + 1):
            x = left.mode(a, -(j - i) - 1, b)
            if not x:
                continue
            for r in range(1, i + 1):
                x = D(x) * Fraction(1, r)
            accumulate(acc, x, Fraction((-1) ** (j - i)))
        lhs = from_dict(acc)
        if lhs != rhs:
            return CheckReport.failed(name, (a, b), window=[lo, hi],
                                      counterexample=describe_difference(lhs, rhs, {"z": j}))
    return CheckReport.passed(name, (a, b), window=[lo, hi])


def _derivative(name, op: VertexOperator, D, a, b, window, bracket: bool) -> CheckReport:
    """Bracket form: D(a_n b) - a_n(Db) = -n a_{n-1} b.  Plain form: (Da)_n b = -n a_{n-1} b."""
    a, b = as_vector(a), as_vector(b)
    if window is None:
        window = (-4, max(op.support(a, b), op.support(D(a), b), op.support(a, D(b))) + 1)
    lo, hi = window
    Da, Db = D(a), D(b)
    for n in range(lo, hi + 1):
        want = op.mode(a, n - 1, b) * (-n)
        got = D(op.mode(a, n, b)) - op.mode(a, n, Db) if bracket else op.mode(Da, n, b)
        if got != want:
            return CheckReport.failed(name, (a, b), window=[lo, hi],
                                      counterexample=describe_difference(got, want, {"n": n}))
    return CheckReport.passed(name, (a, b), window=[lo, hi])


def check_dendriform_vertex(Dn: DendriformSpec, pairs=None, window=None, *, triples=None, kmax=None) -> CheckReport:
    """Skew symmetry exchanging prec and succ, the D-bracket property of each, and the
    equivalent D-derivative form as a cross-check.  With ``triples`` the field and
    Leibniz verdicts are also compared per triple: once the D-compatibilities hold,
    they must agree."""
    if Dn.D is None:
        raise PreconditionError("the vertex check needs a translation D")
    D = Dn.D
    pairs = Dn.carrier.pairs() if pairs is None else list(pairs)
    pr, su = Dn.prec, Dn.succ
    parts = {k: [] for k in ("skew prec->succ", "skew succ->prec", "D-bracket prec", "D-bracket succ",
                             "D-derivative prec", "D-derivative succ")}
    for a, b in pairs:
        parts["skew prec->succ"].append(_skew_between("skew prec->succ", pr, su, D, a, b, window))
        parts["skew succ->prec"].append(_skew_between("skew succ->prec", su, pr, D, a, b, window))
        parts["D-bracket prec"].append(_derivative("D-bracket prec", pr, D, a, b, None, True))
        parts["D-bracket succ"].append(_derivative("D-bracket succ", su, D, a, b, None, True))
        parts["D-derivative prec"].append(_derivative("D-derivative prec", pr, D, a, b, None, False))
        parts["D-derivative succ"].append(_derivative("D-derivative succ", su, D, a, b, None, False))
    out = [_first_failure_group(k, v) for k, v in parts.items()]
    compat = all(r.ok for r in out[:4])
    cross = all(r.ok for r in out[4:])
    notes = []
    if compat != cross:
        notes.append("skew+bracket and skew+derivative verdicts disagree")
    if triples:
        agree = []
        for t in triples:
            f, l = check_dendriform_field(Dn, *t, kmax=kmax), check_dendriform_leibniz(Dn, *t, kmax=kmax)
            if compat and f.verdict != l.verdict:
                agree.append(CheckReport.failed("field-leibniz-agreement", t, counterexample={
                    "at": {}, "basis": "", "weight": None, "expected": f.verdict, "got": l.verdict}))
        out.append(_first_failure_group("field-leibniz-agreement", agree))
        out[-1].counts["checked"] = len(triples)
    rep = CheckReport.group("dendriform-vertex", out, subject=Dn.name, notes=notes)
    rep.counts = {"pairs": len(pairs)}
    if Dn.kind == "vertex" and not rep.ok:
        rep.notes.append(f"{Dn.name} is declared vertex but fails the D-compatibilities")
    return rep


def sum_collapse(Dn: DendriformSpec, *, triples=None, pairs=None, kmax=None, modes=None) -> tuple[VertexAlgebra, CheckReport]:
    """Y = prec + succ, re-checked according to the kind claim; for RBVA-derived specs
    Y is also compared with Y* coefficient by coefficient."""
    Y = _sum_op(Dn.prec, Dn.succ, name="prec+succ")
    kind = {"field": "field Leibniz", "vertex Leibniz": "vertex Leibniz",
            "vertex": "vertex algebra without vacuum"}[Dn.kind]
    V = Dn.base.with_operator(Y, name=f"collapse of {Dn.name}", kind=kind)
    V.D = Dn.D
    triples = list(triples) if triples is not None else []
    out = []
    if triples:
        out.append(_first_failure_group("collapse-weak-associativity",
                                        [check_weak_associativity(V, *t, kmax=kmax) for t in triples]))
        if Dn.kind != "field":
            out.append(_first_failure_group("collapse-weak-commutativity",
                                            [check_weak_commutativity(V, *t, kmax=kmax) for t in triples]))
    sp = list(pairs) if pairs is not None else Dn.carrier.pairs()
    if Dn.kind == "vertex" and Dn.D is not None:
        out.append(_first_failure_group("collapse-skew-symmetry", [check_skew_symmetry(V, a, b) for a, b in sp]))
        out.append(_first_failure_group("collapse-D-properties", [check_D_properties(V, a, b) for a, b in sp]))
    if Dn.source is not None:
        base, P = Dn.source
        star = derived_operator(base, P)
        lo, hi = (-(base.cutoff + 2), base.cutoff + 2) if modes is None else modes
        bad = None
        n = 0
        for a, b in sp:
            for m in range(lo, hi + 1):
                n += 1
                x, y = Y.mode(a, m, b), star.mode(a, m, b)
                if x != y:
                    bad = CheckReport.failed("collapse-equals-Y*", (a, b), window=[lo, hi],
                                             counterexample=describe_difference(x, y, {"m": m}))
                    break
            if bad:
                break
        out.append(bad or CheckReport.passed("collapse-equals-Y*", window=[lo, hi], counts={"coefficients": n}))
    return V, CheckReport.group("sum-collapse", out, subject=Dn.name)


def jacobi_windows(Dn: DendriformSpec, a, b, c) -> dict:
    """The (A, B, C) windows of the three splittings of the Jacobi identity."""
    pr, su, Y = Dn.prec, Dn.succ, Dn.total
    return {
        "succ-prec": (product_window(su, a, pr, b, c), reversed_product_window(pr, b, Y, a, c),
                      iterate_window(pr, su, a, b, c)),
        "succ-succ": (product_window(su, a, su, b, c), reversed_product_window(su, b, su, a, c),
                      iterate_window(su, Y, a, b, c)),
        "prec-prec": (product_window(pr, a, Y, b, c), reversed_product_window(su, b, pr, a, c),
                      iterate_window(pr, pr, a, b, c)),
    }


def _pair_check(A, B, C, kmax, rect, name, subject) -> CheckReport:
    try:
        return jacobi_pair_check(A, B, C, kmax, rect, name=name, subject=subject)
    except InconclusiveError as e:
        return CheckReport.inconclusive(name, subject, window=rect, notes=[str(e)])


def check_jacobi_sum(Dn: DendriformSpec, a, b, c, rect: Rect | None = None) -> CheckReport:
    """Adding the three (A, B, C) windows reproduces the Jacobi windows of prec + succ."""
    Y = Dn.total
    rect = rect or default_rect(Y, a, b, c)
    ws = list(jacobi_windows(Dn, a, b, c).values())
    full = (product_window(Y, a, Y, b, c), reversed_product_window(Y, b, Y, a, c), iterate_window(Y, Y, a, b, c))
    n = 0
    for idx, label in enumerate("ABC"):
        total = ws[0][idx] + ws[1][idx] + ws[2][idx]
        for pq in rect.points():
            n += 1
            if total[pq] != full[idx][pq]:
                return CheckReport.failed("jacobi-sum", (a, b, c), window=rect,
                                          counterexample=describe_difference(total[pq], full[idx][pq],
                                                                             {"window": label, "point": list(pq)}))
    return CheckReport.passed("jacobi-sum", (a, b, c), window=rect, counts={"coefficients": n})


def check_dendriform_jacobi(Dn: DendriformSpec, a, b, c, window=None, kmax=None) -> CheckReport:
    """Each of the three splittings through the (k, l) pair form; for vertex kind the
    three must share a verdict, and the windows must add up to the collapsed Jacobi windows."""
    Y, rect, kmax = _defaults(Dn, a, b, c, window, kmax)
    t = (a, b, c)
    out = [_pair_check(A, B, C, kmax, rect, name, t) for name, (A, B, C) in jacobi_windows(Dn, a, b, c).items()]
    out.append(check_jacobi_sum(Dn, a, b, c, rect))
    rep = CheckReport.group("dendriform-jacobi", out, subject=t, window=rect)
    verdicts = {r.verdict for r in out[:3]}
    rep.values = {"verdicts": [r.verdict for r in out[:3]]}
    if Dn.kind == "vertex" and len(verdicts) > 1:
        rep.notes.append("the three identities disagree on a vertex-kind spec")
        if rep.verdict == PASS:
            rep.verdict = "fail"
    return rep


@dataclass
class BimoduleSpec:
    """W with a left action Y_W of V and a right action Y_WV^W: W x V -> W((z))."""

    name: str
    carrier: object
    left: VertexOperator
    right: VertexOperator


def induced_module(Dn: DendriformSpec, *, triples=None, kmax=None, jobs: int = 1) -> tuple[ModuleSpec, CheckReport]:
    """W = V with Y_W = succ and Y_WV^W = prec, module axioms checked over prec + succ."""
    if Dn.kind != "vertex":
        raise PreconditionError("the induced module needs a vertex-kind spec")
    V, _ = sum_collapse(Dn)
    W = ModuleSpec(f"induced module of {Dn.name}", Dn.carrier, Dn.succ, Dn.prec)
    rep = check_module_axioms(V, W, triples=triples, kmax=kmax, jobs=jobs)
    return W, rep


def induced_bimodule(Dn: DendriformSpec) -> BimoduleSpec:
    return BimoduleSpec(f"bimodule of {Dn.name}", Dn.carrier, Dn.succ, Dn.prec)


def bimodule_check(Y: VertexOperator, B: BimoduleSpec, triples, window=None, kmax=None, jobs: int = 1) -> CheckReport:
    """Three Jacobi identities: left-right, left-left and right-right, each in (k, l) form.

    ``triples`` are (a, b, c) with the role of each slot fixed by the identity;
    when W = V (as for a dendriform-induced bimodule) the same triples serve all three.
    """
    L, R = B.left, B.right

    def one(t):
        a, b, c = t
        k = default_kmax(a, b) if kmax is None else kmax
        rect = _rect(window) or default_rect(Y, a, b, c)
        items = [
            ("left-right", product_window(L, a, R, b, c), reversed_product_window(R, b, Y, a, c),
             iterate_window(R, L, a, b, c)),
            ("left-left", product_window(L, a, L, b, c), reversed_product_window(L, b, L, a, c),
             iterate_window(L, Y, a, b, c)),
            ("right-right", product_window(R, a, Y, b, c), reversed_product_window(L, b, R, a, c),
             iterate_window(R, R, a, b, c)),
        ]
        return CheckReport.group("bimodule-triple", [_pair_check(A, Bw, C, k, rect, n, t) for n, A, Bw, C in items],
                                 subject=t, window=rect)

    reports = _run(list(triples), one, jobs)
    rep = _first_failure_group("bimodule", reports, subject=B.name)
    rep.values = {"verdicts": [[c.verdict for c in r.children] for r in reports]}
    return rep


def check_dendriform_suite(Dn: DendriformSpec, triples, *, kmax=None, jobs: int = 1) -> CheckReport:
    """Field, Leibniz and (when D is present) vertex checks over the given triples."""
    triples = list(triples)
    field = _run(triples, lambda t: check_dendriform_field(Dn, *t, kmax=kmax), jobs)
    out = [_witness_group("dendriform-field", field, "N")]
    if Dn.kind in ("vertex Leibniz", "vertex"):
        leib = _run(triples, lambda t: check_dendriform_leibniz(Dn, *t, kmax=kmax), jobs)
        out.append(_witness_group("dendriform-leibniz", leib, "N"))
    if Dn.kind == "vertex" and Dn.D is not None:
        pairs = sorted({(a, b) for a, b, _ in triples}, key=lambda p: (basis_order(p[0]), basis_order(p[1])))
        out.append(check_dendriform_vertex(Dn, pairs))
    return CheckReport.group("dendriform-suite", out, subject=Dn.name)


def _witness_group(name, reports, wname) -> CheckReport:
    rep = _first_failure_group(name, reports)
    ws = [r.witnesses.get(wname) for r in reports]
    rep.witnesses = {f"max {wname}": max((w for w in ws if w is not None), default=None)}
    rep.values = {"witnesses": [w for w in ws]}
    return rep
