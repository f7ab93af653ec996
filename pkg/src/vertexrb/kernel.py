"""Mode-action oracles, algebra and module presentations, and the axiom checkers.

Every structure is a bilinear mode family ``(a, n, b) -> a_n b`` on basis
indices, extended bilinearly and memoized.  Checks evaluate identities
coefficient-by-coefficient on finite windows with exact equality and return a
:class:`CheckReport`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Sequence

from .exact import (ZERO, Basis, LinearRule, Vector, accumulate, as_vector,
                    basis_order, from_dict)
from .series import (InconclusiveError, Rect, Series, binom, iterate_window,
                     jacobi_pair_check, minimal_killing_power, product_window,
                     reversed_product_window, substitute_shift)

__all__ = [
    "PASS", "FAIL", "INCONCLUSIVE", "CheckReport", "aggregate",
    "VertexOperator", "Carrier", "VertexAlgebra", "ModuleSpec",
    "GradingError", "CutoffError",
    "mode_action", "vertex_series", "check_truncation", "check_vacuum",
    "check_creation", "check_skew_symmetry", "check_D_properties",
    "check_weak_commutativity", "check_weak_associativity", "check_jacobi",
    "check_vertex_algebra_axioms", "check_voa_axioms", "check_module_axioms",
    "adjoint_module", "locality_order",
]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class GradingError(ValueError):
    """A mode oracle returned a term of the wrong weight."""


class CutoffError(LookupError):
    """A basis enumeration beyond the configured degree cutoff was requested."""


def aggregate(verdicts: Iterable[str]) -> str:
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


def fmt(x) -> str:
    if isinstance(x, Basis):
        return repr(x.label)
    if isinstance(x, Vector):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def _json(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (Rect, tuple)):
        return [_json(y) for y in x]
    if isinstance(x, list):
        return [_json(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _json(v) for k, v in x.items()}
    if isinstance(x, (Basis, Vector)):
        return fmt(x)
    return x


class _VerdictAccessor:
    """``CheckReport.passed(name, ...)`` builds a report; ``report.passed`` is a bool."""

    def __init__(self, verdict: str):
        self.verdict = verdict

    def __get__(self, obj, owner):
        if obj is not None:
            return obj.verdict == self.verdict
        verdict = self.verdict

        def make(name, subject=None, **kw):
            if verdict == FAIL and kw.get("counterexample") is None:
                raise ValueError("a failing report needs a counterexample")
            return owner(name, _subject(subject), verdict, **kw)
        return make


@dataclass
class CheckReport:
    """Verdict of one identity check (or a group of them, via ``children``).

    A failing report carries a counterexample; ``expected`` is the left-hand
    side of the identity and ``got`` the right-hand side at that coefficient.
    """

    name: str
    subject: Any = None
    verdict: str = PASS
    window: Any = None
    witnesses: dict = field(default_factory=dict)
    counterexample: dict | None = None
    notes: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    children: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    passed = _VerdictAccessor(PASS)
    failed = _VerdictAccessor(FAIL)
    inconclusive = _VerdictAccessor(INCONCLUSIVE)

    @classmethod
    def group(cls, name, children: Sequence["CheckReport"], subject=None, **kw) -> "CheckReport":
        children = list(children)
        verdict = aggregate(c.verdict for c in children)
        rep = cls(name, _subject(subject), verdict, children=children, **kw)
        if rep.window is None:
            rep.window = "per check"
        if verdict == FAIL and rep.counterexample is None:
            bad = next(c for c in children if c.verdict == FAIL)
            rep.counterexample = dict(bad.counterexample, check=bad.name)
            if bad.subject is not None:
                rep.counterexample.setdefault("subject", bad.subject)
        return rep

    def find(self, name: str) -> "CheckReport | None":
        if self.name == name:
            return self
        for c in self.children:
            r = c.find(name)
            if r is not None:
                return r
        return None

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_dict(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict}
        if self.subject is not None:
            d["subject"] = _json(self.subject)
        if self.window is not None:
            d["window"] = _json(self.window)
        if self.witnesses:
            d["witnesses"] = _json(self.witnesses)
        if self.counterexample is not None:
            d["counterexample"] = _json(self.counterexample)
        if self.counts:
            d["counts"] = _json(self.counts)
        if self.values:
            d["values"] = _json(self.values)
        if self.notes:
            d["notes"] = list(self.notes)
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def summary(self, indent: int = 0, depth: int = 1) -> str:
        pad = "  " * indent
        line = f"{pad}[{self.verdict.upper()}] {self.name}"
        if self.subject is not None:
            line += f" {self.subject}"
        if self.witnesses:
            line += " " + ", ".join(f"{k}={v}" for k, v in self.witnesses.items())
        if self.values:
            line += " " + ", ".join(f"{k}={_short(_json(v))}" for k, v in self.values.items())
        if self.counts:
            line += " (" + ", ".join(f"{k}: {v}" for k, v in self.counts.items()) + ")"
        lines = [line]
        if self.counterexample is not None and (depth <= 0 or not self.children):
            lines.append(f"{pad}    counterexample: {_json(self.counterexample)}")
        if depth > 0:
            for c in self.children:
                lines.append(c.summary(indent + 1, depth - 1))
        return "\n".join(lines)


def _short(v):
    if isinstance(v, list) and len(v) > 6:
        return f"[{len(v)} entries]"
    return v


def _subject(s):
    if s is None or isinstance(s, str):
        return s
    if isinstance(s, (tuple, list)):
        return "(" + ", ".join(fmt(x) for x in s) + ")"
    return fmt(s)


def describe_difference(lhs: Vector, rhs: Vector, at: dict) -> dict:
    """Counterexample at the smallest basis index where lhs and rhs differ."""
    diff = lhs - rhs
    b = min(diff, key=basis_order)
    return {"at": dict(at), "basis": fmt(b), "weight": b.weight,
            "expected": lhs[b], "got": rhs[b]}


class VertexOperator:
    """Bilinear mode family (a, n, b) -> a_n b given on basis indices.

    ``support(a, b)`` must be an honest bound: a_n b = 0 for n >= support.
    When ``shift`` is an integer each result term must have weight
    wt(a) + wt(b) - n - 1 + shift; None disables the grading check.
    """

    def __init__(self, mode_fn: Callable[[Basis, int, Basis], Vector],
                 support_fn: Callable[[Basis, Basis], int], *, name: str = "Y",
                 shift: int | None = 0):
        self._mode_fn = mode_fn
        self._support_fn = support_fn
        self.name = name
        self.shift = shift
        self._cache: dict = {}

    def basis_mode(self, a: Basis, n: int, b: Basis) -> Vector:
        key = (a, n, b)
        try:
            return self._cache[key]
        except KeyError:
            pass
        if n >= self._support_fn(a, b):
            out = ZERO
        else:
            out = self._mode_fn(a, n, b)
            if self.shift is not None and out:
                w = a.weight + b.weight - n - 1 + self.shift
                for t in out:
                    if t.weight != w:
                        raise GradingError(f"{self.name}: ({a.label!r})_{n}({b.label!r}) has a "
                                           f"term {t.label!r} of weight {t.weight}, expected {w}")
        self._cache[key] = out
        return out

    def mode(self, a: Vector | Basis, n: int, b: Vector | Basis) -> Vector:
        if isinstance(a, Basis) and isinstance(b, Basis):
            return self.basis_mode(a, n, b)
        a, b = as_vector(a), as_vector(b)
        acc: dict = {}
        for x, cx in a.items():
            for y, cy in b.items():
                accumulate(acc, self.basis_mode(x, n, y), cx * cy)
        return from_dict(acc)

    def support(self, a: Vector | Basis, b: Vector | Basis) -> int:
        if isinstance(a, Basis) and isinstance(b, Basis):
            return self._support_fn(a, b)
        a, b = as_vector(a), as_vector(b)
        if not a or not b:
            return 0
        return max(self._support_fn(x, y) for x in a for y in b)

    def series(self, a, b, lo: int, hi: int, var: str = "z") -> Series:
        """Coefficients of z^j, j in [lo, hi], i.e. a_{-j-1} b."""
        coeffs = {j: self.mode(a, -j - 1, b) for j in range(lo, hi + 1)}
        return Series(var, lo, hi, coeffs, exact_below=lo <= -self.support(a, b))

    # combinators used by derived and split structures
    def __add__(self, other: "VertexOperator") -> "VertexOperator":
        return VertexOperator(lambda a, n, b: self.basis_mode(a, n, b) + other.basis_mode(a, n, b),
                              lambda a, b: max(self._support_fn(a, b), other._support_fn(a, b)),
                              name=f"({self.name} + {other.name})",
                              shift=self.shift if self.shift == other.shift else None)

    def scaled(self, c) -> "VertexOperator":
        c = Fraction(c)
        return VertexOperator(lambda a, n, b: self.basis_mode(a, n, b) * c, self._support_fn,
                              name=f"{c}*{self.name}", shift=self.shift)

    def __repr__(self) -> str:
        return f"VertexOperator({self.name})"


def zero_operator(name: str = "0") -> VertexOperator:
    return VertexOperator(lambda a, n, b: ZERO, lambda a, b: -10 ** 6, name=name, shift=None)


class Carrier:
    """Graded basis enumerator, finite per degree, limited to ``weights``."""

    def __init__(self, enumerate_fn: Callable[[int], list[Basis]], weights: Iterable[int],
                 name: str = "V", parse: Callable[[str], Basis] | None = None):
        self._enum = enumerate_fn
        self.weights = tuple(weights)
        self._weight_set = frozenset(self.weights)
        self.name = name
        self._parse = parse
        self._cache: dict[int, list[Basis]] = {}

    def covers(self, w: int) -> bool:
        return w in self._weight_set

    def basis(self, w: int) -> list[Basis]:
        if w not in self._weight_set:
            raise CutoffError(f"{self.name}: degree {w} is outside the enumerated degrees "
                              f"{min(self.weights)}..{max(self.weights)}")
        if w not in self._cache:
            self._cache[w] = sorted(self._enum(w), key=basis_order)
        return self._cache[w]

    def all_basis(self) -> list[Basis]:
        return [b for w in self.weights for b in self.basis(w)]

    def parse(self, text: str) -> Basis:
        if self._parse is None:
            raise ValueError(f"{self.name} has no basis parser")
        return self._parse(text)

    def pairs(self, left: Iterable[Basis] | None = None, right: Iterable[Basis] | None = None):
        """Basis pairs whose total weight is an enumerated degree."""
        left = self.all_basis() if left is None else list(left)
        right = self.all_basis() if right is None else list(right)
        return [(a, b) for a in left for b in right if self.covers(a.weight + b.weight)]

    def triples(self):
        basis = self.all_basis()
        return [(a, b, c) for a in basis for b in basis for c in basis
                if self.covers(a.weight + b.weight + c.weight)]


class VertexAlgebra:
    """A carrier with a vertex operator, optional vacuum, translation D and conformal vector.

    ``kind`` is a claim (vertex algebra, VOA, vertex Leibniz, field Leibniz,
    vertex algebra without vacuum); checks verify it, they never assume it.
    """

    def __init__(self, name: str, op: VertexOperator, carrier: Carrier, *,
                 vacuum: Basis | None = None, D: LinearRule | None = None,
                 omega: Vector | None = None, kind: str = "vertex algebra",
                 params: dict | None = None):
        self.name = name
        self.op = op
        self.carrier = carrier
        self.vacuum = vacuum
        if D is None and vacuum is not None:
            D = LinearRule(lambda b: op.basis_mode(b, -2, vacuum),
                           degree=1 if op.shift == 0 else None, name="D")
        self.D = D
        self.omega = omega
        self.kind = kind
        self.params = dict(params or {})

    def mode(self, a, n, b) -> Vector:
        return self.op.mode(a, n, b)

    def support(self, a, b) -> int:
        return self.op.support(a, b)

    def series(self, a, b, lo, hi, var="z") -> Series:
        return self.op.series(a, b, lo, hi, var)

    def basis(self, w: int) -> list[Basis]:
        return self.carrier.basis(w)

    def parse(self, text: str) -> Basis:
        return self.carrier.parse(text)

    @property
    def cutoff(self) -> int:
        return max(abs(w) for w in self.carrier.weights)

    def with_operator(self, op: VertexOperator, *, name: str | None = None, kind: str | None = None,
                      keep_vacuum: bool = False) -> "VertexAlgebra":
        """Same carrier and translation, different vertex operator."""
        return VertexAlgebra(name or f"{self.name}[{op.name}]", op, self.carrier,
                             vacuum=self.vacuum if keep_vacuum else None, D=self.D,
                             omega=None, kind=kind or self.kind, params=self.params)

    def __repr__(self) -> str:
        return f"VertexAlgebra({self.name}, kind={self.kind!r})"


@dataclass
class ModuleSpec:
    """A module carrier with left action Y_W and optional right action Y_WV^W."""

    name: str
    carrier: Carrier
    action: VertexOperator
    right: VertexOperator | None = None
    conformal_weight: Fraction = Fraction(0)


def adjoint_module(V: VertexAlgebra) -> ModuleSpec:
    """V as a module over itself; the right action is Y itself (skew symmetry)."""
    return ModuleSpec(f"adjoint {V.name}", V.carrier, V.op, V.op)


def mode_action(V: VertexAlgebra, a, m: int, b) -> Vector:
    return V.mode(a, m, b)


def vertex_series(V: VertexAlgebra, a, b, window: tuple[int, int]) -> Series:
    return V.series(a, b, window[0], window[1])


# ---------------------------------------------------------------- defaults

def _max_weight(x) -> int:
    x = as_vector(x)
    return max((b.weight for b in x), default=0)


def default_kmax(a, b) -> int:
    return max(4, 2 * (_max_weight(a) + _max_weight(b)) + 4)


def default_rect(op, a, b, c, inner=None) -> Rect:
    """Square window reaching 2 below the lowest exponents the supports allow."""
    inner = inner or op
    s = max(0, op.support(a, b)) + max(0, inner.support(b, c)) + max(0, op.support(a, c))
    return Rect.square(-(s + 2), 2)


def _rect(window) -> Rect | None:
    if window is None or isinstance(window, Rect):
        return window
    window = tuple(window)
    if len(window) == 2:
        return Rect.square(*window)
    return Rect(*window)


# ---------------------------------------------------------------- basic axioms

def check_truncation(op: VertexOperator, pairs, extra: int = 3, name: str = "truncation") -> CheckReport:
    """a_n b = 0 for n in [support, support + extra) on every pair."""
    n_checked = 0
    for a, b in pairs:
        M = op.support(a, b)
        for n in range(M, M + extra):
            v = op._mode_fn(a, n, b)
            n_checked += 1
            if v:
                return CheckReport.failed(name, (a, b), window=[M, M + extra - 1],
                                          counterexample=describe_difference(v, ZERO, {"n": n}))
    return CheckReport.passed(name, window=f"[support, support+{extra - 1}]",
                              counts={"pairs": len(pairs), "coefficients": n_checked})


def check_vacuum(V: VertexAlgebra, basis: Iterable[Basis], window=(-4, 4)) -> CheckReport:
    """1_n b = delta_{n,-1} b."""
    one = V.vacuum
    n_checked = 0
    for b in basis:
        for n in range(window[0], window[1] + 1):
            got = V.mode(one, n, b)
            want = Vector.of(b) if n == -1 else ZERO
            n_checked += 1
            if got != want:
                return CheckReport.failed("vacuum", (one, b), window=list(window),
                                          counterexample=describe_difference(want, got, {"n": n}))
    return CheckReport.passed("vacuum", window=list(window), counts={"coefficients": n_checked})


def check_creation(V: VertexAlgebra, basis: Iterable[Basis]) -> CheckReport:
    """Y(a, z)1 has no negative powers and a_{-1}1 = a."""
    one = V.vacuum
    n_checked = 0
    for a in basis:
        M = V.support(a, one)
        for n in range(0, max(M, 0) + 2):
            got = V.mode(a, n, one)
            n_checked += 1
            if got:
                return CheckReport.failed("creation", (a, one), window=[0, max(M, 0) + 1],
                                          counterexample=describe_difference(ZERO, got, {"n": n}))
        got = V.mode(a, -1, one)
        n_checked += 1
        if got != Vector.of(a):
            return CheckReport.failed("creation", (a, one),
                                      counterexample=describe_difference(Vector.of(a), got, {"n": -1}))
    return CheckReport.passed("creation", window="n >= -1", counts={"coefficients": n_checked})


def _power_series_D(D: LinearRule, x: Vector, upto: int) -> list[Vector]:
    """[x, Dx, D^2x/2!, ...] up to D^upto x / upto!."""
    out = [x]
    cur = x
    for i in range(1, upto + 1):
        cur = D(cur) * Fraction(1, i)
        out.append(cur)
    return out


def check_skew_symmetry(V: VertexAlgebra, a, b, window=None, op: VertexOperator | None = None,
                        D: LinearRule | None = None) -> CheckReport:
    """Y(a, z)b = e^{zD} Y(b, -z)a coefficient by coefficient.

    The z^j coefficient of the right side is
    sum_i D^i/i! (-1)^{j-i} b_{-(j-i)-1} a, a finite sum because b_n a
    vanishes for n >= support(b, a).
    """
    op = op or V.op
    D = D or V.D
    a, b = as_vector(a), as_vector(b)
    sba = op.support(b, a)
    if window is None:
        lo = -max(op.support(a, b), sba) - 1
        window = (lo, lo + 6)
    lo, hi = window
    for j in range(lo, hi + 1):
        lhs = op.mode(a, -j - 1, b)
        acc: dict = {}
        # b_{-(j-i)-1} a = 0 once j - i <= -sba - 1, i.e. i >= j + sba + 1
        for i in range(0, j + sba + 1):
            t = op.mode(b, -(j - i) - 1, a)
            if not t:
                continue
            x = t
            for r in range(1, i + 1):
                x = D(x) * Fraction(1, r)
            accumulate(acc, x, Fraction((-1) ** (j - i)))
        rhs = from_dict(acc)
        if lhs != rhs:
            return CheckReport.failed("skew-symmetry", (a, b), window=[lo, hi],
                                      counterexample=describe_difference(lhs, rhs, {"z": j}))
    return CheckReport.passed("skew-symmetry", (a, b), window=[lo, hi])


def check_D_properties(V: VertexAlgebra, a, b, window=None, op: VertexOperator | None = None,
                       D: LinearRule | None = None) -> CheckReport:
    """(Da)_n b = -n a_{n-1} b and D(a_n b) - a_n(Db) = -n a_{n-1} b."""
    op = op or V.op
    D = D or V.D
    a, b = as_vector(a), as_vector(b)
    if window is None:
        M = max(op.support(a, b), op.support(D(a), b), op.support(a, D(b)))
        window = (-4, M + 1)
    lo, hi = window
    Da, Db = D(a), D(b)
    for n in range(lo, hi + 1):
        want = op.mode(a, n - 1, b) * (-n)
        got = op.mode(Da, n, b)
        if got != want:
            return CheckReport.failed("D-derivative", (a, b), window=[lo, hi],
                                      counterexample=describe_difference(got, want, {"n": n}))
        got = D(op.mode(a, n, b)) - op.mode(a, n, Db)
        if got != want:
            return CheckReport.failed("D-bracket", (a, b), window=[lo, hi],
                                      counterexample=describe_difference(got, want, {"n": n}))
    return CheckReport.passed("D-properties", (a, b), window=[lo, hi])


def locality_order(op: VertexOperator, a, b) -> int:
    """1 + max{j >= 0 : a_j b != 0}, or 0 if no such j."""
    M = op.support(a, b)
    for j in range(M - 1, -1, -1):
        if op.mode(a, j, b):
            return j + 1
    return 0


def check_weak_commutativity(V, a, b, c, window=None, kmax=None, op=None) -> CheckReport:
    op = op or V.op
    kmax = default_kmax(a, b) if kmax is None else kmax
    rect = _rect(window) or default_rect(op, a, b, c)
    A = product_window(op, a, op, b, c)
    B = reversed_product_window(op, b, op, a, c)
    return _killing_report("weak-commutativity", "k", A, B, -1, rect, kmax, (a, b, c), ("z1", "z2"))


def check_weak_associativity(V, a, b, c, window=None, kmax=None, op=None) -> CheckReport:
    op = op or V.op
    kmax = default_kmax(a, b) if kmax is None else kmax
    rect = _rect(window) or default_rect(op, a, b, c)
    A = substitute_shift(product_window(op, a, op, b, c))
    C = iterate_window(op, op, a, b, c)
    return _killing_report("weak-associativity", "l", A, C, 1, rect, kmax, (a, b, c), ("z0", "z2"))


def _killing_report(name, wname, L, R, sign, rect, kmax, subject, vars) -> CheckReport:
    from .series import mul_binomial_power
    try:
        k, bad = minimal_killing_power(L, R, sign, rect, kmax)
    except InconclusiveError as e:
        return CheckReport.inconclusive(name, subject, window=rect, notes=[str(e)])
    if k is not None:
        return CheckReport.passed(name, subject, window=rect, witnesses={wname: k})
    kk, (p, q) = bad
    Lk, Rk = mul_binomial_power(L, sign, kk), mul_binomial_power(R, sign, kk)
    cex = describe_difference(Lk[p, q], Rk[p, q], {vars[0]: p, vars[1]: q, wname: kk})
    return CheckReport.failed(name, subject, window=rect, witnesses={wname: None},
                              counterexample=cex, notes=[f"no witness up to kmax={kmax}"])


def check_jacobi(V, a, b, c, window=None, kmax=None, op=None) -> CheckReport:
    """Jacobi identity through the two-condition (commutativity, associativity) form."""
    op = op or V.op
    kmax = default_kmax(a, b) if kmax is None else kmax
    rect = _rect(window) or default_rect(op, a, b, c)
    A = product_window(op, a, op, b, c)
    B = reversed_product_window(op, b, op, a, c)
    C = iterate_window(op, op, a, b, c)
    try:
        return jacobi_pair_check(A, B, C, kmax, rect, name="jacobi", subject=(a, b, c))
    except InconclusiveError as e:
        return CheckReport.inconclusive("jacobi", (a, b, c), window=rect, notes=[str(e)])


def _run(items, fn, jobs: int = 1):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _first_failure_group(name, reports, **kw) -> CheckReport:
    """Collapse many per-item reports into one, keeping only failures and inconclusives."""
    kept = [r for r in reports if r.verdict != PASS]
    rep = CheckReport.group(name, kept, **kw)
    rep.counts = dict(rep.counts, checked=len(reports), passed=len(reports) - len(kept))
    return rep


def check_vertex_algebra_axioms(V: VertexAlgebra, *, triples=None, pairs=None, kmax=None,
                                jobs: int = 1, op: VertexOperator | None = None,
                                with_vacuum: bool = True, with_D: bool = True,
                                locality_cross_check: bool = True) -> CheckReport:
    """Truncation, vacuum, creation, skew symmetry, D properties and Jacobi on basis data.

    Also cross-checks two consequences: on every triple where skew symmetry and
    the D properties hold and associativity was witnessed, commutativity must
    be witnessed too; and the commutativity witness never exceeds the
    locality order 1 + max{j >= 0 : a_j b != 0}.
    """
    op = op or V.op
    basis = V.carrier.all_basis()
    pairs = V.carrier.pairs() if pairs is None else list(pairs)
    triples = V.carrier.triples() if triples is None else list(triples)
    out = [check_truncation(op, pairs)]
    if with_vacuum and V.vacuum is not None:
        out.append(check_vacuum(V, basis))
        out.append(check_creation(V, basis))
    pair_ok = {}
    if with_D and V.D is not None:
        skew = _run(pairs, lambda ab: check_skew_symmetry(V, ab[0], ab[1], op=op), jobs)
        dprop = _run(pairs, lambda ab: check_D_properties(V, ab[0], ab[1], op=op), jobs)
        for ab, r1, r2 in zip(pairs, skew, dprop):
            pair_ok[ab] = r1.ok and r2.ok
        out.append(_first_failure_group("skew-symmetry", skew))
        out.append(_first_failure_group("D-properties", dprop))
    jac = _run(triples, lambda t: check_jacobi(V, *t, kmax=kmax, op=op), jobs)
    out.append(_first_failure_group("jacobi", jac))
    if locality_cross_check:
        bad = []
        for (a, b, c), r in zip(triples, jac):
            k = r.witnesses.get("k")
            if k is not None and k > locality_order(op, a, b):
                bad.append(CheckReport.failed(
                    "locality-order", (a, b, c),
                    counterexample={"at": {"k": k}, "basis": fmt(a), "weight": a.weight,
                                    "expected": locality_order(op, a, b), "got": k}))
            if (pair_ok.get((a, b)) and pair_ok.get((b, a)) and r.witnesses.get("l") is not None
                    and k is None):
                bad.append(CheckReport.failed(
                    "equivalence-cross-check", (a, b, c),
                    counterexample={"at": {}, "basis": fmt(c), "weight": c.weight,
                                    "expected": "commutativity witness", "got": None}))
        rep = CheckReport.group("cross-checks", bad)
        rep.counts = {"triples": len(triples)}
        out.append(rep)
    rep = CheckReport.group("vertex-algebra-axioms", out, subject=V.name)
    rep.counts = {"basis": len(basis), "pairs": len(pairs), "triples": len(triples)}
    return rep


def check_voa_axioms(V: VertexAlgebra, cutoff: int | None = None, modes=(-2, 2)) -> CheckReport:
    """Virasoro relations, L(-1) = D and L(0) = weight on the basis up to cutoff.

    The central charge is read off from L(2)L(-2)1 = (c/2)1 and reported.
    """
    w = V.omega
    one = V.vacuum
    cutoff = V.cutoff if cutoff is None else cutoff
    basis = [b for b in V.carrier.all_basis() if b.weight <= cutoff]

    def L(n, v):
        return V.mode(w, n + 1, v)

    out = []
    top = L(2, w)
    c2 = top[one]
    if top != Vector.of(one, c2):
        return CheckReport.failed("voa-axioms", V.name, counterexample=describe_difference(
            top, Vector.of(one, c2), {"L": 2}))
    c = 2 * c2
    wt_omega = {b.weight for b in w}
    if wt_omega != {2}:
        out.append(CheckReport.failed("omega-weight", counterexample={
            "at": {}, "basis": fmt(w), "weight": sorted(wt_omega), "expected": 2, "got": sorted(wt_omega)}))
    lo, hi = modes
    bad = None
    for v in basis:
        for m in range(lo, hi + 1):
            for n in range(lo, hi + 1):
                lhs = L(m, L(n, v)) - L(n, L(m, v))
                rhs = L(m + n, v) * (m - n)
                if m + n == 0:
                    rhs = rhs + Vector.of(v, Fraction(m ** 3 - m, 12) * c)
                if lhs != rhs:
                    bad = bad or CheckReport.failed("virasoro", v, window=[lo, hi], counterexample=
                                                    describe_difference(lhs, rhs, {"m": m, "n": n}))
    out.append(bad or CheckReport.passed("virasoro", window=[lo, hi], counts={"basis": len(basis)}))
    bad = None
    for v in basis:
        if L(-1, v) != V.D(v):
            bad = bad or CheckReport.failed("L(-1)=D", v, counterexample=describe_difference(
                L(-1, v), V.D(v), {}))
        if L(0, v) != Vector.of(v, v.weight):
            bad = bad or CheckReport.failed("L(0)-eigenvalue", v, counterexample=describe_difference(
                L(0, v), Vector.of(v, v.weight), {}))
    out.append(bad or CheckReport.passed("L(-1)=D, L(0)=weight", counts={"basis": len(basis)}))
    rep = CheckReport.group("voa-axioms", out, subject=V.name)
    rep.values = {"central_charge": c}
    return rep


def check_module_axioms(V: VertexAlgebra, W: ModuleSpec, *, triples=None, window=None, kmax=None,
                        jobs: int = 1, op: VertexOperator | None = None) -> CheckReport:
    """Module Jacobi identity (two-condition form), truncation, vacuum and D-derivative."""
    op = op or V.op
    act = W.action
    if triples is None:
        vb = V.carrier.all_basis()
        wb = W.carrier.all_basis()
        triples = [(a, b, x) for a in vb for b in vb for x in wb
                   if V.carrier.covers(a.weight + b.weight + x.weight)]
    out = []
    pairs = [(a, x) for a, _, x in triples]
    out.append(check_truncation(act, sorted(set(pairs), key=lambda p: (basis_order(p[0]), basis_order(p[1]))),
                                name="module-truncation"))

    def one(t):
        a, b, x = t
        k = default_kmax(a, b) if kmax is None else kmax
        rect = _rect(window) or default_rect(act, a, b, x, inner=act)
        A = product_window(act, a, act, b, x)
        B = reversed_product_window(act, b, act, a, x)
        C = iterate_window(act, op, a, b, x)
        try:
            return jacobi_pair_check(A, B, C, k, rect, name="module-jacobi", subject=t)
        except InconclusiveError as e:
            return CheckReport.inconclusive("module-jacobi", t, window=rect, notes=[str(e)])

    out.append(_first_failure_group("module-jacobi", _run(triples, one, jobs)))
    wb = sorted({x for _, _, x in triples}, key=basis_order)
    if V.vacuum is not None:
        bad = None
        for x in wb:
            for n in range(-3, 4):
                got = act.mode(V.vacuum, n, x)
                want = Vector.of(x) if n == -1 else ZERO
                if got != want:
                    bad = bad or CheckReport.failed("module-vacuum", x, counterexample=
                                                    describe_difference(want, got, {"n": n}))
        out.append(bad or CheckReport.passed("module-vacuum", window=[-3, 3]))
    if V.D is not None:
        bad = None
        for a, x in sorted(set(pairs), key=lambda p: (basis_order(p[0]), basis_order(p[1]))):
            Da = V.D(a)
            for n in range(-3, act.support(a, x) + 2):
                got = act.mode(Da, n, x)
                want = act.mode(a, n - 1, x) * (-n)
                if got != want:
                    bad = bad or CheckReport.failed("module-D-derivative", (a, x), counterexample=
                                                    describe_difference(got, want, {"n": n}))
        out.append(bad or CheckReport.passed("module-D-derivative"))
    rep = CheckReport.group("module-axioms", out, subject=W.name)
    rep.counts = {"triples": len(triples)}
    return rep
