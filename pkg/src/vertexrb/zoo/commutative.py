"""Commutative differential algebras as vertex algebras via Y(a, z)b = (e^{zd}a) b.

Weights are the negatives of polynomial degrees, so that the grading law
wt(a_n b) = wt a - n - 1 + wt b holds and d (the translation) raises weight by 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from ..exact import Basis, LinearRule, Vector, ZERO, accumulate, from_dict
from ..kernel import Carrier, VertexAlgebra, VertexOperator

__all__ = [
    "NonNilpotentError", "CommDiffAlgebraSpec", "borcherds_embed",
    "divided_power_algebra", "polynomial_algebra", "dp", "mono",
    "divided_power_integration", "polynomial_integration", "divided_to_polynomial",
    "polynomial_to_divided", "dual_divided_power_algebra", "ddp", "epsilon_multiplication",
]

DEFAULT_DEGREE_CUTOFF = 12


class NonNilpotentError(ArithmeticError):
    """d^j a did not vanish within the declared bound."""


class DP(int):
    """Divided-power index n, printed t_n."""

    def __repr__(self):
        return f"t_{int(self)}"


class Mono(int):
    """Monomial exponent n, printed t^n."""

    def __repr__(self):
        return f"t^{int(self)}"


def dp(n: int) -> Basis:
    return Basis(DP(n), -n)


def mono(n: int) -> Basis:
    return Basis(Mono(n), -n)


@dataclass
class CommDiffAlgebraSpec:
    """A commutative unital algebra with a locally nilpotent derivation.

    ``nilpotency(b)`` is the declared bound: d^j b must vanish for j >= it.
    """

    name: str
    basis: Callable[[int], list[Basis]]
    weights: tuple
    product: Callable[[Basis, Basis], Vector]
    d: LinearRule
    unit: Basis
    nilpotency: Callable[[Basis], int]
    parse: Callable[[str], Basis] | None = None
    params: dict = field(default_factory=dict)


def borcherds_embed(A: CommDiffAlgebraSpec) -> VertexAlgebra:
    """Vertex algebra with a_{-j-1} b = (d^j a / j!) b and a_n b = 0 for n >= 0."""
    powers: dict[Basis, list[Vector]] = {}

    def divided_powers(a: Basis) -> list[Vector]:
        if a not in powers:
            bound = A.nilpotency(a)
            seq = [Vector.of(a)]
            cur = seq[0]
            for j in range(1, bound + 1):
                cur = A.d(cur) * Fraction(1, j)
                if not cur:
                    break
                seq.append(cur)
            else:
                raise NonNilpotentError(f"d^{bound} {a.label!r} != 0")
            powers[a] = seq
        return powers[a]

    def mode(a: Basis, n: int, b: Basis) -> Vector:
        j = -n - 1
        seq = divided_powers(a)
        if j < 0 or j >= len(seq):
            return ZERO
        acc: dict = {}
        for x, c in seq[j].items():
            accumulate(acc, A.product(x, b), c)
        return from_dict(acc)

    op = VertexOperator(mode, lambda a, b: 0, name="Y", shift=0)
    carrier = Carrier(A.basis, A.weights, A.name, A.parse)
    return VertexAlgebra(A.name, op, carrier, vacuum=A.unit, D=A.d, kind="vertex algebra",
                         params=dict(A.params))


def _parse_t(text: str, sep: str, make) -> Basis:
    s = text.replace(" ", "")
    if s == "1":
        return make(0)
    if not s.startswith("t" + sep):
        if s == "t":
            return make(1)
        raise ValueError(f"cannot parse basis element {text!r}; expected t{sep}<n>")
    return make(int(s[2:]))


def divided_power_spec(cutoff: int = DEFAULT_DEGREE_CUTOFF) -> CommDiffAlgebraSpec:
    d = LinearRule(lambda b: dp(b.label - 1) if b.label > 0 else ZERO, degree=1, name="d")
    return CommDiffAlgebraSpec(
        name="divided-power",
        basis=lambda w: [dp(-w)] if w <= 0 else [],
        weights=tuple(range(0, -cutoff - 1, -1)),
        product=lambda x, y: Vector.of(dp(x.label + y.label), comb(x.label + y.label, y.label)),
        d=d,
        unit=dp(0),
        nilpotency=lambda b: b.label + 1,
        parse=lambda s: _parse_t(s, "_", dp),
        params={"cutoff": cutoff},
    )


def polynomial_spec(cutoff: int = DEFAULT_DEGREE_CUTOFF) -> CommDiffAlgebraSpec:
    d = LinearRule(lambda b: Vector.of(mono(b.label - 1), b.label) if b.label > 0 else ZERO,
                   degree=1, name="d/dt")
    return CommDiffAlgebraSpec(
        name="polynomial",
        basis=lambda w: [mono(-w)] if w <= 0 else [],
        weights=tuple(range(0, -cutoff - 1, -1)),
        product=lambda x, y: Vector.of(mono(x.label + y.label)),
        d=d,
        unit=mono(0),
        nilpotency=lambda b: b.label + 1,
        parse=lambda s: _parse_t(s, "^", mono),
        params={"cutoff": cutoff},
    )


def divided_power_algebra(cutoff: int = DEFAULT_DEGREE_CUTOFF) -> VertexAlgebra:
    return borcherds_embed(divided_power_spec(cutoff))


def polynomial_algebra(cutoff: int = DEFAULT_DEGREE_CUTOFF) -> VertexAlgebra:
    return borcherds_embed(polynomial_spec(cutoff))


def divided_power_integration() -> LinearRule:
    """t_m -> t_{m+1}."""
    return LinearRule(lambda b: Vector.of(dp(b.label + 1)), degree=-1, name="P")


def polynomial_integration() -> LinearRule:
    """t^m -> t^{m+1}/(m+1)."""
    return LinearRule(lambda b: Vector.of(mono(b.label + 1), Fraction(1, b.label + 1)),
                      degree=-1, name="P")


def divided_to_polynomial() -> LinearRule:
    """The realization t_n -> t^n / n!."""
    return LinearRule(lambda b: Vector.of(mono(b.label), Fraction(1, factorial(b.label))),
                      degree=0, name="phi")


def polynomial_to_divided() -> LinearRule:
    return LinearRule(lambda b: Vector.of(dp(b.label), factorial(b.label)), degree=0, name="phi^-1")


class DualDP(tuple):
    """(n, e): eps^e t_n in the divided powers over the dual numbers (eps^2 = 0)."""

    def __repr__(self):
        n, e = self
        return f"eps t_{n}" if e else f"t_{n}"


def ddp(n: int, e: int = 0) -> Basis:
    return Basis(DualDP((n, e)), -n)


def _parse_dual(text: str) -> Basis:
    s = text.strip()
    e = 0
    if s.startswith("eps"):
        e, s = 1, s[3:].strip() or "1"
    return ddp(_parse_t(s, "_", dp).label, e)


def dual_divided_power_spec(cutoff: int = DEFAULT_DEGREE_CUTOFF) -> CommDiffAlgebraSpec:
    """Divided powers tensored with C[eps]/(eps^2); d acts on the t factor only."""

    def product(x, y):
        (m, e), (n, f) = x.label, y.label
        if e + f > 1:
            return ZERO
        return Vector.of(ddp(m + n, e + f), comb(m + n, n))

    d = LinearRule(lambda b: ddp(b.label[0] - 1, b.label[1]) if b.label[0] > 0 else ZERO, degree=1, name="d")
    return CommDiffAlgebraSpec(
        name="dual-divided-power",
        basis=lambda w: [ddp(-w, 0), ddp(-w, 1)] if w <= 0 else [],
        weights=tuple(range(0, -cutoff - 1, -1)),
        product=product,
        d=d,
        unit=ddp(0),
        nilpotency=lambda b: b.label[0] + 1,
        parse=_parse_dual,
        params={"cutoff": cutoff},
    )


def dual_divided_power_algebra(cutoff: int = 6) -> VertexAlgebra:
    return borcherds_embed(dual_divided_power_spec(cutoff))


def epsilon_multiplication() -> LinearRule:
    """f -> eps f: a weight-0 Rota-Baxter operator commuting with d (both sides of the identity vanish)."""
    return LinearRule(lambda b: ZERO if b.label[1] else Vector.of(ddp(b.label[0], 1)), degree=0, name="eps")
