"""Tensor products V (x) A with A a commutative algebra of Laurent monomials on a window."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..exact import Basis, LinearRule, Vector, ZERO
from ..kernel import Carrier, VertexAlgebra, VertexOperator
from ..series import WindowError

__all__ = ["LaurentWindow", "TensorLabel", "tensor_build", "tensor_basis", "laurent_projection",
           "lift_right_rule"]


@dataclass(frozen=True)
class LaurentWindow:
    """Laurent monomials t^lo .. t^hi; products leaving the window raise WindowError."""

    lo: int = -3
    hi: int = 3

    def __post_init__(self):
        if not self.lo <= 0 <= self.hi:
            raise ValueError("the window must contain the unit t^0")

    def exponents(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains(self, e: int) -> bool:
        return self.lo <= e <= self.hi

    def product(self, i: int, j: int) -> int:
        if not self.contains(i + j):
            raise WindowError(f"t^{i} * t^{j} leaves the window [{self.lo}, {self.hi}]")
        return i + j


class TensorLabel(tuple):
    """(left basis index, exponent of t)."""

    def __repr__(self):
        b, e = self
        return f"{b.label!r} (x) t^{e}"


def tensor_basis(b: Basis, e: int) -> Basis:
    return Basis(TensorLabel((b, e)), b.weight)


def tensor_build(left: VertexAlgebra, right: LaurentWindow) -> VertexAlgebra:
    """(a (x) t^i)_n (b (x) t^j) = (a_n b) (x) t^{i+j}; D(a (x) f) = D(a) (x) f."""

    def mode(x: Basis, n: int, y: Basis) -> Vector:
        (a, i), (b, j) = x.label, y.label
        v = left.op.basis_mode(a, n, b)
        if not v:
            return ZERO
        e = right.product(i, j)
        return Vector._wrap({tensor_basis(t, e): c for t, c in v.items()})

    op = VertexOperator(mode, lambda x, y: left.op.support(x.label[0], y.label[0]), name="Y^",
                        shift=left.op.shift)

    def enumerate_(w):
        return [tensor_basis(b, e) for b in left.carrier.basis(w) for e in right.exponents()]

    def admissible(*xs):
        es = [x.label[1] for x in xs]
        return all(right.contains(sum(c)) for r in range(1, len(es) + 1) for c in combinations(es, r))

    def parse(text: str) -> Basis:
        head, sep, tail = text.rpartition("(x)")
        if not sep:
            return tensor_basis(left.parse(text), 0)
        tail = tail.strip()
        if tail == "1":
            e = 0
        elif tail.startswith("t^"):
            e = int(tail[2:].strip("()"))
        elif tail == "t":
            e = 1
        else:
            raise ValueError(f"cannot parse Laurent monomial {tail!r}")
        if not right.contains(e):
            raise ValueError(f"t^{e} is outside the window [{right.lo}, {right.hi}]")
        return tensor_basis(left.parse(head.strip()), e)

    carrier = TensorCarrier(enumerate_, left.carrier.weights, f"{left.name} (x) C[t,1/t][{right.lo},{right.hi}]",
                            admissible, parse)
    D = None
    if left.D is not None:
        D = lift_left_rule(left.D)
    V = VertexAlgebra(carrier.name, op, carrier, vacuum=tensor_basis(left.vacuum, 0) if left.vacuum else None,
                      D=D, kind=left.kind if left.kind != "VOA" else "vertex algebra",
                      params={"left": left.name, "window": [right.lo, right.hi]})
    V.left, V.right = left, right
    return V


class TensorCarrier(Carrier):
    """Carrier whose pair/triple enumeration keeps every partial product inside the window."""

    def __init__(self, enumerate_fn, weights, name, admissible, parse=None):
        super().__init__(enumerate_fn, weights, name, parse)
        self.admissible = admissible

    def pairs(self, left=None, right=None):
        return [(a, b) for a, b in super().pairs(left, right) if self.admissible(a, b)]

    def triples(self):
        return [t for t in super().triples() if self.admissible(*t)]


def lift_left_rule(f: LinearRule) -> LinearRule:
    def rule(x: Basis) -> Vector:
        a, e = x.label
        return Vector._wrap({tensor_basis(t, e): c for t, c in f.on_basis(a).items()})
    return LinearRule(rule, degree=f.degree, name=f"{f.name} (x) id")


def lift_right_rule(exponent_map, name: str = "id (x) P") -> LinearRule:
    """a (x) t^e -> a (x) P(t^e), with P given on exponents as {e': coeff}."""
    def rule(x: Basis) -> Vector:
        a, e = x.label
        return Vector({tensor_basis(a, e2): c for e2, c in exponent_map(e).items()})
    return LinearRule(rule, degree=0, name=name)


def laurent_projection(e: int) -> dict:
    """Projection of t^e onto t^{-1} C[t^{-1}] along C[[t]]."""
    return {e: 1} if e < 0 else {}
