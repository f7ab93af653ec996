"""The rank-r Heisenberg vertex operator algebra M(k, 0)."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..exact import Basis, LinearRule, Vector, ZERO, scalar
from ..kernel import Carrier, VertexAlgebra, VertexOperator
from .boson import BosonEngine, colored_partitions

__all__ = ["HeisenbergSpec", "HeisenbergLabel", "heisenberg_build", "heis",
           "heisenberg_integration_operator", "heisenberg_mode_rule", "sign_automorphism"]

GEN_NAMES = "abcdefgh"


def gen_name(i: int) -> str:
    return GEN_NAMES[i] if i < len(GEN_NAMES) else f"g{i}"


def format_modes(modes) -> str:
    parts = []
    prev, count = None, 0
    for x in list(modes) + [None]:
        if x == prev:
            count += 1
            continue
        if prev is not None:
            i, n = prev
            parts.append(f"{gen_name(i)}(-{n})" + (f"^{count}" if count > 1 else ""))
        prev, count = x, 1
    return " ".join(parts)


_TOKEN = re.compile(r"([a-h]|g\d+)\(-(\d+)\)(?:\^(\d+))?")


def parse_modes(text: str) -> tuple:
    """Parse 'a(-1)^2 b(-3)' into sorted (generator, n) pairs."""
    modes = []
    pos = 0
    text = text.strip()
    for mt in _TOKEN.finditer(text):
        if text[pos:mt.start()].strip():
            raise ValueError(f"cannot parse {text!r} near {text[pos:mt.start()]!r}")
        g, n, e = mt.groups()
        i = GEN_NAMES.index(g) if len(g) == 1 else int(g[1:])
        modes += [(i, int(n))] * int(e or 1)
        pos = mt.end()
    if text[pos:].strip() not in ("", "1"):
        raise ValueError(f"cannot parse {text!r} near {text[pos:]!r}")
    if any(n < 1 for _, n in modes):
        raise ValueError("creation modes need n >= 1")
    return tuple(sorted(modes))


class HeisenbergLabel(tuple):
    """Sorted tuple of (generator, n) pairs standing for prod alpha_i(-n) 1."""

    def __repr__(self):
        return (format_modes(self) + " 1") if self else "1"


def heis(*modes) -> Basis:
    """Basis element from (generator, n) pairs or from a string like 'a(-1)^2'."""
    if len(modes) == 1 and isinstance(modes[0], str):
        modes = parse_modes(modes[0])
    key = HeisenbergLabel(sorted(modes))
    return Basis(key, sum(n for _, n in key))


@dataclass
class HeisenbergSpec:
    rank: int = 1
    level: Fraction = Fraction(1)
    gram: list | None = None
    cutoff: int = 6

    def __post_init__(self):
        self.level = scalar(self.level)
        if not self.level:
            raise ValueError("level must be nonzero")
        if self.gram is None:
            self.gram = [[Fraction(int(i == j)) for j in range(self.rank)] for i in range(self.rank)]
        self.gram = [[scalar(x) for x in row] for row in self.gram]
        if len(self.gram) != self.rank or any(len(r) != self.rank for r in self.gram):
            raise ValueError("Gram matrix must be rank x rank")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if _det(self.gram) == 0:
            raise ValueError("Gram matrix must be nondegenerate")
        if self.cutoff < 2:
            raise ValueError("cutoff must be at least 2")


def _det(M) -> Fraction:
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            for j in range(c, n):
                M[r][j] -= f * M[c][j]
    return det


def _inverse(M) -> list[list[Fraction]]:
    n = len(M)
    A = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [r[n:] for r in A]


def _from_state(st: dict) -> Vector:
    terms = {}
    for (modes, _m), c in st.items():
        key = HeisenbergLabel(modes)
        terms[Basis(key, sum(n for _, n in modes))] = c
    return Vector._wrap(terms)


def heisenberg_build(spec: HeisenbergSpec) -> VertexAlgebra:
    """Heisenberg VOA with conformal vector (1/2k) sum G^{-1}_ij alpha_i(-1) alpha_j(-1) 1."""
    eng = BosonEngine(spec.gram, spec.level)

    def mode(a: Basis, n: int, b: Basis) -> Vector:
        return _from_state(eng.mode((tuple(a.label), 0), n, (tuple(b.label), 0)))

    op = VertexOperator(mode, lambda a, b: a.weight + b.weight, name="Y", shift=0)

    def enumerate_(w):
        if w < 0:
            return []
        return [Basis(HeisenbergLabel(p), w) for p in colored_partitions(w, spec.rank)]

    carrier = Carrier(enumerate_, range(0, spec.cutoff + 1), f"heisenberg(rank={spec.rank}, k={spec.level})",
                      heis)
    Ginv = _inverse(spec.gram)
    omega_terms: dict = {}
    for i in range(spec.rank):
        for j in range(spec.rank):
            c = Ginv[i][j] / (2 * spec.level)
            if c:
                b = heis((i, 1), (j, 1))
                omega_terms[b] = omega_terms.get(b, 0) + c
    omega = Vector(omega_terms)
    one = heis()
    V = VertexAlgebra(carrier.name, op, carrier, vacuum=one, omega=omega, kind="VOA",
                      params={"rank": spec.rank, "level": spec.level, "gram": spec.gram,
                              "cutoff": spec.cutoff})
    V.engine = eng
    return V


def heisenberg_mode_rule(V: VertexAlgebra, i: int, n: int) -> LinearRule:
    """alpha_i(n) acting on the Fock space, as a homogeneous linear rule of degree -n."""
    eng = V.engine

    def rule(b: Basis) -> Vector:
        return _from_state(eng.act(i, n, {(tuple(b.label), 0): Fraction(1)}))

    return LinearRule(rule, degree=-n, name=f"{gen_name(i)}({n})")


def heisenberg_integration_operator(V: VertexAlgebra, direction: int = 0) -> LinearRule:
    """prod h(-n) alpha(-1)^m 1  ->  1/(k (alpha|alpha) (m+1)) prod h(-n) alpha(-1)^{m+1} 1.

    alpha(1) acts as k (alpha|alpha) d/d alpha(-1) when alpha is orthogonal to the
    other generators, so this P is a right inverse of alpha(1).
    """
    spec_gram = V.params["gram"]
    k = V.params["level"]
    norm = spec_gram[direction][direction]
    for j in range(len(spec_gram)):
        if j != direction and spec_gram[direction][j]:
            raise ValueError("integration needs alpha orthogonal to the other generators")

    def rule(b: Basis) -> Vector:
        m = b.label.count((direction, 1))
        return Vector.of(heis(*(tuple(b.label) + ((direction, 1),))), Fraction(1) / (k * norm * (m + 1)))

    return LinearRule(rule, degree=1, name="P")


def sign_automorphism() -> LinearRule:
    """The lift of alpha -> -alpha: a monomial with r creation modes picks up (-1)^r."""
    return LinearRule(lambda b: Vector.of(b, (-1) ** len(b.label)), degree=0, name="sigma")
