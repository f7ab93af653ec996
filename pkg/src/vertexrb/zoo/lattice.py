"""The rank-1 lattice vertex algebra V_{Z alpha} with (alpha|alpha) = 2N and trivial cocycle."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..exact import Basis, Vector
from ..kernel import Carrier, VertexAlgebra, VertexOperator
from .boson import BosonEngine, colored_partitions
from .heisenberg import format_modes, parse_modes

__all__ = ["LatticeRank1Spec", "LatticeLabel", "lattice_rank1_build", "lat"]


class LatticeLabel(tuple):
    """(modes, m): prod alpha(-n) applied to e^{m alpha}."""

    def __repr__(self):
        modes, m = self
        e = "1" if m == 0 else f"e^{m}"
        return f"{format_modes(modes)} {e}" if modes else e

    @property
    def charge(self) -> int:
        return self[1]


_E = re.compile(r"e\^\(?(-?\d+)\)?\s*$")


def _parse(N: int):
    def parse(text: str) -> Basis:
        s = text.strip()
        mt = _E.search(s)
        if mt:
            m = int(mt.group(1))
            s = s[:mt.start()]
        else:
            m = 0
        return lat(parse_modes(s), m, N)
    return parse


def lat(modes=(), m: int = 0, N: int = 1) -> Basis:
    """Basis element; modes are n's or (0, n) pairs for alpha(-n)."""
    modes = tuple(sorted((0, x) if isinstance(x, int) else tuple(x) for x in modes))
    return Basis(LatticeLabel((modes, m)), sum(n for _, n in modes) + N * m * m)


@dataclass
class LatticeRank1Spec:
    N: int = 1
    cutoff: int = 6

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if self.cutoff < 2 * self.N:
            raise ValueError("cutoff must be at least 2N")


def lattice_rank1_build(spec: LatticeRank1Spec) -> VertexAlgebra:
    N = spec.N
    eng = BosonEngine([[2 * N]], 1, charge_pairing=lambda i, m: Fraction(2 * N * m), charge_norm=N)

    def mode(a: Basis, n: int, b: Basis) -> Vector:
        st = eng.mode(tuple(a.label), n, tuple(b.label))
        return Vector._wrap({Basis(LatticeLabel(key), eng.weight(key)): c for key, c in st.items()})

    op = VertexOperator(mode, lambda a, b: a.weight + b.weight, name="Y", shift=0)

    def enumerate_(w):
        out = []
        m = 0
        while N * m * m <= w:
            for mm in {m, -m}:
                for p in colored_partitions(w - N * m * m, 1):
                    out.append(Basis(LatticeLabel((p, mm)), w))
            m += 1
        return out

    carrier = Carrier(enumerate_, range(0, spec.cutoff + 1), f"lattice(N={N})", _parse(N))
    omega = Vector.of(lat([1, 1], 0, N), Fraction(1, 4 * N))
    V = VertexAlgebra(carrier.name, op, carrier, vacuum=lat((), 0, N), omega=omega, kind="VOA",
                      params={"N": N, "cutoff": spec.cutoff})
    V.engine = eng
    return V
