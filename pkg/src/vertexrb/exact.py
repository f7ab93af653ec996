"""Exact scalars, sparse graded vectors, rule-based linear maps and subspaces.

Scalars are :class:`fractions.Fraction`.  A vector is a finite map from
:class:`Basis` indices to nonzero scalars; every basis index carries its
integer weight so homogeneous components can be read off directly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, NamedTuple

__all__ = [
    "Basis", "Vector", "LinearRule", "GradedSubspace", "GradedSpan",
    "scalar", "vec_add", "apply_rule", "echelon_reduce", "subspace_membership",
    "DomainError", "CoverageError", "DegreeError",
]


class DomainError(ValueError):
    """A linear rule was applied outside its declared domain."""


class CoverageError(LookupError):
    """A vector has a component in a degree the subspace does not enumerate."""


class DegreeError(ValueError):
    """A rule declared homogeneous produced output of the wrong weight."""


def scalar(x: Any) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"3/2"`` to an exact scalar.

    Floats are rejected: they would smuggle rounding into exact checks.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


class Basis(NamedTuple):
    """Canonical basis index: an algebra-specific hashable key plus its weight."""

    label: Any
    weight: int


def basis_order(b: Basis):
    return (b.weight, b.label)


class Vector:
    """Immutable sparse combination of basis indices with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Basis, Any] | Iterable[tuple[Basis, Any]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Basis, Fraction] = {}
        for b, c in items:
            c = scalar(c)
            if c:
                c = d.get(b, 0) + c
                if c:
                    d[b] = c
                else:
                    d.pop(b, None)
        self._terms = d
        self._hash = None

    @classmethod
    def _wrap(cls, d: dict) -> "Vector":
        # trusted constructor: d already has Fraction values and no zeros
        v = object.__new__(cls)
        v._terms = d
        v._hash = None
        return v

    @classmethod
    def of(cls, b: Basis, c: Any = 1) -> "Vector":
        c = scalar(c)
        return cls._wrap({b: c} if c else {})

    @staticmethod
    def zero() -> "Vector":
        return ZERO

    # mapping-like access
    def __iter__(self) -> Iterator[Basis]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, b) -> bool:
        return b in self._terms

    def __getitem__(self, b: Basis) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def items(self):
        return self._terms.items()

    def terms(self) -> dict[Basis, Fraction]:
        return dict(self._terms)

    # arithmetic
    def __add__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        d = dict(self._terms)
        for b, c in other._terms.items():
            c = d.get(b, 0) + c
            if c:
                d[b] = c
            else:
                del d[b]
        return Vector._wrap(d)

    def __neg__(self) -> "Vector":
        return Vector._wrap({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c: Any) -> "Vector":
        c = scalar(c)
        if not c:
            return ZERO
        if c == 1:
            return self
        return Vector._wrap({b: x * c for b, x in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c: Any) -> "Vector":
        return self * (1 / scalar(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, Vector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # grading
    def weights(self) -> list[int]:
        return sorted({b.weight for b in self._terms})

    def component(self, w: int) -> "Vector":
        return Vector._wrap({b: c for b, c in self._terms.items() if b.weight == w})

    def is_homogeneous(self) -> bool:
        return len({b.weight for b in self._terms}) <= 1

    def sorted_items(self) -> list[tuple[Basis, Fraction]]:
        return sorted(self._terms.items(), key=lambda bc: basis_order(bc[0]))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.sorted_items():
            parts.append(f"{c}*{b.label!r}" if c != 1 else repr(b.label))
        return " + ".join(parts)


ZERO = Vector._wrap({})


def vec_add(x: Vector, y: Vector) -> Vector:
    return x + y


def accumulate(acc: dict, v: Vector, c: Fraction = Fraction(1)) -> None:
    """In-place ``acc += c * v`` on a raw coefficient dict (zeros pruned)."""
    if not c:
        return
    for b, x in v._terms.items():
        y = acc.get(b, 0) + c * x
        if y:
            acc[b] = y
        else:
            acc.pop(b, None)


def from_dict(acc: dict) -> Vector:
    """Wrap a pruned coefficient dict built with :func:`accumulate`."""
    return Vector._wrap(acc)


def as_vector(x: Vector | Basis) -> Vector:
    if isinstance(x, Vector):
        return x
    if isinstance(x, Basis):
        return Vector.of(x)
    raise TypeError(f"expected Vector or Basis, got {type(x).__name__}")


class LinearRule:
    """A linear map defined on basis indices and extended linearly.

    ``degree`` (if given) is the declared homogeneity degree; it is enforced on
    every basis evaluation.  ``domain`` is an optional predicate on basis
    indices; applying the rule to a vector outside it raises DomainError.
    Basis images are memoized; the cache never changes results.
    """

    def __init__(self, on_basis: Callable[[Basis], Vector], *, degree: int | None = None,
                 domain: Callable[[Basis], bool] | None = None, name: str = "rule"):
        self._fn = on_basis
        self.degree = degree
        self.domain = domain
        self.name = name
        self._cache: dict[Basis, Vector] = {}

    def on_basis(self, b: Basis) -> Vector:
        try:
            return self._cache[b]
        except KeyError:
            pass
        if self.domain is not None and not self.domain(b):
            raise DomainError(f"{self.name}: basis index {b.label!r} outside the domain")
        out = self._fn(b)
        if not isinstance(out, Vector):
            out = as_vector(out)
        if self.degree is not None:
            for t in out:
                if t.weight != b.weight + self.degree:
                    raise DegreeError(
                        f"{self.name}: image of {b.label!r} (weight {b.weight}) has a term "
                        f"of weight {t.weight}, expected {b.weight + self.degree}")
        self._cache[b] = out
        return out

    def __call__(self, x: Vector | Basis) -> Vector:
        if isinstance(x, Basis):
            return self.on_basis(x)
        if len(x) == 1:
            (b, c), = x.items()
            return self.on_basis(b) * c
        acc: dict = {}
        for b, c in x.items():
            accumulate(acc, self.on_basis(b), c)
        return from_dict(acc)

    # combinators
    def __add__(self, other: "LinearRule") -> "LinearRule":
        deg = self.degree if self.degree == other.degree else None
        return LinearRule(lambda b: self.on_basis(b) + other.on_basis(b), degree=deg,
                          domain=_both(self.domain, other.domain),
                          name=f"({self.name} + {other.name})")

    def __neg__(self) -> "LinearRule":
        return self.scaled(-1)

    def __sub__(self, other: "LinearRule") -> "LinearRule":
        return self + other.scaled(-1)

    def scaled(self, c: Any) -> "LinearRule":
        c = scalar(c)
        return LinearRule(lambda b: self.on_basis(b) * c, degree=self.degree if c else None,
                          domain=self.domain, name=f"{c}*{self.name}")

    __rmul__ = scaled

    def __matmul__(self, other: "LinearRule") -> "LinearRule":
        """Composition ``self ∘ other``."""
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = self.degree + other.degree
        return LinearRule(lambda b: self(other.on_basis(b)), degree=deg, domain=other.domain,
                          name=f"{self.name}∘{other.name}")

    def restricted(self, domain: Callable[[Basis], bool], name: str | None = None) -> "LinearRule":
        return LinearRule(self._fn, degree=self.degree, domain=domain, name=name or self.name)

    def table(self, basis: Iterable[Basis]) -> dict[Basis, Vector]:
        return {b: self.on_basis(b) for b in basis}

    def __repr__(self) -> str:
        return f"LinearRule({self.name})"


def _both(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return lambda b: p(b) and q(b)


def identity_rule(name: str = "Id") -> LinearRule:
    return LinearRule(Vector.of, degree=0, name=name)


def zero_rule(name: str = "0") -> LinearRule:
    return LinearRule(lambda b: ZERO, degree=None, name=name)


def table_rule(table: Mapping[Basis, Vector], *, degree: int | None = None,
               name: str = "table") -> LinearRule:
    """Finite rule table; indices not listed lie outside the domain."""
    table = dict(table)
    return LinearRule(lambda b: table[b], degree=degree, domain=table.__contains__, name=name)


def apply_rule(f: LinearRule, x: Vector) -> Vector:
    return f(x)


class GradedSubspace:
    """Span of a finite set of vectors kept in reduced row echelon form.

    Pivots are chosen as the smallest basis index of each reduced row under the
    order (weight, label), so the echelon basis depends only on the span.
    ``degrees`` optionally lists the weights on which the span is known to be
    complete; membership of a vector with a component elsewhere then raises
    CoverageError.  Each echelon row also remembers how it was combined from
    the original generators, which gives preimages for free.
    """

    def __init__(self, vectors: Iterable[Vector] = (), degrees: Iterable[int] | None = None):
        self.generators: list[Vector] = [as_vector(v) for v in vectors]
        self.degrees = None if degrees is None else frozenset(degrees)
        rows: list[dict] = []
        combos: list[dict] = []
        pivots: list[Basis] = []
        relations: list[dict] = []
        for i, v in enumerate(self.generators):
            r = dict(v._terms)
            comb = {i: Fraction(1)}
            for piv, row, cb in zip(pivots, rows, combos):
                c = r.get(piv)
                if c:
                    _axpy(r, row, -c)
                    _axpy(comb, cb, -c)
            if not r:
                relations.append(comb)
                continue
            piv = min(r, key=basis_order)
            inv = 1 / r[piv]
            r = {b: c * inv for b, c in r.items()}
            comb = {j: c * inv for j, c in comb.items()}
            for k, row in enumerate(rows):
                c = row.get(piv)
                if c:
                    _axpy(row, r, -c)
                    _axpy(combos[k], comb, -c)
            rows.append(r)
            combos.append(comb)
            pivots.append(piv)
        order = sorted(range(len(pivots)), key=lambda k: basis_order(pivots[k]))
        self.pivots: list[Basis] = [pivots[k] for k in order]
        self._rows = [rows[k] for k in order]
        self._combos = [combos[k] for k in order]
        self.basis: list[Vector] = [Vector._wrap(r) for r in self._rows]
        self._pivot_index = {p: k for k, p in enumerate(self.pivots)}
        # linear relations among the generators: sum_j c_j g_j = 0
        self.relations: list[dict[int, Fraction]] = relations

    @property
    def rank(self) -> int:
        return len(self.basis)

    def degree(self, w: int) -> list[Vector]:
        return [v for v, p in zip(self.basis, self.pivots) if p.weight == w]

    def dim(self, w: int) -> int:
        return sum(1 for p in self.pivots if p.weight == w)

    def is_graded(self) -> bool:
        return all(v.is_homogeneous() for v in self.basis)

    def _check_coverage(self, x: Vector) -> None:
        if self.degrees is None:
            return
        for b in x:
            if b.weight not in self.degrees:
                raise CoverageError(f"degree {b.weight} is not enumerated by this subspace "
                                    f"(covered: {sorted(self.degrees)})")

    def coordinates(self, x: Vector) -> tuple[Fraction, ...] | None:
        """Coordinates of x in the echelon basis, or None when x is not in the span."""
        x = as_vector(x)
        self._check_coverage(x)
        coords = []
        rem = dict(x._terms)
        for p, row in zip(self.pivots, self._rows):
            c = rem.get(p, Fraction(0))
            coords.append(c)
            if c:
                _axpy(rem, row, -c)
        if rem:
            return None
        return tuple(coords)

    def combination(self, x: Vector) -> dict[int, Fraction] | None:
        """Coefficients expressing x through the original generators (or None)."""
        coords = self.coordinates(x)
        if coords is None:
            return None
        out: dict[int, Fraction] = {}
        for c, comb in zip(coords, self._combos):
            if c:
                _axpy(out, comb, c)
        return out

    def __contains__(self, x) -> bool:
        return self.coordinates(x) is not None

    def __repr__(self) -> str:
        return f"GradedSubspace(rank={self.rank})"


def _axpy(acc: dict, row: dict, c) -> None:
    for k, x in row.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


class GradedSpan:
    """A graded subspace given degree by degree, each degree reduced lazily.

    ``generators(w)`` lists spanning vectors of degree w; only degrees in
    ``degrees`` are known, and membership of anything touching another degree
    raises CoverageError.
    """

    def __init__(self, generators: Callable[[int], list[Vector]], degrees: Iterable[int],
                 name: str = "U"):
        self._gen = generators
        self.degrees = frozenset(degrees)
        self.name = name
        self._parts: dict[int, GradedSubspace] = {}

    @classmethod
    def from_subspaces(cls, parts: Mapping[int, GradedSubspace], name: str = "U") -> "GradedSpan":
        span = cls(lambda w: parts[w].generators, parts.keys(), name)
        span._parts = dict(parts)
        return span

    def at(self, w: int) -> GradedSubspace:
        if w not in self.degrees:
            raise CoverageError(f"{self.name}: degree {w} is not enumerated")
        if w not in self._parts:
            self._parts[w] = GradedSubspace(self._gen(w), degrees=[w])
        return self._parts[w]

    def basis(self, w: int) -> list[Vector]:
        return self.at(w).basis

    def dim(self, w: int) -> int:
        return self.at(w).rank

    def coordinates(self, x: Vector) -> dict[int, tuple] | None:
        out = {}
        for w in x.weights():
            c = self.at(w).coordinates(x.component(w))
            if c is None:
                return None
            out[w] = c
        return out

    def __contains__(self, x) -> bool:
        return self.coordinates(as_vector(x)) is not None

    def __repr__(self) -> str:
        return f"GradedSpan({self.name}, degrees={sorted(self.degrees)})"


def echelon_reduce(vectors: Iterable[Vector], degrees: Iterable[int] | None = None) -> GradedSubspace:
    return GradedSubspace(vectors, degrees)


def subspace_membership(S: GradedSubspace, x: Vector) -> tuple[Fraction, ...] | None:
    """Exact coordinates of x in S's echelon basis; None stands for "absent"."""
    return S.coordinates(x)
