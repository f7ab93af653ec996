"""Truncated Laurent series with vector coefficients and the two-condition Jacobi test.

Bivariate series are lazy: a :class:`Window2` holds an exact coefficient
function plus a certification predicate telling on which exponent pairs the
coefficient received every contribution.  Series built directly from mode
oracles are exact everywhere; finite stored grids are certified only on their
rectangle, and each operation shrinks the certified region accordingly.

Binomials ``(x + y)^n`` are always expanded in nonnegative powers of the second
variable, for every integer n.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple

from .exact import ZERO, Vector, accumulate, from_dict

__all__ = [
    "Rect", "Series", "Window2", "WindowError", "InconclusiveError",
    "binom", "mul_binomial_power", "substitute_shift", "product_window",
    "reversed_product_window", "iterate_window", "jacobi_pair_check",
    "first_difference",
]


class WindowError(ValueError):
    """A requested coefficient or window cannot be certified complete."""


class InconclusiveError(RuntimeError):
    """No coefficient of the target window is certified, so nothing was checked."""


@lru_cache(maxsize=None)
def binom(n: int, j: int) -> int:
    """Generalized binomial C(n, j) for any integer n and j >= 0."""
    if j < 0:
        return 0
    num = 1
    for i in range(j):
        num *= n - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return num // den


class Rect(NamedTuple):
    lo1: int
    hi1: int
    lo2: int
    hi2: int

    @classmethod
    def square(cls, lo: int, hi: int) -> "Rect":
        return cls(lo, hi, lo, hi)

    def __contains__(self, pq) -> bool:
        p, q = pq
        return self.lo1 <= p <= self.hi1 and self.lo2 <= q <= self.hi2

    def points(self) -> Iterator[tuple[int, int]]:
        for p in range(self.lo1, self.hi1 + 1):
            for q in range(self.lo2, self.hi2 + 1):
                yield p, q

    def as_list(self) -> list[int]:
        return list(self)


class Series:
    """Univariate window: coefficients of z^j for lo <= j <= hi.

    ``exact_below`` asserts that every coefficient below lo vanishes.
    """

    def __init__(self, var: str, lo: int, hi: int, coeffs: dict[int, Vector], exact_below: bool = False):
        self.var = var
        self.lo = lo
        self.hi = hi
        self.coeffs = {j: v for j, v in coeffs.items() if v and lo <= j <= hi}
        self.exact_below = exact_below

    def __getitem__(self, j: int) -> Vector:
        if j < self.lo:
            if self.exact_below:
                return ZERO
            raise WindowError(f"z^{j} lies below the window [{self.lo}, {self.hi}]")
        if j > self.hi:
            raise WindowError(f"z^{j} lies above the window [{self.lo}, {self.hi}]")
        return self.coeffs.get(j, ZERO)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Series) and (self.lo, self.hi) == (other.lo, other.hi)
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"0 on {self.var}^[{self.lo},{self.hi}]"
        return " + ".join(f"({v})*{self.var}^{j}" for j, v in sorted(self.coeffs.items()))


Cert = Callable[[int, int], bool] | None


class Window2:
    """Lazy bivariate Laurent series ``sum coef(p, q) x^p y^q``.

    ``certified`` is None when every coefficient is exact, else a predicate.
    ``floor2`` (optional) asserts that all coefficients with q < floor2 vanish;
    the shift substitution needs it to bound its sums.
    """

    def __init__(self, coef: Callable[[int, int], Vector], vars: tuple[str, str] = ("z1", "z2"),
                 certified: Cert = None, floor2: int | None = None):
        self._coef = coef
        self.vars = vars
        self.certified = certified
        self.floor2 = floor2
        self._cache: dict[tuple[int, int], Vector] = {}

    @classmethod
    def from_grid(cls, grid: dict[tuple[int, int], Vector], rect: Rect,
                  vars: tuple[str, str] = ("z1", "z2"), floor2: int | None = None) -> "Window2":
        """A finite table, certified on ``rect`` only."""
        grid = dict(grid)
        return cls(lambda p, q: grid.get((p, q), ZERO), vars, lambda p, q: (p, q) in rect, floor2)

    @classmethod
    def zero(cls, vars: tuple[str, str] = ("z1", "z2")) -> "Window2":
        return cls(lambda p, q: ZERO, vars, None, None)

    def __getitem__(self, pq: tuple[int, int]) -> Vector:
        try:
            return self._cache[pq]
        except KeyError:
            v = self._coef(*pq)
            self._cache[pq] = v
            return v

    def is_certified(self, p: int, q: int) -> bool:
        return self.certified is None or self.certified(p, q)

    def grid(self, rect: Rect) -> dict[tuple[int, int], Vector]:
        return {pq: self[pq] for pq in rect.points() if self.is_certified(*pq) and self[pq]}

    def _combine(self, other: "Window2", sign: int) -> "Window2":
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
        cert = _cert_and(self.certified, other.certified)
        f2 = None if self.floor2 is None or other.floor2 is None else min(self.floor2, other.floor2)
        if sign > 0:
            return Window2(lambda p, q: self[p, q] + other[p, q], self.vars, cert, f2)
        return Window2(lambda p, q: self[p, q] - other[p, q], self.vars, cert, f2)

    def __add__(self, other: "Window2") -> "Window2":
        return self._combine(other, 1)

    def __sub__(self, other: "Window2") -> "Window2":
        return self._combine(other, -1)

    def scaled(self, c) -> "Window2":
        return Window2(lambda p, q: self[p, q] * c, self.vars, self.certified, self.floor2)


def _cert_and(c1: Cert, c2: Cert) -> Cert:
    if c1 is None:
        return c2
    if c2 is None:
        return c1
    return lambda p, q: c1(p, q) and c2(p, q)


def mul_binomial_power(S: Window2, sign: int, k: int) -> Window2:
    """Multiply by ``(u + sign*v)^k`` for k >= 0, where (u, v) are S's variables.

    A coefficient of the result is certified when every operand coefficient it
    reads is, so a certified rectangle shrinks by k at its lower edges.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return S
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    terms = [(binom(k, s) * sign ** s, k - s, s) for s in range(k + 1)]

    def coef(p, q):
        acc: dict = {}
        for c, dp, dq in terms:
            accumulate(acc, S[p - dp, q - dq], Fraction(c))
        return from_dict(acc)

    cert = None
    if S.certified is not None:
        base = S.certified
        cert = lambda p, q: all(base(p - dp, q - dq) for _, dp, dq in terms)
    return Window2(coef, S.vars, cert, S.floor2)


def substitute_shift(S: Window2, vars: tuple[str, str] = ("z0", "z2")) -> Window2:
    """Rewrite ``S(z1, z2)`` as ``S(z0 + z2, z2)`` expanded in nonnegative powers of z2.

    Coefficient (r, s) is ``sum_{i>=0} C(r+i, i) S[r+i, s-i]``; the sum stops
    at i = s - floor2 because S vanishes below floor2 in its second variable.
    """
    F = S.floor2
    if F is None:
        raise WindowError("shift substitution needs a lower bound on the second variable")

    def coef(r, s):
        acc: dict = {}
        for i in range(0, s - F + 1):
            c = binom(r + i, i)
            if c:
                accumulate(acc, S[r + i, s - i], Fraction(c))
        return from_dict(acc)

    cert = None
    if S.certified is not None:
        base = S.certified
        cert = lambda r, s: all(base(r + i, s - i) for i in range(0, s - F + 1))
    return Window2(coef, vars, cert, F)


# Windows assembled from mode oracles.  ``outer`` and ``inner`` are any objects
# exposing mode(x, n, y) -> Vector and support(x, y) -> int.

def product_window(outer, a, inner, b, c) -> Window2:
    """``outer(a, z1) inner(b, z2) c``; coefficient (p, q) is a_{-p-1}(b_{-q-1} c)."""
    return Window2(lambda p, q: outer.mode(a, -p - 1, inner.mode(b, -q - 1, c)),
                   ("z1", "z2"), None, -inner.support(b, c))


def reversed_product_window(outer, b, inner, a, c) -> Window2:
    """``outer(b, z2) inner(a, z1) c`` as a series in (z1, z2)."""
    return Window2(lambda p, q: outer.mode(b, -q - 1, inner.mode(a, -p - 1, c)),
                   ("z1", "z2"), None, None)


def iterate_window(outer, inner, a, b, c) -> Window2:
    """``outer(inner(a, z0) b, z2) c`` in (z0, z2)."""
    return Window2(lambda r, s: outer.mode(inner.mode(a, -r - 1, b), -s - 1, c),
                   ("z0", "z2"), None, None)


def first_difference(L: Window2, R: Window2, rect: Rect):
    """First (p, q) in rect (row-major) where certified L and R differ.

    Returns (None, checked) when they agree on every certified point, or
    ((p, q), checked) at the first disagreement.
    """
    checked = 0
    for pq in rect.points():
        if not (L.is_certified(*pq) and R.is_certified(*pq)):
            continue
        checked += 1
        if L[pq] != R[pq]:
            return pq, checked
    return None, checked


def _vanishes(W: Window2, rect: Rect):
    checked = 0
    for pq in rect.points():
        if not W.is_certified(*pq):
            continue
        checked += 1
        if W[pq]:
            return pq, checked
    return None, checked


def raised(rect: Rect, k: int) -> Rect:
    """rect with its top edges lifted by ceil(k/2).

    Multiplying by a k-th binomial power moves every term k total degrees up;
    without the lift a large k could push a genuine discrepancy past the top
    edge and pass vacuously.
    """
    h = (k + 1) // 2
    return Rect(rect.lo1, rect.hi1 + h, rect.lo2, rect.hi2 + h)


def minimal_killing_power(L: Window2, R: Window2, sign: int, rect: Rect, kmax: int):
    """Smallest k <= kmax with ``(u + sign v)^k (L - R) = 0`` on the certified part of raised(rect, k).

    Returns (k, None) on success, or (None, (k, (p, q))) with the first
    nonvanishing coefficient found at k = kmax.  Raises InconclusiveError if no
    point was certified for any k.
    """
    D = L - R
    any_checked = False
    bad = None
    for k in range(kmax + 1):
        Dk = mul_binomial_power(D, sign, k)
        pq, checked = _vanishes(Dk, raised(rect, k))
        if checked:
            any_checked = True
        if pq is None and checked:
            return k, None
        if pq is not None:
            bad = (k, pq)
    if not any_checked:
        raise InconclusiveError(f"no certified coefficient in {tuple(rect)} for k <= {kmax}")
    return None, bad


def jacobi_pair_check(A: Window2, B: Window2, C: Window2, kmax: int, rect: Rect,
                      name: str = "jacobi", subject=None):
    """Search the minimal (k, l) with (z1-z2)^k A = (z1-z2)^k B and
    (z0+z2)^l A(z0+z2, z2) = (z0+z2)^l C(z0, z2) on the certified part of rect.

    Two such exponents exist exactly when the delta-function Jacobi identity
    for (A, B, C) holds, so this is the delta-free form of that identity.
    """
    from .kernel import CheckReport, describe_difference

    k, kbad = minimal_killing_power(A, B, -1, rect, kmax)
    As = substitute_shift(A)
    l, lbad = minimal_killing_power(As, C, 1, rect, kmax)
    witnesses = {"k": k, "l": l}
    if k is not None and l is not None:
        return CheckReport.passed(name, subject, window=rect, witnesses=witnesses)
    if k is None:
        kk, (p, q) = kbad
        L = mul_binomial_power(A, -1, kk)
        R = mul_binomial_power(B, -1, kk)
        cex = describe_difference(L[p, q], R[p, q], {"z1": p, "z2": q, "k": kk})
        note = "commutativity side"
    else:
        ll, (r, s) = lbad
        L = mul_binomial_power(As, 1, ll)
        R = mul_binomial_power(C, 1, ll)
        cex = describe_difference(L[r, s], R[r, s], {"z0": r, "z2": s, "l": ll})
        note = "associativity side"
    return CheckReport.failed(name, subject, window=rect, witnesses=witnesses,
                              counterexample=cex, notes=[f"no witness up to kmax={kmax} on the {note}"])
