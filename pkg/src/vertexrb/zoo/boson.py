"""Exact free-boson mode calculus shared by the Heisenberg and rank-1 lattice algebras.

States are dicts {(modes, m): Fraction}, where ``modes`` is a sorted tuple of
(generator, n) pairs standing for the creation operators alpha_i(-n), n >= 1,
and m is the lattice charge (always 0 for the Heisenberg algebra).

Mode actions are computed recursively with the iterate formula

    (alpha_i(-n) v)_q w = sum_{t>=0} C(n+t-1, t) [ alpha_i(-n-t)(v_{q+t} w)
                                                  - (-1)^n v_{q-n-t}(alpha_i(t) w) ],

which peels one creation operator off the left state at a time, down to the
vacuum (1_q w = delta_{q,-1} w) or to a pure exponential e^{m alpha}, whose
vertex operator is expanded from E^-(-m alpha, z) E^+(-m alpha, z) z^{2Nmn}.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable

from ..series import binom

Key = tuple  # (modes, m)


def _add(acc: dict, st: dict, c) -> None:
    if not c:
        return
    for k, x in st.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Partitions of n as tuples of (part, multiplicity), parts decreasing."""
    out = []

    def rec(rem, maxp, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rem, maxp), 0, -1):
            for mult in range(rem // p, 0, -1):
                rec(rem - p * mult, p - 1, acc + [(p, mult)])

    rec(n, n, [])
    return tuple(out)


def colored_partitions(n: int, colors: int) -> list[tuple]:
    """Sorted tuples of (color, part) with parts summing to n."""
    out = []

    def rec(rem, start, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        # parts ordered by (color, part) to keep tuples canonical
        for c in range(colors):
            for p in range(1, rem + 1):
                if (c, p) < start:
                    continue
                rec(rem - p, (c, p), acc + [(c, p)])

    rec(n, (0, 1), [])
    return out


class BosonEngine:
    """Exact Fock-space calculus for rank-r bosons at level k with Gram matrix G.

    ``charge_pairing(i, m)`` is the eigenvalue of alpha_i(0) on charge m;
    ``charge_norm`` is N with (alpha|alpha) = 2N for the lattice (0 for none).
    """

    def __init__(self, gram, level, charge_pairing: Callable[[int, int], Fraction] | None = None,
                 charge_norm: int = 0):
        self.G = [[Fraction(x) for x in row] for row in gram]
        self.rank = len(self.G)
        self.k = Fraction(level)
        self.charge_pairing = charge_pairing or (lambda i, m: Fraction(0))
        self.N = charge_norm
        self._cache: dict = {}
        self._eplus: dict = {}

    def weight(self, key: Key) -> int:
        modes, m = key
        return sum(n for _, n in modes) + self.N * m * m

    # single modes on states
    def create(self, i: int, n: int, st: dict) -> dict:
        out = {}
        for (modes, m), c in st.items():
            k2 = (tuple(sorted(modes + ((i, n),))), m)
            out[k2] = out.get(k2, 0) + c
        return out

    def annihilate(self, i: int, n: int, st: dict) -> dict:
        out: dict = {}
        for (modes, m), c in st.items():
            seen = set()
            for pos, (j, p) in enumerate(modes):
                if p != n or (j, p) in seen:
                    continue
                seen.add((j, p))
                g = self.G[i][j]
                if not g:
                    continue
                mult = modes.count((j, p))
                rest = modes[:pos] + modes[pos + 1:]
                _add(out, {(rest, m): c}, mult * n * self.k * g)
        return out

    def act(self, i: int, n: int, st: dict) -> dict:
        """alpha_i(n) on a state."""
        if n < 0:
            return self.create(i, -n, st)
        if n > 0:
            return self.annihilate(i, n, st)
        out = {}
        for key, c in st.items():
            e = self.charge_pairing(i, key[1])
            if e:
                out[key] = c * e
        return out

    # vertex operator modes
    def mode(self, a: Key, q: int, w: Key) -> dict:
        """(a)_q w as a state dict; the result must not be mutated."""
        ck = (a, q, w)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        if q >= self.weight(a) + self.weight(w):
            res = {}
        else:
            res = self._mode(a, q, w)
        self._cache[ck] = res
        return res

    def _mode_on_state(self, a: Key, q: int, st: dict) -> dict:
        out: dict = {}
        for key, c in st.items():
            _add(out, self.mode(a, q, key), c)
        return out

    def _mode(self, a: Key, q: int, w: Key) -> dict:
        modes, m = a
        if not modes:
            if m == 0:
                return {w: Fraction(1)} if q == -1 else {}
            return self._exponential_mode(m, q, w)
        i, n = modes[0]
        v = (modes[1:], m)
        wt_vw = self.weight(v) + self.weight(w)
        out: dict = {}
        t = 0
        while q + t < wt_vw:
            inner = self.mode(v, q + t, w)
            if inner:
                _add(out, self.create(i, n + t, inner), binom(n + t - 1, t))
            t += 1
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        w_modes = w[0]
        max_t = max((p for _, p in w_modes), default=0)
        for t in range(0, max_t + 1):
            aw = self.act(i, t, {w: Fraction(1)})
            if not aw:
                continue
            _add(out, self._mode_on_state(v, q - n - t, aw), sign * binom(n + t - 1, t))
        return out

    def _eplus_coeff(self, m: int, t: int, w: Key) -> dict:
        """Coefficient of z^{-t} in E^+(-m alpha, z) applied to w (rank-1, generator 0)."""
        ck = (m, t, w)
        hit = self._eplus.get(ck)
        if hit is not None:
            return hit
        out: dict = {}
        for part in partitions(t):
            st = {w: Fraction(1)}
            coef = Fraction(1)
            for p, mult in part:
                coef *= Fraction(-m, p) ** mult / factorial(mult)
                for _ in range(mult):
                    st = self.annihilate(0, p, st)
                    if not st:
                        break
                if not st:
                    break
            if st:
                _add(out, st, coef)
        self._eplus[ck] = out
        return out

    def _eminus_apply(self, m: int, s: int, st: dict) -> dict:
        """Coefficient of z^s in E^-(-m alpha, z) applied to a state."""
        out: dict = {}
        for part in partitions(s):
            cur = st
            coef = Fraction(1)
            for p, mult in part:
                coef *= Fraction(m, p) ** mult / factorial(mult)
                for _ in range(mult):
                    cur = self.create(0, p, cur)
            _add(out, cur, coef)
        return out

    def _exponential_mode(self, m: int, q: int, w: Key) -> dict:
        """(e^{m alpha})_q w with trivial cocycle."""
        w_modes, n = w
        shift = 2 * self.N * m * n
        depth = sum(p for _, p in w_modes)
        out: dict = {}
        for t in range(0, depth + 1):
            s = -q - 1 - shift + t
            if s < 0:
                continue
            ep = self._eplus_coeff(m, t, w)
            if not ep:
                continue
            moved = {(modes, n + m): c for (modes, _), c in ep.items()}
            _add(out, self._eminus_apply(m, s, moved), 1)
        return out
