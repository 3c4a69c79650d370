"""Exact arithmetic substrate: rationals, multi-indices, truncated series.

Everything here is exact. Coefficients are ``fractions.Fraction`` values
(aliased as ``Rational``), indices are plain ``(m, n, p)`` tuples of
nonnegative ints, and a :class:`TruncatedSeries` keeps every coefficient
of total degree at most its cap. Values are immutable; operations return
new series, so they are safe to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ._backend import series_mul as _series_mul
from .errors import CapMismatch

Rational = Fraction

_AXIS = {"x": 0, "y": 1, "z": 2, 0: 0, 1: 1, 2: 2}


def pochhammer(a, k: int):
    """Rising factorial a (a+1) ... (a+k-1); empty product 1 for k == 0.

    Exact for Fraction or int input, and works on floats for the
    evaluation paths.
    """
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = 1
    for i in range(k):
        out *= a + i
    return out


def index_count(cap: int) -> int:
    """Number of trivariate monomials with total degree <= cap."""
    return (cap + 1) * (cap + 2) * (cap + 3) // 6


def graded_indices(cap: int):
    """Yield all (m, n, p) with m+n+p <= cap in graded lexicographic order.

    Shells of equal total degree come first, ascending; ties break by
    ascending lex on the tuple itself. Verdicts report the first bad
    monomial in this order.
    """
    for total in range(cap + 1):
        for m in range(total + 1):
            for n in range(total + 1 - m):
                yield (m, n, total - m - n)


def axis_index(axis) -> int:
    try:
        return _AXIS[axis]
    except KeyError:
        raise ValueError(f"unknown axis {axis!r}") from None


class TruncatedSeries:
    """Trivariate formal power series truncated by total degree.

    The coefficient map is sparse: an absent index is a zero coefficient.
    No stored index exceeds the cap, and products of two series with equal
    caps discard all higher-degree terms.
    """

    __slots__ = ("cap", "_coeffs")

    def __init__(self, cap: int, coeffs=None):
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        self.cap = cap
        clean = {}
        if coeffs:
            for idx, value in coeffs.items():
                m, n, p = idx
                if m < 0 or n < 0 or p < 0:
                    raise ValueError(f"negative exponent in index {idx}")
                if m + n + p > cap:
                    raise ValueError(f"index {idx} exceeds cap {cap}")
                value = Fraction(value)
                if value != 0:
                    clean[(m, n, p)] = value
        self._coeffs = clean

    @classmethod
    def _raw(cls, cap, coeffs):
        # internal: trusted, already-clean coefficient dict
        s = cls.__new__(cls)
        s.cap = cap
        s._coeffs = coeffs
        return s

    @classmethod
    def zero(cls, cap: int) -> "TruncatedSeries":
        return cls._raw(cap, {})

    @classmethod
    def constant(cls, value, cap: int) -> "TruncatedSeries":
        value = Fraction(value)
        return cls._raw(cap, {(0, 0, 0): value} if value else {})

    @classmethod
    def monomial(cls, idx, cap: int, coeff=1) -> "TruncatedSeries":
        return cls(cap, {tuple(idx): Fraction(coeff)})

    def coeff(self, idx) -> Fraction:
        return self._coeffs.get(tuple(idx), Fraction(0))

    def coefficients(self) -> dict:
        """Copy of the sparse coefficient map."""
        return dict(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cap == other.cap and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.cap, frozenset(self._coeffs.items())))

    def _check_cap(self, other):
        if self.cap != other.cap:
            raise CapMismatch(f"cap {self.cap} != cap {other.cap}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_cap(other)
        out = dict(self._coeffs)
        for idx, value in other._coeffs.items():
            acc = out.get(idx)
            total = value if acc is None else acc + value
            if total == 0:
                out.pop(idx, None)
            else:
                out[idx] = total
        return TruncatedSeries._raw(self.cap, out)

    def __neg__(self):
        return TruncatedSeries._raw(self.cap, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_cap(other)
        return TruncatedSeries._raw(
            self.cap, _series_mul(self._coeffs, other._coeffs, self.cap)
        )

    def scaled(self, factor) -> "TruncatedSeries":
        factor = Fraction(factor)
        if factor == 0:
            return TruncatedSeries.zero(self.cap)
        return TruncatedSeries._raw(
            self.cap, {k: factor * v for k, v in self._coeffs.items()}
        )

    def map_coefficients(self, fn) -> "TruncatedSeries":
        """New series with coefficient fn(idx, value) at each stored index."""
        out = {}
        for idx, value in self._coeffs.items():
            new = fn(idx, value)
            if new != 0:
                out[idx] = new
        return TruncatedSeries._raw(self.cap, out)

    def collapse_z_into_y(self) -> "TruncatedSeries":
        """Substitute z -> y, folding coefficients onto the (m, n, 0) plane."""
        out = {}
        for (m, n, p), value in self._coeffs.items():
            key = (m, n + p, 0)
            acc = out.get(key)
            total = value if acc is None else acc + value
            if total == 0:
                out.pop(key, None)
            else:
                out[key] = total
        return TruncatedSeries._raw(self.cap, out)

    def eval_at(self, point) -> Fraction:
        """Exact polynomial evaluation at a rational point (x, y, z)."""
        x, y, z = (Fraction(c) for c in point)
        total = Fraction(0)
        for (m, n, p), value in self._coeffs.items():
            total += value * x**m * y**n * z**p
        return total

    def first_difference(self, other):
        """Graded-lex-first index where the two series differ, or None."""
        self._check_cap(other)
        keys = set(self._coeffs) | set(other._coeffs)
        if not keys:
            return None
        bad = [k for k in keys if self._coeffs.get(k) != other._coeffs.get(k)]
        if not bad:
            return None
        return min(bad, key=lambda k: (k[0] + k[1] + k[2], k))

    def __repr__(self):
        return f"TruncatedSeries(cap={self.cap}, terms={len(self._coeffs)})"


def binomial_series(exponent, axis, sign: int, cap: int) -> TruncatedSeries:
    """Series of (1 + sign*v)^exponent in the chosen axis, up to cap.

    For (1 - v)^(-e) the coefficient of v^k is (e)_k / k!.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ax = axis_index(axis)
    e = Fraction(exponent)
    coeffs = {}
    c = Fraction(1)
    for k in range(cap + 1):
        if k > 0:
            c = c * (e - k + 1) / k * sign
        if c == 0:
            break
        idx = [0, 0, 0]
        idx[ax] = k
        coeffs[tuple(idx)] = c
    return TruncatedSeries._raw(cap, coeffs)


def factorial(n: int) -> int:
    return math.factorial(n)
