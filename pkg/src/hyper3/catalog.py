"""Catalog of the hypergeometric families and their evaluators.

Every function here is a multiple power series whose coefficient at a
multi-index is a ratio of Pochhammer symbols over the index factorials.
That shape is captured declaratively by :class:`SeriesDef`: a list of
numerator and denominator factors, each a parameter name plus 0/1 weights
saying which indices couple into its Pochhammer depth. One definition
drives three things:

* ``coeff``      -- exact Rational coefficient of a single monomial,
* ``truncated``  -- exact TruncatedSeries up to a total-degree cap,
* ``evaluate``   -- floating-point summation by total-degree shells.

The triple series catalogued as HA, HB, HC differ only in how the coupled
numerator depths (m+p), (m+n), (n+p) meet the denominator parameters:
one split denominator pair, three separate denominators, or a single
fully coupled one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ArityMismatch, BadParams, NonFinite
from .series import TruncatedSeries, pochhammer

CONVERGED = "converged"
MAX_SHELLS = "max_shells_reached"
DIVERGENCE = "divergence_suspected"

DEFAULT_TOL = 1e-12
DEFAULT_MAX_SHELLS = 400


@dataclass(frozen=True)
class SeriesDef:
    """Declarative description of one hypergeometric family."""

    name: str
    arity: int
    params: tuple[str, ...]
    num: tuple[tuple[str, tuple[int, ...]], ...]
    den: tuple[tuple[str, tuple[int, ...]], ...]


def _d(name, arity, params, num, den):
    return SeriesDef(name, arity, tuple(params.split()), tuple(num), tuple(den))


FUNCTIONS: dict[str, SeriesDef] = {
    f.name: f
    for f in (
        _d("2F1", 1, "a b c", [("a", (1,)), ("b", (1,))], [("c", (1,))]),
        _d("0F1", 1, "c", [], [("c", (1,))]),
        _d("1F1", 1, "a c", [("a", (1,))], [("c", (1,))]),
        _d(
            "F1",
            2,
            "a b1 b2 c",
            [("a", (1, 1)), ("b1", (1, 0)), ("b2", (0, 1))],
            [("c", (1, 1))],
        ),
        _d(
            "F2",
            2,
            "a b1 b2 c1 c2",
            [("a", (1, 1)), ("b1", (1, 0)), ("b2", (0, 1))],
            [("c1", (1, 0)), ("c2", (0, 1))],
        ),
        _d(
            "F3",
            2,
            "a1 a2 b1 b2 c",
            [("a1", (1, 0)), ("a2", (0, 1)), ("b1", (1, 0)), ("b2", (0, 1))],
            [("c", (1, 1))],
        ),
        _d(
            "F4",
            2,
            "a b c1 c2",
            [("a", (1, 1)), ("b", (1, 1))],
            [("c1", (1, 0)), ("c2", (0, 1))],
        ),
        _d("Psi2", 2, "a c1 c2", [("a", (1, 1))], [("c1", (1, 0)), ("c2", (0, 1))]),
        _d("FD1", 1, "a b1 c", [("a", (1,)), ("b1", (1,))], [("c", (1,))]),
        _d(
            "FD2",
            2,
            "a b1 b2 c",
            [("a", (1, 1)), ("b1", (1, 0)), ("b2", (0, 1))],
            [("c", (1, 1))],
        ),
        _d(
            "FD3",
            3,
            "a b1 b2 b3 c",
            [("a", (1, 1, 1)), ("b1", (1, 0, 0)), ("b2", (0, 1, 0)), ("b3", (0, 0, 1))],
            [("c", (1, 1, 1))],
        ),
        _d(
            "HA",
            3,
            "alpha beta1 beta2 gamma1 gamma2",
            [("alpha", (1, 0, 1)), ("beta1", (1, 1, 0)), ("beta2", (0, 1, 1))],
            [("gamma1", (1, 0, 0)), ("gamma2", (0, 1, 1))],
        ),
        _d(
            "HB",
            3,
            "alpha beta1 beta2 gamma1 gamma2 gamma3",
            [("alpha", (1, 0, 1)), ("beta1", (1, 1, 0)), ("beta2", (0, 1, 1))],
            [("gamma1", (1, 0, 0)), ("gamma2", (0, 1, 0)), ("gamma3", (0, 0, 1))],
        ),
        _d(
            "HC",
            3,
            "alpha beta1 beta2 gamma",
            [("alpha", (1, 0, 1)), ("beta1", (1, 1, 0)), ("beta2", (0, 1, 1))],
            [("gamma", (1, 1, 1))],
        ),
    )
}

_ALIASES = {
    "gauss2f1": "2F1",
    "hyp0f1": "0F1",
    "hyp1f1": "1F1",
    "appellf1": "F1",
    "appellf2": "F2",
    "appellf3": "F3",
    "appellf4": "F4",
    "humbertpsi2": "Psi2",
    "psi2": "Psi2",
    "lauricellafd1": "FD1",
    "lauricellafd2": "FD2",
    "lauricellafd3": "FD3",
    "ha": "HA",
    "hb": "HB",
    "hc": "HC",
    "2f1": "2F1",
    "0f1": "0F1",
    "1f1": "1F1",
    "f1": "F1",
    "f2": "F2",
    "f3": "F3",
    "f4": "F4",
    "fd1": "FD1",
    "fd2": "FD2",
    "fd3": "FD3",
}


def resolve_function(name: str) -> SeriesDef:
    fn = FUNCTIONS.get(name) or FUNCTIONS.get(_ALIASES.get(name.lower(), ""))
    if fn is None:
        raise ValueError(f"unknown function {name!r}")
    return fn


def function_names() -> list[str]:
    return sorted(FUNCTIONS)


def _exact_params(fn: SeriesDef, params) -> dict:
    out = {}
    for name in fn.params:
        if name not in params:
            raise BadParams(f"{fn.name} needs parameter {name!r}")
        value = params[name]
        if isinstance(value, float) and not value.is_integer():
            raise BadParams(
                f"exact path needs rational parameters, got float {name}={value}"
            )
        out[name] = Fraction(value)
    return out


def _float_params(fn: SeriesDef, params) -> dict:
    out = {}
    for name in fn.params:
        if name not in params:
            raise BadParams(f"{fn.name} needs parameter {name!r}")
        out[name] = float(params[name])
    return out


def _check_den_depth(fn: SeriesDef, values: dict, depth: int):
    # A denominator Pochhammer (c)_k vanishes first at k = 1 - c; only
    # depths reachable below the cap make the parameter set invalid.
    for name, _w in fn.den:
        c = values[name]
        if c <= 0 and c.denominator == 1 and 1 - c <= depth:
            raise BadParams(
                f"denominator parameter {name}={c} hits a zero Pochhammer "
                f"within depth {depth}"
            )


def _full_index(fn: SeriesDef, idx) -> tuple[int, ...]:
    idx = tuple(idx)
    if len(idx) != 3:
        raise ArityMismatch(f"index must have three components, got {idx}")
    if any(k < 0 for k in idx):
        raise ArityMismatch(f"negative index component in {idx}")
    if any(idx[i] != 0 for i in range(fn.arity, 3)):
        raise ArityMismatch(
            f"{fn.name} has arity {fn.arity}; extra components of {idx} must be zero"
        )
    return idx


def _depth(weights, idx) -> int:
    return sum(w * k for w, k in zip(weights, idx))


def coeff(fn_name: str, params, idx) -> Fraction:
    """Exact series coefficient of x^m y^n z^p for the named function."""
    fn = resolve_function(fn_name)
    idx = _full_index(fn, idx)
    values = _exact_params(fn, params)
    total = sum(idx[: fn.arity])
    _check_den_depth(fn, values, total)
    num = Fraction(1)
    for name, w in fn.num:
        num *= pochhammer(values[name], _depth(w, idx))
    den = Fraction(1)
    for name, w in fn.den:
        den *= pochhammer(values[name], _depth(w, idx))
    for k in idx[: fn.arity]:
        den *= math.factorial(k)
    return num / den


def _arity_indices(arity: int, cap: int):
    if arity == 1:
        for m in range(cap + 1):
            yield (m,)
    elif arity == 2:
        for total in range(cap + 1):
            for m in range(total + 1):
                yield (m, total - m)
    else:
        for total in range(cap + 1):
            for m in range(total + 1):
                for n in range(total + 1 - m):
                    yield (m, n, total - m - n)


_CANONICAL_AXES = {1: "x", 2: "xy", 3: "xyz"}
_AXIS_POS = {"x": 0, "y": 1, "z": 2}


def truncated(fn_name: str, params, cap: int, axes: str | None = None) -> TruncatedSeries:
    """Exact truncated series of the named function.

    ``axes`` embeds the function's own variables into (x, y, z); e.g. a
    Gauss series with axes="y" lives on the y-axis, an Appell series with
    axes="yz" on the (y, z) plane. Defaults to the leading axes.
    """
    fn = resolve_function(fn_name)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    axes = axes or _CANONICAL_AXES[fn.arity]
    if len(axes) != fn.arity or len(set(axes)) != len(axes):
        raise ArityMismatch(f"axes {axes!r} do not fit {fn.name} (arity {fn.arity})")
    positions = tuple(_AXIS_POS[a] for a in axes)

    values = _exact_params(fn, params)
    _check_den_depth(fn, values, cap)

    # Pochhammer prefix tables: (a)_0 .. (a)_cap for every factor.
    tables = {}
    for name, _w in fn.num + fn.den:
        if name not in tables:
            row = [Fraction(1)]
            v = values[name]
            for k in range(cap):
                row.append(row[-1] * (v + k))
            tables[name] = row
    fact = [Fraction(math.factorial(k)) for k in range(cap + 1)]

    coeffs = {}
    for idx in _arity_indices(fn.arity, cap):
        num = Fraction(1)
        for name, w in fn.num:
            num *= tables[name][_depth(w, idx)]
        if num == 0:
            continue
        den = Fraction(1)
        for name, w in fn.den:
            den *= tables[name][_depth(w, idx)]
        for k in idx:
            den *= fact[k]
        full = [0, 0, 0]
        for pos, k in zip(positions, idx):
            full[pos] = k
        coeffs[tuple(full)] = num / den
    return TruncatedSeries._raw(cap, coeffs)


@dataclass
class EvalResult:
    """Outcome of a floating-point series evaluation."""

    value: float
    abs_error_estimate: float
    shells_summed: int
    status: str

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED


def _neumaier(total, comp, x):
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


def evaluate(
    fn_name: str,
    params,
    point,
    tol: float = DEFAULT_TOL,
    max_shells: int = DEFAULT_MAX_SHELLS,
) -> EvalResult:
    """Sum the defining series by total-degree shells at a real point.

    Converged means three consecutive shell sums each stayed below
    tol * max(1, |partial|); five consecutive shells of growing magnitude
    flag suspected divergence instead. Terms are produced by exact ratio
    recurrences along the index lattice and accumulated with compensated
    summation, so the result is term-order independent to roundoff.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    fn = resolve_function(fn_name)
    pt = tuple(float(c) for c in point)
    if len(pt) != fn.arity:
        raise ArityMismatch(f"{fn.name} expects a {fn.arity}-component point")
    values = _float_params(fn, params)
    for name, _w in fn.den:
        c = values[name]
        if c <= 0 and c.is_integer():
            raise BadParams(f"denominator parameter {name}={c} is a nonpositive integer")

    num_factors = [(values[name], w) for name, w in fn.num]
    den_factors = [(values[name], w) for name, w in fn.den]
    active_axes = [j for j in range(fn.arity) if pt[j] != 0.0]

    def axis_ratio(parent, j):
        num = pt[j]
        for a, w in num_factors:
            if w[j]:
                num *= a + _depth(w, parent)
        den = parent[j] + 1
        for c, w in den_factors:
            if w[j]:
                den *= c + _depth(w, parent)
        return num / den

    total, comp = 1.0, 0.0
    prev_shell = {(0,) * fn.arity: 1.0}
    small_streak = 0
    grow_streak = 0
    last_abs = None
    recent = [0.0, 0.0, 0.0]
    shells = 0

    for s in range(1, max_shells + 1):
        cur = {}
        shell_sum, shell_comp = 0.0, 0.0
        for idx in _shell_indices(fn.arity, s, active_axes):
            parent, j = _parent_of(idx)
            pterm = prev_shell.get(parent)
            if pterm is None or pterm == 0.0:
                continue
            term = pterm * axis_ratio(parent, j)
            if term != 0.0:
                cur[idx] = term
                shell_sum, shell_comp = _neumaier(shell_sum, shell_comp, term)
        shell_sum += shell_comp
        total, comp = _neumaier(total, comp, shell_sum)
        if not math.isfinite(total):
            raise NonFinite(f"series for {fn.name} overflowed at shell {s}")
        shells = s
        prev_shell = cur
        recent = [recent[1], recent[2], abs(shell_sum)]

        scale = max(1.0, abs(total + comp))
        if abs(shell_sum) < tol * scale:
            small_streak += 1
            grow_streak = 0
        else:
            small_streak = 0
            if last_abs is not None and abs(shell_sum) > last_abs:
                grow_streak += 1
            else:
                grow_streak = 0
        last_abs = abs(shell_sum)

        if small_streak >= 3:
            value = total + comp
            est = max(recent)
            if est <= tol * max(1.0, abs(value)):
                return EvalResult(value, est, shells, CONVERGED)
            small_streak = 0
        if grow_streak >= 5:
            return EvalResult(total + comp, float("inf"), shells, DIVERGENCE)
        if not cur:
            # terminating series: nothing left to sum
            value = total + comp
            return EvalResult(value, 0.0, shells, CONVERGED)

    value = total + comp
    return EvalResult(value, max(recent), shells, MAX_SHELLS)


def _shell_indices(arity, s, active_axes):
    # Compositions of s into `arity` parts, skipping any index that puts a
    # positive exponent on an axis whose coordinate is exactly zero.
    active = set(active_axes)
    if arity == 1:
        if 0 in active:
            yield (s,)
        return
    if arity == 2:
        for m in range(s + 1):
            n = s - m
            if (m > 0 and 0 not in active) or (n > 0 and 1 not in active):
                continue
            yield (m, n)
        return
    for m in range(s + 1):
        if m > 0 and 0 not in active:
            break
        for n in range(s + 1 - m):
            if n > 0 and 1 not in active:
                continue
            p = s - m - n
            if p > 0 and 2 not in active:
                continue
            yield (m, n, p)


def _parent_of(idx):
    # Decrement the last positive component; the parent sits one shell down.
    for j in range(len(idx) - 1, -1, -1):
        if idx[j] > 0:
            parent = list(idx)
            parent[j] -= 1
            return tuple(parent), j
    raise AssertionError("zero index has no parent")


# Array-capable evaluators for the confluent kernels used inside the
# quadrature integrands. They accept floats or numpy arrays and sum with
# term recurrences to a fixed relative tolerance.


def eval_0f1(c: float, z, tol: float = 1e-13, max_terms: int = 600):
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(max_terms):
        term = term * z / ((c + k) * (k + 1))
        total += term
        if np.all(np.abs(term) <= tol * np.maximum(1.0, np.abs(total))):
            break
    else:
        raise NonFinite("0F1 summation did not settle")
    if not np.all(np.isfinite(total)):
        raise NonFinite("0F1 summation overflowed")
    return total if total.shape else float(total)


def eval_1f1(a: float, c: float, z, tol: float = 1e-13, max_terms: int = 800):
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(max_terms):
        term = term * z * (a + k) / ((c + k) * (k + 1))
        total += term
        if np.all(np.abs(term) <= tol * np.maximum(1.0, np.abs(total))):
            break
    else:
        raise NonFinite("1F1 summation did not settle")
    if not np.all(np.isfinite(total)):
        raise NonFinite("1F1 summation overflowed")
    return total if total.shape else float(total)


def eval_2f1(a: float, b: float, c: float, z, tol: float = 1e-13, max_terms: int = 2000):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("2F1 series needs |z| < 1")
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(max_terms):
        term = term * z * (a + k) * (b + k) / ((c + k) * (k + 1))
        total += term
        if np.all(np.abs(term) <= tol * np.maximum(1.0, np.abs(total))):
            break
    else:
        raise NonFinite("2F1 summation did not settle")
    if not np.all(np.isfinite(total)):
        raise NonFinite("2F1 summation overflowed")
    return total if total.shape else float(total)


def eval_psi2(a: float, c1: float, c2: float, y: float, z: float, tol: float = 1e-13):
    res = evaluate("Psi2", {"a": a, "c1": c1, "c2": c2}, (y, z), tol=tol)
    return res.value
