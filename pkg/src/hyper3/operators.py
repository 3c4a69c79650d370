"""Diagonal operator algebra and the operator-identity registry.

The inverse operator pairs built from the Euler operators
delta_j = x_j d/dx_j act diagonally on monomials: on x^m y^n z^p the
pair-coupling operator nabla(h) over two axes with exponents (u, v)
multiplies the coefficient by (h)_{u+v} / ((h)_u (h)_v), and delta(h) by
the reciprocal. The tilde variants couple one lead axis against the sum
of the remaining ones. Eigenvalues are computed from these closed forms;
the terminating double sums they came from are kept only as cross-checks
(``nabla_sum_eigenvalue`` and friends), since on a monomial the sums cut
off once a (-m)_k factor dies.

The registry maps each identity id to: a target function, a chain of
diagonal operators, and the product of lower hypergeometric factors the
chain acts on. Verification is exact coefficient comparison up to a
requested total degree; outcomes are reported, never presupposed, and a
``corrected`` slot can carry a repaired variant once a failure has been
diagnosed (a data edit, not new code).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import truncated
from .errors import SingularParameter, UnknownIdentity
from .series import TruncatedSeries, graded_indices, pochhammer

_AXIS_POS = {"x": 0, "y": 1, "z": 2}

NABLA = "nabla"
DELTA = "delta"
NABLA_TILDE = "nabla_tilde"
DELTA_TILDE = "delta_tilde"


@dataclass(frozen=True)
class DiagonalOp:
    """One diagonal operator: kind, axes it couples, and its parameter h.

    For nabla/delta ``axes`` is the coupled pair, e.g. "xz". For the
    tilde variants it is the single lead axis measured against the other
    two.
    """

    kind: str
    axes: str
    h: Fraction

    def __post_init__(self):
        if self.kind in (NABLA, DELTA):
            if len(self.axes) != 2 or any(a not in _AXIS_POS for a in self.axes):
                raise ValueError(f"{self.kind} needs an axis pair, got {self.axes!r}")
        elif self.kind in (NABLA_TILDE, DELTA_TILDE):
            if len(self.axes) != 1 or self.axes not in _AXIS_POS:
                raise ValueError(f"{self.kind} needs one lead axis, got {self.axes!r}")
        else:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "h", Fraction(self.h))

    def _split(self, idx):
        if self.kind in (NABLA, DELTA):
            u = idx[_AXIS_POS[self.axes[0]]]
            v = idx[_AXIS_POS[self.axes[1]]]
        else:
            lead = _AXIS_POS[self.axes]
            u = idx[lead]
            v = sum(idx) - u
        return u, v


def eigenvalue(op: DiagonalOp, idx) -> Fraction:
    """Exact eigenvalue of a diagonal operator on the monomial at idx."""
    u, v = op._split(tuple(idx))
    joined = pochhammer(op.h, u + v)
    split = pochhammer(op.h, u) * pochhammer(op.h, v)
    if op.kind in (NABLA, NABLA_TILDE):
        if split == 0:
            raise SingularParameter(
                f"{op.kind}({op.h}) singular on exponents ({u}, {v})"
            )
        return joined / split
    if joined == 0:
        raise SingularParameter(f"{op.kind}({op.h}) singular on exponents ({u}, {v})")
    return split / joined


def chain_eigenvalue(chain, idx) -> Fraction:
    out = Fraction(1)
    for op in chain:
        out *= eigenvalue(op, idx)
    return out


def apply_chain(chain, series: TruncatedSeries) -> TruncatedSeries:
    """Apply a chain of diagonal operators: scale each coefficient by the
    product of eigenvalues at its index. Diagonal operators commute, so
    chain order never matters."""
    return series.map_coefficients(lambda idx, c: c * chain_eigenvalue(chain, idx))


# Terminating-sum forms of the operators, used as cross-checks of the
# closed-form eigenvalues. On exponents (u, v) the sums stop at
# min(u, v) because (-u)_k = 0 for k > u; their agreement with the
# closed forms is an instance of the Gauss summation at unit argument.


def nabla_sum_eigenvalue(h, u: int, v: int) -> Fraction:
    h = Fraction(h)
    total = Fraction(0)
    for k in range(min(u, v) + 1):
        den = pochhammer(h, k) * pochhammer(1, k)
        if den == 0:
            raise SingularParameter(f"nabla({h}) sum hits a zero denominator at k={k}")
        total += pochhammer(-u, k) * pochhammer(-v, k) / den
    return total


def delta_sum_eigenvalue(h, u: int, v: int) -> Fraction:
    h = Fraction(h)
    total = Fraction(0)
    for k in range(min(u, v) + 1):
        den = pochhammer(1 - h - u - v, k) * pochhammer(1, k)
        if den == 0:
            raise SingularParameter(f"delta({h}) sum hits a zero denominator at k={k}")
        total += pochhammer(-u, k) * pochhammer(-v, k) / den
    return total


def nabla_tilde_sum_eigenvalue(h, lead: int, rest) -> Fraction:
    h = Fraction(h)
    n2, n3 = rest
    total = Fraction(0)
    for k2 in range(n2 + 1):
        for k3 in range(n3 + 1):
            if k2 + k3 > lead:
                continue
            den = (
                pochhammer(h, k2 + k3)
                * pochhammer(1, k2)
                * pochhammer(1, k3)
            )
            if den == 0:
                raise SingularParameter(f"nabla_tilde({h}) sum denominator vanished")
            total += (
                pochhammer(-lead, k2 + k3)
                * pochhammer(-n2, k2)
                * pochhammer(-n3, k3)
                / den
            )
    return total


def delta_tilde_sum_eigenvalue(h, lead: int, rest) -> Fraction:
    h = Fraction(h)
    n2, n3 = rest
    s = lead + n2 + n3
    total = Fraction(0)
    for k2 in range(n2 + 1):
        for k3 in range(n3 + 1):
            if k2 + k3 > lead:
                continue
            den = (
                pochhammer(1 - h - s, k2 + k3)
                * pochhammer(1, k2)
                * pochhammer(1, k3)
            )
            if den == 0:
                raise SingularParameter(f"delta_tilde({h}) sum denominator vanished")
            total += (
                pochhammer(-lead, k2 + k3)
                * pochhammer(-n2, k2)
                * pochhammer(-n3, k3)
                / den
            )
    return total


def composed_pair_series(h, l, u: int, v: int) -> Fraction:
    """Literal series sometimes quoted for the composed nabla(h) delta(l)
    action, with its rising factor read as (l)_{2k}.

    The exact composed action is simply the product of the two
    eigenvalues; this displayed sum does NOT reproduce it in general (see
    the operator tests), which is why the closed forms are authoritative.
    Kept as a documented discrepancy probe.
    """
    h = Fraction(h)
    l = Fraction(l)
    total = Fraction(0)
    for k in range(min(u, v) + 1):
        den = (
            pochhammer(l + k - 1, k)
            * pochhammer(l + u, k)
            * pochhammer(l + v, k)
            * pochhammer(1, k)
        )
        if den == 0:
            raise SingularParameter("composed pair series denominator vanished")
        total += (
            pochhammer(l - h, k)
            * pochhammer(l, 2 * k)
            * pochhammer(-u, k)
            * pochhammer(-v, k)
            / den
        )
    return total


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exact identity check.

    ``expected`` is the left-hand (target) coefficient at the first bad
    monomial, ``actual`` the right-hand one.
    """

    verified: bool
    degree: int
    first_bad_index: tuple | None = None
    expected: Fraction | None = None
    actual: Fraction | None = None

    @property
    def status(self) -> str:
        return "verified" if self.verified else "failed"


@dataclass(frozen=True)
class IdentityEntry:
    """One operator identity: target = chain applied to a factor product.

    Parameter bindings map a function's own parameter names onto the
    symbols of the profile ParamSet, so identifications like gamma2 =
    gamma3 = gamma are plain data. ``factors`` rows are (function name,
    binding, axes embedding).
    """

    id: str
    lhs: tuple[str, dict]
    chain: tuple[tuple[str, str, str], ...]
    factors: tuple[tuple[str, dict, str], ...]
    corrected: "IdentityEntry | None" = field(default=None, repr=False)

    def symbols(self) -> set:
        out = set(self.lhs[1].values())
        for _k, _a, h in self.chain:
            out.add(h)
        for _f, binding, _ax in self.factors:
            out.update(binding.values())
        return out


def _bind(binding: dict, params: dict) -> dict:
    out = {}
    for target, symbol in binding.items():
        if symbol not in params:
            raise SingularParameter(f"profile is missing symbol {symbol!r}")
        out[target] = params[symbol]
    return out


def _resolve_chain(entry: IdentityEntry, params: dict):
    ops = []
    for kind, axes, h_symbol in entry.chain:
        if h_symbol not in params:
            raise SingularParameter(f"profile is missing symbol {h_symbol!r}")
        ops.append(DiagonalOp(kind, axes, Fraction(params[h_symbol])))
    return tuple(ops)


def verify_identity_entry(entry: IdentityEntry, params, degree: int) -> Verdict:
    params = {k: Fraction(v) for k, v in params.items()}
    lhs_fn, lhs_binding = entry.lhs
    lhs = truncated(lhs_fn, _bind(lhs_binding, params), degree)

    rhs = TruncatedSeries.constant(1, degree)
    for fn_name, binding, axes in entry.factors:
        rhs = rhs * truncated(fn_name, _bind(binding, params), degree, axes=axes)
    rhs = apply_chain(_resolve_chain(entry, params), rhs)

    bad = lhs.first_difference(rhs)
    if bad is None:
        return Verdict(True, degree)
    return Verdict(False, degree, bad, lhs.coeff(bad), rhs.coeff(bad))


def _entry(eid, lhs, chain, factors, corrected=None):
    return IdentityEntry(eid, lhs, tuple(chain), tuple(factors), corrected)


def _gauss(a, b, c, axes):
    return ("2F1", {"a": a, "b": b, "c": c}, axes)


def _f1(a, b1, b2, c):
    return ("F1", {"a": a, "b1": b1, "b2": b2, "c": c}, "yz")


def _f2(a, b1, b2, c1, c2):
    return ("F2", {"a": a, "b1": b1, "b2": b2, "c1": c1, "c2": c2}, "yz")


def _f3(a1, a2, b1, b2, c):
    return ("F3", {"a1": a1, "a2": a2, "b1": b1, "b2": b2, "c": c}, "yz")


def _f4(a, b, c1, c2):
    return ("F4", {"a": a, "b": b, "c1": c1, "c2": c2}, "yz")


_HA = {
    "alpha": "alpha",
    "beta1": "beta1",
    "beta2": "beta2",
    "gamma1": "gamma1",
    "gamma2": "gamma2",
}
_HB = {
    "alpha": "alpha",
    "beta1": "beta1",
    "beta2": "beta2",
    "gamma1": "gamma1",
    "gamma2": "gamma2",
    "gamma3": "gamma3",
}
_HB_GG = {**_HB, "gamma2": "gamma", "gamma3": "gamma"}
_HC = {"alpha": "alpha", "beta1": "beta1", "beta2": "beta2", "gamma": "gamma"}


IDENTITIES: dict[str, IdentityEntry] = {
    e.id: e
    for e in (
        _entry(
            "3.1",
            ("HA", _HA),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1")],
            [_gauss("alpha", "beta1", "gamma1", "x"), _f1("beta2", "beta1", "alpha", "gamma2")],
        ),
        _entry(
            "3.2",
            ("HB", _HB_GG),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1"), (NABLA, "yz", "gamma")],
            [_gauss("alpha", "beta1", "gamma1", "x"), _f1("beta2", "beta1", "alpha", "gamma")],
        ),
        _entry(
            "3.3",
            ("HC", _HC),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1"), (DELTA_TILDE, "x", "gamma")],
            [_gauss("alpha", "beta1", "gamma", "x"), _f1("beta2", "beta1", "alpha", "gamma")],
        ),
        _entry(
            "3.4",
            ("HA", _HA),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1"), (DELTA, "yz", "gamma2")],
            [
                _gauss("alpha", "beta1", "gamma1", "x"),
                _f2("beta2", "beta1", "alpha", "gamma2", "gamma2"),
            ],
        ),
        _entry(
            "3.5",
            ("HB", _HB),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1")],
            [
                _gauss("alpha", "beta1", "gamma1", "x"),
                _f2("beta2", "beta1", "alpha", "gamma2", "gamma3"),
            ],
        ),
        _entry(
            "3.6",
            ("HC", _HC),
            [
                (NABLA, "xz", "alpha"),
                (NABLA, "xy", "beta1"),
                (NABLA, "yz", "gamma"),
                (DELTA_TILDE, "x", "gamma"),
            ],
            [
                _gauss("alpha", "beta1", "gamma", "x"),
                _f2("beta2", "beta1", "alpha", "gamma", "gamma"),
            ],
            corrected=_entry(
                "3.6c",
                ("HC", _HC),
                [
                    (NABLA, "xz", "alpha"),
                    (NABLA, "xy", "beta1"),
                    (DELTA, "yz", "gamma"),
                    (DELTA_TILDE, "x", "gamma"),
                ],
                [
                    _gauss("alpha", "beta1", "gamma", "x"),
                    _f2("beta2", "beta1", "alpha", "gamma", "gamma"),
                ],
            ),
        ),
        _entry(
            "3.7",
            ("HA", _HA),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1"), (NABLA, "yz", "beta2")],
            [
                _gauss("alpha", "beta1", "gamma1", "x"),
                _f3("beta1", "beta2", "beta2", "alpha", "gamma2"),
            ],
        ),
        _entry(
            "3.8",
            ("HB", _HB_GG),
            [
                (NABLA, "xz", "alpha"),
                (NABLA, "xy", "beta1"),
                (NABLA, "yz", "beta2"),
                (NABLA, "yz", "gamma"),
            ],
            [
                _gauss("alpha", "beta1", "gamma1", "x"),
                _f3("beta2", "alpha", "beta1", "beta2", "gamma"),
            ],
        ),
        _entry(
            "3.9",
            ("HC", _HC),
            [
                (NABLA, "xz", "alpha"),
                (NABLA, "xy", "beta1"),
                (NABLA, "yz", "beta2"),
                (DELTA_TILDE, "x", "gamma"),
            ],
            [
                _gauss("alpha", "beta1", "gamma", "x"),
                _f3("beta2", "beta2", "beta1", "alpha", "gamma"),
            ],
        ),
        _entry(
            "3.10",
            ("HA", {**_HA, "beta1": "alpha"}),
            [
                (NABLA, "xy", "alpha"),
                (NABLA, "xz", "alpha"),
                (DELTA, "yz", "alpha"),
                (DELTA, "yz", "gamma2"),
            ],
            [
                _gauss("alpha", "alpha", "gamma1", "x"),
                _f4("alpha", "beta2", "gamma2", "gamma2"),
            ],
        ),
        _entry(
            "3.11",
            ("HB", {**_HB, "beta1": "alpha"}),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "alpha"), (DELTA, "yz", "alpha")],
            [
                _gauss("alpha", "alpha", "gamma1", "x"),
                _f4("alpha", "beta2", "gamma2", "gamma3"),
            ],
        ),
        _entry(
            "3.12",
            ("HC", {**_HC, "beta1": "alpha"}),
            [
                (NABLA, "xz", "alpha"),
                (NABLA, "xy", "alpha"),
                (DELTA, "yz", "alpha"),
                (DELTA, "yz", "gamma"),
                (DELTA_TILDE, "x", "gamma"),
            ],
            [
                _gauss("alpha", "alpha", "gamma", "x"),
                _f4("alpha", "beta2", "gamma", "gamma"),
            ],
        ),
        _entry(
            "3.13",
            ("HA", _HA),
            [
                (NABLA, "xz", "alpha"),
                (NABLA, "xy", "beta1"),
                (NABLA, "yz", "beta2"),
                (DELTA, "yz", "gamma2"),
            ],
            [
                _gauss("alpha", "beta1", "gamma1", "x"),
                _gauss("beta1", "beta2", "gamma2", "y"),
                _gauss("alpha", "beta2", "gamma2", "z"),
            ],
        ),
        _entry(
            "3.14",
            ("HB", _HB),
            [(NABLA, "xz", "alpha"), (NABLA, "xy", "beta1"), (NABLA, "yz", "beta2")],
            [
                _gauss("alpha", "beta1", "gamma1", "x"),
                _gauss("beta1", "beta2", "gamma2", "y"),
                _gauss("alpha", "beta2", "gamma3", "z"),
            ],
        ),
        _entry(
            "3.15",
            ("HC", _HC),
            [
                (NABLA, "xz", "alpha"),
                (NABLA, "xy", "beta1"),
                (NABLA, "yz", "beta2"),
                (DELTA, "yz", "gamma"),
                (DELTA_TILDE, "x", "gamma"),
            ],
            [
                _gauss("alpha", "beta1", "gamma", "x"),
                _gauss("beta1", "beta2", "gamma", "y"),
                _gauss("alpha", "beta2", "gamma", "z"),
            ],
        ),
    )
}


def identity_ids() -> list[str]:
    return sorted(IDENTITIES, key=lambda s: tuple(int(t) for t in s.split(".")))


def verify_operator_identity(identity_id: str, params, degree: int) -> Verdict:
    """Exactly verify one registered operator identity up to a degree."""
    entry = IDENTITIES.get(identity_id)
    if entry is None:
        raise UnknownIdentity(f"no operator identity {identity_id!r}")
    return verify_identity_entry(entry, params, degree)
