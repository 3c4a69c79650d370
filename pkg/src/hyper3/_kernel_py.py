"""Pure-Python implementations of the hot series kernels.

Same contract as the compiled twin in ``_ckernel.pyx``; selected by
``hyper3._backend`` when the extension is unavailable or when
``HYPER3_PURE`` is set.
"""

from fractions import Fraction

BACKEND_NAME = "python"


def series_mul(a, b, cap):
    """Cauchy product of two coefficient maps, truncated at total degree cap.

    ``a`` and ``b`` map (m, n, p) tuples to Fractions; returns a new map of
    the same shape with zero coefficients dropped.
    """
    if len(a) > len(b):
        a, b = b, a
    items_b = list(b.items())
    out = {}
    for (m1, n1, p1), ca in a.items():
        room = cap - m1 - n1 - p1
        for (m2, n2, p2), cb in items_b:
            if m2 + n2 + p2 > room:
                continue
            key = (m1 + m2, n1 + n2, p1 + p2)
            prod = ca * cb
            acc = out.get(key)
            out[key] = prod if acc is None else acc + prod
    return {k: v for k, v in out.items() if v != 0}


def series_axpy_into(acc, src, coeff, shift, cap):
    """acc += coeff * x^shift * src, truncated at cap. Mutates ``acc``."""
    if coeff == 0:
        return
    sm, sn, sp = shift
    for (m, n, p), c in src.items():
        m += sm
        n += sn
        p += sp
        if m + n + p > cap:
            continue
        key = (m, n, p)
        term = coeff * c
        cur = acc.get(key)
        if cur is None:
            acc[key] = term
        else:
            cur = cur + term
            if cur == 0:
                del acc[key]
            else:
                acc[key] = cur


def _selftest():
    one = {(0, 0, 0): Fraction(1)}
    return series_mul(one, one, 2) == one
