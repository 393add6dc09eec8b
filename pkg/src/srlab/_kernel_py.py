"""Low-level exact kernels, pure Python edition.

Two data shapes live here.  A quadratic rational (a + b*sqrt(p)) / den is a
normalized int triple (a, b, den) with den > 0 and gcd(a, b, den) == 1; the
radicand p is passed to the operations that need it.  A series support is a
dict mapping lattice exponent pairs (e, f), standing for (e + f*sqrt(p)) / D,
to nonzero coefficient indices of a finite coefficient field whose add and
multiply tables are passed in flat row-major lists.

The compiled twin (_kernel_cy) must implement the same functions with the
same semantics; core.py selects one of the two at import time.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def q_make(a: int, b: int, den: int) -> tuple[int, int, int]:
    """Normalize an int triple to canonical form (den > 0, gcd one)."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        a, b, den = -a, -b, -den
    g = gcd(gcd(abs(a), abs(b)), den)
    if g > 1:
        a //= g
        b //= g
        den //= g
    return (a, b, den)


def q_add(x: tuple[int, int, int], y: tuple[int, int, int]) -> tuple[int, int, int]:
    a1, b1, d1 = x
    a2, b2, d2 = y
    g = gcd(d1, d2)
    m1 = d2 // g
    m2 = d1 // g
    return q_make(a1 * m1 + a2 * m2, b1 * m1 + b2 * m2, d1 * m1)


def q_neg(x: tuple[int, int, int]) -> tuple[int, int, int]:
    a, b, d = x
    return (-a, -b, d)


def q_sub(x: tuple[int, int, int], y: tuple[int, int, int]) -> tuple[int, int, int]:
    return q_add(x, q_neg(y))


def q_mul(x: tuple[int, int, int], y: tuple[int, int, int], p: int) -> tuple[int, int, int]:
    a1, b1, d1 = x
    a2, b2, d2 = y
    return q_make(a1 * a2 + p * b1 * b2, a1 * b2 + b1 * a2, d1 * d2)


def q_inv(x: tuple[int, int, int], p: int) -> tuple[int, int, int]:
    a, b, d = x
    if a == 0 and b == 0:
        raise ZeroDivisionError("inverse of zero")
    # 1 / ((a + b sqrt p)/d) = d (a - b sqrt p) / (a^2 - p b^2)
    return q_make(d * a, -d * b, a * a - p * b * b)


def q_mul_sqrtp(x: tuple[int, int, int], p: int) -> tuple[int, int, int]:
    """Multiply by sqrt(p): (a + b sqrt p) sqrt p = p b + a sqrt p."""
    a, b, d = x
    return q_make(p * b, a, d)


def irr_sign(a: int, b: int, p: int) -> int:
    """Exact sign of a + b*sqrt(p) for integers a, b."""
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    s = a * a - p * b * b
    # p is squarefree, so s == 0 would force a == b == 0, excluded above.
    if a > 0:
        return 1 if s > 0 else -1
    return 1 if s < 0 else -1


def q_sign(x: tuple[int, int, int], p: int) -> int:
    a, b, _d = x
    return irr_sign(a, b, p)


def q_cmp(x: tuple[int, int, int], y: tuple[int, int, int], p: int) -> int:
    return q_sign(q_sub(x, y), p)


def lat_cmp(e1: int, f1: int, e2: int, f2: int, p: int) -> int:
    """Compare lattice exponents (e + f*sqrt(p)) by real value."""
    return irr_sign(e1 - e2, f1 - f2, p)


def ser_min(terms: dict, p: int):
    """Smallest exponent key of a support, or None when empty."""
    best = None
    for key in terms:
        if best is None or lat_cmp(key[0], key[1], best[0], best[1], p) < 0:
            best = key
    return best


def ser_trunc(terms: dict, bound, p: int) -> dict:
    """Drop every term whose exponent is >= bound (bound None keeps all)."""
    if bound is None:
        return dict(terms)
    be, bf = bound
    out = {}
    for key, c in terms.items():
        if lat_cmp(key[0], key[1], be, bf, p) < 0:
            out[key] = c
    return out


def ser_add(ta: dict, tb: dict, q: int, addf: list, bound, p: int) -> dict:
    out = dict(ta)
    for key, c in tb.items():
        prev = out.get(key)
        if prev is None:
            out[key] = c
        else:
            s = addf[prev * q + c]
            if s:
                out[key] = s
            else:
                del out[key]
    if bound is not None:
        out = ser_trunc(out, bound, p)
    return out


def ser_neg(terms: dict, negf: list) -> dict:
    return {key: negf[c] for key, c in terms.items()}


def ser_scale(terms: dict, c: int, q: int, mulf: list) -> dict:
    """Multiply every coefficient by the field element with index c."""
    if c == 0:
        return {}
    out = {}
    for key, x in terms.items():
        y = mulf[x * q + c]
        if y:
            out[key] = y
    return out


def ser_mul(ta: dict, tb: dict, q: int, addf: list, mulf: list, bound, p: int) -> dict:
    out: dict = {}
    if bound is None:
        for (e1, f1), c1 in ta.items():
            row = c1 * q
            for (e2, f2), c2 in tb.items():
                c = mulf[row + c2]
                if not c:
                    continue
                key = (e1 + e2, f1 + f2)
                prev = out.get(key)
                if prev is None:
                    out[key] = c
                else:
                    s = addf[prev * q + c]
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return out
    be, bf = bound
    for (e1, f1), c1 in ta.items():
        row = c1 * q
        for (e2, f2), c2 in tb.items():
            e = e1 + e2
            f = f1 + f2
            if irr_sign(e - be, f - bf, p) >= 0:
                continue
            c = mulf[row + c2]
            if not c:
                continue
            key = (e, f)
            prev = out.get(key)
            if prev is None:
                out[key] = c
            else:
                s = addf[prev * q + c]
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


def ser_theta(terms: dict, p: int, thetaf: list) -> dict:
    """Apply the twisting endomorphism: exponent scaling plus coefficient map."""
    out = {}
    for (e, f), c in terms.items():
        y = thetaf[c]
        if y:
            out[(p * f, e)] = y
    return out
