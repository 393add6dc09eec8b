# cython: language_level=3, boundscheck=False, wraparound=False
"""Low-level exact kernels, compiled edition.

Mirrors _kernel_py function for function.  Quadratic rational triples keep
Python integer arithmetic (their entries can grow arbitrarily large), while
the series kernels use C-typed loops: lattice exponents stay small by
construction and coefficient indices are bounded by the field order.
"""

from math import gcd

BACKEND = "cython"


def q_make(a, b, den):
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


def q_add(x, y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    g = gcd(d1, d2)
    m1 = d2 // g
    m2 = d1 // g
    return q_make(a1 * m1 + a2 * m2, b1 * m1 + b2 * m2, d1 * m1)


def q_neg(x):
    a, b, d = x
    return (-a, -b, d)


def q_sub(x, y):
    return q_add(x, q_neg(y))


def q_mul(x, y, p):
    a1, b1, d1 = x
    a2, b2, d2 = y
    return q_make(a1 * a2 + p * b1 * b2, a1 * b2 + b1 * a2, d1 * d2)


def q_inv(x, p):
    a, b, d = x
    if a == 0 and b == 0:
        raise ZeroDivisionError("inverse of zero")
    # 1 / ((a + b sqrt p)/d) = d (a - b sqrt p) / (a^2 - p b^2)
    return q_make(d * a, -d * b, a * a - p * b * b)


def q_mul_sqrtp(x, p):
    """Multiply by sqrt(p): (a + b sqrt p) sqrt p = p b + a sqrt p."""
    a, b, d = x
    return q_make(p * b, a, d)


def irr_sign(a, b, p):
    """Exact sign of a + b*sqrt(p) for integers a, b of any size."""
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


def q_sign(x, p):
    a, b, _d = x
    return irr_sign(a, b, p)


def q_cmp(x, y, p):
    return q_sign(q_sub(x, y), p)


cdef inline int _lat_sign(long a, long b, long p):
    """Sign of a + b*sqrt(p) for small lattice integers."""
    cdef long s
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    s = a * a - p * b * b
    if a > 0:
        return 1 if s > 0 else -1
    return 1 if s < 0 else -1


def lat_cmp(e1, f1, e2, f2, p):
    """Compare lattice exponents (e + f*sqrt(p)) by real value."""
    return _lat_sign(e1 - e2, f1 - f2, p)


def ser_min(dict terms, p):
    """Smallest exponent key of a support, or None when empty."""
    cdef long pp = p
    cdef long be = 0, bf = 0
    best = None
    for key in terms:
        if best is None or _lat_sign(key[0] - be, key[1] - bf, pp) < 0:
            best = key
            be = key[0]
            bf = key[1]
    return best


def ser_trunc(dict terms, bound, p):
    """Drop every term whose exponent is >= bound (bound None keeps all)."""
    if bound is None:
        return dict(terms)
    cdef long pp = p
    cdef long be = bound[0]
    cdef long bf = bound[1]
    cdef dict out = {}
    for key, c in terms.items():
        if _lat_sign(key[0] - be, key[1] - bf, pp) < 0:
            out[key] = c
    return out


def ser_add(dict ta, dict tb, q, list addf, bound, p):
    cdef long qq = q
    cdef long prev, c, s
    cdef dict out = dict(ta)
    for key, cv in tb.items():
        c = cv
        pv = out.get(key)
        if pv is None:
            out[key] = cv
        else:
            prev = pv
            s = addf[prev * qq + c]
            if s:
                out[key] = s
            else:
                del out[key]
    if bound is not None:
        out = ser_trunc(out, bound, p)
    return out


def ser_neg(dict terms, list negf):
    cdef dict out = {}
    for key, c in terms.items():
        out[key] = negf[c]
    return out


def ser_scale(dict terms, c, q, list mulf):
    """Multiply every coefficient by the field element with index c."""
    cdef long cc = c
    cdef long qq = q
    cdef long x, y
    cdef dict out = {}
    if cc == 0:
        return out
    for key, xv in terms.items():
        x = xv
        y = mulf[x * qq + cc]
        if y:
            out[key] = y
    return out


def ser_mul(dict ta, dict tb, q, list addf, list mulf, bound, p):
    cdef long qq = q
    cdef long pp = p
    cdef long e1, f1, e2, f2, e, f, row, c1, c2, c, prev, s
    cdef long be = 0, bf = 0
    cdef bint has_bound = bound is not None
    if has_bound:
        be = bound[0]
        bf = bound[1]
    cdef dict out = {}
    for k1, cv1 in ta.items():
        e1 = k1[0]
        f1 = k1[1]
        c1 = cv1
        row = c1 * qq
        for k2, cv2 in tb.items():
            e2 = k2[0]
            f2 = k2[1]
            e = e1 + e2
            f = f1 + f2
            if has_bound and _lat_sign(e - be, f - bf, pp) >= 0:
                continue
            c2 = cv2
            c = mulf[row + c2]
            if not c:
                continue
            key = (e, f)
            pv = out.get(key)
            if pv is None:
                out[key] = c
            else:
                prev = pv
                s = addf[prev * qq + c]
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


def ser_theta(dict terms, p, list thetaf):
    """Apply the twisting endomorphism: exponent scaling plus coefficient map."""
    cdef long pp = p
    cdef long e, f, y
    cdef dict out = {}
    for key, c in terms.items():
        e = key[0]
        f = key[1]
        y = thetaf[c]
        if y:
            out[(pp * f, e)] = y
    return out
