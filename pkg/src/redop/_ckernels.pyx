# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same contracts, same results.

The bulk eliminations (``reduce_rows``, ``intersect_rows``) run on gmpy2
rationals when gmpy2 is installed and convert back to Fraction at the end;
Fraction's Python-level gcd otherwise dominates the cost.
"""
from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:
    _Q = None

cdef object _ONE = Fraction(1)
cdef object _QONE = _Q(1) if _Q is not None else _ONE

NATIVE_RATIONALS = _Q is not None


cdef inline void _axpy(dict out, dict b, object k):
    cdef object g, c, x
    for g, c in b.items():
        x = out.get(g)
        if x is None:
            out[g] = k * c
        else:
            x = x + k * c
            if x:
                out[g] = x
            else:
                del out[g]


def add_scaled(dict a, dict b, object k):
    cdef dict out = dict(a)
    _axpy(out, b, k)
    return out


cpdef dict remainder(dict v, dict basis):
    cdef dict out = dict(v)
    cdef list hits = [g for g in v if g in basis]
    cdef object g, c
    for g in hits:
        c = out.get(g)
        if c:
            _axpy(out, <dict>basis[g], -c)
    return out


cdef long _insert(dict basis, dict v, object one):
    cdef dict r = remainder(v, basis)
    cdef dict row
    cdef object lc, inv, c
    cdef long lead
    if not r:
        return -1
    lead = max(r)
    lc = r[lead]
    if lc != one:
        inv = one / lc
        r = {g: x * inv for g, x in r.items()}
    for row in basis.values():
        c = row.get(lead)
        if c:
            _axpy(row, r, -c)
    basis[lead] = r
    return lead


cpdef long insert_row(dict basis, dict v):
    return _insert(basis, v, _ONE)


cdef dict _to_q(dict r):
    cdef object g, c
    return {g: _Q(c.numerator, c.denominator) for g, c in r.items()}


cdef dict _to_f(dict basis):
    cdef object g, h, c
    cdef dict r
    return {g: {h: Fraction(int(c.numerator), int(c.denominator)) for h, c in r.items()}
            for g, r in basis.items()}


cdef dict _reduce(list rows, object one):
    cdef dict basis = {}
    cdef dict v
    for v in sorted(rows, key=max):
        _insert(basis, v, one)
    return basis


def reduce_rows(rows):
    cdef list live = [r for r in rows if r]
    if _Q is None:
        return _reduce(live, _ONE)
    return _to_f(_reduce([_to_q(r) for r in live], _QONE))


def intersect_rows(u_rows, w_rows, long n):
    cdef dict rows = {}
    cdef dict u, w, r
    cdef object one = _ONE if _Q is None else _QONE
    cdef object g, c
    cdef long lead
    for u in u_rows:
        if _Q is not None:
            u = _to_q(u)
        r = {g + n: c for g, c in u.items()}
        r.update(u)
        _insert(rows, r, one)
    for w in w_rows:
        if _Q is not None:
            w = _to_q(w)
        _insert(rows, {g + n: c for g, c in w.items()}, one)
    low = _reduce([r for lead, r in rows.items() if lead < n], one)
    return low if _Q is None else _to_f(low)


def apply_images(dict v, dict images):
    cdef dict out = {}
    cdef object g, c, img, x
    for g, c in v.items():
        img = images.get(g)
        if img is None:
            x = out.get(g)
            if x is None:
                out[g] = c
            else:
                x = x + c
                if x:
                    out[g] = x
                else:
                    del out[g]
        else:
            _axpy(out, <dict>img, c)
    return out
