"""Pure-Python exact sparse kernels.

Rows are dicts ``{generator index: nonzero Fraction}``.  A reduced basis is a
dict ``{leading index: row}`` where every row is monic and contains no other
row's leading index.  ``_ckernels.pyx`` mirrors this file line for line.
"""
from fractions import Fraction

_ONE = Fraction(1)


def add_scaled(a, b, k):
    """a + k*b, dropping zeros. Inputs are not modified."""
    out = dict(a)
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
    return out


def _axpy(out, b, k):
    # in place: out += k*b
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


def remainder(v, basis):
    """Reduce ``v`` modulo the span of a reduced basis.

    One pass suffices: subtracting a basis row never introduces another
    row's leading index.
    """
    out = dict(v)
    for g in [g for g in v if g in basis]:
        c = out.get(g)
        if c:
            _axpy(out, basis[g], -c)
    return out


def insert_row(basis, v):
    """Add ``v`` to a reduced basis in place. Returns the new lead or -1."""
    r = remainder(v, basis)
    if not r:
        return -1
    lead = max(r)
    lc = r[lead]
    if lc != _ONE:
        inv = _ONE / lc
        r = {g: c * inv for g, c in r.items()}
    for row in basis.values():
        c = row.get(lead)
        if c:
            _axpy(row, r, -c)
    basis[lead] = r
    return lead


def reduce_rows(rows):
    """Reduced basis of the span of ``rows``."""
    basis = {}
    # ascending leads keep the back-substitution step short
    for v in sorted((r for r in rows if r), key=max):
        insert_row(basis, v)
    return basis


def intersect_rows(u_rows, w_rows, n):
    """Reduced basis of span(u_rows) ∩ span(w_rows) over ``range(n)``.

    Zassenhaus: rows (u, u) and (w, 0) in a doubled space whose first copy
    is shifted above the second; rows led from below ``n`` span the
    intersection.
    """
    rows = {}
    for u in u_rows:
        r = {g + n: c for g, c in u.items()}
        r.update(u)
        insert_row(rows, r)
    for w in w_rows:
        insert_row(rows, {g + n: c for g, c in w.items()})
    return reduce_rows([r for lead, r in rows.items() if lead < n])


def apply_images(v, images):
    """Linear extension of ``g -> images[g]`` (identity off the keys)."""
    out = {}
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
            _axpy(out, img, c)
    return out
