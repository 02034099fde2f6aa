"""Exact integer certificates behind the NotFinite decisions.

Anything asserting that a cokernel is genuinely infinite (rather than merely
large at the working precision) runs here, on true integers: Sylvester
resultants and fraction-free determinants.  Kept separate from, and far
smaller than, the modular kernels so tests can treat those as independent.
"""

from __future__ import annotations

from . import _polyops as po
from .kernels import bareiss_det


def int_valuation(x: int, p: int):
    """v_p of a nonzero integer; None for 0 (infinite)."""
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def sylvester_resultant(f, g) -> int:
    """Res(f, g) over Z as the Sylvester determinant; f, g ascending, trimmed."""
    f = po.trim_int(f)
    g = po.trim_int(g)
    if f == [0] or g == [0]:
        return 0
    m = len(f) - 1
    n = len(g) - 1
    if m == 0 and n == 0:
        return 1
    size = m + n
    fd = f[::-1]
    gd = g[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (n - 1 - i))
    for j in range(m):
        rows.append([0] * j + gd + [0] * (m - 1 - j))
    return bareiss_det(rows)


def poly_mat_det(entries):
    """Determinant of a matrix of integer polynomials (ascending lists).

    Expansion by minors memoized over column subsets; fine for the small
    presentation sizes this package handles.
    """
    d = len(entries)
    if d == 0:
        return [1]
    cache = {}

    def minor(row, mask):
        if row == d:
            return [1]
        key = mask
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = [0]
        sign = 1
        for j in range(d):
            bit = 1 << j
            if not (mask & bit):
                continue
            e = entries[row][j]
            if any(e):
                term = po.pmul(e, minor(row + 1, mask & ~bit), None)
                if sign < 0:
                    term = [-t for t in term]
                acc = po.padd(acc, term, None)
            sign = -sign
        cache[key] = acc
        return acc

    return po.trim_int(minor(0, (1 << d) - 1))


def twisted_char_poly(c, u: int):
    """u^D * c(u^{-1}T - 1) as an exact integer polynomial in T (D = deg c)."""
    c = po.trim_int(c)
    deg = len(c) - 1
    acc = [0]
    for k in range(deg, -1, -1):
        # acc = acc*(T - u) + c_k * u^(D-k)
        nxt = [0] * (len(acc) + 1)
        for i, v in enumerate(acc):
            nxt[i] -= v * u
            nxt[i + 1] += v
        nxt[0] += c[k] * u ** (deg - k)
        acc = nxt
    return po.trim_int(acc)


def gamma_h0_is_infinite(det_poly, u: int, pn: int) -> bool:
    """Does the twisted presentation share a root with omega at this level?

    True exactly when the determinant of the rho-twisted multiplication map
    on the rank-pn quotient vanishes as a genuine p-adic number, i.e. the
    exact polynomial det has a root u^{-1}*zeta - 1 with zeta^pn = 1.
    """
    cs = twisted_char_poly(det_poly, u)
    tpn = [-1] + [0] * (pn - 1) + [1]
    return sylvester_resultant(tpn, cs) == 0
