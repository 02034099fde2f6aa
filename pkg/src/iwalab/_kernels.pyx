# cython: language_level=3
"""Compiled matrix kernels over Z/p^N; semantics identical to _kernels_py.

Entries stay Python ints (the moduli routinely exceed machine words); the
speedup comes from C-level loops and list indexing around the bignum ops.
"""

IMPL_NAME = "cython"


def smith_exponents(rows, p, N):
    """Elementary-divisor exponents of `rows` over Z/p^N, ascending, -1 = AtLeastN."""
    cdef Py_ssize_t nr = len(rows)
    cdef Py_ssize_t nc = len(rows[0]) if nr else 0
    cdef Py_ssize_t k = nr if nr < nc else nc
    cdef Py_ssize_t i, j, r, t, pi, pj, shift
    cdef list m, row, prow
    cdef object a, c, inv, q
    out = []
    if k == 0:
        return out
    m = [list(rr) for rr in rows]
    shift = 0
    q = p ** N
    while len(out) < k:
        pi = -1
        pj = -1
        found_nonzero = False
        for i in range(nr):
            row = <list> m[i]
            for j in range(nc):
                a = row[j]
                if a:
                    found_nonzero = True
                    if a % p:
                        pi = i
                        pj = j
                        break
            if pi >= 0:
                break
        if pi < 0:
            if not found_nonzero:
                break
            shift += 1
            if shift >= N:
                break
            q //= p
            for i in range(nr):
                row = <list> m[i]
                for j in range(nc):
                    row[j] = row[j] // p
            continue
        out.append(shift)
        inv = pow(m[pi][pj], -1, q)
        prow = <list> m[pi]
        for r in range(nr):
            if r == pi:
                continue
            row = <list> m[r]
            c = row[pj]
            if c:
                c = (c * inv) % q
                for t in range(nc):
                    row[t] = (row[t] - c * prow[t]) % q
        del m[pi]
        for i in range(nr - 1):
            row = <list> m[i]
            del row[pj]
        nr -= 1
        nc -= 1
    out.extend([-1] * (k - len(out)))
    return out


def det_mod(rows, p, N):
    """Determinant of a square matrix over Z/p^N, as a residue in [0, p^N)."""
    cdef Py_ssize_t n = len(rows)
    cdef object qfull = p ** N
    if n == 0:
        return 1 % qfull
    cdef list m = [list(rr) for rr in rows]
    cdef object q = qfull
    cdef Py_ssize_t val = 0
    cdef object unit = 1
    cdef int sign = 1
    cdef Py_ssize_t size = n
    cdef Py_ssize_t i, j, r, t, pi, pj
    cdef list row, prow
    cdef object a, c, inv, d
    while size > 0:
        pi = -1
        pj = -1
        found_nonzero = False
        for i in range(size):
            row = <list> m[i]
            for j in range(size):
                a = row[j]
                if a:
                    found_nonzero = True
                    if a % p:
                        pi = i
                        pj = j
                        break
            if pi >= 0:
                break
        if pi < 0:
            if not found_nonzero:
                return 0
            val += size
            if val >= N:
                return 0
            q //= p
            for i in range(size):
                row = <list> m[i]
                for j in range(size):
                    row[j] = row[j] // p
            continue
        a = m[pi][pj]
        unit = (unit * a) % qfull
        if (pi + pj) & 1:
            sign = -sign
        inv = pow(a, -1, q)
        prow = <list> m[pi]
        for r in range(size):
            if r == pi:
                continue
            row = <list> m[r]
            c = row[pj]
            if c:
                c = (c * inv) % q
                for t in range(size):
                    row[t] = (row[t] - c * prow[t]) % q
        del m[pi]
        for i in range(size - 1):
            row = <list> m[i]
            del row[pj]
        size -= 1
    d = (unit * pow(p, val, qfull)) % qfull
    if sign < 0:
        d = (-d) % qfull
    return d


def charpoly_mod(rows, q):
    """Coefficients of det(t*I - A) mod q, ascending in t (Berkowitz, division-free)."""
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return [1 % q]
    cdef list C = [1 % q, (-rows[0][0]) % q]
    cdef Py_ssize_t r, rm1, i, j, k, lo, hi, top
    cdef list R, S, col, v, w, newC, Mi
    cdef object d, s, acc
    for r in range(2, n + 1):
        rm1 = r - 1
        d = rows[rm1][rm1]
        R = list(rows[rm1][:rm1])
        S = [rows[i][rm1] for i in range(rm1)]
        col = [1 % q, (-d) % q]
        v = S[:]
        for k in range(rm1):
            s = 0
            for i in range(rm1):
                s += R[i] * v[i]
            col.append((-s) % q)
            if k < rm1 - 1:
                w = [0] * rm1
                for i in range(rm1):
                    acc = 0
                    Mi = <list> rows[i]
                    for j in range(rm1):
                        acc += Mi[j] * v[j]
                    w[i] = acc % q
                v = w
        newC = [0] * (r + 1)
        top = len(col) - 1
        for i in range(r + 1):
            lo = i - top
            if lo < 0:
                lo = 0
            hi = i if i < rm1 else rm1
            acc = 0
            for j in range(lo, hi + 1):
                acc += col[i - j] * C[j]
            newC[i] = acc % q
        C = newC
    C.reverse()
    return C


def bareiss_det(rows):
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef list m = [list(rr) for rr in rows]
    cdef int sign = 1
    cdef object prev = 1
    cdef Py_ssize_t i, j, k
    cdef list row, prow
    cdef object pkk, mik
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if (<list> m[i])[k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = m[k][k]
        prow = <list> m[k]
        for i in range(k + 1, n):
            row = <list> m[i]
            mik = row[k]
            for j in range(k + 1, n):
                row[j] = (pkk * row[j] - mik * prow[j]) // prev
            row[k] = 0
        prev = pkk
    return sign * (<list> m[n - 1])[n - 1]
