"""Pure-Python matrix kernels over Z/p^N.

These are the hot inner loops of the package: elementary-divisor elimination,
determinants, and division-free characteristic polynomials for dense matrices
whose entries are residues modulo p^N.  `iwalab._kernels` is the compiled twin
with identical semantics; `iwalab.kernels` picks one at import time.

Conventions shared by both implementations:
  * matrices are lists of lists of nonnegative ints already reduced mod p^N;
  * valuation exponents >= N are encoded as -1 ("at least N");
  * pivot search is row-major first-unit, so outputs are bit-identical
    between the two implementations.
"""

IMPL_NAME = "python"


def smith_exponents(rows, p, N):
    """Elementary-divisor exponents of `rows` over Z/p^N, ascending, -1 = AtLeastN.

    Local-ring elimination: pull a unit pivot (entry not divisible by p),
    clear its column, drop its row and column.  When no unit entry exists the
    whole active block is divisible by p, so p is factored out globally and
    the running shift increases; once the block vanishes at the remaining
    precision every outstanding divisor is AtLeastN.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    k = nr if nr < nc else nc
    out = []
    if k == 0:
        return out
    m = [list(r) for r in rows]
    shift = 0
    q = p ** N
    while len(out) < k:
        pi = -1
        pj = -1
        found_nonzero = False
        for i in range(nr):
            row = m[i]
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
                row = m[i]
                for j in range(nc):
                    row[j] //= p
            continue
        out.append(shift)
        inv = pow(m[pi][pj], -1, q)
        prow = m[pi]
        for r in range(nr):
            if r == pi:
                continue
            c = m[r][pj]
            if c:
                c = (c * inv) % q
                row = m[r]
                for t in range(nc):
                    row[t] = (row[t] - c * prow[t]) % q
        del m[pi]
        for row in m:
            del row[pj]
        nr -= 1
        nc -= 1
    out.extend([-1] * (k - len(out)))
    return out


def det_mod(rows, p, N):
    """Determinant of a square matrix over Z/p^N, as a residue in [0, p^N).

    Exact: the returned residue is det mod p^N (0 means valuation >= N).
    Global p-extraction keeps the certified precision at N: a factor p taken
    out of an r x r block contributes r to the determinant's valuation while
    costing one digit of entry precision, and r >= 1.
    """
    n = len(rows)
    qfull = p ** N
    if n == 0:
        return 1 % qfull
    m = [list(r) for r in rows]
    q = qfull
    val = 0
    unit = 1
    sign = 1
    size = n
    while size > 0:
        pi = -1
        pj = -1
        found_nonzero = False
        for i in range(size):
            row = m[i]
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
                row = m[i]
                for j in range(size):
                    row[j] //= p
            continue
        a = m[pi][pj]
        unit = (unit * a) % qfull
        if (pi + pj) & 1:
            sign = -sign
        inv = pow(a, -1, q)
        prow = m[pi]
        for r in range(size):
            if r == pi:
                continue
            c = m[r][pj]
            if c:
                c = (c * inv) % q
                row = m[r]
                for t in range(size):
                    row[t] = (row[t] - c * prow[t]) % q
        del m[pi]
        for row in m:
            del row[pj]
        size -= 1
    d = (unit * pow(p, val, qfull)) % qfull
    if sign < 0:
        d = (-d) % qfull
    return d


def charpoly_mod(rows, q):
    """Coefficients of det(t*I - A) mod q, ascending in t (Berkowitz, division-free)."""
    n = len(rows)
    if n == 0:
        return [1 % q]
    C = [1 % q, (-rows[0][0]) % q]
    for r in range(2, n + 1):
        rm1 = r - 1
        d = rows[rm1][rm1]
        R = rows[rm1][:rm1]
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
                    Mi = rows[i]
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
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = m[k][k]
        prow = m[k]
        for i in range(k + 1, n):
            row = m[i]
            mik = row[k]
            for j in range(k + 1, n):
                row[j] = (pkk * row[j] - mik * prow[j]) // prev
            row[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]
