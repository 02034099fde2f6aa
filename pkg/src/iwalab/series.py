"""Truncated power series over Z_p: the algebra Z_p[[X]] and its Y-twin.

The ambient identification is gamma <-> 1+X, fixed globally.  A series is
either a genuine polynomial (`exact_degree` set: the coefficients beyond that
index are true zeros in Z_p, so X-adic tail bounds are vacuous) or a window of
`truncation` known coefficients.  p-adic knowledge is always modulo the
context's p^N; the two notions of precision are tracked independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _polyops as po
from .errors import (
    DivisorDivisibleByPError,
    MixedContextError,
    PrecisionExhaustedError,
    TailUncertifiedError,
    ValidationError,
    ZeroToPrecisionError,
)
from .padic import AT_LEAST_N, PadicContext, PadicInt
from . import kernels

DEFAULT_TRUNCATION = 128


@dataclass(frozen=True)
class PowerSeries:
    context: PadicContext
    variable: str
    coeffs: tuple
    exact_degree: int | None = None

    def __post_init__(self):
        if self.variable not in ("X", "Y"):
            raise ValidationError("variable", f"unknown variable {self.variable!r}")
        q = self.context.modulus
        cs = [c % q for c in self.coeffs]
        if not cs:
            raise ValidationError("nonempty", "a series needs at least one coefficient")
        if self.exact_degree is not None:
            want = self.exact_degree + 1
            if len(cs) < want:
                cs += [0] * (want - len(cs))
            elif len(cs) > want:
                if any(cs[want:]):
                    raise ValidationError(
                        "exact-degree", "nonzero residue beyond the declared degree"
                    )
                cs = cs[:want]
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_ints(cls, ctx: PadicContext, variable: str, ints) -> "PowerSeries":
        """Exact polynomial from integer coefficients (ascending)."""
        c = po.trim_int(list(ints))
        return cls(ctx, variable, tuple(c), exact_degree=len(c) - 1)

    @classmethod
    def truncated(cls, ctx: PadicContext, variable: str, coeffs, trunc=None) -> "PowerSeries":
        """Series known only through its first `trunc` coefficients."""
        c = list(coeffs)
        if trunc is not None:
            if trunc < 1:
                raise ValidationError("truncation", "truncation order must be >= 1")
            c = (c + [0] * (trunc - len(c)))[:trunc]
        return cls(ctx, variable, tuple(c), exact_degree=None)

    @classmethod
    def zero(cls, ctx: PadicContext, variable: str) -> "PowerSeries":
        return cls.from_ints(ctx, variable, [0])

    @classmethod
    def one(cls, ctx: PadicContext, variable: str) -> "PowerSeries":
        return cls.from_ints(ctx, variable, [1])

    @classmethod
    def gen(cls, ctx: PadicContext, variable: str) -> "PowerSeries":
        return cls.from_ints(ctx, variable, [0, 1])

    # -- structure ---------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.exact_degree is not None

    @property
    def truncation(self):
        """Number of known coefficients, or None for an exact polynomial."""
        return None if self.is_exact else len(self.coeffs)

    def coefficient(self, i: int) -> PadicInt:
        if i < len(self.coeffs):
            return PadicInt(self.context, self.coeffs[i])
        if self.is_exact:
            return self.context.zero()
        raise PrecisionExhaustedError(f"coefficient {i} beyond truncation {len(self.coeffs)}")

    def is_zero_to_precision(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "PowerSeries"):
        if self.context != other.context:
            raise MixedContextError("series live in different contexts")
        if self.variable != other.variable:
            raise MixedContextError(
                f"series variables differ: {self.variable} vs {other.variable}"
            )

    def __repr__(self):
        tail = f" deg={self.exact_degree}" if self.is_exact else f" trunc={len(self.coeffs)}"
        return f"PowerSeries({self.variable},{tail}, {list(self.coeffs)})"

    # -- arithmetic --------------------------------------------------------

    def _window(self, other: "PowerSeries"):
        ws = [s for s in (self.truncation, other.truncation) if s is not None]
        return min(ws) if ws else None

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        q = self.context.modulus
        w = self._window(other)
        if w is None:
            out = po.padd(list(self.coeffs), list(other.coeffs), q)
            deg = max(self.exact_degree, other.exact_degree)
            return PowerSeries(self.context, self.variable, tuple(out), exact_degree=deg)
        a = (list(self.coeffs) + [0] * w)[:w]
        b = (list(other.coeffs) + [0] * w)[:w]
        return PowerSeries(self.context, self.variable, tuple(po.padd(a, b, q)))

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        q = self.context.modulus
        return PowerSeries(
            self.context,
            self.variable,
            tuple((-c) % q for c in self.coeffs),
            exact_degree=self.exact_degree,
        )

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        q = self.context.modulus
        w = self._window(other)
        out = po.pmul(list(self.coeffs), list(other.coeffs), q, trunc=w)
        if w is None:
            deg = self.exact_degree + other.exact_degree
            out = (out + [0] * (deg + 1 - len(out)))[:deg + 1]
            return PowerSeries(self.context, self.variable, tuple(out), exact_degree=deg)
        out = (out + [0] * (w - len(out)))[:w]
        return PowerSeries(self.context, self.variable, tuple(out))

    def scale(self, c) -> "PowerSeries":
        """Multiply by a scalar (int or PadicInt)."""
        r = c.residue if isinstance(c, PadicInt) else c
        q = self.context.modulus
        return PowerSeries(
            self.context,
            self.variable,
            tuple((x * r) % q for x in self.coeffs),
            exact_degree=self.exact_degree,
        )


@dataclass(frozen=True)
class Character:
    """A continuous character of Gamma, pinned down by u = rho(gamma) in 1+pZ_p."""

    u: PadicInt
    u_exact: int | None = None

    def __post_init__(self):
        p = self.u.context.p
        if (self.u.residue - 1) % p != 0:
            raise ValidationError("character-image", "rho(gamma) must lie in 1 + pZ_p")
        if self.u_exact is not None:
            if self.u_exact % self.u.context.modulus != self.u.residue:
                raise ValidationError("character-exact", "exact value disagrees with residue")

    @classmethod
    def from_int(cls, ctx: PadicContext, value: int) -> "Character":
        return cls(ctx.make(value), u_exact=value)

    @classmethod
    def trivial(cls, ctx: PadicContext) -> "Character":
        return cls.from_int(ctx, 1)

    @property
    def is_exactly_trivial(self) -> bool:
        return self.u_exact == 1

    def value_residue(self, inverse: bool = False) -> int:
        if inverse:
            return pow(self.u.residue, -1, self.u.context.modulus)
        return self.u.residue


@dataclass(frozen=True)
class WeierstrassData:
    """f = p^mu * distinguished * unit; the classical lambda/mu normal form."""

    mu: int
    distinguished: PowerSeries
    unit: PowerSeries

    @property
    def lam(self) -> int:
        return self.distinguished.exact_degree


def _first_unit_index(coeffs, p):
    for i, c in enumerate(coeffs):
        if c % p:
            return i
    return None


def _fp_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(f, g, p):
    """Division with remainder in F_p[X]; g must have a unit leading coefficient."""
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    if len(f) - 1 < dg:
        return [0], _fp_trim(f)
    quo = [0] * (len(f) - dg)
    for i in range(len(f) - 1 - dg, -1, -1):
        t = (f[i + dg] * inv) % p
        if t:
            quo[i] = t
            for j, gc in enumerate(g):
                f[i + j] = (f[i + j] - t * gc) % p
    return _fp_trim(quo), _fp_trim(f[:dg] if dg else [0])


def _fp_bezout(a, b, p):
    """(s, t) with s*a + t*b = 1 in F_p[X], for coprime a, b."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], [0]
    t0, t1 = [0], [1]
    while r1 != [0]:
        q, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_trim(po.psub(s0, po.pmul(q, s1, p), p))
        t0, t1 = t1, _fp_trim(po.psub(t0, po.pmul(q, t1, p), p))
    c = pow(r0[0], -1, p)
    return po.pscale(s0, c, p), po.pscale(t0, c, p)


def _hensel_prepare_poly(f1, lam, p, N, q):
    """Exact-polynomial Weierstrass preparation by Hensel factorization.

    f1 has its first unit coefficient at index lam; lifts the mod-p splitting
    f1 = X^lam * (unit cofactor) to f1 = P * U mod p^N with P monic of degree
    lam congruent to X^lam mod p.  Returns (P, U) as residue lists; this is
    the genuine distinguished part, with no window truncation anywhere.
    """
    deg = len(f1) - 1
    if lam == 0:
        return [1], [c % q for c in f1]
    pbar = [0] * lam + [1]
    ubar = _fp_trim([c % p for c in f1[lam:]])
    _, t = _fp_bezout(pbar, ubar, p)
    P = list(pbar)
    U = list(ubar) + [0] * (deg - lam + 1 - len(ubar))
    pk = p
    for _ in range(1, N):
        prod = po.pmul(P, U, q)
        err = po.psub([c % q for c in f1], prod, q)
        if not any(err):
            break
        dig = _fp_trim([(c // pk) % p for c in err])
        a0 = po.pmul(t, dig, p)
        _, A = _fp_divmod(a0, pbar, p)
        rem = _fp_trim(po.psub(dig, po.pmul(A, ubar, p), p))
        B, _ = _fp_divmod(rem, pbar, p)
        for i, c in enumerate(A):
            if c:
                P[i] = (P[i] + pk * c) % q
        for i, c in enumerate(B):
            if c:
                if i < len(U):
                    U[i] = (U[i] + pk * c) % q
                else:
                    U.extend([0] * (i - len(U)))
                    U.append((pk * c) % q)
        pk *= p
    while len(U) > 1 and U[-1] == 0:
        U.pop()
    return P, U


def _digit_lift_divide(fw, gw, lam, window, p, N, q):
    """Solve f = q*g + r on a coefficient window by p-digit lifting.

    Valid because g's sub-lambda coefficients all vanish mod p; each round
    fixes one more p-adic digit of (q, r).  Early exit once the residual is
    exactly zero mod p^N.
    """
    qlen = window - lam
    ghi_bar = [c % p for c in gw[lam:]]
    inv_hi = po.series_inverse(ghi_bar, p, qlen)
    quo = [0] * qlen
    rpoly = [0] * lam
    rem = list(fw)
    pt = 1
    for _ in range(N):
        if not any(rem):
            break
        dig = [(c // pt) % p for c in rem]
        rdig = dig[:lam]
        qdig = po.pmul(dig[lam:], inv_hi, p, trunc=qlen)
        for j in range(qlen):
            if qdig[j]:
                quo[j] += pt * qdig[j]
        for j in range(lam):
            if rdig[j]:
                rpoly[j] += pt * rdig[j]
        s = po.pmul(qdig, gw, q, trunc=window)
        s += [0] * (window - len(s))
        for j in range(lam):
            s[j] = (s[j] + rdig[j]) % q
        for j in range(window):
            rem[j] = (rem[j] - pt * s[j]) % q
        pt *= p
    return [c % q for c in quo], [c % q for c in rpoly]


def weierstrass_divide(f: PowerSeries, g: PowerSeries, trunc: int | None = None):
    """Weierstrass division f = q*g + r with deg r < lambda_g.

    lambda_g is the index of g's first unit coefficient.  Results satisfy the
    identity on the common coefficient window (and exactly, when both inputs
    are exact polynomials and g's unit coefficient is its leading one).
    """
    f._check(g)
    ctx = f.context
    p, N, q = ctx.p, ctx.N, ctx.modulus
    lam = _first_unit_index(g.coeffs, p)
    if lam is None:
        raise DivisorDivisibleByPError("every coefficient of the divisor is divisible by p")

    if g.is_exact and lam == g.exact_degree:
        # unit leading coefficient: plain long division, column by column
        if f.is_exact:
            quo, rem = po.poly_divmod_unit_lead(list(f.coeffs), list(g.coeffs), q)
            dq = max(len(f.coeffs) - 1 - lam, 0)
            qs = PowerSeries(ctx, f.variable, tuple(quo[:dq + 1]), exact_degree=dq)
            rs = PowerSeries(ctx, f.variable, tuple(rem), exact_degree=max(lam - 1, 0))
            return qs, rs
        window = len(f.coeffs)
        if window <= lam:
            raise PrecisionExhaustedError(
                f"truncation {window} cannot see past lambda_g = {lam}"
            )
        quo, rem = po.poly_divmod_unit_lead(list(f.coeffs), list(g.coeffs), q)
        quo = (quo + [0])[:window - lam]
        qs = PowerSeries(ctx, f.variable, tuple(quo))
        rs = PowerSeries(ctx, f.variable, tuple(rem), exact_degree=max(lam - 1, 0))
        return qs, rs

    windows = [w for w in (f.truncation, g.truncation) if w is not None]
    if trunc is not None:
        windows.append(trunc + lam)
    window = min(windows) if windows else max(len(f.coeffs), len(g.coeffs), lam + 2)
    if window <= lam:
        raise PrecisionExhaustedError(f"truncation {window} cannot see past lambda_g = {lam}")
    fw = (list(f.coeffs) + [0] * window)[:window]
    gw = (list(g.coeffs) + [0] * window)[:window]
    if not f.is_exact and len(f.coeffs) < window:
        raise PrecisionExhaustedError("requested window exceeds the dividend's truncation")
    quo, rem = _digit_lift_divide(fw, gw, lam, window, p, N, q)
    qs = PowerSeries(ctx, f.variable, tuple(quo))
    if lam == 0:
        rs = PowerSeries.zero(ctx, f.variable)
    else:
        rs = PowerSeries(ctx, f.variable, tuple(rem), exact_degree=lam - 1)
    return qs, rs


def weierstrass_prepare(f: PowerSeries, unit_trunc: int | None = None) -> WeierstrassData:
    """Factor f = p^mu * P * u with P distinguished monic of degree lambda.

    The distinguished part and unit live in a context of precision N - mu
    (dividing by p^mu costs mu certified digits).
    """
    ctx = f.context
    p = ctx.p
    if f.is_zero_to_precision():
        raise ZeroToPrecisionError("every coefficient is 0 mod p^N")
    vals = [ctx.int_valuation(c) for c in f.coeffs]
    mu = min(v for v in vals if v is not AT_LEAST_N)
    if mu:
        ctx1 = ctx.with_precision(ctx.N - mu)
        pm = p ** mu
        f1 = PowerSeries(
            ctx1, f.variable, tuple((c // pm) for c in f.coeffs), exact_degree=f.exact_degree
        )
    else:
        ctx1 = ctx
        f1 = f
    lam = _first_unit_index(f1.coeffs, p)

    if f1.is_exact:
        # Hensel factorization: exact, window-free, gives the true P mod p^(N-mu)
        P, U = _hensel_prepare_poly(list(f1.coeffs), lam, p, ctx1.N, ctx1.modulus)
        dist = PowerSeries(ctx1, f.variable, tuple(P), exact_degree=lam)
        unit = PowerSeries(ctx1, f.variable, tuple(U), exact_degree=len(U) - 1)
        return WeierstrassData(mu=mu, distinguished=dist, unit=unit)

    if len(f1.coeffs) <= lam:
        raise PrecisionExhaustedError("truncation order does not reach the first unit coefficient")
    t = unit_trunc if unit_trunc is not None else len(f1.coeffs) - lam
    if t < 1:
        raise PrecisionExhaustedError("no room for the unit part at this truncation")
    xlam = PowerSeries.from_ints(ctx1, f.variable, [0] * lam + [1])
    quo, rem = weierstrass_divide(xlam, f1, trunc=t)
    pcoeffs = [(-c) % ctx1.modulus for c in rem.coeffs[:lam]] + [1]
    dist = PowerSeries(ctx1, f.variable, tuple(pcoeffs), exact_degree=lam)
    inv = po.series_inverse(list(quo.coeffs), ctx1.modulus, len(quo.coeffs))
    unit = PowerSeries(ctx1, f.variable, tuple(inv))
    return WeierstrassData(mu=mu, distinguished=dist, unit=unit)


def lambda_mu(f: PowerSeries):
    """(lambda, mu) without running the full preparation."""
    ctx = f.context
    if f.is_zero_to_precision():
        raise ZeroToPrecisionError("every coefficient is 0 mod p^N")
    vals = [ctx.int_valuation(c) for c in f.coeffs]
    mu = min(v for v in vals if v is not AT_LEAST_N)
    lam = next(i for i, v in enumerate(vals) if v == mu)
    return lam, mu


def twist_series(f: PowerSeries, rho: Character, direction: str) -> PowerSeries:
    """Apply the twist substitution X -> c(1+X) - 1, c = rho(gamma)^(+-1).

    Ring homomorphism; exact on exact polynomials.  On truncated series the
    window is preserved and coefficient j keeps certified precision
    min(N, window - j) (the dropped tail sits in (p, X)^window).
    """
    if f.variable != "X":
        raise ValidationError("twist-variable", "twists act on the Gamma variable X")
    if direction not in ("forward", "inverse"):
        raise ValidationError("twist-direction", f"unknown direction {direction!r}")
    q = f.context.modulus
    c = rho.value_residue(inverse=(direction == "inverse"))
    e = (c - 1) % q
    if f.is_exact:
        out = po.substitute_linear(list(f.coeffs), e, c, q, f.exact_degree + 1)
        return PowerSeries(f.context, "X", tuple(out), exact_degree=f.exact_degree)
    w = len(f.coeffs)
    out = po.substitute_linear(list(f.coeffs), e, c, q, w)
    out += [0] * (w - len(out))
    return PowerSeries(f.context, "X", tuple(out))


def evaluate_character(f: PowerSeries, rho: Character, direction: str) -> PadicInt:
    """rho~ evaluation: f at u-1 (forward) or at u^-1 - 1 (inverse)."""
    if f.variable != "X":
        raise ValidationError("eval-variable", "character evaluation acts on the variable X")
    if direction not in ("forward", "inverse"):
        raise ValidationError("eval-direction", f"unknown direction {direction!r}")
    ctx = f.context
    q = ctx.modulus
    x0 = (rho.value_residue(inverse=(direction == "inverse")) - 1) % q
    if not f.is_exact:
        v0 = ctx.int_valuation(x0)
        if v0 is not AT_LEAST_N and len(f.coeffs) * v0 < ctx.N:
            raise TailUncertifiedError(
                f"tail valuation bound {len(f.coeffs)} * {v0} < N = {ctx.N}"
            )
    return PadicInt(ctx, po.poly_eval(list(f.coeffs), x0, q))


def omega(n: int, ctx: PadicContext, variable: str = "X") -> PowerSeries:
    """The level-n augmentation generator (1+X)^(p^n) - 1, as an exact polynomial."""
    if n < 0:
        raise ValidationError("level", "level must be >= 0")
    return PowerSeries.from_ints(ctx, variable, po.omega_coeffs(ctx.p, n))


def det_mult_mod_omega(f: PowerSeries, n: int) -> PadicInt:
    """Determinant of multiplication by f on the rank-p^n quotient by omega_n.

    Equals the resultant Res(omega_n, f) up to sign.  A truncated dividend's
    unknown tail folds down with valuation >= floor(window / p^n), so the
    result is returned in a context of that certified precision.
    """
    ctx = f.context
    p, N = ctx.p, ctx.N
    pn = p ** n
    if f.is_exact:
        neff = N
    else:
        window = len(f.coeffs)
        neff = min(N, window // pn)
        if neff < 1:
            raise PrecisionExhaustedError(
                f"truncation {window} certifies no digits modulo omega_{n}"
            )
    q = p ** neff
    fbar = po.reduce_mod_omega(list(f.coeffs), p, n, q)
    rows = po.mult_matrix_mod_omega(fbar, p, n, q)
    det = kernels.det_mod(rows, p, neff)
    out_ctx = ctx if neff == N else ctx.with_precision(neff)
    return PadicInt(out_ctx, det)
