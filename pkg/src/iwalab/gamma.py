"""Finitely generated torsion modules over Z_p[[X]] via square presentations.

A module is the cokernel of right multiplication by a d x d matrix F over the
series ring (row-vector convention).  Finite-level Euler characteristics come
by two independent routes: reducing the twisted presentation modulo the level
polynomial (direct), and evaluating the twisted characteristic element through
the multiplication-map determinant (analytic).  Exactness of NotFinite verdicts
is guaranteed by integer-resultant certificates, never by residue vanishing.
"""

from __future__ import annotations

import random

from . import _polyops as po
from . import exactint
from .errors import (
    BudgetExhaustedError,
    MixedContextError,
    PrecisionExhaustedError,
    ValidationError,
    ZeroDeterminantError,
)
from .padic import AT_LEAST_N, PadicContext, cokernel_kernel_orders, smith_form_raw
from .results import (
    CandidateRecord,
    EulerResult,
    EulerStatus,
    LevelOutcome,
    TwistSearchReport,
)
from .series import (
    Character,
    PowerSeries,
    det_mult_mod_omega,
    twist_series,
    weierstrass_prepare,
)


def series_matrix_det(entries) -> PowerSeries:
    """Determinant of a square matrix of PowerSeries, division-free."""
    d = len(entries)
    ctx = entries[0][0].context
    var = entries[0][0].variable
    cache = {}

    def minor(row, mask):
        if row == d:
            return PowerSeries.one(ctx, var)
        hit = cache.get(mask)
        if hit is not None:
            return hit
        acc = PowerSeries.zero(ctx, var)
        sign = 1
        for j in range(d):
            bit = 1 << j
            if not (mask & bit):
                continue
            e = entries[row][j]
            if not e.is_zero_to_precision():
                term = e * minor(row + 1, mask & ~bit)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        cache[mask] = acc
        return acc

    return minor(0, (1 << d) - 1)


class GammaModule:
    """Cokernel of x -> x*F on Z_p[[X]]^d; must be torsion (det F != 0)."""

    def __init__(self, F, exact_entries=None):
        d = len(F)
        if d == 0 or any(len(row) != d for row in F):
            raise ValidationError("square-presentation", "F must be a nonempty square matrix")
        ctx = F[0][0].context
        for row in F:
            for e in row:
                if e.context != ctx:
                    raise MixedContextError("presentation entries in different contexts")
                if e.variable != "X":
                    raise ValidationError("variable", "Gamma presentations live in the variable X")
        self.d = d
        self.F = tuple(tuple(row) for row in F)
        self.context = ctx
        self.exact_entries = exact_entries
        self.det_int = (
            exactint.poly_mat_det([[list(e) for e in row] for row in exact_entries])
            if exact_entries is not None
            else None
        )
        self.det = series_matrix_det(self.F)
        if self.det.is_zero_to_precision():
            if self.det_int is not None and self.det_int != [0]:
                raise PrecisionExhaustedError(
                    "det F is nonzero but vanishes mod p^N; raise the precision"
                )
            raise ZeroDeterminantError("det F = 0 to working precision; module is not torsion")
        self._wdata = weierstrass_prepare(self.det)

    @classmethod
    def from_int_matrix(cls, ctx: PadicContext, entries) -> "GammaModule":
        """Presentation with exact integer polynomial entries (ascending lists)."""
        F = [[PowerSeries.from_ints(ctx, "X", e) for e in row] for row in entries]
        raw = tuple(tuple(tuple(int(c) for c in e) for e in row) for row in entries)
        return cls(F, exact_entries=raw)

    def with_precision(self, N: int) -> "GammaModule":
        """Re-embed the exact integer data at a different precision."""
        if self.exact_entries is None:
            raise ValidationError("exactness", "cannot re-embed a non-exact presentation")
        return GammaModule.from_int_matrix(self.context.with_precision(N), self.exact_entries)

    # -- characteristic element ---------------------------------------------

    def characteristic_element(self) -> PowerSeries:
        """det F in Weierstrass normal form p^mu * P, the unit part dropped."""
        w = self._wdata
        pm = self.context.p ** w.mu
        q = self.context.modulus
        coeffs = [(c * pm) % q for c in w.distinguished.coeffs]
        return PowerSeries(self.context, "X", tuple(coeffs), exact_degree=w.lam)

    def char_invariants(self):
        """(lambda, mu) of the characteristic element."""
        return self._wdata.lam, self._wdata.mu

    # -- Euler characteristics ------------------------------------------------

    def _undetermined(self, rho: Character, pn: int) -> EulerResult:
        if self.det_int is not None and rho.u_exact is not None:
            if exactint.gamma_h0_is_infinite(self.det_int, rho.u_exact, pn):
                return EulerResult(EulerStatus.NOT_FINITE)
        return EulerResult(EulerStatus.INDETERMINATE)

    def euler_direct(self, rho: Character, n: int) -> EulerResult:
        """chi at level n from the twisted presentation reduced mod omega_n."""
        ctx = self.context
        p = ctx.p
        pn = p ** n
        neff = ctx.N
        for row in self.F:
            for e in row:
                if not e.is_exact:
                    neff = min(neff, len(e.coeffs) // pn)
        if neff < 1:
            raise PrecisionExhaustedError("entry truncations cannot see level %d" % n)
        q = p ** neff
        d = self.d
        D = d * pn
        big = [[0] * D for _ in range(D)]
        for i in range(d):
            for j in range(d):
                ent = twist_series(self.F[i][j], rho, "inverse")
                fbar = po.reduce_mod_omega(list(ent.coeffs), p, n, q)
                block = po.mult_matrix_mod_omega(fbar, p, n, q)
                for r in range(pn):
                    big[i * pn + r][j * pn: j * pn + pn] = block[r]
        eff_ctx = ctx if neff == ctx.N else ctx.with_precision(neff)
        orders = cokernel_kernel_orders(smith_form_raw(big, eff_ctx))
        if orders.indeterminate:
            return self._undetermined(rho, pn)
        return EulerResult.from_h0(orders.h0_exponent)

    def euler_analytic(self, rho: Character, n: int) -> EulerResult:
        """chi at level n by evaluating the twisted characteristic element."""
        pn = self.context.p ** n
        w = self._wdata
        p_rho = twist_series(w.distinguished, rho, "inverse")
        det = det_mult_mod_omega(p_rho, n)
        v = det.valuation()
        if v is AT_LEAST_N:
            return self._undetermined(rho, pn)
        return EulerResult.from_h0(w.mu * pn + v)


def find_twist(module: GammaModule, n_max: int, budget: int = 25, seed: int | None = None):
    """First u = 1+kp (k >= 1) certifying existence at every level n <= n_max.

    Acceptance is deterministic: candidates are tried ascending, or in the
    seeded shuffle of 1..budget when `seed` is given (reports stay
    reproducible either way).  The certificate covers the requested levels
    only; goodness for all n would need the roots of the characteristic
    element, which is out of scope here.
    """
    ctx = module.context
    ks = list(range(1, budget + 1))
    if seed is not None:
        random.Random(seed).shuffle(ks)
    records = []
    for k in ks:
        u = 1 + k * ctx.p
        rho = Character.from_int(ctx, u)
        outcomes = []
        ok = True
        for n in range(n_max + 1):
            res = module.euler_direct(rho, n)
            outcomes.append(LevelOutcome(n, res.status, res.chi_exponent))
            if not res.exists:
                ok = False
                break
        records.append(CandidateRecord(u, tuple(outcomes), ok))
        if ok:
            report = TwistSearchReport(u, tuple(records), budget)
            return rho, report
    report = TwistSearchReport(None, tuple(records), budget)
    err = BudgetExhaustedError(
        f"no candidate among 1+kp, k <= {budget}, certified every level <= {n_max}"
    )
    err.report = report
    raise err
