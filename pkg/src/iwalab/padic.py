"""Exact arithmetic in Z_p to a fixed working precision p^N.

Everything is a residue modulo p^N with explicit "at least N" semantics for
valuations: a residue of 0 is indistinguishable from any multiple of p^N, so
its valuation is reported as the sentinel AT_LEAST_N rather than a number.
Values are immutable and all operations are pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import MixedContextError, NotAUnitError, NotSquareError, ValidationError
from . import kernels


class _AtLeastN:
    """Sentinel valuation: 'indistinguishable from 0 at this precision'.

    Compares greater than every integer so mixed lists sort with it last.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AtLeastN"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("AtLeastN")

    def __lt__(self, other):
        if isinstance(other, (int, _AtLeastN)):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, int):
            return True
        if other is self:
            return False
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, _AtLeastN)):
            return True
        return NotImplemented


AT_LEAST_N = _AtLeastN()

Valuation = Union[int, _AtLeastN]


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 30 random rounds beyond."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 3317044064679887385961981:
        bases = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(30)]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PadicContext:
    """The coefficient ring Z/p^N, read as Z_p known to N p-adic digits."""

    p: int
    N: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not is_probable_prime(self.p):
            raise ValidationError("odd-prime", f"p must be an odd prime >= 3, got {self.p}")
        if self.N < 1:
            raise ValidationError("precision-positive", f"N must be >= 1, got {self.N}")
        object.__setattr__(self, "modulus", self.p ** self.N)

    def make(self, value: int) -> "PadicInt":
        return PadicInt(self, value % self.modulus)

    def zero(self) -> "PadicInt":
        return PadicInt(self, 0)

    def one(self) -> "PadicInt":
        return PadicInt(self, 1)

    def with_precision(self, N: int) -> "PadicContext":
        return PadicContext(self.p, N)

    def int_valuation(self, residue: int) -> Valuation:
        """Valuation of a residue in [0, p^N): largest e < N with p^e | residue."""
        if residue % self.modulus == 0:
            return AT_LEAST_N
        v = 0
        x = residue % self.modulus
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v


@dataclass(frozen=True)
class PadicInt:
    """A p-adic integer known modulo p^N."""

    context: PadicContext
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.context.modulus)

    def _check(self, other: "PadicInt") -> None:
        if self.context != other.context:
            raise MixedContextError(
                f"contexts differ: {self.context} vs {other.context}"
            )

    def valuation(self) -> Valuation:
        return self.context.int_valuation(self.residue)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.context.p != 0

    def unit_inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NotAUnitError(f"valuation of {self.residue} is positive; not invertible")
        return PadicInt(self.context, pow(self.residue, -1, self.context.modulus))

    def __add__(self, other):
        if not isinstance(other, PadicInt):
            return NotImplemented
        self._check(other)
        return PadicInt(self.context, self.residue + other.residue)

    def __sub__(self, other):
        if not isinstance(other, PadicInt):
            return NotImplemented
        self._check(other)
        return PadicInt(self.context, self.residue - other.residue)

    def __mul__(self, other):
        if not isinstance(other, PadicInt):
            return NotImplemented
        self._check(other)
        return PadicInt(self.context, self.residue * other.residue)

    def __neg__(self):
        return PadicInt(self.context, -self.residue)

    def __truediv__(self, other):
        if not isinstance(other, PadicInt):
            return NotImplemented
        self._check(other)
        return self * other.unit_inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.unit_inverse() ** (-e)
        return PadicInt(self.context, pow(self.residue, e, self.context.modulus))

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.context.p}^{self.context.N})"


def valuation(a: PadicInt) -> Valuation:
    return a.valuation()


def unit_inverse(a: PadicInt) -> PadicInt:
    return a.unit_inverse()


@dataclass(frozen=True)
class ElementaryDivisors:
    """Diagonal form p^{e_1} | p^{e_2} | ... of a matrix over Z/p^N.

    `exponents` has min(row_count, col_count) entries, sorted ascending with
    AT_LEAST_N last.
    """

    exponents: tuple
    row_count: int
    col_count: int

    @property
    def has_at_least_n(self) -> bool:
        return any(e is AT_LEAST_N for e in self.exponents)

    @property
    def finite_sum(self) -> int:
        """Sum of the exponents; only meaningful when none is AT_LEAST_N."""
        return sum(e for e in self.exponents if e is not AT_LEAST_N)


def _extract_rows(mat: Sequence[Sequence[PadicInt]]):
    ctx = None
    rows = []
    for r in mat:
        row = []
        for a in r:
            if ctx is None:
                ctx = a.context
            elif a.context != ctx:
                raise MixedContextError("matrix entries live in different contexts")
            row.append(a.residue)
        rows.append(row)
    if ctx is None:
        raise ValidationError("nonempty", "matrix must have at least one entry")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValidationError("rectangular", "rows have differing lengths")
    return rows, ctx


def smith_form(mat: Sequence[Sequence[PadicInt]]) -> ElementaryDivisors:
    """Elementary divisors over Z/p^N by minimal-valuation pivoting."""
    rows, ctx = _extract_rows(mat)
    return smith_form_raw(rows, ctx)


def smith_form_raw(rows: Sequence[Sequence[int]], ctx: PadicContext) -> ElementaryDivisors:
    """Same as smith_form on plain residue rows (the fast path)."""
    exps = kernels.smith_exponents([list(r) for r in rows], ctx.p, ctx.N)
    return ElementaryDivisors(
        exponents=tuple(AT_LEAST_N if e < 0 else e for e in exps),
        row_count=len(rows),
        col_count=len(rows[0]) if rows else 0,
    )


@dataclass(frozen=True)
class HomologyOrders:
    """Orders of cokernel (h0) and kernel (h1) as p-power exponents.

    None means Indeterminate: some divisor was AT_LEAST_N, so an infinite
    cokernel cannot be told apart from a large finite one at this precision.
    """

    h0_exponent: int | None
    h1_exponent: int | None

    @property
    def indeterminate(self) -> bool:
        return self.h0_exponent is None


def cokernel_kernel_orders(divisors: ElementaryDivisors) -> HomologyOrders:
    """Cokernel/kernel orders of a square map between equal-rank free modules.

    The kernel of an injective map between free modules of equal finite rank
    is zero, so h1 is trivial whenever the cokernel is certified finite.
    """
    if divisors.row_count != divisors.col_count:
        raise NotSquareError(
            f"presentation is {divisors.row_count}x{divisors.col_count}, need square"
        )
    if divisors.has_at_least_n:
        return HomologyOrders(None, None)
    return HomologyOrders(divisors.finite_sum, 0)


def det_residue(rows: Sequence[Sequence[int]], ctx: PadicContext) -> int:
    """Determinant of a square residue matrix, as a residue mod p^N."""
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise NotSquareError("determinant of a non-square matrix")
    return kernels.det_mod([list(r) for r in rows], ctx.p, ctx.N)
