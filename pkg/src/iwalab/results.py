"""Result types shared by the commutative and crossed layers."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class EulerStatus(enum.Enum):
    EXISTS = "exists"
    NOT_FINITE = "not-finite-detected"
    INDETERMINATE = "indeterminate-at-precision"


@dataclass(frozen=True)
class EulerResult:
    """Outcome of one finite-level Euler characteristic computation.

    When status is EXISTS: chi = p^chi_exponent, the homology orders are
    p^h0_exponent and p^h1_exponent, and chi_exponent = h0 - h1 with h1 = 0
    for every square presentation.
    """

    status: EulerStatus
    chi_exponent: int | None = None
    h0_exponent: int | None = None
    h1_exponent: int | None = None

    @property
    def exists(self) -> bool:
        return self.status is EulerStatus.EXISTS

    @classmethod
    def from_h0(cls, h0: int) -> "EulerResult":
        return cls(EulerStatus.EXISTS, chi_exponent=h0, h0_exponent=h0, h1_exponent=0)


@dataclass(frozen=True)
class LevelOutcome:
    """Per-level line of a twist-search certificate."""

    level: object
    status: EulerStatus
    chi_exponent: int | None = None
    cross_exponent: int | None = None


@dataclass(frozen=True)
class CandidateRecord:
    u: int
    outcomes: tuple
    accepted: bool


@dataclass(frozen=True)
class TwistSearchReport:
    """Enumeration trace: rejected candidates witness the bad set at these levels."""

    accepted_u: int | None
    candidates: tuple
    budget: int
