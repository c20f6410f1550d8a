"""Distance form of the Bohr--Rogosinski inequality for subordination classes.

For g subordinate to a univalent (or convex) f with Omega = f(D) the
inequality reads::

    |g(z)| + sum_{k>=1} |b_k| r^k <= |f(0)| + dist(f(0), boundary of Omega)

Subordination itself is asserted by the caller; the built-in cases use
g = f, for which it holds trivially.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .series import DomainError, TruncatedPowerSeries, series_eval, tail_sum
from .verifiers import DEFAULT_TOL, FunctionalId, Kind, VerificationReport, evaluate

__all__ = [
    "MajorantKind",
    "SubordinationCase",
    "UNIVALENT_RADIUS",
    "CONVEX_RADIUS",
    "koebe_case",
    "half_plane_case",
    "disk_automorphism_case",
    "sub_bound",
    "verify_subordinate",
    "CoefficientReport",
    "coefficient_bound_check",
    "distortion_chain",
]

UNIVALENT_RADIUS = 5.0 - 2.0 * math.sqrt(6.0)
CONVEX_RADIUS = 0.2


class MajorantKind(enum.Enum):
    Univalent = "univalent"
    Convex = "convex"

    @property
    def dist_factor(self) -> float:
        """Lower constant c in ``c |f'(0)| <= dist(f(0), boundary)``."""
        return 0.25 if self is MajorantKind.Univalent else 0.5


@dataclass(frozen=True)
class SubordinationCase:
    majorant: MajorantKind
    f0_modulus: float
    dist0: float
    deriv0_modulus: float

    def __post_init__(self):
        maj = MajorantKind(self.majorant)
        object.__setattr__(self, "majorant", maj)
        if self.f0_modulus < 0 or self.deriv0_modulus < 0:
            raise DomainError("moduli must be nonnegative")
        if not self.dist0 > 0:
            raise DomainError("dist0 must be positive")
        lo = maj.dist_factor * self.deriv0_modulus
        slack = 1e-12 * max(1.0, self.deriv0_modulus)
        if not (lo - slack <= self.dist0 <= self.deriv0_modulus + slack):
            raise DomainError(
                f"dist0 = {self.dist0} outside [{lo}, {self.deriv0_modulus}] "
                f"allowed for a {maj.value} majorant"
            )

    @property
    def rhs(self) -> float:
        return self.f0_modulus + self.dist0


def koebe_case() -> SubordinationCase:
    """Koebe function: f(0) = 0, f'(0) = 1, distance to the slit 1/4."""
    return SubordinationCase(MajorantKind.Univalent, 0.0, 0.25, 1.0)


def half_plane_case() -> SubordinationCase:
    """``z/(1-z)``: f(0) = 0, f'(0) = 1, distance to Re w = -1/2 is 1/2."""
    return SubordinationCase(MajorantKind.Convex, 0.0, 0.5, 1.0)


def disk_automorphism_case(a: float) -> SubordinationCase:
    """``(a - z)/(1 - a z)`` maps onto the disk: dist(a, unit circle) = 1 - |a|."""
    a = abs(a)
    if not a < 1.0:
        raise DomainError("|a| must be < 1")
    return SubordinationCase(MajorantKind.Convex, a, 1.0 - a, 1.0 - a * a)


def sub_bound(case: SubordinationCase, r: float) -> float:
    """Upper bound for ``|g(z)| + sum |b_k| r^k`` obtained from the growth estimate.

    Univalent: ``|f(0)| + dist0 * 8r/(1-r)^2``; convex: ``|f(0)| + dist0 * 4r/(1-r)``.
    """
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r}")
    if case.majorant is MajorantKind.Univalent:
        growth = 8.0 * r / (1.0 - r) ** 2
    else:
        growth = 4.0 * r / (1.0 - r)
    return case.f0_modulus + case.dist0 * growth


def verify_subordinate(g: TruncatedPowerSeries, case: SubordinationCase, r: float,
                       z: Optional[complex] = None, tol: float = DEFAULT_TOL,
                       classical: bool = False) -> VerificationReport:
    """Check the distance-form inequality for g at the point z (default z = r).

    ``classical=True`` checks the self-map version with ``1 - |g(z)|`` in
    place of the distance, i.e. the N = 1 Bohr--Rogosinski inequality.
    """
    if classical:
        return evaluate(FunctionalId(Kind.BR_Thm1_Eq1, N=1), g, r, z, tol)
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r}")
    z = complex(r) if z is None else complex(z)
    if abs(abs(z) - r) > 1e-12 * max(1.0, r):
        raise DomainError(f"|z| = {abs(z)} must equal r = {r}")
    err = g.weighted_tail(abs(z))
    certified = err is not None
    err = err or 0.0
    ts = tail_sum(g, 1, r)
    value = abs(series_eval(g, z)) + err + ts.upper
    bound = case.rhs
    margin = bound - value
    return VerificationReport(
        kind=f"Subordination {case.majorant.value}",
        value=float(value),
        bound=float(bound),
        margin=float(margin),
        passed=bool(margin >= -tol),
        r=float(r),
        z=z,
        function_descriptor=g.label or repr(g),
        tol=tol,
        tail=float(err + ts.tail),
        certified=certified and ts.certified,
    )


@dataclass
class CoefficientReport:
    majorant: MajorantKind
    checked: int
    violations: List[int] = field(default_factory=list)
    max_ratio: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations


def coefficient_bound_check(g: TruncatedPowerSeries, case: SubordinationCase,
                            tol: float = 1e-12) -> CoefficientReport:
    """``|b_k| <= k |f'(0)|`` (univalent) or ``|b_k| <= |f'(0)|`` (convex) for 1 <= k <= M.

    ``max_ratio`` is the largest |b_k| / allowed bound; 1 means equality somewhere.
    """
    b = np.abs(g.coeffs[1:])
    k = np.arange(1, g.coeffs.size, dtype=float)
    allowed = case.deriv0_modulus * (k if case.majorant is MajorantKind.Univalent else np.ones_like(k))
    bad = [int(i) for i in np.nonzero(b > allowed + tol * np.maximum(1.0, allowed))[0] + 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(allowed > 0, b / np.where(allowed > 0, allowed, 1.0), np.where(b > 0, np.inf, 0.0))
    return CoefficientReport(case.majorant, int(b.size), bad, float(ratios.max()) if ratios.size else 0.0)


def distortion_chain(g: TruncatedPowerSeries, case: SubordinationCase, z: complex) -> tuple:
    """Three terms of ``|g(z) - g(0)| <= |b_1| r/(1-r)^2 <= dist0 * c r/(1-r)^2``.

    c is 4 for a univalent majorant and 2 for a convex one (the reciprocal of
    the lower distance constant).  Returns the terms; the middle one uses
    |b_1|.  The left term includes the truncation error bound.
    """
    z = complex(z)
    r = abs(z)
    if not r < 1.0:
        raise DomainError("|z| must be < 1")
    err = g.weighted_tail(r) or 0.0
    left = abs(series_eval(g, z) - g.coeffs[0]) + err
    growth = r / (1.0 - r) ** 2
    middle = abs(g.coeffs[1]) * growth if g.coeffs.size > 1 else 0.0
    right = case.dist0 * growth / case.majorant.dist_factor
    return float(left), float(middle), float(right)
