"""Radii defined as the positive root of an explicit equation on (0, 1).

Each family is encoded so that the defining function is negative near 0 and
positive near 1; the radius is the unique sign change, located by bisection.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional

import numpy as np

from .series import DomainError

__all__ = [
    "Family",
    "RadiusEquation",
    "RootResult",
    "RootNotFound",
    "SQRT_11_27",
    "DEFAULT_TOLERANCE",
    "BRACKET",
    "solve",
    "closed_form",
    "sign_changes",
    "lipschitz_estimate",
    "LimitReport",
    "limit_checks",
]

DEFAULT_TOLERANCE = 1e-12
BRACKET = (1e-9, 1.0 - 1e-9)
SCAN_STEP = 1e-3
SQRT_11_27 = math.sqrt(11.0 / 27.0)


class RootNotFound(RuntimeError):
    """The defining function does not change sign exactly once on the bracket."""


class Family(enum.Enum):
    PsiN = "psi"
    PrimeN = "prime"
    MN = "mn"
    AN = "an"
    UnivalentSub = "univalent"
    ConvexSub = "convex"

    @property
    def needs_n(self) -> bool:
        return self in (Family.PsiN, Family.PrimeN, Family.MN, Family.AN)

    @property
    def needs_m(self) -> bool:
        return self is Family.MN


@dataclass(frozen=True)
class RadiusEquation:
    family: Family
    N: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        for name, needed in (("N", fam.needs_n), ("m", fam.needs_m)):
            val = getattr(self, name)
            if needed:
                if val is None or int(val) != val or val < 1:
                    raise DomainError(f"{fam.name} needs a positive integer {name}, got {val}")
                object.__setattr__(self, name, int(val))
            elif val is not None:
                raise DomainError(f"{fam.name} takes no parameter {name}")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        N, m = self.N, self.m
        fam = self.family
        if fam is Family.PsiN:
            out = 2.0 * (1.0 + r) * r**N - (1.0 - r) ** 2
        elif fam is Family.PrimeN:
            out = (1.0 + r) * r**N - (1.0 - r) ** 2
        elif fam is Family.MN:
            out = 2.0 * r**N * (1.0 + r**m) - (1.0 - r) * (1.0 - r**m)
        elif fam is Family.AN:
            out = 2.0 * r**N - (1.0 - r)
        elif fam is Family.UnivalentSub:
            out = 8.0 * r - (1.0 - r) ** 2
        else:
            out = 4.0 * r - (1.0 - r)
        return float(out) if out.ndim == 0 else out

    def describe(self) -> str:
        params = [f"{k}={v}" for k, v in (("N", self.N), ("m", self.m)) if v is not None]
        return self.family.name + (f"({', '.join(params)})" if params else "")


@dataclass(frozen=True)
class RootResult:
    value: float
    bracket: tuple
    residual: float
    iterations: int
    equation: RadiusEquation = field(compare=False, default=None)


def sign_changes(func: Callable, lo: float = BRACKET[0], hi: float = BRACKET[1],
                 step: float = SCAN_STEP) -> List[float]:
    """Grid points just before each sign change of ``func`` (exact zeros skipped)."""
    n = max(2, int(math.ceil((hi - lo) / step)) + 1)
    grid = np.linspace(lo, hi, n)
    s = np.sign(func(grid))
    keep = s != 0
    grid, s = grid[keep], s[keep]
    flips = np.nonzero(s[:-1] != s[1:])[0]
    return [float(grid[i]) for i in flips]


def solve(eq: RadiusEquation, tolerance: float = DEFAULT_TOLERANCE) -> RootResult:
    """Bisection for the unique root of ``eq`` in (0, 1).

    Uniqueness is checked empirically by a sign scan at step 1e-3 before
    bisecting; the returned bracket has width <= tolerance and straddles the
    sign change.
    """
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")
    lo, hi = BRACKET
    flo, fhi = eq(lo), eq(hi)
    if not (flo < 0.0 < fhi):
        raise RootNotFound(f"{eq.describe()}: no sign change on [{lo}, {hi}]")
    changes = sign_changes(eq, lo, hi)
    if len(changes) != 1:
        raise RootNotFound(f"{eq.describe()}: {len(changes)} sign changes found on (0, 1)")

    it = 0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = eq(mid)
        it += 1
        if fm == 0.0:
            lo = hi = mid
            break
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
    value = 0.5 * (lo + hi)
    if hi > lo:
        # one regula falsi step; it can only move the estimate inside the bracket
        flo, fhi = eq(lo), eq(hi)
        if flo < 0.0 < fhi:
            cand = lo - flo * (hi - lo) / (fhi - flo)
            if lo <= cand <= hi and abs(eq(cand)) <= abs(eq(value)):
                value = cand
    return RootResult(value, (lo, hi), float(eq(value)), it, eq)


def closed_form(eq: RadiusEquation) -> Optional[float]:
    """Exact value of the radius when one is known, else None."""
    fam, N = eq.family, eq.N
    if fam is Family.PsiN and N == 1:
        return math.sqrt(5.0) - 2.0
    if fam is Family.PrimeN and N == 1:
        return 1.0 / 3.0
    if fam is Family.AN and N == 1:
        return 1.0 / 3.0
    if fam is Family.AN and N == 2:
        return 0.5
    if fam is Family.UnivalentSub:
        return 5.0 - 2.0 * math.sqrt(6.0)
    if fam is Family.ConvexSub:
        return 0.2
    return None


def lipschitz_estimate(eq: RadiusEquation, lo: float = 0.0, hi: float = 1.0, points: int = 4001) -> float:
    """Largest finite-difference slope of ``eq`` on a grid of [lo, hi]."""
    grid = np.linspace(lo, hi, points)
    vals = eq(grid)
    return float(np.max(np.abs(np.diff(vals)) / np.diff(grid)))


@dataclass
class LimitReport:
    family: Family
    values: dict
    monotone_in_n: bool
    violations: List[str] = field(default_factory=list)
    observations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def limit_checks(family, ns: Iterable[int], m: int = 1, ms: Iterable[int] = (),
                 tolerance: float = DEFAULT_TOLERANCE, m_limit: int = 64,
                 limit_gap: float = 1e-3, n_limit: int = 64, one_gap: float = 0.1) -> LimitReport:
    """Monotonicity in N and the limiting behaviour of the radius families.

    * the radius increases strictly with N over ``ns``;
    * ``1 - R(n_limit) < one_gap`` (radii tend to 1);
    * for MN: ``|R_{m_limit,N} - A_N| < limit_gap`` for each N in ``ns``, and
      the approach to A_N along ``ms`` is recorded as an observation.
    """
    family = Family(family)
    ns = list(ns)
    if not ns:
        raise DomainError("range of N must be nonempty")

    def make(N, mm=None):
        if family is Family.MN:
            return RadiusEquation(family, N, mm if mm is not None else m)
        return RadiusEquation(family, N)

    values = {N: solve(make(N), tolerance).value for N in ns}
    violations, observations = [], []
    seq = [values[N] for N in ns]
    monotone = all(b > a for a, b in zip(seq, seq[1:]))
    if not monotone:
        violations.append(f"{family.name} radii not strictly increasing in N over {ns}")

    far = solve(make(n_limit), tolerance).value
    if not (1.0 - far < one_gap):
        violations.append(f"1 - R({n_limit}) = {1.0 - far:.3e} not below {one_gap}")

    if family is Family.MN:
        for N in ns:
            a_n = solve(RadiusEquation(Family.AN, N), tolerance).value
            gap = abs(solve(make(N, m_limit), tolerance).value - a_n)
            if not gap < limit_gap:
                violations.append(f"|R_{{{m_limit},{N}}} - A_{N}| = {gap:.3e} >= {limit_gap}")
            ms_list = list(ms)
            if ms_list:
                gaps = [abs(solve(make(N, mm), tolerance).value - a_n) for mm in ms_list]
                trend = "decreasing" if all(b <= a for a, b in zip(gaps, gaps[1:])) else "not monotone"
                observations.append(f"N={N}: |R_m,N - A_N| over m={ms_list} is {trend}")
    return LimitReport(family, values, monotone, violations, observations)
