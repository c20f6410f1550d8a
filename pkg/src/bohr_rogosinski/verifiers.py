"""Bohr and Bohr--Rogosinski type functionals, their bounds, and sharpness scans.

Every functional is evaluated as a certified upper value: the truncated sum
plus a bound on the dropped tail.  Pointwise terms |f(z)| use
``|f(z)| <= |S(z)| + sum_{k>M} |a_k| |z|^k``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from .disk_maps import DEFAULT_ORDER, moebius_extremal, random_self_map, reflected_moebius
from .radius import SQRT_11_27, Family, RadiusEquation, solve
from .series import (
    DomainError,
    TruncatedPowerSeries,
    area_functional,
    bohr_sum,
    partial_sum,
    series_eval,
    tail_sum,
)

__all__ = [
    "DEFAULT_TOL",
    "Kind",
    "FunctionalId",
    "VerificationReport",
    "SharpnessScanResult",
    "FuzzTrial",
    "FuzzReport",
    "theorem_radius",
    "evaluate",
    "evaluate_on_circle",
    "sharpness_scan",
    "property_fuzz",
]

DEFAULT_TOL = 1e-9
LEMMA1_RADIUS = 1.0 / math.sqrt(2.0)
CIRCLE_POINTS = 64


class Kind(enum.Enum):
    BohrClassic = "bohr"
    RogosinskiPartial = "rogosinski"
    BR_Thm1_Eq1 = "br1"
    BR_Thm1_Eq2 = "br1sq"
    BR_Thm2 = "br2"
    Thm3_B1 = "b1"
    Thm3_B2 = "b2"
    Thm4 = "thm4"
    Thm5_DistSq = "thm5"
    ThmSqrt1127 = "sqrt1127"
    Lemma1 = "lemma1"
    Bound_A = "bound-a"
    Bound_B = "bound-b"
    Bound_Eq9 = "eq9"
    SchwarzPick = "schwarz-pick"
    Wiener = "wiener"


# kinds whose right-hand side is the constant 1
UNIT_BOUND_KINDS = frozenset({
    Kind.BohrClassic, Kind.RogosinskiPartial, Kind.BR_Thm1_Eq1, Kind.BR_Thm1_Eq2,
    Kind.BR_Thm2, Kind.Thm3_B1, Kind.Thm3_B2, Kind.Thm4, Kind.Thm5_DistSq,
    Kind.ThmSqrt1127,
})
# kinds whose left-hand side depends on the point z and not only on r
POINTWISE_KINDS = frozenset({
    Kind.RogosinskiPartial, Kind.BR_Thm1_Eq1, Kind.BR_Thm1_Eq2, Kind.BR_Thm2,
    Kind.Thm5_DistSq, Kind.ThmSqrt1127, Kind.SchwarzPick,
})
DEFAULT_LAM = {Kind.Thm3_B1: 16.0 / 9.0, Kind.Thm3_B2: 9.0 / 8.0, Kind.Thm4: 0.5}


@dataclass(frozen=True)
class FunctionalId:
    """Which functional to evaluate.

    ``lam`` multiplies the area term for Thm3_B1/B2 (defaults 16/9, 9/8) and
    the squared-coefficient term for Thm4 (default 1/2); it is ignored by the
    other kinds.
    """

    kind: Kind
    N: int = 1
    m: int = 1
    lam: Optional[float] = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        for name in ("N", "m"):
            val = getattr(self, name)
            if int(val) != val or val < 1:
                raise DomainError(f"{name} must be a positive integer, got {val}")
            object.__setattr__(self, name, int(val))
        if self.lam is None:
            object.__setattr__(self, "lam", DEFAULT_LAM.get(kind))
        elif kind not in DEFAULT_LAM:
            raise DomainError(f"{kind.name} takes no constant lam")
        elif not self.lam > 0:
            raise DomainError("lam must be positive")

    def describe(self) -> str:
        parts = [self.kind.name]
        if self.kind in (Kind.RogosinskiPartial, Kind.BR_Thm1_Eq1, Kind.BR_Thm1_Eq2, Kind.BR_Thm2):
            parts.append(f"N={self.N}")
        if self.kind is Kind.BR_Thm2:
            parts.append(f"m={self.m}")
        if self.lam is not None:
            parts.append(f"lam={self.lam:.12g}")
        return " ".join(parts)


@dataclass
class VerificationReport:
    kind: str
    value: float
    bound: float
    margin: float
    passed: bool
    r: float
    z: Optional[complex]
    function_descriptor: str
    tol: float = DEFAULT_TOL
    tail: float = 0.0
    certified: bool = True

    def as_row(self) -> dict:
        row = asdict(self)
        z = row.pop("z")
        row["z_re"] = None if z is None else z.real
        row["z_im"] = None if z is None else z.imag
        return row


@dataclass
class SharpnessScanResult:
    r: float
    sup_value: float
    argmax_a: float
    exceeded: bool
    bound: float
    grid: str
    values: List[tuple] = field(default_factory=list, repr=False)


@dataclass
class FuzzTrial:
    trial: int
    seed: int
    degree: int
    margin: float
    passed: bool
    z: Optional[complex]


@dataclass
class FuzzReport:
    kind: str
    r: float
    results: List[FuzzTrial]
    tol: float

    @property
    def trials(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> List[FuzzTrial]:
        return [t for t in self.results if not t.passed]

    @property
    def worst_margin(self) -> float:
        return min(t.margin for t in self.results)

    @property
    def passed(self) -> bool:
        return not self.failures


def theorem_radius(fid: FunctionalId) -> Optional[float]:
    """Largest r for which the inequality is asserted; None if it holds on the whole disk."""
    k = fid.kind
    if k in (Kind.BohrClassic, Kind.Thm3_B1, Kind.Thm4, Kind.Thm5_DistSq):
        return 1.0 / 3.0
    if k in (Kind.RogosinskiPartial, Kind.Thm3_B2):
        return 0.5
    if k is Kind.BR_Thm1_Eq1:
        return solve(RadiusEquation(Family.PsiN, fid.N)).value
    if k is Kind.BR_Thm1_Eq2:
        return solve(RadiusEquation(Family.PrimeN, fid.N)).value
    if k is Kind.BR_Thm2:
        return solve(RadiusEquation(Family.MN, fid.N, fid.m)).value
    if k is Kind.ThmSqrt1127:
        return SQRT_11_27
    if k is Kind.Lemma1:
        return LEMMA1_RADIUS
    return None


class _Tails:
    """Collects tail bounds and whether every one of them was certified."""

    def __init__(self, f: TruncatedPowerSeries):
        self.f = f
        self.total = 0.0
        self.certified = True

    def get(self, s: float, power: int = 1, kweight: int = 0) -> float:
        t = self.f.weighted_tail(s, power, kweight)
        if t is None:
            self.certified = False
            return 0.0
        return t

    def add(self, x) -> float:
        """Accept a CertifiedSum, fold its tail in, return its upper value."""
        self.total += x.tail
        self.certified = self.certified and x.certified
        return x.upper


def _pointwise(f: TruncatedPowerSeries, w: complex, tails: _Tails) -> tuple:
    """(|S(w)|, error bound) where S is the retained polynomial."""
    return abs(series_eval(f, w)), tails.get(abs(w))


def evaluate(fid: FunctionalId, f: TruncatedPowerSeries, r: float,
             z: Optional[complex] = None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Certified left-hand side of the chosen inequality against its bound."""
    kind = fid.kind
    if f.unbounded:
        raise DomainError(f"{kind.name} needs a bounded self-map; got unbounded {f.label or 'series'}")
    if not f.self_map:
        raise DomainError(f"{kind.name} needs a series flagged as a self-map of the disk")
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r}")
    if kind is Kind.Lemma1 and r > LEMMA1_RADIUS:
        raise DomainError(f"Lemma1 bound requires r <= 1/sqrt(2), got {r}")
    if f.r_max is not None and r > f.r_max:
        raise DomainError(f"r = {r} exceeds the certified radius {f.r_max} of the series")
    if z is None:
        z = complex(-r)
    else:
        z = complex(z)
        if abs(z) > r * (1.0 + 1e-12) + 1e-15:
            raise DomainError(f"|z| = {abs(z)} exceeds r = {r}")

    a = f.coeffs
    absa = np.abs(a)
    a0 = float(absa[0])
    tails = _Tails(f)
    extra = 0.0  # tail contributions not routed through CertifiedSum
    bound = 1.0
    N = fid.N

    if kind is Kind.BohrClassic:
        value = tails.add(bohr_sum(f, r))
    elif kind is Kind.RogosinskiPartial:
        value = abs(series_eval(partial_sum(f, N), z))
    elif kind in (Kind.BR_Thm1_Eq1, Kind.BR_Thm1_Eq2):
        s, e = _pointwise(f, z, tails)
        extra += e
        fz = s + e
        value = (fz if kind is Kind.BR_Thm1_Eq1 else fz * fz) + tails.add(tail_sum(f, N, r))
    elif kind is Kind.BR_Thm2:
        s, e = _pointwise(f, z**fid.m, tails)
        extra += e
        value = s + e + tails.add(tail_sum(f, N, r))
    elif kind in (Kind.Thm3_B1, Kind.Thm3_B2):
        area = tails.add(area_functional(f, r))
        if kind is Kind.Thm3_B1:
            head = tails.add(bohr_sum(f, r))
        else:
            head = a0 * a0 + tails.add(tail_sum(f, 1, r))
        value = head + fid.lam * area
    elif kind is Kind.Thm4:
        k = np.arange(a.size, dtype=float)
        sq = float(np.dot(absa[1:] ** 2, r ** k[1:]))
        sq_tail = tails.get(r, power=2)
        extra += fid.lam * sq_tail
        value = tails.add(bohr_sum(f, r)) + fid.lam * (sq + sq_tail)
    elif kind is Kind.Thm5_DistSq:
        e = tails.get(abs(z))
        extra += e
        dist = abs(series_eval(f, z) - a[0]) + e
        value = tails.add(bohr_sum(f, r)) + dist * dist
    elif kind is Kind.ThmSqrt1127:
        s, e = _pointwise(f, z, tails)
        extra += e
        k = np.arange(a.size, dtype=float)
        sq = float(np.dot(absa[1:] ** 2, (r * r) ** k[1:]))
        sq_tail = tails.get(r * r, power=2)
        extra += sq_tail
        value = (s + e) ** 2 + sq + sq_tail
    elif kind is Kind.Lemma1:
        value = tails.add(area_functional(f, r))
        q = 1.0 - a0 * a0
        bound = r * r * q * q / (1.0 - a0 * a0 * r * r) ** 2
    elif kind in (Kind.Bound_A, Kind.Bound_B):
        if kind is Kind.Bound_A and a0 < r:
            raise DomainError(f"Bound_A applies only when |a_0| >= r (|a_0| = {a0:.6g}, r = {r})")
        if kind is Kind.Bound_B and a0 >= r:
            raise DomainError(f"Bound_B applies only when |a_0| < r (|a_0| = {a0:.6g}, r = {r})")
        value = tails.add(tail_sum(f, 1, r))
        if kind is Kind.Bound_A:
            bound = r * (1.0 - a0 * a0) / (1.0 - r * a0)
        else:
            bound = r * math.sqrt(1.0 - a0 * a0) / math.sqrt(1.0 - r * r)
    elif kind is Kind.Bound_Eq9:
        k = np.arange(a.size, dtype=float)
        sq_tail = tails.get(r, power=2)
        extra += sq_tail
        value = float(np.dot(absa[1:] ** 2, r ** k[1:])) + sq_tail
        q = 1.0 - a0 * a0
        bound = r * q * q / (1.0 - a0 * a0 * r)
    elif kind is Kind.SchwarzPick:
        s, e = _pointwise(f, z, tails)
        extra += e
        value = s + e
        bound = (r + a0) / (1.0 + a0 * r)
    elif kind is Kind.Wiener:
        value = float(absa[1:].max()) if a.size > 1 else 0.0
        bound = 1.0 - a0 * a0
    else:  # pragma: no cover - enum is exhaustive
        raise DomainError(f"unknown functional {kind}")

    value = float(value)
    margin = bound - value
    return VerificationReport(
        kind=fid.describe(),
        value=value,
        bound=float(bound),
        margin=float(margin),
        passed=bool(margin >= -tol),
        r=float(r),
        z=z if kind in POINTWISE_KINDS else None,
        function_descriptor=f.label or repr(f),
        tol=tol,
        tail=float(tails.total + extra),
        certified=tails.certified,
    )


def _applicable(fid: FunctionalId, f: TruncatedPowerSeries, r: float) -> FunctionalId:
    """Switch between Bound_A and Bound_B according to |a_0| versus r."""
    if fid.kind in (Kind.Bound_A, Kind.Bound_B):
        kind = Kind.Bound_A if abs(f.coeffs[0]) >= r else Kind.Bound_B
        return FunctionalId(kind, fid.N, fid.m)
    return fid


def evaluate_on_circle(fid: FunctionalId, f: TruncatedPowerSeries, r: float,
                       points: int = CIRCLE_POINTS, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Worst report over ``points`` equally spaced z on |z| = r (one call if z-independent)."""
    fid = _applicable(fid, f, r)
    if fid.kind not in POINTWISE_KINDS or r == 0.0:
        return evaluate(fid, f, r, None, tol)
    zs = r * np.exp(2j * math.pi * np.arange(points) / points)
    worst = None
    for z in zs:
        rep = evaluate(fid, f, r, complex(z), tol)
        if worst is None or rep.margin < worst.margin:
            worst = rep
    return worst


def _scan_family(fid: FunctionalId, r: float, M: int):
    """Extremal family and witness point for a sharpness scan."""
    if fid.kind is Kind.ThmSqrt1127:
        return (lambda a: reflected_moebius(a, M)), complex(r)
    if fid.kind is Kind.BR_Thm2:
        # z^m = -r^m so that |f(z^m)| = (r^m + a)/(1 + a r^m) on the Moebius family
        return (lambda a: moebius_extremal(a, M)), r * complex(math.cos(math.pi / fid.m), math.sin(math.pi / fid.m))
    return (lambda a: moebius_extremal(a, M)), complex(-r)


def sharpness_scan(fid: FunctionalId, r: float, grid_size: int = 64, M: int = DEFAULT_ORDER,
                   tol: float = DEFAULT_TOL, refine: int = 3) -> SharpnessScanResult:
    """Supremum of the functional over the extremal family at fixed r.

    The grid is ``a = i/grid_size`` together with ``a = 1 - 2^-j`` (j <= 40),
    followed by ``refine`` rounds of a uniform grid between the neighbours of
    the current maximiser.
    """
    if grid_size < 10:
        raise DomainError("grid_size must be >= 10")
    if not (0.0 < r < 1.0):
        raise DomainError(f"r must lie in (0, 1), got {r}")
    if fid.kind not in UNIT_BOUND_KINDS:
        raise DomainError(f"{fid.kind.name} has a function-dependent bound; no sharpness scan")
    make, z = _scan_family(fid, r, M)

    def value(a: float) -> float:
        return evaluate(fid, make(a), r, z, tol).value

    seen = {}
    for a in np.concatenate([np.arange(grid_size) / grid_size, 1.0 - 2.0 ** -np.arange(1, 41)]):
        a = float(a)
        if a not in seen and 0.0 <= a < 1.0:
            seen[a] = value(a)
    for _ in range(refine):
        xs = sorted(seen)
        i = max(range(len(xs)), key=lambda j: seen[xs[j]])
        lo = xs[max(i - 1, 0)]
        hi = xs[i + 1] if i + 1 < len(xs) else 0.5 * (xs[i] + 1.0)
        for a in np.linspace(lo, hi, grid_size):
            a = float(a)
            if a not in seen and 0.0 <= a < 1.0:
                seen[a] = value(a)
    argmax = max(seen, key=seen.get)
    sup = seen[argmax]
    return SharpnessScanResult(
        r=float(r),
        sup_value=float(sup),
        argmax_a=float(argmax),
        exceeded=bool(sup > 1.0 + tol),
        bound=1.0,
        grid=f"uniform {grid_size} + dyadic 1-2^-j (j<=40) + {refine} refinements; {len(seen)} points",
        values=sorted(seen.items()),
    )


def property_fuzz(fid: FunctionalId, r: float, trials: int, seed: int, max_degree: int = 5,
                  M: int = DEFAULT_ORDER, points: int = CIRCLE_POINTS,
                  tol: float = DEFAULT_TOL) -> FuzzReport:
    """Evaluate the functional on ``trials`` random finite Blaschke products.

    Trial i uses degree ``1 + i % max_degree`` and a seed drawn from
    ``SeedSequence(seed)``; failing trials are reproducible from the reported
    (seed, degree) via :func:`random_self_map`.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rho = theorem_radius(fid)
    if rho is not None and r > rho + 1e-15:
        raise DomainError(f"r = {r} lies above the radius {rho:.15g} of {fid.kind.name}")
    seeds = np.random.SeedSequence(int(seed)).generate_state(trials, dtype=np.uint32)
    results = []
    for i, s in enumerate(seeds):
        degree = 1 + i % max_degree
        f = random_self_map(int(s), degree, M)
        rep = evaluate_on_circle(fid, f, r, points, tol)
        results.append(FuzzTrial(i, int(s), degree, rep.margin, rep.passed, rep.z))
    return FuzzReport(fid.describe(), float(r), results, tol)
