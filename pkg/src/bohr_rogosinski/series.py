"""Truncated power series with certified tails.

A series stores the coefficients a_0..a_M of an analytic function on the unit
disk together with an optional certificate for the discarded part.  Two kinds
of certificate are supported and may coexist:

* a coefficient majorant ``|a_k| <= C * k**p * q**k`` for every ``k > M``;
* a scalar ``tail_bound`` on ``sum_{k>M} |a_k| r_max**k``.

Every functional below returns the truncated value together with an upper
bound for the discarded terms, so "<= 1" style checks can be made honestly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

__all__ = [
    "DomainError",
    "Majorant",
    "CertifiedSum",
    "TruncatedPowerSeries",
    "WIENER_TOL",
    "power_geometric_tail",
    "series_eval",
    "bohr_sum",
    "tail_sum",
    "partial_sum",
    "area_functional",
    "series_mul",
    "series_reciprocal_one_minus",
    "wiener_excess",
]

WIENER_TOL = 1e-12
# fallback certification radius for products of series that carry no r_max
DEFAULT_PRODUCT_RADIUS = 0.99


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class Majorant:
    """Coefficient majorant ``|a_k| <= const * k**kpow * ratio**k`` for k > order."""

    const: float
    ratio: float
    kpow: int = 0

    def __post_init__(self):
        if self.const < 0 or self.ratio < 0 or self.kpow < 0:
            raise DomainError(f"invalid majorant {self}")

    @property
    def is_zero(self) -> bool:
        return self.const == 0.0 or self.ratio == 0.0


def power_geometric_tail(p: int, x: float, start: int) -> float:
    """Upper bound for ``sum_{k >= start} k**p * x**k`` (start >= 1).

    Consecutive terms shrink by at most ``x * ((start+1)/start)**p``, so the
    sum is dominated by a geometric series with that ratio.  For p = 0 the
    bound is the exact geometric sum.  Returns ``inf`` when the dominating
    ratio is >= 1.
    """
    if start < 1:
        raise DomainError("start must be >= 1")
    if x == 0.0:
        return 0.0
    if x < 0:
        raise DomainError("x must be nonnegative")
    rho = x * ((start + 1) / start) ** p
    if rho >= 1.0:
        return math.inf
    # log-space first term avoids overflow of start**p before underflow of x**start
    log_first = p * math.log(start) + start * math.log(x)
    if log_first < -745.0:
        return 0.0
    return math.exp(log_first) / (1.0 - rho)


class CertifiedSum(NamedTuple):
    """A truncated nonnegative sum and a bound for what truncation dropped."""

    value: float
    tail: float
    certified: bool

    @property
    def upper(self) -> float:
        return self.value + self.tail

    def __float__(self) -> float:
        return self.upper


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.array(coeffs, dtype=complex).reshape(-1)
    if arr.size == 0:
        raise DomainError("a series needs at least one coefficient")
    if not np.all(np.isfinite(arr)):
        raise DomainError("coefficients must be finite")
    arr.setflags(write=False)
    return arr


def wiener_excess(coeffs: Sequence[complex]) -> float:
    """Largest amount by which the coefficients break ``|a_k| <= 1 - |a_0|^2``.

    Also accounts for ``|a_0| <= 1``.  A nonpositive result means the check
    passes.
    """
    c = np.abs(np.asarray(coeffs, dtype=complex))
    a0 = c[0]
    excess = a0 - 1.0
    if c.size > 1:
        excess = max(excess, float(c[1:].max()) - (1.0 - a0 * a0))
    return float(excess)


@dataclass(frozen=True, eq=False)
class TruncatedPowerSeries:
    """Coefficients a_0..a_M of an analytic function on the unit disk.

    ``self_map`` asserts |f| <= 1 on the disk; the Wiener coefficient bound is
    then checked on construction.  ``unbounded`` marks maps such as the Koebe
    function that must be rejected by self-map-only functionals.
    """

    coeffs: np.ndarray
    tail_bound: Optional[float] = None
    r_max: Optional[float] = None
    majorant: Optional[Majorant] = None
    self_map: bool = False
    unbounded: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))
        if self.r_max is not None and not (0.0 <= self.r_max < 1.0):
            raise DomainError(f"r_max must lie in [0, 1), got {self.r_max}")
        if self.tail_bound is not None and not self.tail_bound >= 0.0:
            raise DomainError(f"tail_bound must be >= 0, got {self.tail_bound}")
        if self.self_map and self.unbounded:
            raise DomainError("a series cannot be both a self-map and unbounded")
        if self.self_map:
            excess = wiener_excess(self.coeffs)
            if excess > WIENER_TOL:
                raise DomainError(
                    f"coefficients violate the Wiener bound by {excess:.3e}; "
                    "not a self-map of the disk"
                )

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_exact(self) -> bool:
        """True when the dropped tail is certified to vanish identically."""
        if self.majorant is not None and self.majorant.is_zero:
            return True
        return self.tail_bound == 0.0 and self.r_max is None

    @property
    def certified(self) -> bool:
        return self.majorant is not None or self.tail_bound is not None

    def with_order(self, order: int) -> "TruncatedPowerSeries":
        """Zero-pad an exact polynomial, or truncate (only if a certificate survives)."""
        if order == self.order:
            return self
        if order > self.order:
            if not self.is_exact:
                raise DomainError("cannot extend a series whose tail is not exactly zero")
            coeffs = np.concatenate([self.coeffs, np.zeros(order - self.order, complex)])
            return _replace(self, coeffs=coeffs)
        raise DomainError("use partial_sum to drop coefficients")

    def weighted_tail(self, s: float, power: int = 1, kweight: int = 0) -> Optional[float]:
        """Bound ``sum_{k>M} k**kweight * |a_k|**power * s**k``; None if uncertified."""
        if s < 0:
            raise DomainError("s must be nonnegative")
        M = self.order
        if s == 0.0:
            return 0.0
        candidates = []
        if self.majorant is not None:
            maj = self.majorant
            if maj.is_zero:
                return 0.0
            x = maj.ratio**power * s
            P = kweight + power * maj.kpow
            candidates.append(maj.const**power * power_geometric_tail(P, x, M + 1))
        if self.tail_bound is not None:
            T = self.tail_bound
            if T == 0.0 and self.r_max is None:
                return 0.0
            if self.r_max is None:
                # uniform in r < 1 forces |a_k| <= T for every k > M
                ratio = 1.0
            elif self.r_max == 0.0:
                ratio = math.inf
            else:
                ratio = 1.0 / self.r_max
            if power == 1 and kweight == 0 and (self.r_max is None or s <= self.r_max):
                candidates.append(T)
            x = ratio**power * s if math.isfinite(ratio) else math.inf
            if x < 1.0:
                candidates.append(T**power * power_geometric_tail(kweight, x, M + 1))
        if not candidates:
            return None
        return min(candidates)

    def tail(self, r: float) -> Optional[float]:
        """Bound on ``sum_{k>M} |a_k| r**k``; also bounds |f(z) - S_{M+1}(z)| for |z| <= r."""
        return self.weighted_tail(r)

    def __call__(self, z: complex) -> complex:
        return series_eval(self, z)

    def __repr__(self) -> str:
        name = self.label or "series"
        return f"<TruncatedPowerSeries {name} M={self.order} certified={self.certified}>"


def _replace(f: TruncatedPowerSeries, **changes) -> TruncatedPowerSeries:
    kw = dict(
        coeffs=f.coeffs,
        tail_bound=f.tail_bound,
        r_max=f.r_max,
        majorant=f.majorant,
        self_map=f.self_map,
        unbounded=f.unbounded,
        label=f.label,
    )
    kw.update(changes)
    return TruncatedPowerSeries(**kw)


def _check_radius(r: float, f: Optional[TruncatedPowerSeries] = None) -> None:
    if not (0.0 <= r < 1.0):
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    if f is not None and f.r_max is not None and r > f.r_max:
        raise DomainError(f"radius {r} exceeds the certified radius {f.r_max}")


def _tail_or_zero(f: TruncatedPowerSeries, s: float, power: int = 1, kweight: int = 0):
    t = f.weighted_tail(s, power, kweight)
    if t is None:
        return 0.0, False
    return t, True


def series_eval(f: TruncatedPowerSeries, z: complex) -> complex:
    """Horner evaluation of the retained polynomial.

    No tail correction is applied; ``f.tail(abs(z))`` bounds the truncation
    error when the series is certified.
    """
    z = complex(z)
    if f.r_max is not None and abs(z) > f.r_max:
        raise DomainError(f"|z| = {abs(z)} exceeds r_max = {f.r_max}")
    acc = 0j
    for c in f.coeffs[::-1]:
        acc = acc * z + c
    return acc


def _powers(r: float, n: int) -> np.ndarray:
    return r ** np.arange(n, dtype=float)


def bohr_sum(f: TruncatedPowerSeries, r: float) -> CertifiedSum:
    """Majorant series ``sum |a_k| r^k``."""
    _check_radius(r, f)
    value = float(np.dot(np.abs(f.coeffs), _powers(r, f.coeffs.size)))
    tail, ok = _tail_or_zero(f, r)
    return CertifiedSum(value, tail, ok)


def tail_sum(f: TruncatedPowerSeries, N: int, r: float) -> CertifiedSum:
    """``sum_{k >= N} |a_k| r^k``."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    _check_radius(r, f)
    N = int(N)
    absc = np.abs(f.coeffs)
    if N <= f.order:
        value = float(np.dot(absc[N:], r ** np.arange(N, f.coeffs.size, dtype=float)))
    else:
        value = 0.0
    tail, ok = _tail_or_zero(f, r)
    return CertifiedSum(value, tail, ok)


def partial_sum(f: TruncatedPowerSeries, N: int) -> TruncatedPowerSeries:
    """The polynomial ``S_N(z) = sum_{k<N} a_k z^k`` as an exact series."""
    if int(N) != N or not (1 <= N <= f.order + 1):
        raise DomainError(f"N must satisfy 1 <= N <= {f.order + 1}, got {N}")
    return TruncatedPowerSeries(
        f.coeffs[: int(N)],
        tail_bound=0.0,
        majorant=Majorant(0.0, 0.0),
        label=f"S_{int(N)}({f.label})" if f.label else "",
    )


def area_functional(f: TruncatedPowerSeries, r: float) -> CertifiedSum:
    """Normalised area ``S_r / pi = sum_{k>=1} k |a_k|^2 r^{2k}`` of f(|z| < r)."""
    _check_radius(r, f)
    k = np.arange(f.coeffs.size, dtype=float)
    value = float(np.dot(k * np.abs(f.coeffs) ** 2, (r * r) ** k))
    tail, ok = _tail_or_zero(f, r * r, power=2, kweight=1)
    return CertifiedSum(value, tail, ok)


def series_reciprocal_one_minus(a: complex, M: int) -> TruncatedPowerSeries:
    """Taylor coefficients of ``1/(1 - a z)`` up to order M with an exact geometric tail."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise DomainError(f"|a| must be < 1, got {abs(a)}")
    if M < 0:
        raise DomainError("M must be >= 0")
    coeffs = a ** np.arange(M + 1)
    return TruncatedPowerSeries(coeffs, majorant=Majorant(1.0, abs(a)))


def series_mul(
    f: TruncatedPowerSeries,
    g: TruncatedPowerSeries,
    r_max: Optional[float] = None,
) -> TruncatedPowerSeries:
    """Cauchy product truncated at the smaller order.

    Exact polynomials do not limit the order.  When a tail has to be
    certified it is a scalar bound at ``r_max`` (default: the smaller operand
    ``r_max``, else ``DEFAULT_PRODUCT_RADIUS``)::

        dropped products of kept terms + T_f (B_g + T_g) + T_g B_f
    """
    f_exact, g_exact = f.is_exact, g.is_exact
    if f_exact and g_exact:
        order = f.order + g.order
    elif f_exact:
        order = g.order
    elif g_exact:
        order = f.order
    else:
        order = min(f.order, g.order)

    full = np.convolve(f.coeffs, g.coeffs)
    coeffs = np.zeros(order + 1, complex)
    n = min(order + 1, full.size)
    coeffs[:n] = full[:n]
    self_map = f.self_map and g.self_map
    unbounded = f.unbounded or g.unbounded

    if f_exact and g_exact:
        return TruncatedPowerSeries(
            coeffs, tail_bound=0.0, majorant=Majorant(0.0, 0.0),
            self_map=self_map, unbounded=unbounded,
        )

    if r_max is None:
        radii = [x.r_max for x in (f, g) if x.r_max is not None]
        r0 = min(radii) if radii else DEFAULT_PRODUCT_RADIUS
    else:
        r0 = r_max
    _check_radius(r0)
    Tf = 0.0 if f_exact else f.weighted_tail(r0)
    Tg = 0.0 if g_exact else g.weighted_tail(r0)
    if Tf is None or Tg is None or not (math.isfinite(Tf) and math.isfinite(Tg)):
        return TruncatedPowerSeries(coeffs, self_map=self_map, unbounded=unbounded)

    Bf = float(np.dot(np.abs(f.coeffs), _powers(r0, f.coeffs.size)))
    Bg = float(np.dot(np.abs(g.coeffs), _powers(r0, g.coeffs.size)))
    dropped = 0.0
    if full.size > order + 1:
        ks = np.arange(order + 1, full.size, dtype=float)
        dropped = float(np.dot(np.abs(full[order + 1:]), r0**ks))
    T = dropped + Tf * (Bg + Tg) + Tg * Bf
    return TruncatedPowerSeries(
        coeffs, tail_bound=T, r_max=r0, self_map=self_map, unbounded=unbounded,
    )
