"""Extremal functions, test maps and random self-maps of the unit disk."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .series import (
    DomainError,
    Majorant,
    TruncatedPowerSeries,
    series_mul,
    series_reciprocal_one_minus,
)

__all__ = [
    "DEFAULT_ORDER",
    "RANDOM_ZERO_RADIUS",
    "MoebiusParam",
    "BlaschkeSpec",
    "moebius_extremal",
    "reflected_moebius",
    "koebe",
    "half_plane",
    "blaschke_product",
    "random_blaschke_spec",
    "random_self_map",
]

DEFAULT_ORDER = 200
RANDOM_ZERO_RADIUS = 0.9


@dataclass(frozen=True)
class MoebiusParam:
    a: float

    def __post_init__(self):
        if not (0.0 <= self.a < 1.0):
            raise DomainError(f"Moebius parameter must lie in [0, 1), got {self.a}")


@dataclass(frozen=True)
class BlaschkeSpec:
    """Zeros and unimodular factor of ``u * prod (z_j - z) / (1 - conj(z_j) z)``."""

    zeros: tuple
    unimodular_factor: complex = 1.0 + 0j

    def __post_init__(self):
        zeros = tuple(complex(z) for z in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "unimodular_factor", complex(self.unimodular_factor))
        for z in zeros:
            if not abs(z) < 1.0:
                raise DomainError(f"Blaschke zero {z} is not inside the unit disk")
        if abs(abs(self.unimodular_factor) - 1.0) > 1e-12:
            raise DomainError("unimodular factor must have modulus 1")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        """Closed-form value of the product (works on arrays)."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.unimodular_factor, dtype=complex)
        for w in self.zeros:
            out = out * (w - z) / (1.0 - np.conj(w) * z)
        return out if out.shape else complex(out)


def _param(a: Union[float, MoebiusParam]) -> float:
    if isinstance(a, MoebiusParam):
        return a.a
    return MoebiusParam(float(a)).a


def _geometric_majorant(a: float) -> Majorant:
    # |a_k| = (1 - a^2) a^(k-1) = ((1 - a^2)/a) a^k
    if a == 0.0:
        return Majorant(0.0, 0.0)
    return Majorant((1.0 - a * a) / a, a)


def moebius_extremal(a: Union[float, MoebiusParam], M: int = DEFAULT_ORDER) -> TruncatedPowerSeries:
    """``(a - z)/(1 - a z) = a - (1 - a^2) sum a^(k-1) z^k``."""
    a = _param(a)
    if M < 1:
        raise DomainError("M must be >= 1")
    coeffs = np.empty(M + 1)
    coeffs[0] = a
    coeffs[1:] = -(1.0 - a * a) * a ** np.arange(M)
    return TruncatedPowerSeries(
        coeffs, majorant=_geometric_majorant(a), self_map=True, label=f"moebius(a={a:g})"
    )


def reflected_moebius(a: Union[float, MoebiusParam], M: int = DEFAULT_ORDER) -> TruncatedPowerSeries:
    """``(z + a)/(1 + a z) = a + (1 - a^2) sum (-a)^(k-1) z^k``."""
    a = _param(a)
    if M < 1:
        raise DomainError("M must be >= 1")
    coeffs = np.empty(M + 1)
    coeffs[0] = a
    coeffs[1:] = (1.0 - a * a) * (-a) ** np.arange(M)
    return TruncatedPowerSeries(
        coeffs, majorant=_geometric_majorant(a), self_map=True, label=f"reflected(a={a:g})"
    )


def koebe(M: int = DEFAULT_ORDER) -> TruncatedPowerSeries:
    """Koebe function ``z/(1 - z)^2``; not bounded on the disk."""
    if M < 1:
        raise DomainError("M must be >= 1")
    return TruncatedPowerSeries(
        np.arange(M + 1, dtype=float), majorant=Majorant(1.0, 1.0, kpow=1),
        unbounded=True, label="koebe",
    )


def half_plane(M: int = DEFAULT_ORDER) -> TruncatedPowerSeries:
    """Convex map ``z/(1 - z)`` onto the half-plane Re w > -1/2."""
    if M < 1:
        raise DomainError("M must be >= 1")
    coeffs = np.ones(M + 1)
    coeffs[0] = 0.0
    return TruncatedPowerSeries(
        coeffs, majorant=Majorant(1.0, 1.0), unbounded=True, label="halfplane",
    )


def _cauchy_majorant(spec: BlaschkeSpec, M: int) -> Majorant:
    """Cauchy estimate ``|a_k| <= max_{|z|=R} |B| * R^-k`` with R in (1, 1/max|z_j|).

    R is chosen to minimise the bound on the first dropped coefficient.
    """
    mods = np.abs(np.array(spec.zeros, dtype=complex))
    rho = float(mods.max()) if mods.size else 0.0
    if rho == 0.0:
        if M >= spec.degree:
            return Majorant(0.0, 0.0)
        return Majorant(1.0, 1.0)
    R = 1.0 + (1.0 / rho - 1.0) * np.linspace(0.01, 0.99, 99)
    logC = np.sum(np.log(R[:, None] + mods[None, :]) - np.log(1.0 - R[:, None] * mods[None, :]), axis=1)
    score = logC - (M + 1) * np.log(R)
    i = int(np.argmin(score))
    return Majorant(float(np.exp(logC[i])), float(1.0 / R[i]))


def blaschke_product(spec: BlaschkeSpec, M: int = DEFAULT_ORDER) -> TruncatedPowerSeries:
    """Taylor coefficients of a finite Blaschke product.

    Factors use the convention ``(z_j - z)/(1 - conj(z_j) z)`` so that a single
    real zero a reproduces :func:`moebius_extremal`.  Coefficients come from
    series arithmetic; the tail certificate is replaced by a Cauchy estimate
    on a circle of radius > 1, valid for every r < 1.
    """
    if M < 1:
        raise DomainError("M must be >= 1")
    prod = TruncatedPowerSeries([spec.unimodular_factor], tail_bound=0.0, majorant=Majorant(0.0, 0.0))
    for w in spec.zeros:
        numer = TruncatedPowerSeries([w, -1.0], tail_bound=0.0, majorant=Majorant(0.0, 0.0))
        factor = series_mul(numer, series_reciprocal_one_minus(np.conj(w), M))
        prod = series_mul(prod, factor)
    if prod.order < M:
        prod = prod.with_order(M)
    coeffs = prod.coeffs[: M + 1]
    zs = ", ".join(f"{z:.6g}" for z in spec.zeros)
    return TruncatedPowerSeries(
        coeffs, majorant=_cauchy_majorant(spec, M), self_map=True,
        label=f"blaschke(zeros=[{zs}])",
    )


def random_blaschke_spec(seed: int, degree: int, radius: float = RANDOM_ZERO_RADIUS) -> BlaschkeSpec:
    """Zeros uniform in ``|z| <= radius``, unimodular factor uniform on the circle.

    Uses the counter-based Philox generator so the result depends on the seed
    only.
    """
    if degree < 1:
        raise DomainError("degree must be >= 1")
    rng = np.random.Generator(np.random.Philox(int(seed)))
    u, v = rng.random(degree), rng.random(degree)
    zeros = radius * np.sqrt(u) * np.exp(2j * math.pi * v)
    theta = 2.0 * math.pi * rng.random()
    return BlaschkeSpec(tuple(zeros), complex(math.cos(theta), math.sin(theta)))


def random_self_map(seed: int, degree: int, M: int = DEFAULT_ORDER) -> TruncatedPowerSeries:
    return blaschke_product(random_blaschke_spec(seed, degree), M)
