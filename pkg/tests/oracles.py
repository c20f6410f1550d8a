"""Independent oracles used to produce and cross-check frozen expected values.

Nothing here imports the package's arithmetic: coefficients come from a
Cauchy integral of the closed-form function, roots from exact rational
bisection.
"""
from fractions import Fraction

import numpy as np


def cauchy_coefficients(func, k_max, radius=0.5, points=2048):
    """a_k = (1/n) sum_j f(rho w_j) (rho w_j)^-k via the trapezoid rule (no FFT)."""
    j = np.arange(points)
    w = radius * np.exp(2j * np.pi * j / points)
    fw = np.asarray(func(w), dtype=complex)
    ks = np.arange(k_max + 1)[:, None]
    return (fw[None, :] * w[None, :] ** (-ks)).sum(axis=1) / points


def rational_bisection(poly, lo=Fraction(0), hi=Fraction(1), steps=80):
    """Root of ``poly`` (negative at lo, positive at hi) using exact Fractions."""
    for _ in range(steps):
        mid = (lo + hi) / 2
        if poly(mid) < 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def brute_sup(func, n=200001):
    """Max of func over a uniform grid of [0, 1)."""
    a = np.linspace(0.0, 1.0, n, endpoint=False)
    v = func(a)
    i = int(np.argmax(v))
    return float(v[i]), float(a[i])
