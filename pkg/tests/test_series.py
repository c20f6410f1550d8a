import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bohr_rogosinski.disk_maps import moebius_extremal, random_self_map
from bohr_rogosinski.series import (
    DomainError,
    Majorant,
    TruncatedPowerSeries,
    area_functional,
    bohr_sum,
    partial_sum,
    power_geometric_tail,
    series_eval,
    series_mul,
    series_reciprocal_one_minus,
    tail_sum,
)


def poly(coeffs, **kw):
    return TruncatedPowerSeries(coeffs, tail_bound=0.0, majorant=Majorant(0.0, 0.0), **kw)


IDENTITY = poly([0, 1], self_map=True)


# --- eval -----------------------------------------------------------------

def test_eval_identity():
    assert series_eval(IDENTITY, 0.5) == 0.5


def test_eval_moebius_a0_at_minus_r():
    f = moebius_extremal(0.0, 5)
    assert series_eval(f, -0.3) == pytest.approx(0.3, abs=1e-15)


def test_eval_moebius_half_at_minus_third():
    f = moebius_extremal(0.5, 50)
    r = 1.0 / 3.0
    expected = (r + 0.5) / (1 + 0.5 * r)
    assert expected == pytest.approx(5.0 / 7.0, abs=1e-15)
    assert abs(series_eval(f, -r) - expected) <= f.tail(r) + 1e-15


def test_eval_outside_r_max():
    f = TruncatedPowerSeries([1.0, 0.5], tail_bound=0.1, r_max=0.5)
    with pytest.raises(DomainError):
        series_eval(f, 0.6)


# --- bohr_sum / tail_sum ------------------------------------------------

def test_bohr_sum_identity():
    s = bohr_sum(IDENTITY, 1.0 / 3.0)
    assert s.upper == pytest.approx(1.0 / 3.0, abs=1e-16)
    assert s.certified


def test_bohr_sum_moebius_closed_form():
    a, r = 0.9, 1.0 / 3.0
    closed = a + (1 - a * a) * r / (1 - a * r)
    assert closed == pytest.approx(0.990476190476190, abs=1e-12)
    s = bohr_sum(moebius_extremal(a), r)
    assert s.value <= closed <= s.upper + 1e-15
    assert s.upper - closed < 1e-12


@pytest.mark.parametrize("c", [0.0, 0.3, -0.7j, 1.0])
def test_bohr_sum_constant(c):
    f = poly([c])
    assert bohr_sum(f, 0.8).upper == pytest.approx(abs(c))


def test_bohr_sum_uncertified_flag():
    f = TruncatedPowerSeries([0.2, 0.3])
    s = bohr_sum(f, 0.5)
    assert not s.certified and s.tail == 0.0


@pytest.mark.parametrize("r", [-0.1, 1.0, 1.5])
def test_bohr_sum_domain(r):
    with pytest.raises(DomainError):
        bohr_sum(IDENTITY, r)


def test_tail_sum_identity_beyond_degree():
    assert tail_sum(IDENTITY, 2, 0.7).upper == 0.0


def test_tail_sum_moebius_closed_form():
    a, N, r = 0.5, 2, 0.3
    closed = (1 - a * a) * a ** (N - 1) * r**N / (1 - a * r)
    assert closed == pytest.approx(0.0397058823529412, abs=1e-13)
    assert tail_sum(moebius_extremal(a), N, r).upper == pytest.approx(closed, abs=1e-14)


def test_tail_sum_constant():
    assert tail_sum(poly([0.4]), 1, 0.5).upper == 0.0


@pytest.mark.parametrize("N,r", [(0, 0.5), (-1, 0.5), (1, 1.0), (1.5, 0.2)])
def test_tail_sum_domain(N, r):
    with pytest.raises(DomainError):
        tail_sum(IDENTITY, N, r)


# --- partial_sum ----------------------------------------------------------

def test_partial_sum_identity_n1():
    s = partial_sum(IDENTITY, 1)
    assert np.array_equal(s.coeffs, [0])
    assert s.tail(0.9) == 0.0


def test_partial_sum_moebius():
    s = partial_sum(moebius_extremal(0.5, 10), 2)
    assert np.allclose(s.coeffs, [0.5, -0.75], atol=0)


def test_partial_sum_full_prefix():
    f = moebius_extremal(0.3, 7)
    s = partial_sum(f, f.order + 1)
    assert np.array_equal(s.coeffs, f.coeffs)
    assert s.tail_bound == 0.0


@pytest.mark.parametrize("N", [0, 9])
def test_partial_sum_domain(N):
    with pytest.raises(DomainError):
        partial_sum(moebius_extremal(0.3, 7), N)


# --- area -------------------------------------------------------------------

def test_area_identity():
    assert area_functional(IDENTITY, 0.4).upper == pytest.approx(0.16)


def test_area_constant():
    assert area_functional(poly([0.9]), 0.4).upper == 0.0


def test_area_moebius_closed_form_and_direct_sum():
    a, r = 0.5, 1.0 / 3.0
    closed = (1 - a * a) ** 2 * r * r / (1 - a * a * r * r) ** 2
    # independent route: sum k (1-a^2)^2 a^(2(k-1)) r^(2k) term by term
    direct = sum(k * (1 - a * a) ** 2 * a ** (2 * (k - 1)) * r ** (2 * k) for k in range(1, 201))
    assert closed == pytest.approx(direct, rel=1e-14)
    assert closed == pytest.approx(81 / 1225, rel=1e-14)
    assert area_functional(moebius_extremal(a), r).upper == pytest.approx(closed, rel=1e-12)


@pytest.mark.parametrize("a", [0.0, 0.2, 0.5, 0.8, 0.95])
@pytest.mark.parametrize("r", [0.1, 0.4, 0.7, 0.9])
def test_area_moebius_grid(a, r):
    closed = (1 - a * a) ** 2 * r * r / (1 - a * a * r * r) ** 2
    s = area_functional(moebius_extremal(a, 200), r)
    assert s.upper == pytest.approx(closed, rel=1e-10)
    assert s.value <= closed * (1 + 1e-13)


# --- products ---------------------------------------------------------------

def test_mul_ones():
    one = poly([1.0])
    out = series_mul(one, one)
    assert np.array_equal(out.coeffs, [1.0])
    assert out.is_exact


def test_reciprocal_geometric():
    s = series_reciprocal_one_minus(0.5, 3)
    assert np.allclose(s.coeffs, [1, 0.5, 0.25, 0.125], atol=0)
    r = 0.6
    assert s.tail(r) == pytest.approx(0.5**4 * r**4 / (1 - 0.5 * r), rel=1e-14)


def test_reciprocal_domain():
    with pytest.raises(DomainError):
        series_reciprocal_one_minus(1.0, 3)
    with pytest.raises(DomainError):
        series_reciprocal_one_minus(0.6 + 0.8j, 3)


def test_mul_reproduces_moebius_coefficients():
    out = series_mul(poly([0.5, -1.0]), series_reciprocal_one_minus(0.5, 2))
    assert np.allclose(out.coeffs, [0.5, -0.75, -0.375], atol=1e-15)


@pytest.mark.parametrize("a", [i / 10 for i in range(10)])
def test_mul_factored_moebius_grid(a):
    M = 60
    out = series_mul(poly([a, -1.0]), series_reciprocal_one_minus(a, M))
    # a = 0 gives an exact polynomial factor, which does not cap the order
    assert out.order >= M
    assert np.max(np.abs(out.coeffs[: M + 1] - moebius_extremal(a, M).coeffs)) < 1e-12


def test_mul_tail_is_sound():
    # (1/(1-0.5z))^2 = sum (k+1) 0.5^k z^k
    g = series_reciprocal_one_minus(0.5, 10)
    out = series_mul(g, g, r_max=0.8)
    k = np.arange(11)
    assert np.allclose(out.coeffs, (k + 1) * 0.5**k)
    true_tail = sum((k + 1) * 0.5**k * 0.8**k for k in range(11, 2000))
    # all terms positive here, so the bound is attained up to rounding
    assert true_tail <= out.tail(0.8) * (1 + 1e-12)
    assert out.tail(0.8) <= 1.01 * true_tail


def test_mul_truncates_to_smaller_order():
    f = series_reciprocal_one_minus(0.3, 5)
    g = series_reciprocal_one_minus(0.2, 9)
    assert series_mul(f, g).order == 5


def test_power_geometric_tail_matches_sum():
    exact = sum(k * 0.7**k for k in range(11, 5000))
    bound = power_geometric_tail(1, 0.7, 11)
    assert exact <= bound <= 1.5 * exact
    assert power_geometric_tail(0, 0.5, 4) == pytest.approx(0.5**4 / 0.5)
    assert power_geometric_tail(0, 1.0, 4) == math.inf


def test_wiener_enforced_for_self_maps():
    with pytest.raises(DomainError):
        TruncatedPowerSeries([0.8, 0.5], self_map=True)
    TruncatedPowerSeries([0.8, 0.36], self_map=True)


# --- properties -------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=2**32 - 1)
degrees = st.integers(min_value=1, max_value=5)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, degree=degrees)
def test_wiener_holds_for_random_maps(seed, degree):
    f = random_self_map(seed, degree)
    absc = np.abs(f.coeffs)
    assert np.all(absc[1:] <= 1 - absc[0] ** 2 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, degree=degrees)
def test_bohr_sum_nondecreasing(seed, degree):
    f = random_self_map(seed, degree, 80)
    vals = [bohr_sum(f, r).value for r in np.linspace(0, 0.95, 40)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@settings(max_examples=40, deadline=None)
@given(seed=seeds, degree=degrees, r=st.floats(0.0, 0.95))
def test_tail_sum_one_is_bohr_minus_a0(seed, degree, r):
    f = random_self_map(seed, degree, 80)
    lhs = tail_sum(f, 1, r)
    rhs = bohr_sum(f, r)
    assert lhs.value == pytest.approx(rhs.value - abs(f.coeffs[0]), abs=1e-15)
    assert lhs.tail == rhs.tail


@settings(max_examples=40, deadline=None)
@given(seed=seeds, degree=degrees, N=st.integers(1, 40),
       rad=st.floats(0.0, 0.99), theta=st.floats(0.0, 2 * math.pi))
def test_partial_sum_matches_head(seed, degree, N, rad, theta):
    f = random_self_map(seed, degree, 40)
    z = rad * complex(math.cos(theta), math.sin(theta))
    head = series_eval(partial_sum(f, N), z)
    rest = sum(f.coeffs[k] * z**k for k in range(N, f.order + 1))
    assert abs(head - (series_eval(f, z) - rest)) < 1e-12
