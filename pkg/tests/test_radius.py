import math

import pytest

from bohr_rogosinski.radius import (
    SQRT_11_27,
    Family,
    RadiusEquation,
    RootNotFound,
    closed_form,
    limit_checks,
    lipschitz_estimate,
    sign_changes,
    solve,
)
from bohr_rogosinski.series import DomainError

from oracles import rational_bisection


def eq(family, N=None, m=None):
    return RadiusEquation(Family(family), N, m)


@pytest.mark.parametrize(
    "equation,expected",
    [
        (eq("psi", 1), math.sqrt(5) - 2),
        (eq("prime", 1), 1 / 3),
        (eq("an", 1), 1 / 3),
        (eq("an", 2), 1 / 2),
        (eq("univalent"), 5 - 2 * math.sqrt(6)),
        (eq("convex"), 1 / 5),
    ],
)
def test_closed_form_radii(equation, expected):
    res = solve(equation)
    assert abs(res.value - expected) <= 1e-12
    assert closed_form(equation) == pytest.approx(expected, abs=1e-15)
    lo, hi = res.bracket
    assert 0 < lo <= res.value <= hi < 1
    assert hi - lo <= 1e-12


def test_decimal_approximations():
    assert solve(eq("psi", 1)).value == pytest.approx(0.2360680, abs=5e-8)
    assert solve(eq("univalent")).value == pytest.approx(0.101021, abs=5e-7)
    assert SQRT_11_27 == pytest.approx(0.6382847, abs=5e-8)


def test_psi2_against_expanded_polynomial():
    # 2(1+r)r^2 - (1-r)^2 = 2r^3 + r^2 + 2r - 1, solved in exact rationals
    oracle = rational_bisection(lambda r: 2 * r**3 + r**2 + 2 * r - 1)
    assert oracle == pytest.approx(0.37608588944209326, abs=1e-16)
    assert abs(solve(eq("psi", 2)).value - oracle) <= 1e-12


@pytest.mark.parametrize("N", range(1, 9))
def test_psi_and_prime_against_rational_oracle(N):
    psi = rational_bisection(lambda r: 2 * (1 + r) * r**N - (1 - r) ** 2)
    prime = rational_bisection(lambda r: (1 + r) * r**N - (1 - r) ** 2)
    assert abs(solve(eq("psi", N)).value - psi) <= 1e-12
    assert abs(solve(eq("prime", N)).value - prime) <= 1e-12


def test_closed_form_absent():
    assert closed_form(eq("mn", 1, 1)) is None
    assert closed_form(eq("mn", 3, 7)) is None
    assert closed_form(eq("psi", 2)) is None


def test_equation_parameters_validated():
    with pytest.raises(DomainError):
        RadiusEquation(Family.PsiN)
    with pytest.raises(DomainError):
        RadiusEquation(Family.MN, 2)
    with pytest.raises(DomainError):
        RadiusEquation(Family.UnivalentSub, 1)
    with pytest.raises(DomainError):
        RadiusEquation(Family.AN, 0)


def test_no_sign_change_raises():
    class Flat(RadiusEquation):
        def __call__(self, r):
            return r * 0 + 1.0

    with pytest.raises(RootNotFound):
        solve(Flat(Family.ConvexSub))


def test_sign_changes_single():
    assert len(sign_changes(eq("psi", 3))) == 1
    assert len(sign_changes(lambda r: (r - 0.3) * (r - 0.6))) == 2


@pytest.mark.parametrize("family", ["psi", "prime", "an"])
@pytest.mark.parametrize("N", [1, 4, 16])
def test_residual_within_lipschitz_times_tol(family, N):
    equation = eq(family, N)
    res = solve(equation, 1e-12)
    assert abs(res.residual) <= lipschitz_estimate(equation) * 1e-12


@pytest.mark.parametrize("N", range(1, 33))
def test_prime_radius_exceeds_psi_radius(N):
    assert solve(eq("prime", N)).value > solve(eq("psi", N)).value


@pytest.mark.parametrize("N", range(1, 9))
def test_mn_with_m1_is_psi(N):
    assert abs(solve(eq("mn", N, 1)).value - solve(eq("psi", N)).value) <= 1e-12


def test_psi_radii_increase():
    vals = [solve(eq("psi", N)).value for N in range(1, 21)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_mn_approaches_an_in_m():
    a1 = solve(eq("an", 1)).value
    far = abs(solve(eq("mn", 1, 32)).value - a1)
    near = abs(solve(eq("mn", 1, 8)).value - a1)
    assert far < near


@pytest.mark.parametrize("family", ["psi", "prime", "an"])
def test_limit_checks_clean(family):
    rep = limit_checks(family, range(1, 21))
    assert rep.ok, rep.violations
    assert rep.monotone_in_n


def test_limit_checks_mn():
    rep = limit_checks("mn", range(1, 9), m=3, ms=[1, 2, 4, 8, 16, 32, 64])
    assert rep.ok, rep.violations
    assert len(rep.observations) == 8


def test_limit_checks_flags_gap():
    rep = limit_checks("psi", [1, 2], n_limit=64, one_gap=1e-6)
    assert not rep.ok


def test_limit_checks_empty_range():
    with pytest.raises(DomainError):
        limit_checks("psi", [])
