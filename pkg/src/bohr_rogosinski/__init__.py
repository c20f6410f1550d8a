"""Bohr and Bohr--Rogosinski radii for bounded analytic functions on the unit disk."""
from .disk_maps import (
    BlaschkeSpec,
    MoebiusParam,
    blaschke_product,
    half_plane,
    koebe,
    moebius_extremal,
    random_blaschke_spec,
    random_self_map,
    reflected_moebius,
)
from .radius import SQRT_11_27, Family, RadiusEquation, RootResult, closed_form, limit_checks, solve
from .series import (
    CertifiedSum,
    DomainError,
    Majorant,
    TruncatedPowerSeries,
    area_functional,
    bohr_sum,
    partial_sum,
    series_eval,
    series_mul,
    series_reciprocal_one_minus,
    tail_sum,
)
from .subordination import (
    MajorantKind,
    SubordinationCase,
    coefficient_bound_check,
    sub_bound,
    verify_subordinate,
)
from .verifiers import (
    FunctionalId,
    Kind,
    SharpnessScanResult,
    VerificationReport,
    evaluate,
    property_fuzz,
    sharpness_scan,
)

__version__ = "0.1.0"
