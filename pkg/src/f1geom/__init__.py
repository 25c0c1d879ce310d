"""Computational toolkit for monoids, blueprints and monoidal schemes over the field with one element."""

from .blueprint import Blueprint, base_change_to_ring, hom_B, hom_B_counts, validate_blueprint
from .counting import deitmar_zeta, fit_and_verify, hom_count_abelian, zeta_report
from .errors import (
    BoundError,
    BoundTooSmall,
    CapExceeded,
    F1Error,
    InputError,
    NotTorsionFree,
    ParseError,
    ValidationError,
)
from .monoid import MonoidPresentation, PrimeIdeal, enumerate_primes, free_monoid, saturate, unit_group
from .schemes import GluedScheme, P_polynomial, Q_count, check_Q_le_P, points, psi1_injectivity, psi2_point_sets
from .smith import smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "Blueprint",
    "BoundError",
    "BoundTooSmall",
    "CapExceeded",
    "F1Error",
    "GluedScheme",
    "InputError",
    "MonoidPresentation",
    "NotTorsionFree",
    "P_polynomial",
    "ParseError",
    "PrimeIdeal",
    "Q_count",
    "ValidationError",
    "base_change_to_ring",
    "check_Q_le_P",
    "deitmar_zeta",
    "enumerate_primes",
    "fit_and_verify",
    "free_monoid",
    "hom_B",
    "hom_B_counts",
    "hom_count_abelian",
    "points",
    "psi1_injectivity",
    "psi2_point_sets",
    "saturate",
    "smith_normal_form",
    "unit_group",
    "validate_blueprint",
    "zeta_report",
]
