"""Exact computer algebra for finite models of arc-space neighborhoods.

Given a variety over an exact field and a rational arc not stuck in the
singular locus, the package builds the explicit finite polynomial
presentation of the local model at the arc (divisor unknowns, truncated
coordinates, determinant/remainder equation families), lifts model
solutions back to arc deformations, and certifies the construction with
brute-force oracles over finite test rings.
"""

from .errors import ArcModelError, BudgetError, InputError, MathError
from .fields import PrimeField, RationalField, field_from_spec
from .geometry import (
    Arc,
    MinorSelection,
    Variety,
    check_arc,
    ord_along_arc,
    reduce_to_complete_intersection,
    select_minor,
)
from .jets import hs_universal_check, jet_presentation, total_derivative
from .lifting import (
    Deformation,
    ModelSolution,
    lift_solution,
    oracle_bijection_check,
    oracle_enumerate,
    truncate_to_solution,
)
from .model import (
    FiniteModel,
    build_model,
    check_membership_equivalence,
    model_diagnostics,
)
from .multipoly import MultiPoly, PolyRing
from .series import TruncSeries, UniPoly
from .testrings import TestRing, TestRingElement, invert_unit
from .weierstrass import weierstrass_prepare

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcModelError",
    "BudgetError",
    "Deformation",
    "FiniteModel",
    "InputError",
    "MathError",
    "MinorSelection",
    "ModelSolution",
    "MultiPoly",
    "PolyRing",
    "PrimeField",
    "RationalField",
    "TestRing",
    "TestRingElement",
    "TruncSeries",
    "UniPoly",
    "Variety",
    "build_model",
    "check_arc",
    "check_membership_equivalence",
    "field_from_spec",
    "hs_universal_check",
    "invert_unit",
    "jet_presentation",
    "lift_solution",
    "model_diagnostics",
    "oracle_bijection_check",
    "oracle_enumerate",
    "ord_along_arc",
    "reduce_to_complete_intersection",
    "select_minor",
    "total_derivative",
    "truncate_to_solution",
    "weierstrass_prepare",
]
