from .curves import curve_pairing, invariant_curve
from .degree2d import (
    Degree2dParams,
    build_degree2d_family,
    decic_parametrization,
    decic_params,
    verify_decic_parametrization,
)
from .quartic import (
    QuarticFamilyParams,
    build_quartic_family,
    quadratic_forms,
    verify_parametric_family,
)
from .sextic import SexticFamilyParams, build_sextic_family, cubic_forms

__all__ = [
    "QuarticFamilyParams",
    "SexticFamilyParams",
    "Degree2dParams",
    "build_quartic_family",
    "build_sextic_family",
    "build_degree2d_family",
    "quadratic_forms",
    "cubic_forms",
    "decic_params",
    "decic_parametrization",
    "verify_decic_parametrization",
    "verify_parametric_family",
    "invariant_curve",
    "curve_pairing",
]
