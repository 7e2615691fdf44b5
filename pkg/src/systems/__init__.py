from .cubic_norm import (
    build_cubic_norm_system,
    double_step_h_minus3,
    psi_values,
    verify_block_invariance,
)
from .cubic_norm import verify_printed_forms as verify_printed_cubic_forms
from .norm_quadric import build_norm_quadric_system, octic_system
from .quartic_norm import (
    build_quartic_norm_system,
    phi_h0,
    ratio_step_h0,
    reduced_quadratic_h0,
)
from .quartic_norm import verify_printed_forms as verify_printed_quartic_forms

__all__ = [
    "build_norm_quadric_system",
    "octic_system",
    "build_quartic_norm_system",
    "build_cubic_norm_system",
    "phi_h0",
    "reduced_quadratic_h0",
    "ratio_step_h0",
    "psi_values",
    "double_step_h_minus3",
    "verify_block_invariance",
    "verify_printed_quartic_forms",
    "verify_printed_cubic_forms",
]
