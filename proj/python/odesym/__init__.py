"""Linear symmetries of linear ODE operators.

Thin convenience layer over the compiled core: exact symbolic operator
algebra (composition, adjoint, division with remainder), jet-space
generating functions, Z2-graded symmetry analysis of d^2 + G d + H, and
RK4-based numeric kernel-transport oracles.
"""

from fractions import Fraction

from odesym._core import __version__  # noqa: F401
from odesym._core import (  # noqa: F401
    DomainError,
    EvenConditionReport,
    Expr,
    ExprSyntaxError,
    GradedComponent,
    Grid,
    JetContext,
    LinDiffOp,
    OddConditionReport,
    add_ops,
    adjoint,
    affine_genfunc_to_point_field,
    apply_op,
    commutator,
    compare_ltilde_variants,
    compose,
    constraint_to_operator,
    derive_even_conditions,
    derive_odd_conditions,
    diff,
    divide,
    equals,
    eval_expr,
    even_symmetry_from_w,
    gauge_transport_residual,
    grade,
    integrate_kernel,
    is_self_adjoint,
    is_skew_adjoint,
    jet_context_for,
    kernel_map_residual,
    lie_equation_residual,
    linear_genfunc_to_op,
    ltilde_paper,
    ltilde_schrodinger,
    normal_form_potential,
    normalize,
    op_d,
    op_from_coeffs,
    op_to_linear_genfunc,
    parse_expr,
    parse_op,
    poisson_lie_bracket,
    scale_op,
    shuffle_field,
    substitute,
    symmetry_bracket,
    symmetry_quotient,
    total_derivative,
)
from odesym._core import structure_constants as _structure_constants


def structure_constants(l, basis):
    """Structure constants c[i][j][m] as exact ``fractions.Fraction``."""
    raw = _structure_constants(l, basis)
    return [[[Fraction(v) for v in row] for row in plane] for plane in raw]


__all__ = [name for name in dir() if not name.startswith("_")]
