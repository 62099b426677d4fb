"""p-adic rotation groups SO(2)_p^kappa and SO(3)_p in exact fixed-precision arithmetic."""

from .decompose import (
    ALL_ORDERS,
    CARDANO_ORDERS,
    EULER_ORDERS,
    Decomposition,
    FeasibilityReport,
    cardano_decompose,
    cardano_decompose_1mod4,
    cardano_zyx,
    counterexample_euler,
    counterexample_p2,
    counterexample_xzy,
    decompose,
    feasibility_check,
    second_solution,
    twin,
    verify_no_decomposition,
)
from .errors import *  # noqa: F401,F403
from .padic import (
    PadicContext,
    PadicNumber,
    SquareClass,
    hensel_solve_square,
    hilbert_symbol,
    is_square,
    sqrt,
    square_class,
)
from .quadforms import (
    DiagonalQuadraticForm,
    FormInvariants,
    KappaLabel,
    bilinear,
    classify_definite_2d,
    definite_form,
    equivalent,
    evaluate,
    invariants,
    represents_zero,
    restrict_to_plane,
)
from .so2 import (
    ProjectivePoint,
    Rotation2,
    compose2,
    embed_T,
    from_matrix2,
    inverse2,
    matrix2,
    negate_relation_check,
    param_from_first_column,
)
from .so3 import (
    Axis,
    Rotation3,
    axis_of,
    find_rotation_in_plane,
    is_member,
    random_element,
    reference_rotation,
    rotation_about,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_ORDERS",
    "CARDANO_ORDERS",
    "EULER_ORDERS",
    "Decomposition",
    "FeasibilityReport",
    "cardano_decompose",
    "cardano_decompose_1mod4",
    "cardano_zyx",
    "counterexample_euler",
    "counterexample_p2",
    "counterexample_xzy",
    "decompose",
    "feasibility_check",
    "second_solution",
    "twin",
    "verify_no_decomposition",
    "PadicContext",
    "PadicNumber",
    "SquareClass",
    "hensel_solve_square",
    "hilbert_symbol",
    "is_square",
    "sqrt",
    "square_class",
    "DiagonalQuadraticForm",
    "FormInvariants",
    "KappaLabel",
    "bilinear",
    "classify_definite_2d",
    "definite_form",
    "equivalent",
    "evaluate",
    "invariants",
    "represents_zero",
    "restrict_to_plane",
    "ProjectivePoint",
    "Rotation2",
    "compose2",
    "embed_T",
    "from_matrix2",
    "inverse2",
    "matrix2",
    "negate_relation_check",
    "param_from_first_column",
    "Axis",
    "Rotation3",
    "axis_of",
    "find_rotation_in_plane",
    "is_member",
    "random_element",
    "reference_rotation",
    "rotation_about",
]
