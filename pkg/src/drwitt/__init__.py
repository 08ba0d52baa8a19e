"""drwitt: exact arithmetic for truncated (over)convergent de Rham-Witt
complexes of F_p[x_1..x_n] and the connection-matrix calculus on top of
them (decomposition, pseudovaluations, Frobenius comparison maps, and
the normalization of connections with Frobenius structure)."""

from .context import Context, DrwError, NonIntegralError, PreconditionError, WeightOverflow
from .decompose import (
    DEFAULT_GRID,
    Decomposition,
    Epsilon,
    d_inverse,
    decompose,
    find_delta,
    zeta,
    zeta_check,
)
from .forms import Form, congruent, teichmuller, truncate
from .lifts import (
    CharZeroForm,
    FrobeniusLift,
    from_witt_coordinates,
    ghost,
    phi_twist,
    tF_form,
    tF_scalar,
    to_witt_coordinates,
)
from .matrices import (
    BaseChange,
    FormMatrix,
    base_change,
    congruent_matrices,
    curvature,
    evaluate,
    frobenius_pullback,
    horizontal_check,
    idempotent_frobenius_check,
    invert,
    lift_connection,
    normalize,
    normalize_step,
    overconvergence_condition,
    rng_expansion_check,
    schanuel_complement,
)
from .weights import Weight

__all__ = [
    "BaseChange", "CharZeroForm", "Context", "DEFAULT_GRID", "Decomposition",
    "DrwError", "Epsilon", "Form", "FormMatrix", "FrobeniusLift",
    "NonIntegralError", "PreconditionError", "Weight", "WeightOverflow",
    "base_change", "congruent", "congruent_matrices", "curvature",
    "d_inverse", "decompose", "evaluate", "find_delta",
    "from_witt_coordinates", "frobenius_pullback", "ghost",
    "horizontal_check", "idempotent_frobenius_check", "invert",
    "lift_connection", "normalize", "normalize_step",
    "overconvergence_condition", "phi_twist", "rng_expansion_check",
    "schanuel_complement", "tF_form", "tF_scalar", "teichmuller",
    "to_witt_coordinates", "truncate", "zeta", "zeta_check",
]

__version__ = "0.1.0"
