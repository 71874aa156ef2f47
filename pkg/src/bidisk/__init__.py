"""Numerical toolkit for submodules of the Hardy space over the bidisk.

Truncated Taylor representations of H2(D^2) elements, finitely generated
submodule approximations with reproducing kernels and core operators,
numerical invariant functions, composition-operator lifts with their kernel
identities, Nevanlinna counting functions, and closed forms for the
submodule generated by z - w.
"""

from .blaschke import (
    BlaschkeProduct,
    ModelSpaceBasis,
    blaschke_taylor,
    identity_map,
    mobius,
    model_space_basis,
)
from .closed_forms import (
    SIGMA1_AT_ORIGIN,
    ZwBasisElement,
    example_closed_forms,
    hs_corollary_check,
    lemma64_check,
    lemma65_sum,
    poisson_identity_check,
    sigma0_zw,
    sigma1_zw,
    zw_basis,
    zw_inner_product_relation,
)
from .errors import InvalidInputError, RadiusGuardError, SingularTargetError
from .invariants import (
    FringeMatrix,
    InvariantValue,
    fringe_commutator_trace,
    fringe_index,
    fringe_operator,
    hs_norm_core,
    sigma0,
    sigma1,
    sigma_gap,
    sigma_k,
)
from .lifting import (
    LiftedSubmodule,
    default_verification_grid,
    kernel_psd_check,
    lift,
    littlewood_sandwich,
    parseval_frame_check,
    rk_factor,
    seeded_disk_points,
    verify_core_pullback,
    verify_invariant_pullback,
    verify_kernel_identity,
    weighted_composition_isometry,
)
from .nevanlinna import (
    CountingResult,
    counting_closed_form,
    counting_function,
    littlewood_subordination_check,
    shapiro_change_of_variable,
)
from .parsing import parse_blaschke, parse_complex, parse_generators, parse_point, parse_polynomial
from .series import (
    DEFAULT_RADIUS,
    Series1D,
    Series2D,
    compose_pair,
    evaluate,
    geometric_weight,
    inner_product,
    multiply,
    multiply_1d,
    outer_product,
)
from .submodule import (
    CoreOperatorMatrix,
    SubmoduleApprox,
    WedgeBasis,
    build_submodule,
    core_function_eval,
    core_operator_matrix,
    kernel_eval,
    shift_compressions,
    szego_kernel,
    wedge,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
