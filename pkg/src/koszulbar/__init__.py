"""Exact-arithmetic verifier for the Koszul complex, the bar resolution,
and the homotopy-associative bimodule structures connecting them.

All coefficients are rationals; every identity in scope is checked
exactly on finite basis sweeps split by the weight grading.
"""

from .graded import (
    SCALAR_ONE,
    SCALAR_SPACE,
    GradedElement,
    InhomogeneousError,
    SignedWord,
    SpaceMismatchError,
    UnitMonomial,
    graded_permutation_sign,
    scalar_element,
    scalar_value,
    suspension_sign,
    tensor_elements,
)
from .polyalg import (
    ExtMonomial,
    KoszulMonomial,
    SymMonomial,
    duality_pairing,
    euler_contraction,
    evaluate_at_zero,
    ext_multiply,
    partial_derivative,
    polyderivation_apply,
    sym_multiply,
)
from .ainfty import (
    AInfAlgebra,
    AInfBimodule,
    BimoduleMorphism,
    DegreeBookkeepingError,
    FlatnessError,
    TaylorMap,
    ainfty_relation_residual,
    bimodule_relation_residual,
    build_dga,
    check_unital_algebra,
    check_unital_bimodule,
    component_from_unshifted_rule,
    conjugate_component,
    morphism_relation_residual,
)
from .tensorbar import (
    BarBimodule,
    TensorWord,
    algebra_as_bimodule,
    bar_bimodule,
    bar_contracting_homotopy,
    bar_differential,
    bar_to_module_morphism,
    bar_words,
    homotopy_residual,
    tensor_bimodule,
    unit_section,
)
from .bridge import (
    AlgebraPair,
    augmentation_bimodule,
    contraction_scale,
    exterior_algebra,
    flipped_contraction_scale,
    higher_right_action_residual,
    koszul_bimodule,
    koszul_to_bar_element,
    koszul_to_bar_morphism,
    polynomial_algebra,
    right_action_chain_residual,
    single_entry_contraction,
    zero_morphism,
)
from .homology import (
    ChainMapError,
    WeightedComplex,
    WindowBoundaryError,
    build_bar_complex,
    build_koszul_complex,
    build_point_complex,
    induced_homology_map,
    matrix_rank,
    quasi_iso_verdict,
)
from .cli import SuiteConfig, VerificationReport, emit_report, main, run_suite

__version__ = "0.1.0"
