"""Quiver representations over F1 as windings: Hom bases, covering components,
absolute indecomposability and obstructions to finite nice length."""

from .covering import (
    CoveringReport,
    absolutely_indecomposable,
    covering_components,
    is_covering_local,
    is_covering_surjectivity,
    is_covering_via_tau,
)
from .errors import (
    BaseMismatchError,
    DecomposableError,
    F1LinearityError,
    F1RepError,
    FieldError,
    InstanceFormatError,
    MorphismError,
    ShapeError,
    StringError,
    StructuralError,
    WindingViolationError,
)
from .hom import AdmissibilityReport, BasisElement, admissibility, admissible_components, basis_matrices, from_morphism, hom_dimension
from .kernels import BACKEND
from .nice import (
    Obstruction,
    SignedLetter,
    StringWord,
    color_word,
    compose,
    distinguishes_vertices,
    extract_obstruction,
    is_nice_extension,
    is_nice_sequence,
    obstruction_consequence_check,
    verify_obstruction,
)
from .oracle import hom_nullspace_dim, nilpotency_check, regularity_check, spectral_witness, verify_intertwiner, zero_class
from .tensor import TensorWinding, component_of, tau, tensor
from .winding import (
    Arrow,
    Quiver,
    RepTable,
    Winding,
    WindingMorphism,
    connected_components,
    direct_sum,
    is_indecomposable,
    loop_quiver,
    rep_to_winding,
    validate_winding,
    winding_to_rep,
)

__version__ = "0.1.0"
