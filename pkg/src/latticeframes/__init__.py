"""Lattice sub-tilings and frames of exponentials on finite abelian groups.

The library makes the objects of the subject computable at desk scale:
groups and their duals, subgroups with annihilators and cross sections,
the group Fourier transform with its bracket map and power spectrum, exact
(sub-)tiling predicates, frame operators with sharp bounds, and a verifier
that checks the equivalence of all of it on any given triple.
"""

from .groups import (
    Character,
    FiniteAbelianGroup,
    GroupElement,
    PreconditionError,
    StructureError,
    add,
    character_matrix,
    character_table,
    pairing,
    pairing_is_one,
)
from .lattices import (
    CrossSection,
    DualLattice,
    LatticeSubgroup,
    all_subgroups,
    annihilator,
    cross_section,
    lattice_sizes,
    random_cross_section,
    shift_overlap_counts,
    subgroup_from_generators,
    weil_check,
)
from .fourier import (
    BracketFunction,
    CoefficientIdentities,
    bracket,
    bracket_reproducing_deviation,
    coefficient_identities,
    fourier_transform,
    periodization,
    periodized_power_spectrum,
    translate_inner_products,
)
from .tiling import (
    MeasuredSet,
    TilingVerdict,
    check_condition2,
    check_subtiling,
    check_translate_orthonormality,
    enumerate_subtilings,
    extend_to_tiling,
    measured_set,
    measured_set_from_indices,
)
from .eigen import EigenDecomposition, jacobi_eigh, real_embedding
from .frames import (
    ExponentialSystem,
    FrameReport,
    ModulationWindow,
    ObstructionWitness,
    check_orthogonal_basis,
    exponential_system,
    frame_bounds,
    frame_operator,
    modulated_frame_report,
    obstruction_witness,
)
from .verify import (
    EquivalenceReport,
    FugledeReport,
    IdentityChecks,
    InconsistentVerdictError,
    Tolerances,
    default_window,
    fuglede_suite,
    random_group,
    random_omega,
    random_subgroup,
    run_identity_checks,
    verify_triple,
)

__version__ = "0.1.0"
