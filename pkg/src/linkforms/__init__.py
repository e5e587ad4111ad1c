"""Exact skew linking forms on finite abelian groups, their block-morphism
flag complexes, and low-degree Bockstein bordism.

Everything is exact integer/rational arithmetic end to end: values of forms
live in Q/Z as canonical fractions, homology and group computations run on
integer Smith normal forms, and every randomized suite is seeded.
"""

from .errors import (
    BudgetExhausted,
    CapExceeded,
    InputError,
    LinkformsError,
    NonStrictFormError,
    PrecisionOverflow,
    SingularFormError,
    UnsupportedDegree,
)
from .qz import QZValue
from .snf import (
    SNFResult,
    column_lattice_index,
    integer_kernel_basis,
    invert_unimodular,
    smith_normal_form,
    solve_integer_linear,
)
from .groups import (
    FinAbGroup,
    GroupElement,
    GroupHom,
    Subgroup,
    solve_affine_congruence_system,
    solve_congruence_system,
)
from .forms import (
    FormMorphism,
    LinkingForm,
    NormalForm,
    SplitResult,
    Subform,
    are_isomorphic,
    count_w_morphisms,
    direct_sum,
    extend_to_automorphism,
    first_w_morphism,
    full_subgroup,
    hyperbolic_basis,
    identity_morphism,
    kernel_form,
    morphisms_from_w,
    normal_form,
    orthogonal_complement,
    split_along,
    standard_w,
    subforms_orthogonal,
    w_morphism,
    w_morphism_by_index,
    w_power,
)
from .rank import RankResult, StableRankResult, k_rank, stable_k_rank, upper_bound
from .complexes import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    DegreeHomology,
    FlagComplex,
    GeneralComplex,
    HomologyResult,
    InclusionReport,
    SimplicialMap,
    SymRelation,
    TransitivityReport,
    Verdict,
    action_transitivity,
    check_link_lifting,
    homological_connectivity,
    homology,
    inclusion_connectivity_harness,
    lcm_check,
    preserves_links,
    relative_homology,
)
from .lcomplex import (
    CancellationReport,
    LComplex,
    PathResult,
    WitnessResult,
    are_adjacent,
    build_l_complex,
    cancellation_check,
    edge_swap_automorphism,
    find_short_path,
    images_intersect_trivially,
    images_orthogonal,
    transitivity_witness,
    verify_link_iso,
    w_power_vertex_count,
)
from .bordism import (
    AbGroupDescriptor,
    KKManifold1,
    admits_swapping_involution,
    is_generator,
    kk_class,
    multiplication_cokernel,
    multiplication_kernel,
    omega_k,
    omega_kl,
    t_k,
)
from .documents import (
    form_from_document,
    form_to_document,
    load_form,
    load_manifold,
    manifold_from_document,
    manifold_to_document,
    parse_form,
    parse_manifold,
)
from .reporting import REPORT_SCHEMA, make_report, render_text, to_json

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
