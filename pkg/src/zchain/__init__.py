"""Exact-arithmetic model structure on bounded chain complexes over Z.

The package classifies chain maps (cofibrations, fibrations, weak
equivalences), produces both functorial factorizations through group-ring
resolutions, solves lifting squares constructively, and certifies cofibrant
generation, properness, and the pushout-product axiom, all in exact
integer arithmetic on finitely generated abelian groups.
"""

from .errors import (
    DimensionMismatch,
    DocumentError,
    IllDefined,
    InfiniteGroup,
    NotAChainMap,
    NotAComplex,
    NotAcyclic,
    NotAcyclicFibration,
    NotASplitting,
    NotCofibration,
    NotContractible,
    NotFree,
    NotLiftable,
    NotMonoNotEpi,
    PreconditionFailed,
    RankCapExceeded,
    ZchainError,
)
from .intlinalg import IntMatrix, SnfResult, hnf, kernel_basis, snf, solve
from .abelian import (
    DirectSum,
    FgAbGroup,
    FreeBasedGroup,
    GroupHom,
    cokernel,
    direct_sum,
    ext1,
    free_group,
    identity_hom,
    is_free,
    is_isomorphic,
    kernel,
    mk_group,
    mk_hom,
    tensor_group,
    tensor_hom,
    trivial_group,
    zero_hom,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    HomologyClassData,
    cone,
    dsum_complex,
    homology,
    identity_chain_map,
    induced_map,
    is_quasi_iso,
    mk_chain_map,
    mk_complex,
    suspend,
    tensor,
    tensor_map,
    test_object,
    zero_chain_map,
    zero_complex,
)
from .modelcls import (
    Contraction,
    FreeSplitting,
    MapClassification,
    classify,
    is_contractible,
    split_free_complex,
)
from .groupring import (
    AugmentationData,
    I2Group,
    I2_map,
    IGroup,
    I_map,
    augmentation_data,
    build_I,
    build_I2,
)
from .factor import Factorization, factor_acf_fib, factor_cof_afb, gamma
from .lifting import (
    Extension,
    Homotopy,
    LiftProblem,
    build_T,
    lift_against_acyclic_fibration,
    lift_from_splitting,
    nullhomotopy,
    rlp_instance,
    section_over_contractible,
    solve_lift,
    split_ses,
    splitting_from_lift,
)
from .monoidal_proper import (
    ProperReport,
    PullbackData,
    PushoutData,
    PushoutProductCert,
    check_proper,
    pullback,
    pushout,
    pushout_product,
)
from .verify import run_verify

__version__ = "0.1.0"
