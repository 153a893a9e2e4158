"""Classification of real binary quartics under the Mobius group action.

The coefficient space carries an invariant quadratic form of signature
(2,3); its sign stratifies projective space into the null quadric and two
open regions, and root multiplicity patterns refine this into eleven orbit
strata with computable dimensions, induced signatures, and continuous
parameters.
"""

from .action import (
    ELLIPTIC_GEN,
    HYPERBOLIC_GEN,
    INF,
    PARABOLIC_GEN,
    GroupElement,
    LieVector,
    SubgroupKind,
    act,
    lie_act,
    one_param,
    random_element,
    rep5,
    sl2_basis,
)
from .charts import (
    GeometrySet,
    MinkPoint,
    chart_q,
    patch_embed,
    patch_project,
    sample_orbit,
    sample_quadruple_curve,
    sample_triple_surface,
)
from .classify import (
    EXPECTED_DIM_SIG,
    FREE_STRATA,
    Invariant,
    InvariantKind,
    OrbitDescriptor,
    ProbeResult,
    Stratum,
    classify,
    free_action_probe,
    orbit_signature,
    orbit_tangent_basis,
    same_orbit,
)
from .errors import (
    BoundaryUncertainError,
    ContractError,
    DomainError,
    InternalConsistencyError,
    OutOfChartError,
    StructureMismatchError,
    ZeroFormError,
)
from .forms import (
    GRAM_MATRIX,
    MONOMIALS,
    ProjectivePoint,
    QuarticForm,
    Region,
    SignatureTriple,
    b_polar,
    gram_matrix,
    gram_signature,
    q_value,
    region_of,
)
from .roots import (
    ConjugatePair,
    InfiniteRoot,
    RealRoot,
    RootMultiset,
    RootStructure,
    canonical_cross_ratio,
    from_roots,
    hyp_distance,
    mobius_normalize,
    ray_angle,
    root_structure_exact,
    roots_of,
    theta_star,
    transform_roots,
)

__version__ = "0.1.0"
