"""Exact arithmetic for real tropical cones and tropical Metzler
spectrahedra: game-graph operators, structural transformations, pencil
synthesis, and polyhedral frontends."""

from .convex import TropPointSet, cone_member, hull_member, union_hull_member
from .errors import (
    ArityMismatch,
    DimensionMismatch,
    EmptyBelow,
    MalformedInput,
    MixedSigns,
    NonStochastic,
    NotCompliant,
    PreconditionViolated,
    SingularSystem,
    SupportMismatch,
    TropconeError,
    ValidationFailed,
)
from .graph import (
    AbsorptionTable,
    Edge,
    GameGraph,
    MinMaxOperator,
    absorption,
    check_stochastic,
    eval_operator,
    graph_from_minmax,
    minmax_eval,
    subfixed,
    validate_graph,
)
from .lp import (
    PolyhedralUnion,
    eval_F_from_polyhedra,
    lp_max,
    tropical_convexity_falsifier,
    union_member,
)
from .pencil import (
    MetzlerPencil,
    ProjectedPencil,
    affine_envelope,
    assemble_strata,
    dehomogenize,
    formal_homogenize,
    homogenize_projected,
    pencil_from_generators,
    pencil_from_point,
    pencil_member,
    synthesize_cone,
    union_pencil,
)
from .scalars import NEG_INF, SignedTrop, Trop, TropPolynomial, sadd, smul, tadd, tmul
from .transforms import (
    WitnessMap,
    first_transformation,
    is_compliant,
    pipeline,
    second_transformation,
    zwick_paterson,
)
from .verify import VerificationReport, verify_graph

__all__ = [name for name in dir() if not name.startswith("_")]
