"""Shapes of weighted point configurations on the circle.

Forward maps from weight vectors to polygon/polyhedron shape parameters,
their inversion from designated shape pairs, Lorentzian models with
signature and dihedral-angle queries, glued cell complexes with orbit
counts, and a deterministic verification harness behind the ``polymod``
command-line tool.
"""

from .errors import (
    DegenerateTriangle,
    FacetsDisjoint,
    FootOutsideBase,
    InconsistentPair,
    NegativeRatio,
    NoIntersection,
    NonPositive,
    NotAPermutation,
    NotEqualWeight,
    NotInTheta,
    NotTimelike,
    OutOfRange,
    PairingFailure,
    PairSumTooLarge,
    PolymodError,
    RejectionBudgetExceeded,
    RouteDisagreement,
    SignatureMismatch,
    SlideCollision,
    SumMismatch,
    UnknownFormat,
    WrongSheet,
)
from .combinatorics import (
    DegenerateConfig,
    Label,
    WeightVector,
    as_word,
    canonical_label,
    enumerate_labels,
    equal_weight,
    face_config,
    sample_weight,
    triple_config,
    validate_weight,
    vertex_config,
)
from .planar import (
    EdgeFrame,
    TriangleCompletion,
    chain_vertices,
    complete_triangle,
    edge_frame,
    line_intersection,
    pentagon_feet,
    polygon_area,
    tangential_lengths,
)
from .lorentz import (
    KleinPoint,
    LorentzModel,
    axis_intercepts,
    build_model,
    dihedral_angle,
    facet_zero_ray,
    hyperbolic_distance,
    klein_point,
)
from .moduli import (
    HexahedronShape,
    PentagonShape,
    PentagonSides,
    classify_hexahedron,
    klein_distance,
    pentagon_side_lengths,
    psi5,
    psi6,
    triple_sums,
)
from .fiber import (
    FiberConstruction,
    UpperHalfPoint,
    circle_intersection,
    fiber_construction5,
    fiber_construction6,
    fiber_theta5,
    fiber_theta6,
    inversion_report,
    invert5,
    invert6,
    recover_w5,
    recover_w6,
    verify_injectivity,
    w_from_theta,
)
from .complexes import (
    FacePairing,
    GluedComplex,
    build_complex,
    cusp_classes,
    euler_characteristic,
    export_adjacency,
    singular_edges,
)
from .verify import ORTHOGONAL_PAIRS, SUITES, run_suite
from .jsonio import (
    dumps_canonical,
    format_float,
    parse_label,
    parse_shape,
    parse_theta,
)

__version__ = "1.0.0"

__all__ = [
    "DegenerateTriangle",
    "FacetsDisjoint",
    "FootOutsideBase",
    "InconsistentPair",
    "NegativeRatio",
    "NoIntersection",
    "NonPositive",
    "NotAPermutation",
    "NotEqualWeight",
    "NotInTheta",
    "NotTimelike",
    "OutOfRange",
    "PairingFailure",
    "PairSumTooLarge",
    "PolymodError",
    "RejectionBudgetExceeded",
    "RouteDisagreement",
    "SignatureMismatch",
    "SlideCollision",
    "SumMismatch",
    "UnknownFormat",
    "WrongSheet",
    "DegenerateConfig",
    "Label",
    "WeightVector",
    "as_word",
    "canonical_label",
    "enumerate_labels",
    "equal_weight",
    "face_config",
    "sample_weight",
    "triple_config",
    "validate_weight",
    "vertex_config",
    "EdgeFrame",
    "TriangleCompletion",
    "chain_vertices",
    "complete_triangle",
    "edge_frame",
    "line_intersection",
    "pentagon_feet",
    "polygon_area",
    "tangential_lengths",
    "KleinPoint",
    "LorentzModel",
    "axis_intercepts",
    "build_model",
    "dihedral_angle",
    "facet_zero_ray",
    "hyperbolic_distance",
    "klein_point",
    "HexahedronShape",
    "PentagonShape",
    "PentagonSides",
    "classify_hexahedron",
    "klein_distance",
    "pentagon_side_lengths",
    "psi5",
    "psi6",
    "triple_sums",
    "FiberConstruction",
    "UpperHalfPoint",
    "circle_intersection",
    "fiber_construction5",
    "fiber_construction6",
    "fiber_theta5",
    "fiber_theta6",
    "inversion_report",
    "invert5",
    "invert6",
    "recover_w5",
    "recover_w6",
    "verify_injectivity",
    "w_from_theta",
    "FacePairing",
    "GluedComplex",
    "build_complex",
    "cusp_classes",
    "euler_characteristic",
    "export_adjacency",
    "singular_edges",
    "ORTHOGONAL_PAIRS",
    "SUITES",
    "run_suite",
    "dumps_canonical",
    "format_float",
    "parse_label",
    "parse_shape",
    "parse_theta",
    "__version__",
]
