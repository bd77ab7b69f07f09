"""Eigenvalue surfaces of matrix convex hulls.

Track eigenvalues along matrix paths, classify barycentric lattice samples
of a hull, join eigenpoints into path-components, build pairing graphs, and
verify the closed-form example families.
"""

from .errors import (
    ArgumentError,
    EigenSurfaceError,
    NumericError,
    StructuralViolationError,
    TrackingError,
)
from .families import (
    FamilySpec,
    SplitMix64,
    brauer_perturb,
    circulant,
    circulant_hull_spectrum,
    circulant_spectrum,
    hermitian_weak_transitivity_check,
    pagerank_hull,
    pagerank_spectrum,
    perron_check,
    random_family,
    toeplitz_segment_spectra,
    toeplitz_spectrum,
    toeplitz_tridiag,
    verify_family,
)
from .linalg import (
    BarycentricPoint,
    CharPoly,
    ComplexMatrix,
    MatrixHull,
    MultiplicityList,
    as_matrix,
    char_poly,
    cluster_indices,
    convex_combine,
    discriminant,
    discriminant_from_roots,
    discriminant_resultant,
    discriminant_zero_threshold,
    eigenvalues,
    eigenvalues_many,
    lex_compare,
    mingap,
    multiplicity_list,
    multiplicity_list_of_values,
    simple_spectrum_list,
    spectral_radius,
    vanishing_order,
)
from .pairgraph import (
    PairingGraph,
    adjacency,
    build_pairing_graph,
    diameter,
    export_dot,
    ord_stat,
    principal_graph,
)
from .surface import (
    ExceptionalCluster,
    KComponent,
    SurfaceSample,
    SurfaceSamples,
    barycentric_grid,
    component_separation,
    exceptional_clusters,
    grid_size,
    k_components,
    local_transitivity_probe,
    scan,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .track import (
    DEFAULT_TRACKER,
    CollisionEvent,
    DeformationCollision,
    DeformationReport,
    MatrixPath,
    PairingPermutation,
    ScalingCheckResult,
    SegmentPairing,
    TrackedBundle,
    TrackerConfig,
    compose_permutations,
    deformation_check,
    invert_permutation,
    match_eigs,
    monodromy,
    scaling_pairing_invariance_check,
    segment_pairing,
    track,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "EigenSurfaceError",
    "NumericError",
    "StructuralViolationError",
    "TrackingError",
    "FamilySpec",
    "SplitMix64",
    "brauer_perturb",
    "circulant",
    "circulant_hull_spectrum",
    "circulant_spectrum",
    "hermitian_weak_transitivity_check",
    "pagerank_hull",
    "pagerank_spectrum",
    "perron_check",
    "random_family",
    "toeplitz_segment_spectra",
    "toeplitz_spectrum",
    "toeplitz_tridiag",
    "verify_family",
    "BarycentricPoint",
    "CharPoly",
    "ComplexMatrix",
    "MatrixHull",
    "MultiplicityList",
    "as_matrix",
    "char_poly",
    "cluster_indices",
    "convex_combine",
    "discriminant",
    "discriminant_from_roots",
    "discriminant_resultant",
    "discriminant_zero_threshold",
    "eigenvalues",
    "eigenvalues_many",
    "lex_compare",
    "mingap",
    "multiplicity_list",
    "multiplicity_list_of_values",
    "simple_spectrum_list",
    "spectral_radius",
    "vanishing_order",
    "PairingGraph",
    "adjacency",
    "build_pairing_graph",
    "diameter",
    "export_dot",
    "ord_stat",
    "principal_graph",
    "ExceptionalCluster",
    "KComponent",
    "SurfaceSample",
    "SurfaceSamples",
    "barycentric_grid",
    "component_separation",
    "exceptional_clusters",
    "grid_size",
    "k_components",
    "local_transitivity_probe",
    "scan",
    "DEFAULT_TOLERANCES",
    "ToleranceConfig",
    "DEFAULT_TRACKER",
    "CollisionEvent",
    "DeformationCollision",
    "DeformationReport",
    "MatrixPath",
    "PairingPermutation",
    "ScalingCheckResult",
    "SegmentPairing",
    "TrackedBundle",
    "TrackerConfig",
    "compose_permutations",
    "deformation_check",
    "invert_permutation",
    "match_eigs",
    "monodromy",
    "scaling_pairing_invariance_check",
    "segment_pairing",
    "track",
    "__version__",
]
