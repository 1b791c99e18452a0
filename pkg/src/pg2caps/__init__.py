"""Complete caps in PG(n,2): GF(2) geometry, slicing frames, constructions, searches."""

from .capcore import (
    CompletenessReport,
    VertexSet,
    completeness,
    is_cap,
    is_periodic,
    oplus,
    periodic_section_vertex_check,
    plotkin_double,
    secants,
    undouble,
    vertex_set,
)
from .constructions import (
    CapPartition,
    ConstructionCertificate,
    ConstructionError,
    PartitionReport,
    PlanarVerdict,
    assemble_from_plan,
    boundary_family,
    c4_construct,
    c4_planar_case,
    c4_size,
    c_full_minus_one_family,
    cap_to_partition,
    default_c4,
    default_family_c,
    family_cap,
    family_plan,
    family_size_by_k,
    family_size_by_s,
    general_family,
    pair_layout,
    partition_condition,
    partition_double,
    partition_to_cap,
    reference_complement,
    saturate,
    tangent_cap,
)
from .gf2geom import (
    Coset,
    DimensionError,
    PointParseError,
    PointSet,
    Subspace,
    cosets_of,
    format_point,
    is_collinear,
    iter_points,
    num_points,
    parse_point,
    point_add,
    quotient_map,
    span,
)
from .search import (
    CountingCheck,
    SearchConstraints,
    Spectrum,
    counting_identity_check,
    enumerate_caps,
    enumerate_complete_caps,
    example31_extension,
    partition_search,
    spectrum,
)
from .slices import (
    CosetPair,
    FrameError,
    GlobalEquations,
    ScaleRefusal,
    SliceDecomposition,
    SliceFrame,
    best_disjoint_frame,
    canonical_frame,
    classify_pair,
    coset_equations_hold,
    decompose,
    enumerate_pair_solutions,
    find_disjoint_codim2,
    frame_for,
    frame_normals,
    global_completeness_equations,
)

__version__ = "0.1.0"
