"""Exact discrete cubical homology of finite reflexive graphs."""

from .errors import InputError, ResourceLimitError
from .graphs import (
    Graph,
    box_product,
    c5_star,
    complete_graph,
    connected_components,
    cycle_graph,
    from_edge_list,
    greene_sphere,
    hypercube_graph,
    path_graph,
    quotient,
    read_graph,
    standard_graph,
    torus3,
    write_graph,
)
from .templates import (
    ActionTable,
    FaceList,
    GroupElement,
    build_action_table,
    build_face_list,
    faces_of,
    generate_group,
    orbit_of,
    vertex_image,
)
from .enumeration import (
    ClassSet,
    CubeClass,
    SingularCube,
    dedupe_classes,
    direct_degeneracy,
    initial_classes,
    is_pair_cube,
    naive_maps,
    next_dimension,
    next_dimension_classes,
    orbit_class,
    pair,
    remove_semi_degenerate,
)
from .boundary import (
    CoordinateDictionary,
    boundary_column,
    build_dictionary,
    build_matrix,
    stream_top_matrix,
    write_matrix_market,
)
from .ratlinalg import SparseRationalMatrix, kernel_dim, rank
from .preprocess import ReductionTrace, find_removable, reduce_graph
from .pipeline import (
    HomologyOptions,
    HomologyResult,
    ProfileResult,
    ShortcircuitReport,
    betti_profile,
    homology,
    naive_homology,
    verify_shortcircuit,
)

__version__ = "0.1.0"
