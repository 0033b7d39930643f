"""Degree-bounded flips in triangulations of convex polygons."""

from degflip.canon import (
    FlipSequence,
    UnsupportedBoundError,
    VerifyReport,
    canonicalize,
    flip_path,
    invert_zigzag,
    merge_zigzags,
    rotate,
    to_fringe,
    to_zigzag,
    verify_sequence,
)
from degflip.core import (
    Diagonal,
    DualTree,
    Flip,
    Triangulation,
    TriangulationError,
    canonical_code,
    degree,
    dual_tree,
    fan_triangulation,
    flip,
    legal_flips,
    parse_code,
    validate,
    zigzag_triangulation,
)
from degflip.explorer import (
    BudgetExceeded,
    ComponentReport,
    FlipGraph,
    build_flip_graph,
    components,
    enumerate_triangulations,
    exact_distance,
    frozen,
)
from degflip.structure import (
    DualDecomposition,
    Fan,
    LightMerge,
    MergeTriangle,
    PreconditionError,
    ZigzagPath,
    classify_triangles,
    decompose,
    find_fans,
    find_light_merge_triangle,
    find_merge_triangles,
    is_fringe,
    is_zigzag_triangulation,
    leaf_paths,
)

__all__ = [
    "BudgetExceeded",
    "ComponentReport",
    "Diagonal",
    "DualDecomposition",
    "DualTree",
    "Fan",
    "Flip",
    "FlipGraph",
    "FlipSequence",
    "LightMerge",
    "MergeTriangle",
    "PreconditionError",
    "Triangulation",
    "TriangulationError",
    "UnsupportedBoundError",
    "VerifyReport",
    "ZigzagPath",
    "build_flip_graph",
    "canonical_code",
    "canonicalize",
    "classify_triangles",
    "components",
    "decompose",
    "degree",
    "dual_tree",
    "enumerate_triangulations",
    "exact_distance",
    "fan_triangulation",
    "find_fans",
    "find_light_merge_triangle",
    "find_merge_triangles",
    "flip",
    "flip_path",
    "frozen",
    "invert_zigzag",
    "is_fringe",
    "is_zigzag_triangulation",
    "leaf_paths",
    "legal_flips",
    "merge_zigzags",
    "parse_code",
    "rotate",
    "to_fringe",
    "to_zigzag",
    "validate",
    "verify_sequence",
    "zigzag_triangulation",
]
