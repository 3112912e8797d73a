"""3-coloring extensions of precolored boundary cycles in quadrangulations.

The library decides, and when possible constructs, proper 3-colorings of
quadrangulations of bordered surfaces that extend a given coloring of the
boundary cycles.  Exact solvers cover the disk and the cylinder; a general
solver decomposes other surfaces along essential subgraphs; everything is
cross-checked against a brute-force oracle.
"""

from .coloring import (
    WindingReport,
    color_path,
    cycle_colorings,
    delta,
    is_tame,
    verify_coloring,
    winding,
    winding_report,
)
from .cylinder import (
    CycleSequence,
    PairColoringSet,
    layer_cycle,
    pair_extension_set,
    shortest_noncontractible,
    solve_cylinder,
    split_cylinder,
    tame_extend,
)
from .disk import SpokeWitness, solve_disk, verify_spoke_witness
from .embed import (
    ClosedWalk,
    EmbeddedGraph,
    SurfaceSignature,
    bfs_path,
    embed_from_faces,
    graph_distance,
)
from .errors import QuadcolorError
from .files import parse_col, parse_emb, serialize_col, serialize_emb
from .generators import (
    GeneratorSpec,
    generate,
    grid_cylinder,
    grid_disk,
    grid_klein,
    grid_torus,
    k4_projective,
    k5_torus,
)
from .oracle import oracle_count, oracle_extend, oracle_extensions, oracle_solve
from .results import Exhausted, SolveResult, SpokeViolation, WindingViolation
from .solver import (
    DecompositionNode,
    SolverConfig,
    clean_contractible_quads,
    necessary_check,
    solve,
)
from .surgery import (
    CutPiece,
    CycleClass,
    classify_cycle,
    cut_along,
    find_essential,
    is_essential,
    normal_representation,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedWalk",
    "CutPiece",
    "CycleClass",
    "CycleSequence",
    "DecompositionNode",
    "EmbeddedGraph",
    "Exhausted",
    "GeneratorSpec",
    "PairColoringSet",
    "QuadcolorError",
    "SolveResult",
    "SolverConfig",
    "SpokeViolation",
    "SpokeWitness",
    "SurfaceSignature",
    "WindingReport",
    "WindingViolation",
    "bfs_path",
    "classify_cycle",
    "clean_contractible_quads",
    "color_path",
    "cut_along",
    "cycle_colorings",
    "delta",
    "embed_from_faces",
    "find_essential",
    "generate",
    "graph_distance",
    "grid_cylinder",
    "grid_disk",
    "grid_klein",
    "grid_torus",
    "is_essential",
    "is_tame",
    "k4_projective",
    "k5_torus",
    "layer_cycle",
    "necessary_check",
    "normal_representation",
    "oracle_count",
    "oracle_extend",
    "oracle_extensions",
    "oracle_solve",
    "pair_extension_set",
    "parse_col",
    "parse_emb",
    "serialize_col",
    "serialize_emb",
    "shortest_noncontractible",
    "solve",
    "solve_cylinder",
    "solve_disk",
    "split_cylinder",
    "tame_extend",
    "verify_coloring",
    "verify_spoke_witness",
    "winding",
    "winding_report",
]
