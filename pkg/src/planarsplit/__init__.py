"""planarsplit: split a 1-planar drawing's edges into a planar graph + forest."""

from .drawing import DrawingError, FaceWalk, Planarization, parse_drawing
from .engine import EngineStats, PlanarForestPartition, find_partition
from .gen import GenConfig, fixtures, gen_one_planar, gen_triangulation
from .multigraph import Label, Multigraph, VertexMeta
from .preprocess import GadgetGraph, Skeleton, build_gadgets, facial_cycle, kite_augment, triangulate
from .verify import VerificationReport, oracle_chord_sets, partition_from_pairs, verify_partition

__all__ = [
    "DrawingError",
    "EngineStats",
    "FaceWalk",
    "GadgetGraph",
    "GenConfig",
    "Label",
    "Multigraph",
    "Planarization",
    "PlanarForestPartition",
    "Skeleton",
    "VerificationReport",
    "VertexMeta",
    "build_gadgets",
    "facial_cycle",
    "find_partition",
    "fixtures",
    "gen_one_planar",
    "gen_triangulation",
    "kite_augment",
    "oracle_chord_sets",
    "parse_drawing",
    "partition_from_pairs",
    "triangulate",
    "verify_partition",
]

__version__ = "0.1.0"
