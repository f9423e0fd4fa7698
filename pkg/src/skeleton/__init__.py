"""Skeletons: half-edge graphs with trivalent, dot, anti-dot and boundary vertices."""

from .catalog import ASSOCIATOR_TREE, catalog_names, named_skeleton, strands
from .models import Skeleton, Vertex, build_skeleton
from .operations import Rewiring, TreeSpec
from .text_format import dump_skeleton, load_skeleton, parse_skeleton

__all__ = [
    "Skeleton",
    "Vertex",
    "build_skeleton",
    "Rewiring",
    "TreeSpec",
    "ASSOCIATOR_TREE",
    "catalog_names",
    "named_skeleton",
    "strands",
    "dump_skeleton",
    "load_skeleton",
    "parse_skeleton",
]
