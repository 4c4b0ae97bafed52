"""Constructive graph theory by gluing multigraphs.

The core objects are :class:`MultiGraph`, :class:`Embedding` and
:class:`GluingSpec`; :func:`glue` performs one gluing, scripts chain them,
guards restrict them, and :func:`closure_fixpoint` enumerates the class a
basis generates within a size bound.
"""

from .canon import canonical_form, code_hex, graph_from_code, is_isomorphic
from .closure import ClosureReport, closure_fixpoint, find_basis_for, find_elemental_basis, verify_class
from .embedding import Embedding, enumerate_embeddings, make_embedding
from .errors import (
    GlueGraphError,
    GraphFormatError,
    GuardParameterError,
    GuardRejected,
    InternalInconsistency,
    MalformedGluingError,
    NotPlanarError,
    ScriptError,
    SizeCapError,
    UnknownClassError,
)
from .generate import enumerate_all_graphs
from .gluing import GluingSpec, classify_gluing, glue, glue_full, make_spec, union
from .graph import MultiGraph, make_named, named, parse_gfmt, read_gfmt, to_gfmt
from .guards import GuardKind, check_guard, euler_degree_condition, parse_guards
from .planar import db_search, hp_glue, is_face_subgraph, is_planar, shell
from .properties import PropertyKind, holds
from .registry import ClassDescriptor, diagram_edges, get_descriptor, membership, special_basis
from .superposition import AssemblyScript, canonical_sufficient, is_canonical, parse_script, run_script

__all__ = [
    "AssemblyScript",
    "ClassDescriptor",
    "ClosureReport",
    "Embedding",
    "GlueGraphError",
    "GluingSpec",
    "GraphFormatError",
    "GuardKind",
    "GuardParameterError",
    "GuardRejected",
    "InternalInconsistency",
    "MalformedGluingError",
    "MultiGraph",
    "NotPlanarError",
    "PropertyKind",
    "ScriptError",
    "SizeCapError",
    "UnknownClassError",
    "canonical_form",
    "canonical_sufficient",
    "check_guard",
    "classify_gluing",
    "closure_fixpoint",
    "code_hex",
    "db_search",
    "diagram_edges",
    "enumerate_all_graphs",
    "enumerate_embeddings",
    "euler_degree_condition",
    "find_basis_for",
    "find_elemental_basis",
    "get_descriptor",
    "glue",
    "glue_full",
    "graph_from_code",
    "holds",
    "hp_glue",
    "is_canonical",
    "is_face_subgraph",
    "is_isomorphic",
    "is_planar",
    "make_embedding",
    "make_named",
    "make_spec",
    "membership",
    "named",
    "parse_gfmt",
    "parse_guards",
    "parse_script",
    "read_gfmt",
    "run_script",
    "shell",
    "special_basis",
    "to_gfmt",
    "union",
    "verify_class",
]
