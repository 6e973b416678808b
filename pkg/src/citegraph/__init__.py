"""Seed-journal citation environments, similarity maps and citation indicators."""

from .corpus import (
    CitationEdge,
    CitationGraph,
    JournalRecord,
    build_graph,
    load_graph,
    parse_edges,
    parse_journals,
)
from .envnet import Basis, Environment, EnvironmentSpec, Mode, cited_environment, citing_environment
from .errors import CitegraphError
from .simalg import Kind, Orientation, cosine_matrix, display_network, pearson_matrix, principal_components

__all__ = [
    "Basis",
    "CitationEdge",
    "CitationGraph",
    "CitegraphError",
    "Environment",
    "EnvironmentSpec",
    "JournalRecord",
    "Kind",
    "Mode",
    "Orientation",
    "build_graph",
    "cited_environment",
    "citing_environment",
    "cosine_matrix",
    "display_network",
    "load_graph",
    "parse_edges",
    "parse_journals",
    "pearson_matrix",
    "principal_components",
]
