"""khbound: exact rational Khovanov homology and crossing-number bound certificates."""

__version__ = "0.1.0"

from .diagrams import (
    Diagram,
    DiagramStats,
    canonical_relabel,
    diagram_hash,
    linking_number,
    mirror,
    parse_pd,
    reverse_component,
    stats,
)
from .factory import CableSpec, braid_closure, cable_diagram, connected_sum, disjoint_union, torus_diagram
from .invariants import KhTable, extreme_degrees, jones_via_kauffman, kh_table, plus_adequate

__all__ = [
    "Diagram",
    "DiagramStats",
    "KhTable",
    "CableSpec",
    "braid_closure",
    "cable_diagram",
    "canonical_relabel",
    "connected_sum",
    "diagram_hash",
    "disjoint_union",
    "extreme_degrees",
    "jones_via_kauffman",
    "kh_table",
    "linking_number",
    "mirror",
    "parse_pd",
    "reverse_component",
    "stats",
    "torus_diagram",
]
