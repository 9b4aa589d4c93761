"""Reductions between coloring, ordering, NAE-SAT and temporal CSPs."""

from .gadgets import (
    ColoredStructure,
    Decoded,
    Encoding,
    Gadget,
    GadgetSpec,
    build_gadgets,
    family_size,
    forbidden_family,
    graph_to_structure,
    structure_to_graph,
)
from .nae import GirthTooSmall, Hypergraph3, nae_to_triangles, triangles_to_nae
from .ordering import (
    cliques,
    minimal_clique,
    ordering_family,
    ordering_family_parts,
    star,
    unstar,
)
from .temporal import (
    graph_to_temporal_instance,
    order_to_ranks,
    patterns_to_temporal,
    ranks_to_order,
    reproducing_orders,
)
