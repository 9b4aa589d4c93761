"""Forbidden-pattern ordering and coloring problems, their reductions, and
sparse high-girth blow-ups for temporal CSPs."""

from .girth import StructCycle, girth, raise_girth, shortest_cycle
from .patterns import (
    colored_occurs,
    ordered_occurs,
    solve_coloring,
    solve_ordering,
    supergraph_closure,
)
from .relcore import (
    ANY,
    BudgetExceeded,
    ColoredGraph,
    Graph,
    InvariantError,
    OrderedGraph,
    RelStructure,
    Signature,
    SignatureMismatch,
    TemporalStructure,
    Verdict,
    blow_up,
    canonical_ranks,
    hom_exists,
    linearize_witness,
    max_degree,
    temporal_hom_exists,
    temporal_tuple_allowed,
    weak_orders,
)
from .tsil import (
    extract_intervals,
    equivalence_trial,
    fubini,
    generate,
    transfer,
    tsil_parameters,
    verify_spanning,
)

__version__ = "0.1.0"
