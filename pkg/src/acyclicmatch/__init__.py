"""Acyclic matchings in subcubic graphs: exact search, a constructive
algorithm with a size guarantee, generators and bound verification."""

from .formats import FormatError, graph6_decode, graph6_encode, read_graphs
from .generators import (
    CapacityError,
    GraphFamilySpec,
    canonical_form,
    enumerate_connected_subcubic,
    enumeration_count,
    gk_chain,
    make,
    star_of_k23,
)
from .graph import (
    Graph,
    SpecialClass,
    blocks,
    classify_special,
    contract_pattern,
    count_special_components,
    find_subgraph,
    girth,
    shortest_cycle,
)
from .oracle import (
    EXACT,
    LOWER_BOUND_ONLY,
    AcyclicCertificate,
    ExactResult,
    SolveBudget,
    exact_nu_ac,
    is_acyclic_matching,
)
from .reduction import (
    ReductionTrace,
    SoundnessError,
    TraceError,
    check_guarantee,
    constructive_matching,
    replay_trace,
)
from .verifier import (
    BoundReport,
    conjecture2_rhs,
    theorem1_rhs,
    theorem2_rhs,
    verify_graph,
    verify_stream,
)

__version__ = "0.1.0"
