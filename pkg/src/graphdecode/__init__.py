"""Graph-code construction and minimum-weight decoding."""

from ._backend import BACKEND
from .code import (
    CapabilityError,
    CodeConstructionError,
    GraphCode,
    LogicalClass,
    Syndrome,
    build_code,
    check_matrix,
    distance,
    logical_class,
    syndrome_of,
    syndrome_via_t,
)
from .decoder import (
    DecodeOutcome,
    exact_mld_decode,
    graph_state_phase_correction,
    hierarchical_decode,
    residual_class,
)
from .graph import Graph, cycle_graph, graph_state_stabilizers, parse_graph, random_graph
from .noise import PauliChannel, decompose_kraus, depolarizing, parse_channel, sample_error
from .pauli import PauliOperator, commutes, equal_up_to_phase, multiply, pauli_from_supports, weight

__version__ = "0.1.0"
