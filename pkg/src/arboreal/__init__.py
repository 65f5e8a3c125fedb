"""Decision procedures for finite-state automorphisms of rooted trees."""

from .bounded import (
    ChoiceSystem,
    ConfigClosure,
    Configuration,
    FinSatReport,
    NotBounded,
    RestrictedDecision,
    SearchResult,
    bounded_choice_search,
    choice_system,
    configurations,
    conjugate_in_pol0_cyclic,
    conjugate_in_pol_inf,
    conjugate_in_pol_minus1,
    finitary_satisfiable,
)
from .classify import (
    NOT_CIRCUIT,
    NOT_FINITARY,
    ActivityClass,
    NucleusReport,
    OrbitSignalizer,
    activity,
    circuit_word,
    finitary_depth,
    is_bounded,
    nucleus,
    orbit_signalizer,
    polynomial_degree,
)
from .elements import (
    Element,
    Exceeded,
    Interner,
    Machine,
    act,
    equal,
    inverse,
    is_trivial,
    minimize,
    multiply,
    orbit,
    orbit_power_section,
    power,
    section,
)
from .conjugacy import (
    ConjDecision,
    ConjGraph,
    ConjugatorFR,
    SimConjGraph,
    all_basic_conjugators,
    basic_conjugator,
    canonical_representative,
    conj_graph,
    conjugate_in_aut,
    conjugate_in_aut_simultaneous,
    expand_to_finite_state,
    sim_basic_conjugator,
    sim_conj_graph,
)
from .dot import conj_graph_dot, emit_dot, order_graph_dot, sim_graph_dot
from .order import OrderResult, order, order_from_graph, order_graph
from .oracle import (
    DepthTooLarge,
    TruncatedAut,
    orbit_tree_code,
    random_bounded,
    truncate,
    truncated_order,
    verify_conjugator,
)
from .perms import CONJUGATOR_DEGREE_CAP, DegreeTooLarge, conjugators, orbits
from .system import DslError, FRSystem, format_system, format_word, parse_system, parse_word

__version__ = "0.1.0"

__all__ = [
    "ActivityClass",
    "CONJUGATOR_DEGREE_CAP",
    "ChoiceSystem",
    "ConfigClosure",
    "Configuration",
    "ConjDecision",
    "ConjGraph",
    "ConjugatorFR",
    "DegreeTooLarge",
    "DepthTooLarge",
    "DslError",
    "Element",
    "Exceeded",
    "FRSystem",
    "FinSatReport",
    "Interner",
    "Machine",
    "NOT_CIRCUIT",
    "NOT_FINITARY",
    "NotBounded",
    "NucleusReport",
    "OrbitSignalizer",
    "OrderResult",
    "RestrictedDecision",
    "SearchResult",
    "SimConjGraph",
    "TruncatedAut",
    "act",
    "all_basic_conjugators",
    "activity",
    "basic_conjugator",
    "bounded_choice_search",
    "canonical_representative",
    "choice_system",
    "circuit_word",
    "configurations",
    "conj_graph",
    "conj_graph_dot",
    "conjugate_in_aut",
    "conjugate_in_aut_simultaneous",
    "conjugate_in_pol0_cyclic",
    "conjugate_in_pol_inf",
    "conjugate_in_pol_minus1",
    "conjugators",
    "emit_dot",
    "equal",
    "expand_to_finite_state",
    "finitary_depth",
    "finitary_satisfiable",
    "format_system",
    "format_word",
    "inverse",
    "is_bounded",
    "is_trivial",
    "minimize",
    "multiply",
    "nucleus",
    "orbit",
    "orbit_power_section",
    "orbit_signalizer",
    "orbit_tree_code",
    "orbits",
    "order",
    "order_from_graph",
    "order_graph",
    "order_graph_dot",
    "parse_system",
    "parse_word",
    "polynomial_degree",
    "power",
    "random_bounded",
    "section",
    "sim_basic_conjugator",
    "sim_conj_graph",
    "sim_graph_dot",
    "truncate",
    "truncated_order",
    "verify_conjugator",
    "__version__",
]
