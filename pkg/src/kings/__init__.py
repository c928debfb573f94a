"""Tournament family specifiers, succinct graphs, and k-king procedures."""

from .bitstrings import all_bits, bits_to_int, int_to_bits
from .circuit import (
    BooleanCircuit,
    CircuitParseError,
    JTournamentCircuit,
    SuccinctGraph,
    eval_circuit,
    format_circuit,
    gw_check_tournament,
    gw_edge,
    gw_k_king,
    gw_materialize,
    jt_edge,
    jt_k_king,
    jt_materialize,
    mpt_has_1king_fast,
    parse_circuit,
    table_to_circuit,
)
from .digraph import (
    ExplicitDigraph,
    GraphParseError,
    MultipartiteTournament,
    UndirectedGraph,
    all_k_kings,
    check_tournament,
    enumerate_tournaments,
    export_dot,
    find_king_landau,
    format_graph_text,
    is_k_king,
    parse_graph_text,
    recognize_jpartite_direct,
    recognize_jpartite_patterns,
    underlying_graph,
)
from .formula import (
    CatalogCodec,
    CodecError,
    ForallExistsFormula,
    FormulaSyntaxError,
    PropFormula,
    TTFECodec,
    TTPlainCodec,
    TruthTable,
    codec_by_name,
    decode_formula,
    encode_formula,
    eval_forall_exists,
    eval_formula,
    formula_from_table,
    is_satisfiable,
    is_tautology,
    parse_formula,
    parse_formula_input,
    truth_table_of,
)
from .limits import CapExceeded
from .pairing import Pairing, pair, unpair
from .reductions import (
    ReductionInstance,
    VerificationReport,
    build_2partite_instance,
    build_gw_antenna_instance,
    canonical_out,
    lift_j,
    lift_k,
    list_suites,
    reduce_taut_to_1king_gw,
    reduce_to_kings,
    reduce_to_kkings,
    verify_suite,
)
from .specifier import (
    GraphFamilySpecifier,
    MaxSpecifier,
    NodeClass,
    TournamentFamilySpecifier,
    WeaveSpecifier,
    build_subtournament,
    check_associativity,
    classify_node,
    conp_specifier,
    induced_graph,
    kkings_specifier,
    make_builtin_specifier,
    max_specifier,
    np_specifier,
    pi2_specifier,
    select,
    specifier_k_king,
    validate_specifier,
)

__version__ = "0.1.0"
