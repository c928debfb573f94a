import pytest

from kings.circuit import gw_check_tournament, gw_materialize, jt_edge, jt_k_king
from kings.digraph import is_k_king
from kings.formula import (
    CatalogCodec,
    TTFECodec,
    formula_from_table,
    parse_formula_input,
)
from kings.pairing import Pairing, pair
from kings.reductions import (
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
from kings.specifier import conp_specifier, kkings_specifier, np_specifier, pi2_specifier


def fe(text):
    return parse_formula_input(text)


# ---------------------------------------------------------------------------
# family reductions
# ---------------------------------------------------------------------------

def test_reduce_to_kings_examples():
    inst = reduce_to_kings("conp", "tt:11")
    assert (inst.node, inst.length, inst.expected) == ("01011000", 8, True)
    inst = reduce_to_kings("np", "tt:01")
    assert (inst.node, inst.length, inst.expected) == ("000111000", 9, True)
    inst = reduce_to_kings("pi2", "zzz")
    assert inst.expected is False
    assert inst.node == canonical_out(pi2_specifier())


def test_reductions_are_total():
    for garbage in ("", ")", "x1 &", "tt:0", 42, None, "fe:n=0:x1"):
        for kind in ("pi2", "conp", "np"):
            inst = reduce_to_kings(kind, garbage)
            assert inst.expected is False and len(inst.node) == inst.length
        inst = reduce_to_kkings(garbage, 3)
        assert inst.expected is False
    # a propositional formula is garbage for the forall-exists reduction
    assert reduce_to_kings("pi2", "x1").expected is False
    # and vice versa
    assert reduce_to_kings("conp", "fe:n=1:tt:1001").expected is False


def test_canonical_out_values():
    assert canonical_out(pi2_specifier()) == "000000000001"
    assert canonical_out(conp_specifier()) == "00000001"
    # the next-smallest string at length 9 is a special node, never chosen
    assert canonical_out(np_specifier()) == "000000010"
    assert canonical_out(kkings_specifier(3)) == "0000000000001"
    # no catalog formula has enough universal variables for k = 4
    assert canonical_out(kkings_specifier(4)) == "1"


def test_out_is_never_a_king():
    from kings.specifier import specifier_k_king
    for spec in (conp_specifier(), np_specifier()):
        out = canonical_out(spec)
        assert not specifier_k_king(spec, out, 2)


def test_reduce_to_kkings_examples():
    inst = reduce_to_kkings(CatalogCodec().entry(0), 3)
    assert inst.node == pair(Pairing.V1, "0000", "0001")
    assert inst.length == 13 and inst.expected is True
    # k = 2 degenerates to the forall-exists 2-king reduction
    f = fe("fe:n=1:tt:1001")
    assert reduce_to_kkings(f, 2, TTFECodec()).node == reduce_to_kings("pi2", f).node
    # too few universal variables for k = 3
    assert reduce_to_kkings(f, 3, TTFECodec()).expected is False


# ---------------------------------------------------------------------------
# succinct-graph constructions
# ---------------------------------------------------------------------------

def test_antenna_instance_shapes_and_kingship():
    f_true = fe("fe:n=1:tt:1001")
    f_false = fe("fe:n=1:tt:1000")
    inst = build_gw_antenna_instance(f_true, 2)
    g = gw_materialize(inst.circuit)
    assert g.num_nodes == 8 and gw_check_tournament(inst.circuit)
    assert is_k_king(g, int(inst.node, 2), 2)
    inst4 = build_gw_antenna_instance(f_true, 4)
    g4 = gw_materialize(inst4.circuit)
    assert is_k_king(g4, int(inst4.node, 2), 4)
    inst4f = build_gw_antenna_instance(f_false, 4)
    g4f = gw_materialize(inst4f.circuit)
    assert not is_k_king(g4f, int(inst4f.node, 2), 4)


def test_onekings_examples():
    for bits, want in (("11", True), ("10", False), ("00", False)):
        inst = reduce_taut_to_1king_gw(formula_from_table(1, bits))
        g = gw_materialize(inst.circuit)
        assert gw_check_tournament(inst.circuit)
        assert is_k_king(g, int(inst.node, 2), 1) == want == inst.expected


def test_header_circuit_text_roundtrip():
    from kings.circuit import format_circuit, parse_circuit
    inst = reduce_taut_to_1king_gw(formula_from_table(2, "1011"))
    assert parse_circuit(format_circuit(inst.circuit.circuit)) == inst.circuit.circuit


def test_2partite_instance():
    inst = build_2partite_instance(fe("fe:n=1:tt:1001"))
    assert inst.circuit.part_size() == 4  # both parts 2^{n+1}
    assert jt_k_king(inst.circuit, inst.node, 2)
    inst_f = build_2partite_instance(fe("fe:n=1:tt:1000"))
    assert not jt_k_king(inst_f.circuit, inst_f.node, 2)


def test_lift_j_preserves_kingship():
    inst = build_2partite_instance(fe("fe:n=1:tt:1001"))
    lifted, node = lift_j(inst.circuit, inst.node)
    assert lifted.j == 3 and lifted.n == inst.circuit.n
    for k in (1, 2, 3):
        assert jt_k_king(lifted, node, k) == jt_k_king(inst.circuit, inst.node, k)
    # the new part holds sinks only
    assert not jt_k_king(lifted, (3, "0" * lifted.n), 4)


def test_lift_k_shifts_kingship():
    for bits, want in (("1001", True), ("1000", False)):
        inst = build_2partite_instance(fe(f"fe:n=1:tt:{bits}"))
        lifted, z = lift_k(inst.circuit, inst.node)
        assert jt_k_king(lifted, z, 3) == want
        assert jt_edge(lifted, z, (inst.node[0], "0" + inst.node[1]))
    with pytest.raises(ValueError):
        lift_k(lift_j(inst.circuit, inst.node)[0], inst.node)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def test_verify_suite_smoke():
    report = verify_suite("claim2.2:n=1")
    assert report.total == 16 and report.passed
    assert report.agreements + report.disagreements == report.total
    assert "16/16 agree" in report.to_text()
    assert any("total=16" in r for r in report.to_records())


def test_verify_suite_unknown():
    with pytest.raises(ValueError):
        verify_suite("nope")


def test_suite_registry():
    suites = list_suites()
    for sid in ("claim2.2:n=1", "claim2.8", "claim2.11", "weave-pi2:m=12",
                "weave-conp:m=8", "weave-conp:m=13", "weave-np:m=9",
                "weave-kkings:k=3:m=13", "antenna:k=2", "antenna:k=5",
                "onekings-gw", "lemma4.2", "lemma4.3:n=1", "lemma4.3:n=2",
                "lemma4.4", "lemma4.5", "landau:n<=5", "patterns-eq",
                "fourking-mpt", "assoc-max"):
        assert sid in suites


def test_seeded_suites_are_deterministic():
    a = verify_suite("fourking-mpt", seed=3, sample=40)
    b = verify_suite("fourking-mpt", seed=3, sample=40)
    assert (a.total, a.disagreements, a.witnesses) == (b.total, b.disagreements, b.witnesses)
    c = verify_suite("lemma4.2", seed=1, sample=25)
    assert c.total >= 25 and c.passed
