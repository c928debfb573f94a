import random

import numpy as np
import pytest

from kings.bitstrings import all_bits, int_to_bits
from kings.circuit import (
    BooleanCircuit,
    CircuitParseError,
    JTournamentCircuit,
    SuccinctGraph,
    eval_circuit,
    eval_circuit_batch,
    format_circuit,
    gw_check_tournament,
    gw_edge,
    gw_k_king,
    gw_materialize,
    jt_edge,
    jt_k_king,
    jt_materialize,
    jt_node_index,
    jt_query,
    jt_table_to_circuit,
    mpt_has_1king_fast,
    parse_circuit,
    table_to_circuit,
)
from kings.digraph import all_k_kings, recognize_jpartite_direct
from kings.generators import random_circuit, random_jtournament_circuit
from kings.limits import CapExceeded

AND2 = BooleanCircuit(2, (("INPUT", 0), ("INPUT", 1), ("AND", 0, 1)), 2)


def const_circuit(arity, value):
    return BooleanCircuit(arity, (("CONST", value),), 0)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_eval_examples():
    assert eval_circuit(AND2, "11")
    assert not eval_circuit(AND2, "10")
    neg = BooleanCircuit(1, (("INPUT", 0), ("NOT", 0)), 1)
    assert not eval_circuit(neg, "1")
    c = BooleanCircuit(2, (("INPUT", 0), ("INPUT", 1), ("NOT", 1),
                           ("AND", 0, 2), ("CONST", 0), ("OR", 3, 4)), 5)
    assert eval_circuit(c, "10")
    with pytest.raises(ValueError):
        eval_circuit(AND2, "1")


def test_eval_batch_matches_single():
    rng = random.Random(2)
    for _ in range(40):
        arity = rng.randint(1, 5)
        c = random_circuit(rng, arity, rng.randint(1, 20))
        rows = [bits for bits in all_bits(arity)]
        matrix = np.array([[b == "1" for b in r] for r in rows])
        batch = eval_circuit_batch(c, matrix)
        for i, bits in enumerate(rows):
            assert bool(batch[i]) == eval_circuit(c, bits)


def test_circuit_validation():
    with pytest.raises(ValueError):
        BooleanCircuit(1, (("NOT", 0),), 0)  # self reference
    with pytest.raises(ValueError):
        BooleanCircuit(1, (("INPUT", 1),), 0)  # arity overflow
    with pytest.raises(ValueError):
        BooleanCircuit(1, (("INPUT", 0),), 3)  # output out of range


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

EXAMPLE = """\
inputs 2
g0 INPUT 0
g1 INPUT 1
g2 AND g0 g1
output g2
"""


def test_parse_example():
    c = parse_circuit(EXAMPLE)
    assert c.num_inputs == 2 and len(c.gates) == 3
    assert eval_circuit(c, "11") and not eval_circuit(c, "01")


def test_parse_then_format_is_identity():
    assert format_circuit(parse_circuit(EXAMPLE)) == EXAMPLE


def test_format_then_parse_is_structural_identity():
    rng = random.Random(4)
    for _ in range(25):
        c = random_circuit(rng, rng.randint(0, 4), rng.randint(1, 15))
        assert parse_circuit(format_circuit(c)) == c


def test_parse_errors():
    with pytest.raises(CircuitParseError, match="forward reference g5"):
        parse_circuit("inputs 1\ng0 NOT g5\ng5 INPUT 0\noutput g0\n")
    with pytest.raises(CircuitParseError, match="undefined gate g9"):
        parse_circuit("inputs 1\ng0 NOT g9\noutput g0\n")
    with pytest.raises(CircuitParseError, match="missing output"):
        parse_circuit("inputs 1\ng0 INPUT 0\n")
    with pytest.raises(CircuitParseError, match="must increase"):
        parse_circuit("inputs 1\ng1 INPUT 0\ng0 CONST 1\noutput g0\n")
    with pytest.raises(CircuitParseError):
        parse_circuit("")


def test_comments_and_blank_lines():
    text = "# tiny\ninputs 1\n\ng0 INPUT 0  # the only gate\noutput g0\n"
    assert eval_circuit(parse_circuit(text), "1")


# ---------------------------------------------------------------------------
# succinct graphs
# ---------------------------------------------------------------------------

def test_table_to_circuit_examples():
    sg = table_to_circuit(1, lambda x, y: (x, y) == ("1", "0"))
    assert gw_edge(sg, "1", "0") and not gw_edge(sg, "0", "1")
    empty = table_to_circuit(1, lambda x, y: False)
    assert not gw_edge(empty, "0", "1")


def test_table_roundtrip_through_materialization():
    rng = random.Random(6)
    for n in (1, 2, 3):
        for _ in range(6):
            table = {(x, y): rng.random() < 0.5
                     for x in all_bits(n) for y in all_bits(n) if x != y}
            sg = table_to_circuit(n, lambda x, y: table[(x, y)])
            g = gw_materialize(sg)
            assert g.num_nodes == 1 << n
            for (x, y), want in table.items():
                assert g.has_edge(int(x, 2), int(y, 2)) == want
                assert gw_edge(sg, x, y) == want


def test_gw_edge_rejects_self_pairs_and_bad_lengths():
    sg = SuccinctGraph(1, const_circuit(2, 1))
    with pytest.raises(ValueError):
        gw_edge(sg, "1", "1")
    with pytest.raises(ValueError):
        gw_edge(sg, "10", "01")


def test_gw_materialize_const_one():
    g = gw_materialize(SuccinctGraph(1, const_circuit(2, 1)))
    assert g.has_edge(0, 1) and g.has_edge(1, 0)  # both ways: not a tournament
    assert g.num_nodes == 2


def _less_than_graph(n):
    return table_to_circuit(n, lambda x, y: x < y)


def test_gw_check_tournament():
    assert not gw_check_tournament(SuccinctGraph(1, const_circuit(2, 1)))
    assert not gw_check_tournament(SuccinctGraph(1, const_circuit(2, 0)))
    for n in (1, 2, 3):
        assert gw_check_tournament(_less_than_graph(n))


def test_gw_k_king():
    sg = _less_than_graph(3)
    assert gw_k_king(sg, "000", 1)
    assert not gw_k_king(sg, "111", 2)
    none = SuccinctGraph(1, const_circuit(2, 0))
    assert not gw_k_king(none, "0", 3)


def test_gw_cap():
    with pytest.raises(CapExceeded):
        gw_materialize(SuccinctGraph(3, const_circuit(6, 1)), node_cap=4)


# ---------------------------------------------------------------------------
# multipartite circuits
# ---------------------------------------------------------------------------

def test_jt_query_example():
    assert jt_query(2, 1, 1, "0", 2, "1") == "1011"
    assert jt_query(3, 0, 1, "", 2, "") == "110"


def test_jt_edge_const_one():
    jc = JTournamentCircuit(2, 1, const_circuit(4, 1))
    for s in all_bits(1):
        for s2 in all_bits(1):
            assert jt_edge(jc, (1, s), (2, s2))
            assert not jt_edge(jc, (2, s2), (1, s))


def test_jt_edge_errors():
    jc = JTournamentCircuit(2, 1, const_circuit(4, 1))
    with pytest.raises(ValueError):
        jt_edge(jc, (1, "0"), (1, "1"))  # same part
    with pytest.raises(ValueError):
        jt_edge(jc, (0, "0"), (2, "1"))
    with pytest.raises(ValueError):
        jt_edge(jc, (1, "00"), (2, "1"))


def test_jt_antisymmetry_exhaustive_small():
    rng = random.Random(8)
    for _ in range(25):
        j = rng.randint(2, 3)
        n = rng.randint(0, 2)
        jc = random_jtournament_circuit(rng, j, n)
        nodes = [(i, s) for i in range(1, j + 1) for s in all_bits(n)]
        for a in nodes:
            for b in nodes:
                if a[0] != b[0]:
                    assert jt_edge(jc, a, b) != jt_edge(jc, b, a)


def test_jt_materialize_const_one():
    jc = JTournamentCircuit(2, 1, const_circuit(4, 1))
    mpt = jt_materialize(jc)
    mpt.validate()
    assert [len(p) for p in mpt.parts] == [2, 2]
    for a in mpt.parts[0]:
        for b in mpt.parts[1]:
            assert mpt.graph.has_edge(a, b)


def test_jt_materialize_n0_gives_tournament():
    rng = random.Random(12)
    for _ in range(10):
        jc = random_jtournament_circuit(rng, 3, 0)
        mpt = jt_materialize(jc)
        mpt.validate()
        assert mpt.graph.num_nodes == 3
        from kings.digraph import check_tournament
        assert check_tournament(mpt.graph)


def test_jt_materialize_always_valid_multipartite():
    rng = random.Random(13)
    for _ in range(30):
        j = rng.randint(2, 3)
        n = rng.randint(0, 2)
        jc = random_jtournament_circuit(rng, j, n)
        mpt = jt_materialize(jc)
        mpt.validate()
        assert recognize_jpartite_direct(mpt.graph, j)
        # the materialization agrees with single edge queries
        for _ in range(10):
            i = rng.randint(1, j)
            i2 = rng.randint(1, j)
            if i == i2:
                continue
            s = int_to_bits(rng.randrange(1 << n), n)
            s2 = int_to_bits(rng.randrange(1 << n), n)
            a = jt_node_index(jc, (i, s))
            b = jt_node_index(jc, (i2, s2))
            assert mpt.graph.has_edge(a, b) == jt_edge(jc, (i, s), (i2, s2))


def test_jt_k_king_examples():
    jc = JTournamentCircuit(2, 1, const_circuit(4, 1))
    assert not jt_k_king(jc, (1, "0"), 2)  # its part-mate is unreachable
    single = JTournamentCircuit(2, 0, const_circuit(2, 1))
    assert jt_k_king(single, (1, ""), 1)


def test_mpt_1king_fast():
    assert mpt_has_1king_fast(JTournamentCircuit(2, 1, const_circuit(4, 1))) is None
    assert mpt_has_1king_fast(JTournamentCircuit(2, 0, const_circuit(2, 1))) == (1, "")
    # cyclic orientation on three singleton parts has no 1-king
    cyc = jt_table_to_circuit(
        3, 0, lambda i, s, i2, s2: (i, i2) in ((1, 2), (2, 3)))
    # 1->2, 2->3, 3->1: the (1,3) canonical query must say "3 -> 1"
    assert mpt_has_1king_fast(cyc) is None
    assert all_k_kings(jt_materialize(cyc).graph, 1) == set()


def test_mpt_1king_fast_matches_brute_force():
    rng = random.Random(21)
    for _ in range(80):
        j = rng.randint(2, 4)
        n = rng.randint(0, 1)
        jc = random_jtournament_circuit(rng, j, n)
        fast = mpt_has_1king_fast(jc)
        brute = all_k_kings(jt_materialize(jc).graph, 1)
        if fast is None:
            assert not brute
        else:
            idx = (fast[0] - 1) * (1 << n)
            assert brute == {idx}
