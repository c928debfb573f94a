"""Boolean circuits and the two succinct graph models built on them.

A circuit is a flat gate list in topological order over the gate set
{INPUT, CONST, NOT, AND, OR} with a single designated output.  The text
format is line oriented and bit exact; see :func:`parse_circuit`.

Succinct graphs come in two flavors:

* a 2n-input circuit specifies a digraph on the 2**n length-n strings,
  with an edge x -> y exactly when the circuit accepts x concatenated
  with y (self-pairs are never queried);
* a j(n+1)-input circuit specifies a balanced j-partite tournament whose
  parts each hold the 2**n length-n strings.  An edge query activates two
  of the j (n+1)-bit fields through their leading control bits; the model
  itself guarantees the result is a multipartite tournament.

Materialization is capped; evaluation over many queries runs gate by gate
on numpy boolean columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .bitstrings import check_bits, int_to_bits
from .digraph import ExplicitDigraph, MultipartiteTournament, is_k_king
from .limits import DEFAULT_NODE_CAP, CapExceeded


class CircuitParseError(ValueError):
    pass


@dataclass(frozen=True)
class BooleanCircuit:
    """Gate list referencing earlier gates only; exactly one output."""

    num_inputs: int
    gates: Tuple[tuple, ...]
    output: int

    def __post_init__(self):
        if self.num_inputs < 0:
            raise ValueError("negative input arity")
        if not self.gates:
            raise ValueError("a circuit needs at least one gate")
        for pos, gate in enumerate(self.gates):
            op = gate[0]
            if op == "INPUT":
                if not 0 <= gate[1] < self.num_inputs:
                    raise ValueError(f"gate {pos}: input index out of range")
            elif op == "CONST":
                if gate[1] not in (0, 1):
                    raise ValueError(f"gate {pos}: const must be 0 or 1")
            elif op == "NOT":
                if not 0 <= gate[1] < pos:
                    raise ValueError(f"gate {pos}: reference must point backward")
            elif op in ("AND", "OR"):
                if not (0 <= gate[1] < pos and 0 <= gate[2] < pos):
                    raise ValueError(f"gate {pos}: reference must point backward")
            else:
                raise ValueError(f"gate {pos}: unknown op {op!r}")
        if not 0 <= self.output < len(self.gates):
            raise ValueError("output gate out of range")


def eval_circuit(c: BooleanCircuit, bits: str) -> bool:
    """Single forward pass over the gate list."""
    check_bits(bits)
    if len(bits) != c.num_inputs:
        raise ValueError(f"expected {c.num_inputs} input bits, got {len(bits)}")
    values: List[bool] = []
    for gate in c.gates:
        op = gate[0]
        if op == "INPUT":
            v = bits[gate[1]] == "1"
        elif op == "CONST":
            v = bool(gate[1])
        elif op == "NOT":
            v = not values[gate[1]]
        elif op == "AND":
            v = values[gate[1]] and values[gate[2]]
        else:
            v = values[gate[1]] or values[gate[2]]
        values.append(v)
    return values[c.output]


def eval_circuit_batch(c: BooleanCircuit, inputs: np.ndarray) -> np.ndarray:
    """Evaluate on a (queries, num_inputs) boolean matrix, one pass per gate.

    Gate values are freed as soon as no later gate references them, so peak
    memory stays proportional to the live frontier rather than gate count.
    """
    inputs = np.asarray(inputs, dtype=bool)
    if inputs.ndim != 2 or inputs.shape[1] != c.num_inputs:
        raise ValueError("inputs must be a (queries, num_inputs) matrix")
    last_use = list(range(len(c.gates)))
    for pos, gate in enumerate(c.gates):
        if gate[0] in ("NOT", "AND", "OR"):
            for ref in gate[1:]:
                last_use[ref] = pos
    last_use[c.output] = len(c.gates)
    q = inputs.shape[0]
    values = {}
    for pos, gate in enumerate(c.gates):
        op = gate[0]
        if op == "INPUT":
            v = inputs[:, gate[1]]
        elif op == "CONST":
            v = np.full(q, bool(gate[1]))
        elif op == "NOT":
            v = ~values[gate[1]]
        elif op == "AND":
            v = values[gate[1]] & values[gate[2]]
        else:
            v = values[gate[1]] | values[gate[2]]
        values[pos] = v
        if op in ("NOT", "AND", "OR"):
            for ref in set(gate[1:]):
                if last_use[ref] == pos:
                    del values[ref]
    return values[c.output]


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_circuit(text: str) -> BooleanCircuit:
    """Parse the line format: ``inputs N``, ``g<k> OP ...`` lines, ``output g<k>``.

    Gate indices must be strictly increasing; ``#`` starts a comment.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise CircuitParseError("empty circuit text")
    lineno, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "inputs":
        raise CircuitParseError(f"line {lineno}: expected 'inputs <N>'")
    num_inputs = int(parts[1])

    defined_anywhere = set()
    for _, line in lines[1:]:
        toks = line.split()
        if toks and toks[0].startswith("g") and len(toks) >= 2 and toks[1] in (
                "INPUT", "CONST", "NOT", "AND", "OR"):
            defined_anywhere.add(toks[0])

    gates = []
    name_to_pos = {}
    output = None
    last_index = -1

    def resolve(lineno, name):
        if name in name_to_pos:
            return name_to_pos[name]
        if name in defined_anywhere:
            raise CircuitParseError(f"line {lineno}: forward reference {name}")
        raise CircuitParseError(f"line {lineno}: undefined gate {name}")

    for lineno, line in lines[1:]:
        toks = line.split()
        if toks[0] == "output":
            if len(toks) != 2:
                raise CircuitParseError(f"line {lineno}: bad output line")
            output = resolve(lineno, toks[1])
            continue
        if output is not None:
            raise CircuitParseError(f"line {lineno}: text after the output line")
        name = toks[0]
        if not name.startswith("g") or not name[1:].isdigit():
            raise CircuitParseError(f"line {lineno}: bad gate name {name!r}")
        index = int(name[1:])
        if index <= last_index:
            raise CircuitParseError(f"line {lineno}: gate indices must increase")
        last_index = index
        op = toks[1] if len(toks) > 1 else ""
        if op == "INPUT" and len(toks) == 3:
            gate = ("INPUT", int(toks[2]))
        elif op == "CONST" and len(toks) == 3 and toks[2] in ("0", "1"):
            gate = ("CONST", int(toks[2]))
        elif op == "NOT" and len(toks) == 3:
            gate = ("NOT", resolve(lineno, toks[2]))
        elif op in ("AND", "OR") and len(toks) == 4:
            gate = (op, resolve(lineno, toks[2]), resolve(lineno, toks[3]))
        else:
            raise CircuitParseError(f"line {lineno}: bad gate line {line!r}")
        name_to_pos[name] = len(gates)
        gates.append(gate)
    if output is None:
        raise CircuitParseError("missing output line")
    try:
        return BooleanCircuit(num_inputs, tuple(gates), output)
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from None


def format_circuit(c: BooleanCircuit) -> str:
    lines = [f"inputs {c.num_inputs}"]
    for pos, gate in enumerate(c.gates):
        op = gate[0]
        if op in ("INPUT", "CONST"):
            lines.append(f"g{pos} {op} {gate[1]}")
        elif op == "NOT":
            lines.append(f"g{pos} NOT g{gate[1]}")
        else:
            lines.append(f"g{pos} {op} g{gate[1]} g{gate[2]}")
    lines.append(f"output g{c.output}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Circuit builders
# ---------------------------------------------------------------------------

class _Builder:
    def __init__(self, num_inputs):
        self.num_inputs = num_inputs
        self.gates = []

    def add(self, gate):
        self.gates.append(gate)
        return len(self.gates) - 1

    def inputs(self):
        return [self.add(("INPUT", i)) for i in range(self.num_inputs)]

    def fold(self, op, ids):
        ids = list(ids)
        if not ids:
            raise ValueError("fold of nothing")
        while len(ids) > 1:
            nxt = [self.add((op, ids[i], ids[i + 1])) for i in range(0, len(ids) - 1, 2)]
            if len(ids) % 2:
                nxt.append(ids[-1])
            ids = nxt
        return ids[0]

    def finish(self, output):
        return BooleanCircuit(self.num_inputs, tuple(self.gates), output)


def minterm_circuit(num_inputs: int, accepted: Sequence[str]) -> BooleanCircuit:
    """A circuit accepting exactly the given input strings (sum of minterms)."""
    b = _Builder(num_inputs)
    ins = b.inputs()
    negs = [b.add(("NOT", g)) for g in ins]
    terms = []
    for word in sorted(accepted):
        check_bits(word)
        if len(word) != num_inputs:
            raise ValueError("minterm width mismatch")
        lits = [ins[i] if word[i] == "1" else negs[i] for i in range(num_inputs)]
        terms.append(b.fold("AND", lits) if lits else b.add(("CONST", 1)))
    if not terms:
        return b.finish(b.add(("CONST", 0)))
    return b.finish(b.fold("OR", terms))


# ---------------------------------------------------------------------------
# Succinct graphs on the length-n strings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuccinctGraph:
    """A 2n-input circuit specifying a digraph on the length-n strings."""

    n: int
    circuit: BooleanCircuit

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.circuit.num_inputs != 2 * self.n:
            raise ValueError("circuit arity must be 2n")


def table_to_circuit(n: int, edge_fn: Callable[[str, str], bool],
                     node_cap: int = DEFAULT_NODE_CAP) -> SuccinctGraph:
    """Wrap an explicit edge table as a succinct graph (sum of minterms)."""
    _check_nodes(1 << n, node_cap)
    accepted = []
    for x in range(1 << n):
        xs = int_to_bits(x, n)
        for y in range(1 << n):
            if x == y:
                continue
            ys = int_to_bits(y, n)
            if edge_fn(xs, ys):
                accepted.append(xs + ys)
    return SuccinctGraph(n, minterm_circuit(2 * n, accepted))


def gw_edge(sg: SuccinctGraph, x: str, y: str) -> bool:
    check_bits(x)
    check_bits(y)
    if len(x) != sg.n or len(y) != sg.n:
        raise ValueError(f"node strings must have length {sg.n}")
    if x == y:
        raise ValueError("self-pairs are never queried")
    return eval_circuit(sg.circuit, x + y)


def _check_nodes(num, node_cap):
    if num > node_cap:
        raise CapExceeded(f"{num} nodes exceeds the materialization cap {node_cap}")


def _node_bit_matrix(count: int, width: int) -> np.ndarray:
    if width == 0:
        return np.zeros((count, 0), dtype=bool)
    shifts = np.arange(width - 1, -1, -1)
    return ((np.arange(count)[:, None] >> shifts) & 1).astype(bool)


def _gw_edge_matrix(sg: SuccinctGraph, node_cap) -> np.ndarray:
    n = sg.n
    count = 1 << n
    _check_nodes(count, node_cap)
    bits = _node_bit_matrix(count, n)
    out = np.zeros((count, count), dtype=bool)
    # chunk over source nodes to bound the query matrix
    rows_per_chunk = max(1, (1 << 18) // count)
    for start in range(0, count, rows_per_chunk):
        stop = min(count, start + rows_per_chunk)
        block = stop - start
        left = np.repeat(bits[start:stop], count, axis=0)
        right = np.tile(bits, (block, 1))
        res = eval_circuit_batch(sg.circuit, np.hstack([left, right]))
        out[start:stop] = res.reshape(block, count)
    np.fill_diagonal(out, False)
    return out


def gw_materialize(sg: SuccinctGraph, node_cap: int = DEFAULT_NODE_CAP) -> ExplicitDigraph:
    """The explicit digraph on 2**n nodes labeled by their bit-strings."""
    edges = _gw_edge_matrix(sg, node_cap)
    labels = [int_to_bits(i, sg.n) for i in range(1 << sg.n)]
    return ExplicitDigraph.from_adjacency(edges, labels)


def gw_check_tournament(sg: SuccinctGraph, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    edges = _gw_edge_matrix(sg, node_cap)
    want = ~np.eye(edges.shape[0], dtype=bool)
    return bool(np.array_equal(edges ^ edges.T, want))


def gw_k_king(sg: SuccinctGraph, x: str, k: int,
              node_cap: int = DEFAULT_NODE_CAP) -> bool:
    check_bits(x)
    if len(x) != sg.n:
        raise ValueError(f"node strings must have length {sg.n}")
    g = gw_materialize(sg, node_cap)
    return is_k_king(g, int(x, 2), k)


# ---------------------------------------------------------------------------
# Multipartite tournament circuits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JTournamentCircuit:
    """A j(n+1)-input circuit specifying a balanced j-partite tournament."""

    j: int
    n: int
    circuit: BooleanCircuit

    def __post_init__(self):
        if self.j < 2:
            raise ValueError("j must be at least 2")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.circuit.num_inputs != self.j * (self.n + 1):
            raise ValueError("circuit arity must be j(n+1)")

    def part_size(self) -> int:
        return 1 << self.n


def jt_query(j: int, n: int, i: int, s: str, i2: int, s2: str) -> str:
    """The canonical input activating fields i < i2 with payloads s, s2."""
    if not 1 <= i < i2 <= j:
        raise ValueError("canonical queries need 1 <= i < i2 <= j")
    f = n + 1
    return ("0" * ((i - 1) * f) + "1" + s + "0" * ((i2 - i - 1) * f)
            + "1" + s2 + "0" * ((j - i2) * f))


def _check_jt_node(jc, node):
    i, s = node
    if not 1 <= i <= jc.j:
        raise ValueError(f"part index {i} out of range 1..{jc.j}")
    check_bits(s)
    if len(s) != jc.n:
        raise ValueError(f"node strings must have length {jc.n}")
    return i, s


def jt_edge(jc: JTournamentCircuit, a: Tuple[int, str], b: Tuple[int, str]) -> bool:
    """True iff the edge goes a -> b.  Same-part queries are an error."""
    i, s = _check_jt_node(jc, a)
    i2, s2 = _check_jt_node(jc, b)
    if i == i2:
        raise ValueError("nodes in the same part have no edge")
    if i < i2:
        return eval_circuit(jc.circuit, jt_query(jc.j, jc.n, i, s, i2, s2))
    return not eval_circuit(jc.circuit, jt_query(jc.j, jc.n, i2, s2, i, s))


def jt_node_index(jc: JTournamentCircuit, node: Tuple[int, str]) -> int:
    i, s = _check_jt_node(jc, node)
    return (i - 1) * jc.part_size() + (int(s, 2) if s else 0)


def jt_materialize(jc: JTournamentCircuit,
                   node_cap: int = DEFAULT_NODE_CAP) -> MultipartiteTournament:
    """Explicit multipartite tournament; parts listed in field order."""
    size = jc.part_size()
    total = jc.j * size
    _check_nodes(total, node_cap)
    g = ExplicitDigraph(total, labels=[f"{i}:{int_to_bits(v, jc.n)}"
                                       for i in range(1, jc.j + 1)
                                       for v in range(size)])
    bits = _node_bit_matrix(size, jc.n)
    f = jc.n + 1
    arity = jc.j * f
    pairs = size * size
    for i in range(1, jc.j):
        for i2 in range(i + 1, jc.j + 1):
            queries = np.zeros((pairs, arity), dtype=bool)
            queries[:, (i - 1) * f] = True
            queries[:, (i2 - 1) * f] = True
            if jc.n:
                queries[:, (i - 1) * f + 1:i * f] = np.repeat(bits, size, axis=0)
                queries[:, (i2 - 1) * f + 1:i2 * f] = np.tile(bits, (size, 1))
            res = eval_circuit_batch(jc.circuit, queries).reshape(size, size)
            base_a = (i - 1) * size
            base_b = (i2 - 1) * size
            for s in range(size):
                row = res[s]
                g.adj[base_a + s, base_b:base_b + size] = row
                g.adj[base_b:base_b + size, base_a + s] = ~row
    parts = [list(range((i - 1) * size, i * size)) for i in range(1, jc.j + 1)]
    return MultipartiteTournament(g, parts)


def jt_k_king(jc: JTournamentCircuit, node: Tuple[int, str], k: int,
              node_cap: int = DEFAULT_NODE_CAP) -> bool:
    mpt = jt_materialize(jc, node_cap)
    return is_k_king(mpt.graph, jt_node_index(jc, node), k)


def mpt_has_1king_fast(jc: JTournamentCircuit) -> Optional[Tuple[int, str]]:
    """Polynomial-time 1-king search: only singleton parts can have one.

    With parts of size >= 2 no node reaches its part-mates in one step, so
    the answer is immediately "none"; with singleton parts the j nodes are
    checked by direct edge queries.
    """
    if jc.n >= 1:
        return None
    for i in range(1, jc.j + 1):
        if all(jt_edge(jc, (i, ""), (i2, "")) for i2 in range(1, jc.j + 1) if i2 != i):
            return (i, "")
    return None


def jt_table_to_circuit(j: int, n: int,
                        edge_fn: Callable[[int, str, int, str], bool],
                        node_cap: int = DEFAULT_NODE_CAP) -> JTournamentCircuit:
    """Wrap an explicit cross-part edge table as a tournament circuit.

    ``edge_fn(i, s, i2, s2)`` gives the orientation for the canonical i < i2
    query; the circuit is a sum of minterms over canonical query strings.
    """
    _check_nodes(j << n, node_cap)
    size = 1 << n
    accepted = []
    for i in range(1, j):
        for i2 in range(i + 1, j + 1):
            for a in range(size):
                s = int_to_bits(a, n)
                for b in range(size):
                    s2 = int_to_bits(b, n)
                    if edge_fn(i, s, i2, s2):
                        accepted.append(jt_query(j, n, i, s, i2, s2))
    return JTournamentCircuit(j, n, minterm_circuit(j * (n + 1), accepted))
