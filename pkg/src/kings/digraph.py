"""Explicit directed graphs: k-king decision, king finding, recognizers.

Graphs are simple (no self-loops) and stored as a dense boolean adjacency
matrix, which keeps depth-bounded reachability on multi-thousand-node
materializations fast: a 2-king check is one row read plus one sweep over
the out-neighborhood rows.  Graphs are meant to be immutable once built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Set

import numpy as np


class GraphParseError(ValueError):
    pass


class ExplicitDigraph:
    """Dense-node digraph with optional string labels."""

    def __init__(self, num_nodes: int, labels: Optional[Sequence[str]] = None):
        if num_nodes < 1:
            raise ValueError("a graph has at least one node")
        self._adj = np.zeros((num_nodes, num_nodes), dtype=bool)
        self._labels = None
        self._label_index = None
        if labels is not None:
            labels = list(labels)
            if len(labels) != num_nodes:
                raise ValueError("one label per node")
            self._labels = labels
            self._label_index = {lab: i for i, lab in enumerate(labels)}
            if len(self._label_index) != num_nodes:
                raise ValueError("labels must be distinct")

    @classmethod
    def from_edges(cls, num_nodes, edges, labels=None):
        g = cls(num_nodes, labels)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @classmethod
    def from_adjacency(cls, matrix, labels=None):
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("adjacency must be square")
        if matrix.diagonal().any():
            raise ValueError("self-loops are not allowed")
        g = cls(matrix.shape[0], labels)
        g._adj = matrix.copy()
        return g

    @property
    def num_nodes(self) -> int:
        return self._adj.shape[0]

    @property
    def labels(self):
        return self._labels

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    def _check_node(self, v):
        if not 0 <= v < self.num_nodes:
            raise ValueError(f"node {v} not in graph of {self.num_nodes} nodes")

    def add_edge(self, u: int, v: int):
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise ValueError("self-loops are not allowed")
        self._adj[u, v] = True

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return bool(self._adj[u, v])

    def out_degree(self, v: int) -> int:
        self._check_node(v)
        return int(self._adj[v].sum())

    def node_index(self, label: str) -> int:
        if self._label_index is None:
            raise ValueError("graph has no labels")
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError(f"no node labeled {label!r}") from None

    def label_of(self, v: int) -> str:
        self._check_node(v)
        return self._labels[v] if self._labels else str(v)

    def num_edges(self) -> int:
        return int(self._adj.sum())

    def __repr__(self):
        return f"ExplicitDigraph(nodes={self.num_nodes}, edges={self.num_edges()})"


@dataclass(frozen=True)
class UndirectedGraph:
    """Symmetric edge relation without self-loops."""

    sym: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.sym.shape[0]

    def has_edge(self, u, v) -> bool:
        return bool(self.sym[u, v])


@dataclass
class MultipartiteTournament:
    """A completely oriented multipartite digraph plus its part structure."""

    graph: ExplicitDigraph
    parts: List[List[int]] = field(default_factory=list)

    def validate(self):
        j = len(self.parts)
        if j < 2:
            raise ValueError("at least two parts required")
        seen = sorted(v for part in self.parts for v in part)
        if seen != list(range(self.graph.num_nodes)):
            raise ValueError("parts must partition the nodes")
        adj = self.graph.adj
        part_of = {}
        for i, part in enumerate(self.parts):
            for v in part:
                part_of[v] = i
        n = self.graph.num_nodes
        for u in range(n):
            for v in range(u + 1, n):
                fwd, rev = bool(adj[u, v]), bool(adj[v, u])
                if part_of[u] == part_of[v]:
                    if fwd or rev:
                        raise ValueError(f"edge inside a part: {u},{v}")
                elif fwd == rev:
                    raise ValueError(f"cross pair {u},{v} must have exactly one edge")
        return self


# ---------------------------------------------------------------------------
# Kingship
# ---------------------------------------------------------------------------

def is_k_king(g: ExplicitDigraph, v: int, k: int) -> bool:
    """True iff every node is reachable from v by a path of length <= k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    g._check_node(v)
    adj = g.adj
    n = g.num_nodes
    reach = np.zeros(n, dtype=bool)
    reach[v] = True
    frontier = reach.copy()
    for _ in range(k):
        if reach.all():
            return True
        nxt = adj[frontier].any(axis=0) & ~reach
        if not nxt.any():
            break
        reach |= nxt
        frontier = nxt
    return bool(reach.all())


def all_k_kings(g: ExplicitDigraph, k: int) -> Set[int]:
    if k < 1:
        raise ValueError("k must be at least 1")
    return {v for v in range(g.num_nodes) if is_k_king(g, v, k)}


def find_king_landau(t: ExplicitDigraph) -> int:
    """A maximum out-degree node; in a tournament this is always a 2-king.

    Ties break toward the smallest node id.  The 2-king postcondition is
    asserted, so calling this on a non-tournament may raise.
    """
    v = int(np.argmax(t.adj.sum(axis=1)))
    if not is_k_king(t, v, 2):
        raise ValueError("max out-degree node is not a 2-king; not a tournament?")
    return v


def check_tournament(g: ExplicitDigraph) -> bool:
    """Exactly one direction between every pair of distinct nodes."""
    a = g.adj
    n = g.num_nodes
    if a.diagonal().any():
        return False
    want = ~np.eye(n, dtype=bool)
    return bool(np.array_equal(a ^ a.T, want))


def underlying_graph(g: ExplicitDigraph) -> UndirectedGraph:
    return UndirectedGraph(g.adj | g.adj.T)


# ---------------------------------------------------------------------------
# Multipartite recognition
# ---------------------------------------------------------------------------

def recognize_jpartite_patterns(g: ExplicitDigraph, j: int) -> bool:
    """Multipartite-tournament test by forbidden patterns.

    True iff no pair of nodes points both ways, the underlying graph has no
    induced three nodes spanning exactly one edge, and no clique on j+1
    nodes.  Subset checks are brute force; this is a desk-scale recognizer.
    """
    if j < 2:
        raise ValueError("j must be at least 2")
    a = g.adj
    if (a & a.T).any():
        return False
    u = a | a.T
    n = g.num_nodes
    for x, y, z in combinations(range(n), 3):
        if int(u[x, y]) + int(u[x, z]) + int(u[y, z]) == 1:
            return False
    if n >= j + 1:
        for sub in combinations(range(n), j + 1):
            if all(u[p, q] for p, q in combinations(sub, 2)):
                return False
    return True


def recognize_jpartite_direct(g: ExplicitDigraph, j: int) -> bool:
    """Independent multipartite-tournament test by explicit partitioning.

    Candidate parts are the connected components of the complement of the
    underlying graph.  Accepts iff there are at most j of them (missing
    parts count as empty), no part spans an edge, and every cross pair is
    oriented exactly one way.
    """
    if j < 2:
        raise ValueError("j must be at least 2")
    a = g.adj
    n = g.num_nodes
    if (a & a.T).any():
        return False
    u = a | a.T
    comp = ~u
    np.fill_diagonal(comp, False)
    part = [-1] * n
    count = 0
    for s in range(n):
        if part[s] != -1:
            continue
        stack = [s]
        part[s] = count
        while stack:
            x = stack.pop()
            for y in np.flatnonzero(comp[x]):
                if part[y] == -1:
                    part[y] = count
                    stack.append(int(y))
        count += 1
    if count > j:
        return False
    for x in range(n):
        for y in range(x + 1, n):
            if part[x] == part[y]:
                if u[x, y]:
                    return False
            elif int(a[x, y]) + int(a[y, x]) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Enumeration and I/O
# ---------------------------------------------------------------------------

def enumerate_tournaments(num_nodes: int) -> Iterator[ExplicitDigraph]:
    """All labeled tournaments on the given nodes, each exactly once.

    Deterministic order: the orientation masks count up, bit p of the mask
    orienting the p-th pair (in lexicographic pair order) low-to-high.
    """
    if num_nodes > 6:
        raise ValueError("enumeration is capped at 6 nodes")
    if num_nodes < 1:
        raise ValueError("a graph has at least one node")
    pairs = list(combinations(range(num_nodes), 2))
    for mask in range(1 << len(pairs)):
        g = ExplicitDigraph(num_nodes)
        for p, (u, v) in enumerate(pairs):
            if (mask >> p) & 1:
                g.add_edge(u, v)
            else:
                g.add_edge(v, u)
        yield g


_DOT_SAFE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+")


def _dot_id(name: str) -> str:
    if _DOT_SAFE.fullmatch(name):
        return name
    return '"' + name.replace('"', '\\"') + '"'


def export_dot(g: ExplicitDigraph) -> str:
    """DOT text with nodes and edges in ascending order."""
    lines = ["digraph {"]
    for v in range(g.num_nodes):
        lines.append(f"  {_dot_id(g.label_of(v))};")
    rows, cols = np.nonzero(g.adj)
    for u, v in zip(rows.tolist(), cols.tolist()):
        lines.append(f"  {_dot_id(g.label_of(u))} -> {_dot_id(g.label_of(v))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> ExplicitDigraph:
    """Parse the line-oriented graph format (nodes / edge / label lines)."""
    num = None
    edges = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "nodes":
            if num is not None or len(parts) != 2:
                raise GraphParseError(f"line {lineno}: bad nodes line")
            num = int(parts[1])
        elif parts[0] == "edge":
            if num is None or len(parts) != 3:
                raise GraphParseError(f"line {lineno}: bad edge line")
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "label":
            if num is None or len(parts) < 3:
                raise GraphParseError(f"line {lineno}: bad label line")
            labels[int(parts[1])] = " ".join(parts[2:])
        else:
            raise GraphParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if num is None:
        raise GraphParseError("missing nodes line")
    label_list = None
    if labels:
        label_list = [labels.get(i, str(i)) for i in range(num)]
    try:
        return ExplicitDigraph.from_edges(num, edges, label_list)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def format_graph_text(g: ExplicitDigraph) -> str:
    lines = [f"nodes {g.num_nodes}"]
    if g.labels:
        for i, lab in enumerate(g.labels):
            lines.append(f"label {i} {lab}")
    rows, cols = np.nonzero(g.adj)
    for u, v in zip(rows.tolist(), cols.tolist()):
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"
