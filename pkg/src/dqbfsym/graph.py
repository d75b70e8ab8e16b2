"""Colored directed graph encoding of a CNF DQBF.

Vertex numbering, with ``m = n + k`` variables and ``d`` clauses::

    VarNode(v)    = v - 1
    PosLit(v)     = m + 2(v - 1)
    NegLit(v)     = m + 2(v - 1) + 1
    ClauseNode(i) = 3m + i          (0-based clause index)

Colors: 1 for universal variable/literal nodes, 2 for existential ones,
3 for clause nodes.  Edges are stored sorted and without duplicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .formula import Dqbf, var_of

UNIVERSAL, EXISTENTIAL, CLAUSE = 1, 2, 3


class VertexKind(NamedTuple):
    kind: str  # "var", "pos", "neg" or "clause"
    index: int  # variable index (1-based) or clause index (0-based)


@dataclass(frozen=True)
class ColoredDigraph:
    vertex_count: int
    color: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    num_vars: int = 0
    num_clauses: int = 0

    def __post_init__(self):
        if len(self.color) != self.vertex_count:
            raise ValueError("one color per vertex required")
        edges = tuple(sorted(set(self.edges)))
        if len(edges) != len(self.edges):
            raise ValueError("duplicate edges")
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def edge_keys(self) -> frozenset[int]:
        n = self.vertex_count
        return frozenset(u * n + v for u, v in self.edges)

    def vertex_kind(self, vertex: int) -> VertexKind:
        m = self.num_vars
        if vertex < m:
            return VertexKind("var", vertex + 1)
        if vertex < 3 * m:
            off = vertex - m
            return VertexKind("neg" if off & 1 else "pos", off // 2 + 1)
        return VertexKind("clause", vertex - 3 * m)

    def var_node(self, v: int) -> int:
        return v - 1

    def lit_node(self, lit: int) -> int:
        v = var_of(lit)
        return self.num_vars + 2 * (v - 1) + (1 if lit < 0 else 0)

    def clause_node(self, i: int) -> int:
        return 3 * self.num_vars + i

    def node_lit(self, vertex: int) -> int:
        """Literal represented by a literal node."""
        kind, v = self.vertex_kind(vertex)
        if kind == "pos":
            return v
        if kind == "neg":
            return -v
        raise ValueError(f"vertex {vertex} is not a literal node")

    def to_dimacs(self) -> str:
        """DIMACS-like text (1-based vertices), for inspection only."""
        lines = [f"p edge {self.vertex_count} {len(self.edges)}"]
        lines += [f"n {v + 1} {c}" for v, c in enumerate(self.color)]
        lines += [f"e {u + 1} {v + 1}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        shapes = {"var": "pentagon", "pos": "circle", "neg": "circle", "clause": "box"}
        fills = {UNIVERSAL: "white", EXISTENTIAL: "lightgray", CLAUSE: "gray"}
        out = ["digraph dqbf {"]
        for v in range(self.vertex_count):
            kind, idx = self.vertex_kind(v)
            label = {"var": f"{idx}", "pos": f"+{idx}", "neg": f"-{idx}", "clause": f"C{idx + 1}"}[kind]
            out.append(
                f'  {v} [label="{label}", shape={shapes[kind]}, style=filled, '
                f"fillcolor={fills.get(self.color[v], 'white')}];"
            )
        out += [f"  {u} -> {v};" for u, v in self.edges]
        out.append("}")
        return "\n".join(out) + "\n"


def build_graph(dqbf: Dqbf) -> ColoredDigraph:
    """The 3-colored DQBF graph with variable, dependency and occurrence edges."""
    p = dqbf.prefix
    m = p.num_vars
    d = len(dqbf.matrix)
    color = [0] * (3 * m + d)
    universal = set(p.universals)
    edges = []
    for v in range(1, m + 1):
        c = UNIVERSAL if v in universal else EXISTENTIAL
        var, pos, neg = v - 1, m + 2 * (v - 1), m + 2 * (v - 1) + 1
        color[var] = color[pos] = color[neg] = c
        edges += [(var, pos), (var, neg), (pos, neg), (neg, pos)]
    for y, deps in p.existentials:
        edges += [(y - 1, x - 1) for x in deps]
    for i, clause in enumerate(dqbf.matrix):
        node = 3 * m + i
        color[node] = CLAUSE
        for lit in clause:
            v = var_of(lit)
            edges.append((node, m + 2 * (v - 1) + (1 if lit < 0 else 0)))
    return ColoredDigraph(len(color), tuple(color), tuple(edges), m, d)
