"""Automorphisms of colored digraphs by individualization and refinement.

The search follows the classic scheme: refine the color partition to an
equitable one, descend along a *first path* (individualize a vertex of the
first smallest non-singleton cell, refine, repeat) to a discrete leaf, and
then, from the deepest level upwards, test for every other vertex ``w`` of
the target cell whether some automorphism fixes the earlier base points and
maps the base point to ``w``.  Vertices already in the orbit of the base
point under the generators found so far are skipped.  The group order is the
product of the base-point orbit sizes.

Refinement records a trace (splitter cell, split cell, fragment keys and
sizes).  The trace is invariant under isomorphism, so a branch whose trace
differs from the first path at the same depth cannot contain the image of
the first leaf and is cut immediately.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .graph import ColoredDigraph

DEFAULT_NODE_LIMIT = 1_000_000
DEFAULT_MAX_VERTICES = 2_000_000
DEFAULT_MAX_EDGES = 100_000_000


@dataclass(frozen=True)
class VertexPermutation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("not a permutation")
        object.__setattr__(self, "image", image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __len__(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, degree: int) -> "VertexPermutation":
        return cls(tuple(range(degree)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return VertexPermutation(tuple(inv))

    def then(self, other: "VertexPermutation") -> "VertexPermutation":
        """Apply ``self`` first, then ``other``."""
        return VertexPermutation(tuple(other.image[j] for j in self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen or self.image[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.image[start]
            while j != start:
                seen.add(j)
                cyc.append(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


@dataclass(frozen=True)
class GroupReport:
    generators: tuple[VertexPermutation, ...]
    order: int
    orbits: tuple[tuple[int, ...], ...]
    base: tuple[int, ...] = ()
    nodes: int = 0


class _Partition:
    """Ordered partition stored nauty-style.

    ``lab`` lists the vertices cell by cell; a cell is identified by its start
    index in ``lab``; ``cell[v]`` is the start of v's cell and ``size[s]`` the
    length of the cell starting at ``s``.
    """

    __slots__ = ("lab", "cell", "size", "ncells")

    def __init__(self, lab, cell, size, ncells):
        self.lab = lab
        self.cell = cell
        self.size = size
        self.ncells = ncells

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]], n: int) -> "_Partition":
        lab: list[int] = []
        cell = [-1] * n
        size = [0] * n
        for c in cells:
            if not c:
                raise ValueError("empty cell")
            start = len(lab)
            size[start] = len(c)
            for v in c:
                if cell[v] != -1:
                    raise ValueError(f"vertex {v} in two cells")
                cell[v] = start
            lab.extend(c)
        if len(lab) != n:
            raise ValueError("partition does not cover all vertices")
        return cls(lab, cell, size, len(cells))

    def copy(self) -> "_Partition":
        return _Partition(self.lab[:], self.cell[:], self.size[:], self.ncells)

    def starts(self) -> list[int]:
        out = []
        i, n = 0, len(self.lab)
        while i < n:
            out.append(i)
            i += self.size[i]
        return out

    def cells(self) -> list[tuple[int, ...]]:
        return [tuple(self.lab[s : s + self.size[s]]) for s in self.starts()]

    def is_discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def target_cell(self) -> int:
        """Start of the first non-singleton cell of minimum size, or -1."""
        best, best_size = -1, 0
        for s in self.starts():
            sz = self.size[s]
            if sz > 1 and (best < 0 or sz < best_size):
                best, best_size = s, sz
                if sz == 2:
                    break
        return best

    def individualize(self, v: int) -> int:
        c = self.cell[v]
        sz = self.size[c]
        if sz == 1:
            return c
        lab = self.lab
        i = lab.index(v, c, c + sz)
        lab[c], lab[i] = lab[i], lab[c]
        self.size[c] = 1
        self.size[c + 1] = sz - 1
        for u in lab[c + 1 : c + sz]:
            self.cell[u] = c + 1
        self.ncells += 1
        return c


def _refine(
    part: _Partition,
    out_adj: Sequence[Sequence[int]],
    in_adj: Sequence[Sequence[int]],
    splitters: Iterable[int],
    expected: list | None = None,
) -> list | None:
    """Refine ``part`` in place to the coarsest equitable refinement.

    A vertex's key against splitter ``W`` is (edges into W, edges from W).
    Returns the trace, or None as soon as it departs from ``expected``.
    """
    lab, cell, size = part.lab, part.cell, part.size
    n = len(lab)
    queue = deque(sorted(set(splitters)))
    inq = set(queue)
    trace: list = []
    while queue and part.ncells < n:
        w = queue.popleft()
        inq.discard(w)
        outc: dict[int, int] = {}
        inc: dict[int, int] = {}
        for m in lab[w : w + size[w]]:
            for u in in_adj[m]:
                outc[u] = outc.get(u, 0) + 1
            for u in out_adj[m]:
                inc[u] = inc.get(u, 0) + 1
        touched = {cell[u] for u in outc}
        touched.update(cell[u] for u in inc)
        for c in sorted(touched):
            sz = size[c]
            if sz == 1:
                continue
            groups: dict[tuple[int, int], list[int]] = {}
            for u in lab[c : c + sz]:
                groups.setdefault((outc.get(u, 0), inc.get(u, 0)), []).append(u)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            entry = (w, c, tuple((key, len(groups[key])) for key in keys))
            if expected is not None:
                t = len(trace)
                if t >= len(expected) or expected[t] != entry:
                    return None
            trace.append(entry)
            pos = c
            starts = []
            for key in keys:
                g = groups[key]
                starts.append(pos)
                lab[pos : pos + len(g)] = g
                size[pos] = len(g)
                for u in g:
                    cell[u] = pos
                pos += len(g)
            part.ncells += len(keys) - 1
            if c in inq:
                new = starts[1:]
            else:
                largest = max(range(len(starts)), key=lambda i: size[starts[i]])
                new = [s for i, s in enumerate(starts) if i != largest]
            for s in new:
                queue.append(s)
                inq.add(s)
    if expected is not None and len(trace) != len(expected):
        return None
    return trace


def _color_cells(graph: ColoredDigraph) -> list[list[int]]:
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(graph.color):
        by_color.setdefault(c, []).append(v)
    return [by_color[c] for c in sorted(by_color)]


def refine(graph: ColoredDigraph, partition: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Coarsest equitable refinement of an ordered partition.

    Cells of the result are ordered deterministically from the input order
    and the split keys, so isomorphic inputs give corresponding outputs.
    """
    part = _Partition.from_cells(partition, graph.vertex_count)
    _refine(part, graph.out_adj, graph.in_adj, part.starts())
    return part.cells()


def is_automorphism(graph: ColoredDigraph, perm: Sequence[int] | VertexPermutation) -> bool:
    image = perm.image if isinstance(perm, VertexPermutation) else tuple(perm)
    n = graph.vertex_count
    if len(image) != n or sorted(image) != list(range(n)):
        return False
    if any(graph.color[image[v]] != graph.color[v] for v in range(n)):
        return False
    keys = graph.edge_keys
    return all(image[u] * n + image[v] in keys for u, v in graph.edges)


def _orbit(point: int, gens: Sequence[Sequence[int]]) -> set[int]:
    orbit = {point}
    todo = [point]
    while todo:
        p = todo.pop()
        for g in gens:
            q = g[p]
            if q not in orbit:
                orbit.add(q)
                todo.append(q)
    return orbit


def _orbit_partition(n: int, gens: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return tuple(tuple(groups[r]) for r in sorted(groups))


class _Search:
    def __init__(self, graph: ColoredDigraph, node_limit: int):
        self.graph = graph
        self.out_adj = graph.out_adj
        self.in_adj = graph.in_adj
        self.node_limit = node_limit
        self.nodes = 0
        # per level: (partition before individualizing, target start, base point, trace)
        self.path: list[tuple[_Partition, int, int, list]] = []
        self.leaf: list[int] = []

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise BudgetExceeded(f"automorphism search exceeded {self.node_limit} nodes")

    def first_path(self) -> None:
        part = _Partition.from_cells(_color_cells(self.graph), self.graph.vertex_count)
        _refine(part, self.out_adj, self.in_adj, part.starts())
        while not part.is_discrete():
            self._tick()
            t = part.target_cell()
            v = min(part.lab[t : t + part.size[t]])
            child = part.copy()
            child.individualize(v)
            trace = _refine(child, self.out_adj, self.in_adj, [t])
            self.path.append((part, t, v, trace))
            part = child
        self.leaf = part.lab

    def _child(self, part: _Partition, depth: int, v: int) -> _Partition | None:
        self._tick()
        _, t, _, trace = self.path[depth]
        child = part.copy()
        child.individualize(v)
        if _refine(child, self.out_adj, self.in_adj, [t], expected=trace) is None:
            return None
        return child

    def _leaf_map(self, part: _Partition) -> tuple[int, ...] | None:
        gamma = [0] * len(part.lab)
        for p, v in enumerate(self.leaf):
            gamma[v] = part.lab[p]
        return tuple(gamma) if is_automorphism(self.graph, gamma) else None

    def find_mapping(self, depth: int, w: int) -> tuple[int, ...] | None:
        """An automorphism fixing the first ``depth`` base points, sending the next to ``w``."""
        start = self._child(self.path[depth][0], depth, w)
        if start is None:
            return None
        depth_max = len(self.path)
        # iterative DFS: entries are (depth, partition, remaining candidates)
        stack: list[tuple[int, _Partition, list[int]]] = []

        def push(d: int, part: _Partition):
            if d == depth_max:
                return self._leaf_map(part)
            t = self.path[d][1]
            stack.append((d, part, sorted(part.lab[t : t + part.size[t]], reverse=True)))
            return None

        found = push(depth + 1, start)
        if found is not None:
            return found
        while stack:
            d, part, cands = stack[-1]
            if not cands:
                stack.pop()
                continue
            child = self._child(part, d, cands.pop())
            if child is None:
                continue
            found = push(d + 1, child)
            if found is not None:
                return found
        return None


def find_automorphisms(
    graph: ColoredDigraph,
    *,
    node_limit: int = DEFAULT_NODE_LIMIT,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> GroupReport:
    """Generators, exact order and orbits of the automorphism group."""
    n = graph.vertex_count
    if n > max_vertices or len(graph.edges) > max_edges:
        raise BudgetExceeded(
            f"graph with {n} vertices / {len(graph.edges)} edges exceeds the size guard"
        )
    if n == 0:
        return GroupReport((), 1, (), (), 0)

    search = _Search(graph, node_limit)
    search.first_path()
    gens: list[tuple[int, ...]] = []
    order = 1
    for depth in reversed(range(len(search.path))):
        part, t, b, _ = search.path[depth]
        orbit = _orbit(b, gens)
        for w in sorted(part.lab[t : t + part.size[t]]):
            if w in orbit:
                continue
            gamma = search.find_mapping(depth, w)
            if gamma is not None:
                gens.append(gamma)
                orbit = _orbit(b, gens)
        order *= len(orbit)

    return GroupReport(
        generators=tuple(VertexPermutation(g) for g in gens),
        order=order,
        orbits=_orbit_partition(n, gens),
        base=tuple(b for _, _, b, _ in search.path),
        nodes=search.nodes,
    )


# -- Schreier-Sims -----------------------------------------------------------


def _mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``a`` first, then ``b``."""
    return tuple(b[x] for x in a)


def _inv(a: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _is_id(a: Sequence[int]) -> bool:
    return all(i == j for i, j in enumerate(a))


def _transversal(point: int, gens: Sequence[tuple[int, ...]], degree: int) -> dict[int, tuple[int, ...]]:
    """Orbit of ``point`` with, for each orbit element q, a group element mapping point to q."""
    trans = {point: tuple(range(degree))}
    todo = [point]
    while todo:
        p = todo.pop()
        for g in gens:
            q = g[p]
            if q not in trans:
                trans[q] = _mul(trans[p], g)
                todo.append(q)
    return trans


class StabilizerChain:
    """Base and strong generating set built by the deterministic Schreier-Sims algorithm."""

    def __init__(self, generators: Iterable[Sequence[int]], degree: int):
        self.degree = degree
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation of the given degree")
        gens = [g for g in gens if not _is_id(g)]
        self.base: list[int] = []
        self.strong: list[list[tuple[int, ...]]] = []
        self.trans: list[dict[int, tuple[int, ...]]] = []
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._add_level(next(x for x in range(degree) if g[x] != x))
        for i in range(len(self.base)):
            self.strong[i] = [g for g in gens if all(g[b] == b for b in self.base[:i])]
            self.trans[i] = _transversal(self.base[i], self.strong[i], degree)
        self._complete()

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: tuple(range(self.degree))})

    def sift(self, h: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        for i in range(start, len(self.base)):
            q = h[self.base[i]]
            u = self.trans[i].get(q)
            if u is None:
                return h, i
            h = _mul(h, _inv(u))
        return h, len(self.base)

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            for p, u in list(self.trans[i].items()):
                for s in self.strong[i]:
                    h = _mul(_mul(u, s), _inv(self.trans[i][s[p]]))
                    if _is_id(h):
                        continue
                    h, j = self.sift(h, i + 1)
                    if j < len(self.base) or not _is_id(h):
                        if j == len(self.base):
                            self._add_level(next(x for x in range(self.degree) if h[x] != x))
                        for lvl in range(i + 1, j + 1):
                            self.strong[lvl].append(h)
                            self.trans[lvl] = _transversal(self.base[lvl], self.strong[lvl], self.degree)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def contains(self, g: Sequence[int]) -> bool:
        h, j = self.sift(tuple(g))
        return j == len(self.base) and _is_id(h)


def group_order(generators: Iterable[VertexPermutation | Sequence[int]], degree: int) -> int:
    """Order of the permutation group generated by ``generators``."""
    gens = [g.image if isinstance(g, VertexPermutation) else tuple(g) for g in generators]
    if not gens:
        return 1
    return StabilizerChain(gens, degree).order()
