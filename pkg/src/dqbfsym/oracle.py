"""Brute-force ground truth for small DQBFs.

Everything here is exponential on purpose: the functions serve as test
instruments for the detector and the breaker, not as a solver.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Sequence

from .autom import VertexPermutation
from .errors import BudgetExceeded
from .formula import (
    Assignment,
    Dqbf,
    Interpretation,
    Prefix,
    induced_assignment,
    table_index,
    truth_value,
    universal_assignments,
    var_of,
)
from .graph import ColoredDigraph
from .symmetry import LiteralPermutation, check_admissible, check_syntactic, permute_matrix

DEFAULT_BUDGET = 1 << 20
# Above this many interpretations brute_truth switches to a search over
# Skolem table entries, which is exhaustive as well but prunes early.
DEFAULT_ENUMERATE_LIMIT = 1 << 12
DEFAULT_NODE_LIMIT = 2_000_000


class IllDefined(ValueError):
    pass


def interpretation_count(prefix: Prefix) -> int:
    return 1 << sum(1 << len(d) for d in prefix.dependencies)


def enumerate_interpretations(prefix: Prefix, budget: int = DEFAULT_BUDGET) -> Iterator[Interpretation]:
    """Every interpretation once; tables read as one binary counter, y_1 in the low bits."""
    count = interpretation_count(prefix)
    if count > budget:
        raise BudgetExceeded(f"{count} interpretations exceed the budget {budget}")
    sizes = [1 << len(d) for d in prefix.dependencies]
    for counter in range(count):
        tables = []
        shift = 0
        for size in sizes:
            tables.append(tuple(bool(counter >> (shift + b) & 1) for b in range(size)))
            shift += size
        yield Interpretation(tuple(tables))


def _lit_value(lit: int, a: Assignment) -> bool:
    return a[var_of(lit)] == (lit > 0)


# -- search over Skolem table entries ----------------------------------------


def _entry_clauses(dqbf: Dqbf) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Expand the universals: one propositional variable per table entry.

    Returns the entry list ``(existential position, table index)`` and the
    clauses over 1-based entry ids.  A clause that becomes empty yields ``[]``.
    """
    p = dqbf.prefix
    pos = {y: i for i, (y, _) in enumerate(p.existentials)}
    offsets = []
    entries: list[tuple[int, int]] = []
    for i, d in enumerate(p.dependencies):
        offsets.append(len(entries))
        entries.extend((i, j) for j in range(1 << len(d)))
    clauses: set[tuple[int, ...]] = set()
    for sigma in universal_assignments(p):
        for clause in dqbf.matrix:
            out = []
            for lit in clause:
                v = var_of(lit)
                if v in pos:
                    i = pos[v]
                    e = offsets[i] + table_index(p.existentials[i][1], sigma) + 1
                    out.append(e if lit > 0 else -e)
                elif _lit_value(lit, sigma):
                    break
            else:
                if any(-l in out for l in out):
                    continue
                clauses.add(tuple(sorted(set(out))))
    return entries, [list(c) for c in sorted(clauses)]


def _dpll(
    nvars: int,
    clauses: list[list[int]],
    node_limit: int,
    accept: Callable[[list[bool]], bool] | None,
) -> list[bool] | None:
    """Find a model of ``clauses`` for which ``accept`` holds (exhaustive)."""
    nodes = 0
    values: list[int] = [0] * (nvars + 1)  # 0 unset, 1 true, -1 false

    def value(l: int) -> int:
        v = values[abs(l)]
        return v if l > 0 else -v

    def propagate(trail: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for c in clauses:
                unset = None
                count = 0
                for l in c:
                    val = value(l)
                    if val == 1:
                        break
                    if val == 0:
                        unset = l
                        count += 1
                else:
                    if count == 0:
                        return False
                    if count == 1:
                        values[abs(unset)] = 1 if unset > 0 else -1
                        trail.append(abs(unset))
                        changed = True
        return True

    def search() -> list[bool] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded(f"search exceeded {node_limit} nodes")
        trail: list[int] = []
        if propagate(trail):
            free = next((v for v in range(1, nvars + 1) if values[v] == 0), None)
            if free is None:
                model = [values[v] == 1 for v in range(1, nvars + 1)]
                if accept is None or accept(model):
                    return model
            else:
                for sign in (-1, 1):
                    values[free] = sign
                    found = search()
                    if found is not None:
                        return found
                    values[free] = 0
        for v in trail:
            values[v] = 0
        return None

    return search()


def _tables_from_entries(dqbf: Dqbf, entries, model: Sequence[bool]) -> Interpretation:
    tables = [[False] * (1 << len(d)) for d in dqbf.prefix.dependencies]
    for (i, j), val in zip(entries, model):
        tables[i][j] = val
    return Interpretation(tuple(tuple(t) for t in tables))


def brute_truth(
    dqbf: Dqbf,
    *,
    constraint=None,
    budget: int = DEFAULT_BUDGET,
    enumerate_limit: int = DEFAULT_ENUMERATE_LIMIT,
    node_limit: int = DEFAULT_NODE_LIMIT,
    method: str = "auto",
) -> tuple[bool, Interpretation | None]:
    """Decide ``P.phi`` (optionally conjoined with an expression tree ``constraint``).

    ``method`` is ``"enumerate"``, ``"search"`` or ``"auto"``; auto enumerates
    interpretations when there are at most ``enumerate_limit`` of them and
    searches over table entries otherwise.  The enumerated witness is the
    first model in enumeration order.
    """
    extra = None
    if constraint is not None:
        from .breaker import evaluate

        def extra(full, _c=constraint):
            return evaluate(_c, full)

    count = interpretation_count(dqbf.prefix)
    if method == "auto":
        method = "enumerate" if count <= enumerate_limit else "search"
    if method == "enumerate":
        for s in enumerate_interpretations(dqbf.prefix, budget):
            if truth_value(dqbf, s, extra=extra):
                return True, s
        return False, None
    if method != "search":
        raise ValueError(f"unknown method {method!r}")

    entries, clauses = _entry_clauses(dqbf)
    if any(not c for c in clauses):
        return False, None
    accept = None
    if extra is not None:

        def accept(model):
            return truth_value(dqbf, _tables_from_entries(dqbf, entries, model), extra=extra)

    model = _dpll(len(entries), clauses, node_limit, accept)
    if model is None:
        return False, None
    return True, _tables_from_entries(dqbf, entries, model)


# -- symmetries ---------------------------------------------------------------


def brute_symmetries(dqbf: Dqbf, max_vars: int = 6) -> list[LiteralPermutation]:
    """All literal permutations that are admissible and map the clause multiset to itself."""
    p = dqbf.prefix
    m = p.num_vars
    if m > max_vars:
        raise BudgetExceeded(f"{m} variables exceed the limit {max_vars}")
    xs = list(p.universals)
    ys = list(p.existential_vars)
    found = []
    for px in itertools.permutations(xs):
        for py in itertools.permutations(ys):
            targets = dict(zip(xs, px)) | dict(zip(ys, py))
            for signs in itertools.product((1, -1), repeat=m):
                image = tuple(targets[v] * signs[v - 1] for v in range(1, m + 1))
                g = LiteralPermutation(image)
                if check_admissible(p, g) and check_syntactic(dqbf, g):
                    found.append(g)
    return found


def transport_interpretation(prefix: Prefix, g: LiteralPermutation, s: Interpretation) -> Interpretation:
    """The interpretation ``t`` with ``sigma_t = g(g^-1(sigma)_s)`` for every ``sigma``.

    ``g`` acts on assignments by ``g(a)(v) = [g(v)]_a``.
    """
    s.check_shape(prefix)
    ginv = g.inverse()
    tables: list[list[bool | None]] = [[None] * (1 << len(d)) for d in prefix.dependencies]
    for sigma in universal_assignments(prefix):
        tau = {x: _lit_value(ginv(x), sigma) for x in prefix.universals}
        tau_s = induced_assignment(prefix, s, tau)
        for i, (y, deps) in enumerate(prefix.existentials):
            val = _lit_value(g(y), tau_s)
            idx = table_index(deps, sigma)
            if tables[i][idx] is None:
                tables[i][idx] = val
            elif tables[i][idx] != val:
                raise IllDefined(f"value of {y} depends on universals outside its dependency set")
    return Interpretation(tuple(tuple(t) for t in tables))


def check_transport_identity(dqbf: Dqbf, g: LiteralPermutation, s: Interpretation) -> bool:
    """``[P.g(phi)]_s == [P.phi]_{g(s)}``."""
    image = Dqbf(dqbf.prefix, permute_matrix(dqbf, g))
    return truth_value(image, s) == truth_value(dqbf, transport_interpretation(dqbf.prefix, g, s))


# -- graph automorphisms ------------------------------------------------------


def brute_automorphisms(graph: ColoredDigraph, max_vertices: int = 14) -> list[VertexPermutation]:
    """All color- and edge-preserving vertex bijections, by plain backtracking."""
    n = graph.vertex_count
    if n > max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed the limit {max_vertices}")
    edges = graph.edge_keys
    outdeg = [len(a) for a in graph.out_adj]
    indeg = [len(a) for a in graph.in_adj]
    image = [-1] * n
    used = [False] * n
    found: list[VertexPermutation] = []

    def consistent(u: int, w: int) -> bool:
        if graph.color[u] != graph.color[w] or outdeg[u] != outdeg[w] or indeg[u] != indeg[w]:
            return False
        if ((u * n + u) in edges) != ((w * n + w) in edges):
            return False
        for v in range(u):
            iv = image[v]
            if ((u * n + v) in edges) != ((w * n + iv) in edges):
                return False
            if ((v * n + u) in edges) != ((iv * n + w) in edges):
                return False
        return True

    def extend(u: int) -> None:
        if u == n:
            found.append(VertexPermutation(tuple(image)))
            return
        for w in range(n):
            if not used[w] and consistent(u, w):
                image[u] = w
                used[w] = True
                extend(u + 1)
                used[w] = False
        image[u] = -1

    extend(0)
    return found
