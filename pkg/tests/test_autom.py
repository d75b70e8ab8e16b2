import random

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from dqbfsym.autom import (
    StabilizerChain,
    VertexPermutation,
    find_automorphisms,
    group_order,
    is_automorphism,
    refine,
)
from dqbfsym.errors import BudgetExceeded
from dqbfsym.generators import kbkf, parity
from dqbfsym.graph import ColoredDigraph, build_graph
from dqbfsym.oracle import brute_automorphisms

from conftest import e1, e5
from graph_fixtures import all_graphs


def _color_partition(g):
    cells = {}
    for v, c in enumerate(g.color):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def test_refine_e5_separates_all_clauses():
    g = build_graph(e5())
    cells = refine(g, _color_partition(g))
    clause_cells = [c for c in cells if c[0] >= 9]
    # clause 2 (-1 -2 3) differs from the others in polarity; clauses 1 and 3
    # are then told apart by the polarity of y1
    assert sorted(clause_cells) == [(9,), (10,), (11,)]
    assert sorted(c for c in cells if len(c) > 1) == [(0, 1), (3, 5), (4, 6)]


def test_refine_fixed_points():
    g = ColoredDigraph(4, (1,) * 4, ())
    assert refine(g, [[0, 1, 2, 3]]) == [(0, 1, 2, 3)]
    g = build_graph(e5())
    discrete = [[v] for v in range(g.vertex_count)]
    assert refine(g, discrete) == [tuple(c) for c in discrete]


def test_e5_automorphisms():
    g = build_graph(e5())
    rep = find_automorphisms(g)
    assert rep.order == 2
    (gen,) = rep.generators
    # swaps the x1 and x2 gadgets, fixes y1 and every clause
    assert gen.cycles() == [(0, 1), (3, 5), (4, 6)]


def test_e1_order_decided_by_brute_force():
    g = build_graph(e1())
    assert find_automorphisms(g).order == len(brute_automorphisms(g)) == 2


def test_rigid_graph():
    g = ColoredDigraph(3, (1, 2, 3), ((0, 1),))
    rep = find_automorphisms(g)
    assert rep.order == 1 and rep.generators == ()


def test_empty_graph():
    rep = find_automorphisms(ColoredDigraph(0, (), ()))
    assert rep.order == 1


def test_budget_and_size_guard():
    g = build_graph(kbkf(5))
    with pytest.raises(BudgetExceeded):
        find_automorphisms(g, node_limit=3)
    with pytest.raises(BudgetExceeded):
        find_automorphisms(g, max_vertices=10)


@pytest.mark.parametrize("name, graph", sorted(all_graphs().items()))
def test_engine_against_brute_force(name, graph):
    rep = find_automorphisms(graph)
    for gen in rep.generators:
        assert is_automorphism(graph, gen)
        for u in range(graph.vertex_count):
            assert graph.color[gen(u)] == graph.color[u]
        for orbit in rep.orbits:
            assert {gen(v) for v in orbit} == set(orbit)
    assert (rep.order == 1) == (not rep.generators)
    assert rep.order == len(brute_automorphisms(graph))
    assert group_order(rep.generators, graph.vertex_count) == rep.order


def test_deterministic():
    g = build_graph(parity(6))
    assert find_automorphisms(g) == find_automorphisms(g)


def test_group_order_examples():
    assert group_order([], 5) == 1
    assert group_order([VertexPermutation((1, 0, 2))], 3) == 2


@pytest.mark.parametrize("N", [10, 20])
def test_group_order_kbkf(N):
    g = build_graph(kbkf(N))
    rep = find_automorphisms(g)
    assert group_order(rep.generators, g.vertex_count) == 2**N


def test_group_order_matches_sympy():
    rng = random.Random(5)
    for _ in range(30):
        degree = rng.randint(2, 9)
        gens = []
        for _ in range(rng.randint(1, 3)):
            img = list(range(degree))
            rng.shuffle(img)
            gens.append(tuple(img))
        expected = PermutationGroup([Permutation(list(g)) for g in gens]).order()
        assert group_order(gens, degree) == expected
        chain = StabilizerChain(gens, degree)
        assert all(chain.contains(g) for g in gens)


def test_vertex_permutation_ops():
    p = VertexPermutation((1, 2, 0, 3))
    assert p.then(p.inverse()).is_identity()
    assert p.cycles() == [(0, 1, 2)]
    with pytest.raises(ValueError):
        VertexPermutation((0, 0))
