import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqbfsym.errors import BudgetExceeded
from dqbfsym.formula import (
    Dqbf,
    Interpretation,
    Prefix,
    eval_matrix,
    induced_assignment,
    normalize_clause,
    topological_sort,
    truth_value,
)
from dqbfsym.generators import random_dqbf
from dqbfsym.oracle import enumerate_interpretations

from conftest import e1, e2, e4


def test_prefix_validation():
    with pytest.raises(ValueError):
        Prefix((1,), ((1, frozenset()),))
    with pytest.raises(ValueError):
        Prefix((1,), ((3, frozenset({1})),))  # gap at 2
    with pytest.raises(ValueError):
        Prefix((1,), ((2, frozenset({3})),))


def test_normalize_clause_keeps_tautologies():
    assert normalize_clause([3, -1, 3, 1]) == (1, -1, 3)
    with pytest.raises(ValueError):
        normalize_clause([1, 0])


def test_dqbf_rejects_unknown_variables():
    with pytest.raises(ValueError):
        Dqbf(Prefix((1,), ()), ((2,),))


def test_eval_matrix_examples():
    p = Prefix((1,), ((2, frozenset({1})),))
    assert eval_matrix(Dqbf(p, ((1, 2),)), {1: False, 2: True})
    assert not eval_matrix(e2(), {1: False, 2: False})
    assert not eval_matrix(e1(), {1: False, 2: False, 3: False, 4: False})


def test_induced_assignment_examples():
    p = e1().prefix
    s_prime = Interpretation.from_functions(p, [lambda e: True, lambda e: not e[2]])
    assert induced_assignment(p, s_prime, {1: False, 2: False}) == {1: False, 2: False, 3: True, 4: True}
    s = Interpretation.from_functions(p, [lambda e: e[1], lambda e: e[2]])
    assert induced_assignment(p, s, {1: False, 2: False}) == {1: False, 2: False, 3: False, 4: False}
    p0 = Prefix((1,), ())
    assert induced_assignment(p0, Interpretation(()), {1: True}) == {1: True}


def test_truth_value_examples():
    f = e1()
    s = Interpretation.from_functions(f.prefix, [lambda e: e[1], lambda e: e[2]])
    s_prime = Interpretation.from_functions(f.prefix, [lambda e: True, lambda e: not e[2]])
    assert truth_value(f, s) is False
    assert truth_value(f, s_prime) is True
    interps = list(enumerate_interpretations(e2().prefix))
    assert len(interps) == 4
    assert not any(truth_value(e2(), t) for t in interps)


def test_truth_value_guard():
    p = Prefix(tuple(range(1, 6)), ())
    f = Dqbf(p, ())
    with pytest.raises(BudgetExceeded):
        truth_value(f, Interpretation(()), limit=4)
    assert truth_value(f, Interpretation(()), limit=5)


def test_interpretation_shape_checked():
    with pytest.raises(ValueError):
        truth_value(e1(), Interpretation(((True,), (True, False))))


def test_topological_sort_examples():
    p = Prefix((1, 2), ((3, frozenset({1, 2})), (4, frozenset({1}))))
    sp, perm = topological_sort(p)
    assert [y for y, _ in sp.existentials] == [4, 3]
    assert perm == (1, 0)
    assert topological_sort(e1().prefix)[1] == (0, 1)
    sp4, perm4 = topological_sort(e4().prefix)
    assert sp4 == e4().prefix and perm4 == (0, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_topological_sort_property(seed):
    f = random_dqbf(seed, n=3, k=2, max_dep=2)
    sp, _ = topological_sort(f.prefix)
    assert sp.is_topologically_sorted()
    deps = sp.dependencies
    for i in range(len(deps)):
        for j in range(len(deps)):
            if deps[i] < deps[j]:
                assert i < j


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_truth_value_order_independent_and_conjunction(seed):
    rng = random.Random(seed)
    f = random_dqbf(seed, n=3, k=2, max_dep=2, clause_count=4)
    g = random_dqbf(seed + 1, n=3, k=2, max_dep=2, clause_count=4)
    # share the prefix of f
    g = Dqbf(f.prefix, g.matrix)
    tables = tuple(tuple(rng.random() < 0.5 for _ in range(1 << len(d))) for d in f.prefix.dependencies)
    s = Interpretation(tables)
    assert truth_value(f, s) == truth_value(f, s, reverse=True)
    both = f.conjoin(g.matrix)
    assert truth_value(both, s) == (truth_value(f, s) and truth_value(g, s))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_induced_assignment_ignores_universals_outside_dependencies(seed):
    rng = random.Random(seed)
    f = random_dqbf(seed, n=3, k=2, max_dep=2)
    p = f.prefix
    tables = tuple(tuple(rng.random() < 0.5 for _ in range(1 << len(d))) for d in p.dependencies)
    s = Interpretation(tables)
    sigma = {x: rng.random() < 0.5 for x in p.universals}
    base = induced_assignment(p, s, sigma)
    for x in p.universals:
        flipped = dict(sigma)
        flipped[x] = not flipped[x]
        other = induced_assignment(p, s, flipped)
        for y, deps in p.existentials:
            if x not in deps:
                assert other[y] == base[y]
