import pathlib

import pytest

from dqbfsym.formula import Dqbf, Prefix

DATA = pathlib.Path(__file__).parent / "data"


def e1() -> Dqbf:
    """forall x1 x2 exists y1({x1}) y2({x2}). (x1 | y1) & (x2 | y2); variables x1=1, x2=2, y1=3, y2=4."""
    p = Prefix((1, 2), ((3, frozenset({1})), (4, frozenset({2}))))
    return Dqbf(p, ((1, 3), (2, 4)))


def e2() -> Dqbf:
    """forall x exists y({x}). x & y."""
    return Dqbf(Prefix((1,), ((2, frozenset({1})),)), ((1,), (2,)))


def e3() -> Dqbf:
    # same formula as e1; kept separate for readability of the transport tests
    return e1()


def e4() -> Dqbf:
    """forall x1 x2 x3 exists y1({x2}) y2({x3}). (x1<->y1) | (x2<->y2) | (x1<->x3) in CNF.

    Variables x1=1, x2=2, x3=3, y1=4, y2=5.
    """
    p = Prefix((1, 2, 3), ((4, frozenset({2})), (5, frozenset({3}))))
    clauses = [
        tuple(a + b + c)
        for a in ([1, -4], [-1, 4])
        for b in ([2, -5], [-2, 5])
        for c in ([1, -3], [-1, 3])
    ]
    return Dqbf(p, tuple(clauses))


def e5() -> Dqbf:
    """forall x1 x2 exists y1({x1, x2}). (x1|x2|y1) & (-x1|-x2|y1) & (x1|x2|-y1)."""
    p = Prefix((1, 2), ((3, frozenset({1, 2})),))
    return Dqbf(p, ((1, 2, 3), (-1, -2, 3), (1, 2, -3)))


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA
