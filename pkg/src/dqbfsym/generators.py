"""Formula families: KBKF, parity and seeded random DQBFs.

QBFs are lifted to DQBFs by letting each existential depend on every
universal quantified to its left.
"""

from __future__ import annotations

import itertools
import random

from .formula import Dqbf, Prefix


def _xor_clauses(t: int, a: int, b: int) -> list[tuple[int, ...]]:
    """CNF of ``t <-> a xor b``."""
    return [(-t, a, b), (-t, -a, -b), (t, -a, b), (t, a, -b)]


def kbkf(N: int) -> Dqbf:
    """The KBKF family with ``N`` levels: ``4N`` variables, ``4N + 1`` clauses, false.

    Level ``i`` has existentials ``d_i = 3i+1``, ``e_i = 3i+2`` and the
    universal ``x_i = 3i+3``; the innermost block holds ``f_0 .. f_{N-1}``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    d = [3 * i + 1 for i in range(N)]
    e = [3 * i + 2 for i in range(N)]
    x = [3 * i + 3 for i in range(N)]
    f = [3 * N + i + 1 for i in range(N)]
    blocks = []
    for i in range(N):
        blocks += [("e", (d[i], e[i])), ("a", (x[i],))]
    blocks.append(("e", tuple(f)))
    clauses = [(-d[0], -e[0])]
    for i in range(N - 1):
        clauses.append((d[i], x[i], -d[i + 1], -e[i + 1]))
        clauses.append((e[i], -x[i], -d[i + 1], -e[i + 1]))
    last = N - 1
    clauses.append((d[last], x[last], *(-v for v in f)))
    clauses.append((e[last], -x[last], *(-v for v in f)))
    for i in range(N):
        clauses.append((x[i], f[i]))
        clauses.append((-x[i], f[i]))
    return Dqbf(Prefix.from_blocks(blocks), tuple(clauses))


def parity(N: int) -> Dqbf:
    """``exists x_1..x_N forall z exists t_2..t_N``: the chained XOR ``t_N`` must equal ``z``.

    ``2N`` variables (``x_i = i``, ``z = N+1``, ``t_i = N+i``) and ``4N - 2``
    clauses; false because ``t_N`` cannot follow ``z``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    z = N + 1
    t = {i: N + i for i in range(2, N + 1)}
    clauses: list[tuple[int, ...]] = []
    prev = 1
    for i in range(2, N + 1):
        clauses += _xor_clauses(t[i], prev, i)
        prev = t[i]
    clauses += [(z, prev), (-z, -prev)]
    blocks = [("e", tuple(range(1, N + 1))), ("a", (z,))]
    if N > 1:
        blocks.append(("e", tuple(t.values())))
    return Dqbf(Prefix.from_blocks(blocks), tuple(clauses))


def _plant_swap(n: int, deps: list[frozenset[int]]) -> dict[int, int] | None:
    """A variable swap that maps the prefix onto itself, if one exists."""
    k = len(deps)
    for i, j in itertools.combinations(range(k), 2):
        if deps[i] == deps[j]:
            return {n + i + 1: n + j + 1, n + j + 1: n + i + 1}
    for a, b in itertools.combinations(range(1, n + 1), 2):
        if all((a in d) == (b in d) for d in deps):
            return {a: b, b: a}
    return None


def random_dqbf(
    seed,
    n: int = 3,
    k: int = 2,
    max_dep: int = 2,
    clause_count: int = 6,
    clause_len: int = 3,
    plant: bool | None = None,
) -> Dqbf:
    """A seeded random DQBF over universals ``1..n`` and existentials ``n+1..n+k``.

    Dependency sets are drawn uniformly among the subsets of the universals
    with at most ``max_dep`` elements; clauses have 1 to ``clause_len``
    distinct variables.  With ``plant`` (default: every seed divisible by 10)
    the matrix is closed under a variable swap, or a universal sign flip
    when no swap respects the prefix, so the formula has a nontrivial
    symmetry.
    """
    if not (0 <= n <= 3 and 0 <= k <= 2 and 0 <= max_dep <= 2):
        raise ValueError("parameters out of range")
    if clause_count < 0 or clause_len < 1:
        raise ValueError("clause_count must be >= 0 and clause_len >= 1")
    rng = random.Random(seed)
    if plant is None:
        plant = isinstance(seed, int) and seed % 10 == 0
    universals = list(range(1, n + 1))
    subsets = [frozenset(c) for r in range(min(max_dep, n) + 1) for c in itertools.combinations(universals, r)]
    deps = [rng.choice(subsets) for _ in range(k)]
    prefix = Prefix(tuple(universals), tuple((n + i + 1, deps[i]) for i in range(k)))
    m = n + k
    if m == 0:
        return Dqbf(prefix, ())

    def draw() -> tuple[int, ...]:
        length = rng.randint(1, min(clause_len, m))
        vs = rng.sample(range(1, m + 1), length)
        return tuple(v if rng.random() < 0.5 else -v for v in vs)

    if not plant:
        return Dqbf(prefix, tuple(draw() for _ in range(clause_count)))

    swap = _plant_swap(n, deps)
    if swap is not None:
        def g(l):
            return swap.get(abs(l), abs(l)) * (1 if l > 0 else -1)
    elif n > 0:
        flip = universals[0]

        def g(l):
            return -l if abs(l) == flip else l
    else:
        return Dqbf(prefix, tuple(draw() for _ in range(clause_count)))

    clauses: list[tuple[int, ...]] = []
    attempts = 0
    while len(clauses) < clause_count and attempts < 100:
        attempts += 1
        c = draw()
        image = tuple(g(l) for l in c)
        same = sorted(image) == sorted(c)
        if same:
            clauses.append(c)
        elif len(clauses) + 2 <= clause_count:
            clauses += [c, image]
    return Dqbf(prefix, tuple(clauses))
