"""DQBF data model and its exact (brute-force) semantics.

Literals are signed integers in the DIMACS convention: ``v`` is the positive
literal of variable ``v`` and ``-v`` its negation.  Variables are numbered
``1..n+k``.

Assignments are plain mappings from variable index to ``bool``.  Skolem
functions are stored as truth tables; entry ``t`` of the table of ``y_i``
holds the value of ``y_i`` when bit ``b`` of ``t`` is the value of the
``b``-th smallest variable in ``D_i`` (least significant bit first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded

Literal = int
Clause = tuple
Assignment = Mapping[int, bool]

DEFAULT_MAX_UNIVERSALS = 24


def var_of(lit: Literal) -> int:
    return lit if lit > 0 else -lit


def lit_key(lit: Literal) -> tuple[int, bool]:
    """Sort key ``(var, negated)``."""
    return (var_of(lit), lit < 0)


def make_literal(var: int, negated: bool = False) -> Literal:
    if var < 1:
        raise ValueError(f"variable index must be positive, got {var}")
    return -var if negated else var


def normalize_clause(lits: Iterable[Literal]) -> Clause:
    """Deduplicate and sort literals by (var, negated).

    Tautologies such as ``(v, -v)`` are kept as they are.
    """
    lits = set(lits)
    if 0 in lits:
        raise ValueError("0 is not a literal")
    return tuple(sorted(lits, key=lit_key))


def eval_clause(clause: Clause, a: Assignment) -> bool:
    for lit in clause:
        if a[var_of(lit)] == (lit > 0):
            return True
    return False


@dataclass(frozen=True)
class Prefix:
    """Quantifier prefix ``forall X exists y_1(D_1) ... y_k(D_k)``.

    ``universals`` is kept sorted; existential order is significant.
    """

    universals: tuple[int, ...]
    existentials: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self):
        universals = tuple(sorted(self.universals))
        existentials = tuple((int(y), frozenset(d)) for y, d in self.existentials)
        object.__setattr__(self, "universals", universals)
        object.__setattr__(self, "existentials", existentials)

        uset = set(universals)
        if len(uset) != len(universals):
            raise ValueError("duplicate universal variable")
        evars = [y for y, _ in existentials]
        if len(set(evars)) != len(evars):
            raise ValueError("duplicate existential variable")
        if uset & set(evars):
            raise ValueError("variable quantified both universally and existentially")
        total = len(universals) + len(evars)
        if uset | set(evars) != set(range(1, total + 1)):
            raise ValueError(f"quantified variables must be exactly 1..{total}")
        for y, deps in existentials:
            if not deps <= uset:
                raise ValueError(f"dependency set of {y} is not a subset of the universals")

    @classmethod
    def from_blocks(cls, blocks: Sequence[tuple[str, Sequence[int]]]) -> "Prefix":
        """Lift a linear QBF prefix, e.g. ``[("a", [1]), ("e", [2])]``."""
        universals: list[int] = []
        existentials = []
        for q, vs in blocks:
            if q == "a":
                universals.extend(vs)
            elif q == "e":
                existentials.extend((y, frozenset(universals)) for y in vs)
            else:
                raise ValueError(f"unknown quantifier {q!r}")
        return cls(tuple(universals), tuple(existentials))

    @property
    def n(self) -> int:
        return len(self.universals)

    @property
    def k(self) -> int:
        return len(self.existentials)

    @property
    def num_vars(self) -> int:
        return self.n + self.k

    @property
    def existential_vars(self) -> tuple[int, ...]:
        return tuple(y for y, _ in self.existentials)

    @property
    def dependencies(self) -> tuple[frozenset[int], ...]:
        return tuple(d for _, d in self.existentials)

    def is_universal(self, var: int) -> bool:
        return var in self._universal_set

    @cached_property
    def _universal_set(self) -> frozenset[int]:
        return frozenset(self.universals)

    def deps_of(self, var: int) -> frozenset[int]:
        """Dependency set of an existential variable."""
        for y, d in self.existentials:
            if y == var:
                return d
        raise KeyError(var)

    def position_of(self) -> dict[int, int]:
        """Map existential variable -> 0-based position in the prefix."""
        return {y: i for i, (y, _) in enumerate(self.existentials)}

    def is_topologically_sorted(self) -> bool:
        deps = self.dependencies
        return all(
            not (deps[j] < deps[i])
            for i in range(len(deps))
            for j in range(i + 1, len(deps))
        )

    def __str__(self) -> str:
        parts = []
        if self.universals:
            parts.append("forall " + ",".join(f"x{v}" for v in self.universals))
        if self.existentials:
            ex = ", ".join(
                f"y{y}({{{','.join(str(x) for x in sorted(d))}}})" for y, d in self.existentials
            )
            parts.append("exists " + ex)
        return " ".join(parts)


@dataclass(frozen=True)
class Dqbf:
    """A DQBF ``P.phi`` with ``phi`` in CNF."""

    prefix: Prefix
    matrix: tuple[Clause, ...]

    def __post_init__(self):
        matrix = tuple(normalize_clause(c) for c in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        nv = self.prefix.num_vars
        for c in matrix:
            for lit in c:
                if var_of(lit) > nv:
                    raise ValueError(f"literal {lit} uses an unquantified variable")

    @property
    def num_vars(self) -> int:
        return self.prefix.num_vars

    def with_matrix(self, matrix: Iterable[Iterable[Literal]]) -> "Dqbf":
        return Dqbf(self.prefix, tuple(tuple(c) for c in matrix))

    def conjoin(self, clauses: Iterable[Iterable[Literal]]) -> "Dqbf":
        return Dqbf(self.prefix, self.matrix + tuple(tuple(c) for c in clauses))


@dataclass(frozen=True)
class Interpretation:
    """One Skolem-function truth table per existential, in prefix order."""

    tables: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "tables", tuple(tuple(bool(b) for b in t) for t in self.tables))

    def check_shape(self, prefix: Prefix) -> None:
        if len(self.tables) != prefix.k:
            raise ValueError(f"expected {prefix.k} tables, got {len(self.tables)}")
        for (y, d), table in zip(prefix.existentials, self.tables):
            if len(table) != 1 << len(d):
                raise ValueError(f"table for {y} must have {1 << len(d)} entries")

    @classmethod
    def from_functions(
        cls, prefix: Prefix, funcs: Sequence[Callable[[Mapping[int, bool]], bool]]
    ) -> "Interpretation":
        """Tabulate Python callables; each receives a ``{var: bool}`` map over ``D_i``."""
        if len(funcs) != prefix.k:
            raise ValueError("one function per existential required")
        tables = []
        for (_, deps), f in zip(prefix.existentials, funcs):
            ordered = sorted(deps)
            table = []
            for idx in range(1 << len(ordered)):
                env = {x: bool(idx >> b & 1) for b, x in enumerate(ordered)}
                table.append(bool(f(env)))
            tables.append(tuple(table))
        return cls(tuple(tables))


def table_index(deps: Iterable[int], sigma: Assignment) -> int:
    idx = 0
    for b, x in enumerate(sorted(deps)):
        if sigma[x]:
            idx |= 1 << b
    return idx


def eval_matrix(dqbf: Dqbf, a: Assignment) -> bool:
    """Truth value of the CNF matrix under a full assignment."""
    return all(eval_clause(c, a) for c in dqbf.matrix)


def induced_assignment(prefix: Prefix, s: Interpretation, sigma: Assignment) -> dict[int, bool]:
    """Extend a universal assignment by the values the Skolem functions choose."""
    full = {x: bool(sigma[x]) for x in prefix.universals}
    for (y, deps), table in zip(prefix.existentials, s.tables):
        full[y] = table[table_index(deps, sigma)]
    return full


def universal_assignments(
    prefix: Prefix, *, reverse: bool = False, limit: int = DEFAULT_MAX_UNIVERSALS
) -> Iterator[dict[int, bool]]:
    """All ``2^n`` assignments of the universals."""
    if prefix.n > limit:
        raise BudgetExceeded(f"{prefix.n} universals exceed the enumeration limit {limit}")
    xs = prefix.universals
    values = (True, False) if reverse else (False, True)
    for bits in product(values, repeat=len(xs)):
        yield dict(zip(xs, bits))


def truth_value(
    dqbf: Dqbf,
    s: Interpretation,
    *,
    limit: int = DEFAULT_MAX_UNIVERSALS,
    reverse: bool = False,
    extra: Callable[[Assignment], bool] | None = None,
) -> bool:
    """``[P.phi]_s``: the matrix holds under every induced assignment.

    ``extra`` is an optional predicate conjoined with the matrix.
    """
    s.check_shape(dqbf.prefix)
    for sigma in universal_assignments(dqbf.prefix, reverse=reverse, limit=limit):
        full = induced_assignment(dqbf.prefix, s, sigma)
        if not eval_matrix(dqbf, full):
            return False
        if extra is not None and not extra(full):
            return False
    return True


def topological_sort(prefix: Prefix) -> tuple[Prefix, tuple[int, ...]]:
    """Stable sort of the existentials by dependency-set size.

    Returns the sorted prefix and ``perm`` with ``perm[old] == new``
    (0-based positions).
    """
    order = sorted(range(prefix.k), key=lambda i: (len(prefix.existentials[i][1]), i))
    perm = [0] * prefix.k
    for new, old in enumerate(order):
        perm[old] = new
    sorted_prefix = Prefix(prefix.universals, tuple(prefix.existentials[i] for i in order))
    return sorted_prefix, tuple(perm)
