"""Conjunctive symmetry breakers (lex-leader style) for DQBFs.

For a topologically sorted prefix and a set of eligible literal
permutations ``G`` the breaker is

    AND_{g in G} AND_i  ( AND_{x in D_i} (x <-> g(x))  and  AND_{j<i} (y_j <-> g(y_j)) )
                         -> (y_i -> g(y_i))

:func:`build_breaker_formula` returns it as a small expression tree,
:func:`encode_cnf` as clauses over fresh chain variables ``z``.

Expression trees are built from ``True``/``False``, integer literals and
tuples ``("and", parts)``, ``("or", parts)``, ``("not", e)``,
``("implies", a, b)`` and ``("iff", a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .formula import Clause, Dqbf, Prefix, normalize_clause, topological_sort, var_of
from .symmetry import (
    Detection,
    EligibilityVerdict,
    LiteralPermutation,
    contributes,
    detect,
    filter_eligible,
)


class NotSorted(ValueError):
    pass


class IneligibleGenerator(ValueError):
    def __init__(self, perm: LiteralPermutation, verdict: EligibilityVerdict):
        self.perm = perm
        self.verdict = verdict
        super().__init__(
            f"generator {perm} violates {verdict.violated_condition} (witness {verdict.witness})"
        )


class VariableCollision(ValueError):
    pass


@dataclass(frozen=True)
class VariableOrder:
    """``sequence`` lists D_1, y_1, D_2 minus D_1, y_2, ...; ``positions[i]`` is d_i (1-based)."""

    sequence: tuple[int, ...]
    positions: tuple[int, ...]


def variable_order(prefix: Prefix) -> VariableOrder:
    if not prefix.is_topologically_sorted():
        raise NotSorted("prefix is not topologically sorted")
    seq: list[int] = []
    positions = []
    seen: set[int] = set()
    for y, deps in prefix.existentials:
        block = sorted(deps - seen)
        seq.extend(block)
        seen.update(block)
        seq.append(y)
        positions.append(len(seq))
    return VariableOrder(tuple(seq), tuple(positions))


# -- expression trees ---------------------------------------------------------


def _conj(parts):
    parts = [p for p in parts if p is not True]
    if any(p is False for p in parts):
        return False
    if not parts:
        return True
    if len(parts) == 1:
        return parts[0]
    return ("and", tuple(parts))


def evaluate(expr, values: Mapping[int, bool]) -> bool:
    if expr is True or expr is False:
        return expr
    if isinstance(expr, int):
        return values[var_of(expr)] == (expr > 0)
    op = expr[0]
    if op == "and":
        return all(evaluate(e, values) for e in expr[1])
    if op == "or":
        return any(evaluate(e, values) for e in expr[1])
    if op == "not":
        return not evaluate(expr[1], values)
    if op == "implies":
        return not evaluate(expr[1], values) or evaluate(expr[2], values)
    if op == "iff":
        return evaluate(expr[1], values) == evaluate(expr[2], values)
    raise ValueError(f"unknown operator {op!r}")


def _check(prefix: Prefix, gens: Sequence[LiteralPermutation]) -> None:
    for g in gens:
        verdict = filter_eligible(prefix, g)
        if not verdict.eligible:
            raise IneligibleGenerator(g, verdict)


def build_breaker_formula(
    prefix: Prefix, gens: Sequence[LiteralPermutation], *, require_eligible: bool = True
):
    """The breaker as an expression tree.

    Trivial equivalences ``v <-> v`` are left out of the antecedents and
    conjuncts with ``g(y_i) == y_i`` are dropped.  ``require_eligible=False``
    skips the eligibility check (useful to reproduce unsound breakers).
    """
    if not prefix.is_topologically_sorted():
        raise NotSorted("prefix is not topologically sorted")
    if require_eligible:
        _check(prefix, gens)
    conjuncts = []
    for g in gens:
        earlier: list[int] = []
        for y, deps in prefix.existentials:
            if g(y) != y:
                ante = [("iff", x, g(x)) for x in sorted(deps) if g(x) != x]
                ante += [("iff", yj, g(yj)) for yj in earlier if g(yj) != yj]
                cons = ("implies", y, g(y))
                conjuncts.append(("implies", _conj(ante), cons) if ante else cons)
            earlier.append(y)
    return _conj(conjuncts)


# -- CNF encoding -------------------------------------------------------------


@dataclass(frozen=True)
class FreshVar:
    var: int
    generator: int  # index into BreakerArtifact.used_generators
    position: int  # chain position j (1-based) in the variable order
    deps: frozenset[int]


@dataclass(frozen=True)
class BreakerArtifact:
    fresh_vars: tuple[FreshVar, ...]
    clauses: tuple[Clause, ...]
    used_generators: tuple[LiteralPermutation, ...]
    first_fresh: int

    @property
    def num_fresh(self) -> int:
        return len(self.fresh_vars)


def _encode_one(
    g: LiteralPermutation, order: VariableOrder, universals: set[int], next_var: int, gen_index: int
) -> tuple[list[Clause], list[FreshVar]]:
    seq = order.sequence
    existential_at = set(order.positions)
    moved = [d for d in order.positions if g(seq[d - 1]) != seq[d - 1]]
    last_needed = max(moved) - 1
    clauses: list[Clause] = []
    fresh: list[FreshVar] = []
    # z is the literal standing for z_{j-1}: None means true, False means
    # false (an earlier position maps v to -v, so every later antecedent fails)
    z = None
    seen_x: list[int] = []
    for j, v in enumerate(seq, start=1):
        img = g(v)
        if j in existential_at and img != v and z is not False:
            clauses.append(normalize_clause(([-z] if z else []) + [-v, img]))
        if v in universals:
            seen_x.append(v)
        if j > last_needed or z is False or img == v:
            continue
        if img == -v:
            z = False
            continue
        zj = next_var + len(fresh)
        fresh.append(FreshVar(zj, gen_index, j, frozenset(seen_x)))
        prev = [-z] if z else []
        if v in universals:
            clauses.append(normalize_clause([zj, *prev, v, img]))
            clauses.append(normalize_clause([zj, *prev, -v, -img]))
        else:
            clauses.append(normalize_clause([zj, *prev, -v]))
            clauses.append(normalize_clause([zj, *prev, img]))
        z = zj
    return clauses, fresh


def encode_cnf(
    prefix: Prefix,
    gens: Sequence[LiteralPermutation],
    order: VariableOrder | None = None,
    *,
    first_fresh: int | None = None,
) -> BreakerArtifact:
    """CNF encoding of the breaker with one implication chain per generator.

    Chain positions where ``g`` fixes the variable share the previous chain
    variable; chain variables past the last position any final clause reads
    are not created.  Generators fixing every existential are skipped.
    """
    if order is None:
        order = variable_order(prefix)
    _check(prefix, gens)
    if first_fresh is None:
        first_fresh = prefix.num_vars + 1
    universals = set(prefix.universals)
    clauses: list[Clause] = []
    fresh: list[FreshVar] = []
    used: list[LiteralPermutation] = []
    for g in gens:
        if not contributes(prefix, g):
            continue
        cl, fr = _encode_one(g, order, universals, first_fresh + len(fresh), len(used))
        used.append(g)
        clauses.extend(cl)
        fresh.extend(fr)
    return BreakerArtifact(tuple(fresh), tuple(clauses), tuple(used), first_fresh)


def apply(dqbf: Dqbf, artifact: BreakerArtifact) -> Dqbf:
    """Conjoin the breaker clauses and extend the (sorted) prefix with the chain variables."""
    sorted_prefix, _ = topological_sort(dqbf.prefix)
    expected = dqbf.num_vars + 1
    if artifact.first_fresh != expected or [f.var for f in artifact.fresh_vars] != list(
        range(expected, expected + artifact.num_fresh)
    ):
        raise VariableCollision("fresh variables must continue the numbering of the formula")
    prefix = Prefix(
        sorted_prefix.universals,
        sorted_prefix.existentials + tuple((f.var, f.deps) for f in artifact.fresh_vars),
    )
    return Dqbf(prefix, dqbf.matrix + artifact.clauses)


@dataclass(frozen=True)
class BreakResult:
    formula: Dqbf
    artifact: BreakerArtifact
    detection: Detection
    verdicts: tuple[EligibilityVerdict, ...]

    @property
    def eligible(self) -> tuple[LiteralPermutation, ...]:
        return tuple(p for p, v in zip(self.detection.permutations, self.verdicts) if v.eligible)


def break_symmetries(dqbf: Dqbf, *, max_generators: int | None = None, **search_options) -> BreakResult:
    """Detect, filter, encode and apply in one go."""
    sorted_prefix, _ = topological_sort(dqbf.prefix)
    detection = detect(dqbf, **search_options)
    verdicts = tuple(filter_eligible(sorted_prefix, p) for p in detection.permutations)
    usable = [
        p
        for p, v in zip(detection.permutations, verdicts)
        if v.eligible and contributes(sorted_prefix, p)
    ]
    if max_generators is not None:
        usable = usable[:max_generators]
    artifact = encode_cnf(sorted_prefix, usable)
    return BreakResult(apply(dqbf, artifact), artifact, detection, verdicts)
