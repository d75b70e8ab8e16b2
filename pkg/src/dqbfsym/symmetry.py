"""Literal-permutation symmetries: extraction, validation, eligibility."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .autom import GroupReport, VertexPermutation, find_automorphisms
from .errors import BudgetExceeded
from .formula import Clause, Dqbf, Prefix, normalize_clause, var_of
from .graph import ColoredDigraph, build_graph


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class LiteralPermutation:
    """A negation-compatible permutation of literals.

    ``image[v - 1]`` is the image of the positive literal ``v``; the image of
    ``-v`` is its negation.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(l) for l in self.image)
        if sorted(var_of(l) for l in image) != list(range(1, len(image) + 1)):
            raise ValueError("image does not permute the variables")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, num_vars: int) -> "LiteralPermutation":
        return cls(tuple(range(1, num_vars + 1)))

    @classmethod
    def from_mapping(cls, num_vars: int, mapping: Mapping[int, int]) -> "LiteralPermutation":
        """Build from ``{literal: image}``; unmentioned variables are fixed.

        Keys may be negative literals, e.g. ``{-2: 2}`` flips variable 2.
        """
        image = list(range(1, num_vars + 1))
        for lit, img in mapping.items():
            if lit > 0:
                image[lit - 1] = img
            else:
                image[-lit - 1] = -img
        return cls(tuple(image))

    @property
    def num_vars(self) -> int:
        return len(self.image)

    def __call__(self, lit: int) -> int:
        img = self.image[var_of(lit) - 1]
        return img if lit > 0 else -img

    def is_identity(self) -> bool:
        return all(img == v for v, img in enumerate(self.image, start=1))

    def moves(self, var: int) -> bool:
        return self.image[var - 1] != var

    def support(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.num_vars + 1) if self.moves(v))

    def then(self, other: "LiteralPermutation") -> "LiteralPermutation":
        """Apply ``self`` first, then ``other``."""
        return LiteralPermutation(tuple(other(img) for img in self.image))

    def inverse(self) -> "LiteralPermutation":
        inv = [0] * self.num_vars
        for v, img in enumerate(self.image, start=1):
            inv[var_of(img) - 1] = v if img > 0 else -v
        return LiteralPermutation(tuple(inv))

    def apply_clause(self, clause: Iterable[int]) -> Clause:
        return normalize_clause(self(l) for l in clause)

    def __str__(self) -> str:
        seen: set[int] = set()
        parts = []
        for v in range(1, self.num_vars + 1):
            if v in seen or not self.moves(v):
                continue
            cyc = [v]
            seen.add(v)
            lit = self(v)
            while lit != v and var_of(lit) not in seen:
                seen.add(var_of(lit))
                cyc.append(lit)
                lit = self(lit)
            if lit != v:
                cyc.append(lit)
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


@dataclass(frozen=True)
class EligibilityVerdict:
    eligible: bool
    violated_condition: str | None = None
    witness: tuple[int, int] | None = None

    def __post_init__(self):
        if self.eligible == (self.violated_condition is not None):
            raise ValueError("a verdict is either eligible or names a violated condition")


def extract_literal_permutation(auto: VertexPermutation, graph: ColoredDigraph) -> LiteralPermutation:
    """Read the literal permutation off the action on literal nodes."""
    image = []
    for v in range(1, graph.num_vars + 1):
        pos = graph.lit_node(v)
        neg = graph.lit_node(-v)
        try:
            lp = graph.node_lit(auto(pos))
            ln = graph.node_lit(auto(neg))
        except ValueError:
            raise InternalInconsistency(f"literal node of variable {v} mapped to a non-literal node") from None
        if ln != -lp or auto(graph.var_node(v)) != graph.var_node(var_of(lp)):
            raise InternalInconsistency(f"automorphism is not negation-compatible at variable {v}")
        image.append(lp)
    return LiteralPermutation(tuple(image))


def check_admissible(prefix: Prefix, perm: LiteralPermutation) -> bool:
    """Quantifier types are preserved and dependencies are carried along."""
    if perm.num_vars != prefix.num_vars:
        return False
    universals = set(prefix.universals)
    for v in range(1, prefix.num_vars + 1):
        if (v in universals) != (var_of(perm(v)) in universals):
            return False
    deps = dict(prefix.existentials)
    for y, dy in prefix.existentials:
        target = deps[var_of(perm(y))]
        if any(var_of(perm(x)) not in target for x in dy):
            return False
    return True


def permute_matrix(dqbf: Dqbf, perm: LiteralPermutation) -> tuple[Clause, ...]:
    return tuple(perm.apply_clause(c) for c in dqbf.matrix)


def check_syntactic(dqbf: Dqbf, perm: LiteralPermutation) -> bool:
    """The permutation maps the clause multiset onto itself."""
    return Counter(dqbf.matrix) == Counter(permute_matrix(dqbf, perm))


def filter_eligible(prefix: Prefix, perm: LiteralPermutation) -> EligibilityVerdict:
    """Check the three side conditions of the breaker construction.

    ``prefix`` must be topologically sorted.  Witnesses use 1-based
    existential positions: C1 gives ``(i, x)`` with ``x`` a moved-out
    dependency, C2 gives ``(i, v)`` with ``v`` the offending image variable,
    C3 gives ``(i, j)``.
    """
    ex = prefix.existentials
    deps_of = dict(ex)
    for i, (_, di) in enumerate(ex, start=1):
        for x in sorted(di):
            if var_of(perm(x)) not in di:
                return EligibilityVerdict(False, "C1", (i, x))
    for i, (y, di) in enumerate(ex, start=1):
        target = var_of(perm(y))
        if target not in deps_of or deps_of[target] != di:
            return EligibilityVerdict(False, "C2", (i, target))
    for i, (yi, di) in enumerate(ex, start=1):
        if perm(yi) == yi:
            continue
        for j, (yj, dj) in enumerate(ex, start=1):
            if di <= dj or dj <= di:
                continue
            if perm(yj) != yj or any(perm(x) != x for x in dj - di):
                return EligibilityVerdict(False, "C3", (i, j))
    return EligibilityVerdict(True)


def contributes(prefix: Prefix, perm: LiteralPermutation) -> bool:
    """Moves at least one existential, so it yields a non-trivial breaker."""
    return any(perm.moves(y) for y in prefix.existential_vars)


@dataclass(frozen=True)
class Detection:
    graph: ColoredDigraph
    report: GroupReport
    permutations: tuple[LiteralPermutation, ...]


def detect(dqbf: Dqbf, **search_options) -> Detection:
    """Build the graph, search its automorphisms, extract literal permutations."""
    graph = build_graph(dqbf)
    report = find_automorphisms(graph, **search_options)
    perms = tuple(extract_literal_permutation(g, graph) for g in report.generators)
    return Detection(graph, report, perms)


def generate_group(
    generators: Sequence[LiteralPermutation], num_vars: int, limit: int = 1_000_000
) -> set[LiteralPermutation]:
    """All elements of the group generated by ``generators`` (closure by BFS)."""
    ident = LiteralPermutation.identity(num_vars)
    seen = {ident}
    todo = deque([ident])
    while todo:
        p = todo.popleft()
        for g in generators:
            q = p.then(g)
            if q not in seen:
                if len(seen) >= limit:
                    raise BudgetExceeded(f"group has more than {limit} elements")
                seen.add(q)
                todo.append(q)
    return seen
