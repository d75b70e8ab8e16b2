"""Reading and writing QDIMACS / DQDIMACS files.

A QDIMACS prefix is a sequence of ``a``/``e`` blocks; DQDIMACS adds
``d <y> <x_1> ... <x_m> 0`` lines that give an existential an explicit
dependency set.  Existentials from ``e`` lines depend on every universal
declared before them.

Corner cases the file formats leave open are resolved as follows:

* a variable declared in the header but never quantified becomes an
  innermost existential depending on all universals (with a warning);
* a ``d`` line may use an empty dependency list;
* quantifying a variable twice (including two ``d`` lines, or ``d`` plus
  ``e``) is an error;
* ``c`` comment lines are dropped.
"""

from __future__ import annotations

import enum
import logging
import os
from typing import Union

from .formula import Dqbf, Prefix, var_of

log = logging.getLogger(__name__)


class SourceFormat(enum.Enum):
    QDIMACS = "qdimacs"
    DQDIMACS = "dqdimacs"


class DimacsError(ValueError):
    """Base class for parse and serialization errors."""

    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


class MalformedHeader(DimacsError):
    pass


class UndeclaredVariable(DimacsError):
    pass


class DuplicateQuantification(DimacsError):
    pass


class BadTermination(DimacsError):
    pass


class NotLinearizable(DimacsError):
    pass


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise DimacsError(f"expected integers: {exc}", lineno) from None


def _terminated(values: list[int], lineno: int) -> list[int]:
    if not values or values[-1] != 0:
        raise BadTermination("line must end with 0", lineno)
    body = values[:-1]
    if 0 in body:
        raise BadTermination("unexpected 0 before end of line", lineno)
    return body


def parse(text: Union[str, bytes]) -> tuple[Dqbf, SourceFormat]:
    """Parse QDIMACS or DQDIMACS text."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    nvars = nclauses = None
    universals: list[int] = []
    existentials: list[tuple[int, frozenset[int]]] = []
    quantified: set[int] = set()
    clauses: list[list[int]] = []
    explicit = False

    def declare(v: int, lineno: int):
        if v < 1 or v > nvars:
            raise UndeclaredVariable(f"variable {v} outside 1..{nvars}", lineno)
        if v in quantified:
            raise DuplicateQuantification(f"variable {v} quantified twice", lineno)
        quantified.add(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "p":
            if nvars is not None:
                raise MalformedHeader("second header line", lineno)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise MalformedHeader("expected 'p cnf <vars> <clauses>'", lineno)
            try:
                nvars, nclauses = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise MalformedHeader("non-integer counts in header", lineno) from None
            if nvars < 0 or nclauses < 0:
                raise MalformedHeader("negative counts in header", lineno)
            continue
        if nvars is None:
            raise MalformedHeader("content before the 'p cnf' header", lineno)
        if head in ("a", "e", "d"):
            if clauses:
                raise DimacsError("quantifier line after clauses", lineno)
            vals = _terminated(_ints(tokens[1:], lineno), lineno)
            if head == "a":
                for v in vals:
                    declare(v, lineno)
                    universals.append(v)
            elif head == "e":
                deps = frozenset(universals)
                for v in vals:
                    declare(v, lineno)
                    existentials.append((v, deps))
            else:
                if not vals:
                    raise DimacsError("'d' line without a variable", lineno)
                y, deps = vals[0], vals[1:]
                declare(y, lineno)
                uset = set(universals)
                for x in deps:
                    if x not in uset:
                        raise UndeclaredVariable(
                            f"dependency {x} of {y} is not a declared universal", lineno
                        )
                existentials.append((y, frozenset(deps)))
                explicit = True
            continue
        vals = _terminated(_ints(tokens, lineno), lineno)
        for lit in vals:
            if var_of(lit) > nvars:
                raise UndeclaredVariable(f"literal {lit} exceeds declared variable count", lineno)
        clauses.append(vals)

    if nvars is None:
        raise MalformedHeader("missing 'p cnf' header")
    if len(clauses) != nclauses:
        log.warning("header announces %d clauses, found %d", nclauses, len(clauses))

    missing = [v for v in range(1, nvars + 1) if v not in quantified]
    if missing:
        log.warning("%d unquantified variables treated as innermost existentials", len(missing))
        allx = frozenset(universals)
        existentials.extend((v, allx) for v in missing)

    prefix = Prefix(tuple(universals), tuple(existentials))
    fmt = SourceFormat.DQDIMACS if explicit else SourceFormat.QDIMACS
    return Dqbf(prefix, tuple(tuple(c) for c in clauses)), fmt


def is_linearizable(prefix: Prefix) -> bool:
    """Dependency sets form a chain under inclusion."""
    deps = sorted(set(prefix.dependencies), key=len)
    return all(a <= b for a, b in zip(deps, deps[1:]))


def _qdimacs_blocks(prefix: Prefix) -> list[tuple[str, list[int]]]:
    if not is_linearizable(prefix):
        raise NotLinearizable("dependency sets are not totally ordered by inclusion")
    order = sorted(range(prefix.k), key=lambda i: (len(prefix.existentials[i][1]), i))
    blocks: list[tuple[str, list[int]]] = []
    seen: frozenset[int] = frozenset()
    for i in order:
        y, deps = prefix.existentials[i]
        if deps != seen:
            blocks.append(("a", sorted(deps - seen)))
            seen = deps
        if blocks and blocks[-1][0] == "e":
            blocks[-1][1].append(y)
        else:
            blocks.append(("e", [y]))
    rest = sorted(set(prefix.universals) - seen)
    if rest:
        if blocks and blocks[-1][0] == "a":
            blocks[-1][1].extend(rest)
        else:
            blocks.append(("a", rest))
    return blocks


def write(dqbf: Dqbf, fmt: SourceFormat = SourceFormat.DQDIMACS) -> str:
    """Canonical serialization; ``parse(write(f))`` reproduces ``f``."""
    p = dqbf.prefix
    lines = [f"p cnf {p.num_vars} {len(dqbf.matrix)}"]
    if fmt is SourceFormat.QDIMACS:
        for q, vs in _qdimacs_blocks(p):
            lines.append(" ".join([q, *map(str, vs), "0"]))
    else:
        if p.universals:
            lines.append(" ".join(["a", *map(str, p.universals), "0"]))
        for y, deps in p.existentials:
            lines.append(" ".join(["d", str(y), *map(str, sorted(deps)), "0"]))
    for c in dqbf.matrix:
        lines.append(" ".join([*map(str, c), "0"]))
    return "\n".join(lines) + "\n"


def read_file(path: Union[str, os.PathLike]) -> tuple[Dqbf, SourceFormat]:
    with open(path, "rb") as fh:
        return parse(fh.read())


def write_file(path: Union[str, os.PathLike], dqbf: Dqbf, fmt: SourceFormat) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write(dqbf, fmt))
