"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import time

import pytest

from dqbfsym.autom import find_automorphisms
from dqbfsym.breaker import break_symmetries
from dqbfsym.dqdimacs import parse, read_file, write
from dqbfsym.formula import Interpretation, truth_value
from dqbfsym.generators import kbkf, parity, random_dqbf
from dqbfsym.oracle import (
    brute_automorphisms,
    brute_symmetries,
    brute_truth,
    check_transport_identity,
    enumerate_interpretations,
    interpretation_count,
)
from dqbfsym.symmetry import LiteralPermutation, detect, filter_eligible, generate_group

from conftest import DATA, e1, e2, e4
from graph_fixtures import all_graphs

# truth values of the small parity members, computed with the oracle and frozen
PARITY_TRUTH = {1: False, 2: False, 3: False}


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> bool:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        return ok

    return emit


def _suite3():
    return [random_dqbf(seed, n=3, k=2, max_dep=2, clause_count=6, clause_len=3) for seed in range(500)]


def test_criterion_1_example_truths(verdict):
    start = time.perf_counter()
    t1, m1 = brute_truth(e1())
    s_prime = Interpretation.from_functions(e1().prefix, [lambda e: True, lambda e: not e[2]])
    t2, m2 = brute_truth(e2())
    t4, m4 = brute_truth(e4())
    s4 = Interpretation.from_functions(e4().prefix, [lambda e: e[2], lambda e: e[3]])
    elapsed = time.perf_counter() - start
    ok = (
        t1 and truth_value(e1(), m1) and truth_value(e1(), s_prime)
        and t2 is False and m2 is None
        and t4 and truth_value(e4(), m4) and truth_value(e4(), s4)
        and elapsed < 1.0
    )
    assert verdict(1, ok, f"E1 true, E2 false, E4 true in {elapsed:.3f}s")


def test_criterion_2_counterexample_guard(verdict):
    f = e4()
    flip = LiteralPermutation.from_mapping(5, {2: -2, 5: -5})
    group = generate_group(detect(f).permutations, f.num_vars)
    v = filter_eligible(f.prefix, flip)
    before = brute_truth(f)[0]
    after = brute_truth(f.conjoin([(-5,)]))[0]
    ok = flip in group and not v.eligible and v.violated_condition == "C3" and before and not after
    assert verdict(2, ok, f"flip detected, rejected by {v.violated_condition} {v.witness}; truth {before} -> {after}")


def test_criterion_3_breaker_soundness(verdict):
    start = time.perf_counter()
    agree = 0
    broken = 0
    for f in _suite3():
        res = break_symmetries(f)
        broken += bool(res.artifact.clauses)
        agree += brute_truth(f)[0] == brute_truth(res.formula)[0]
    elapsed = time.perf_counter() - start
    ok = agree == 500 and elapsed < 300
    assert verdict(3, ok, f"{agree}/500 agree, {broken} received breakers, {elapsed:.1f}s")


def test_criterion_4_transport_identity(verdict):
    checked = failed = 0
    for f in _suite3():
        if interpretation_count(f.prefix) > 4096:
            continue
        gens = detect(f).permutations
        if not gens:
            continue
        for s in enumerate_interpretations(f.prefix):
            for g in gens:
                checked += 1
                failed += not check_transport_identity(f, g, s)
    ok = failed == 0 and checked > 0
    assert verdict(4, ok, f"{checked - failed}/{checked} (generator, interpretation) pairs")


def test_criterion_5_detector_completeness(verdict):
    equal = 0
    for seed in range(200):
        n, k = seed % 4, (seed // 4) % 3
        f = random_dqbf(seed, n=n, k=k, max_dep=2, clause_count=5, clause_len=3)
        assert f.num_vars <= 6
        group = generate_group(detect(f).permutations, f.num_vars)
        equal += group == set(brute_symmetries(f))
    assert verdict(5, equal == 200, f"{equal}/200 formulas with identical symmetry sets")


def test_criterion_6_crafted_families(verdict):
    rows = []
    ok = True
    for name, fam, expected_order, counts in [
        ("kbkf", kbkf, lambda N: 2**N, {10: (40, 41), 20: (80, 81)}),
        ("parity", parity, lambda N: 2 ** (N + 1), {10: (20, 38), 20: (40, 78)}),
    ]:
        for N in (10, 20):
            f = fam(N)
            start = time.perf_counter()
            order = detect(f).report.order
            elapsed = time.perf_counter() - start
            good = order == expected_order(N) and (f.num_vars, len(f.matrix)) == counts[N] and elapsed < 10
            ok &= good
            rows.append(f"{name}({N}) order={order} vars={f.num_vars} clauses={len(f.matrix)} {elapsed:.2f}s")
    assert verdict(6, ok, "; ".join(rows))


def test_criterion_7_breaker_on_families(verdict):
    rows = []
    ok = True
    cases = [("kbkf", kbkf, N, False) for N in (1, 2)] + [("parity", parity, N, PARITY_TRUTH[N]) for N in (1, 2, 3)]
    for name, fam, N, expected in cases:
        f = fam(N)
        res = break_symmetries(f)
        value = brute_truth(res.formula)[0]
        ok &= value == expected == brute_truth(f)[0]
        rows.append(f"{name}({N}) {value} +{res.artifact.num_fresh}v +{len(res.artifact.clauses)}c")
    assert verdict(7, ok, "; ".join(rows))


def test_criterion_8_parser_roundtrip(verdict):
    files = sorted(p for p in DATA.iterdir() if p.suffix in (".qdimacs", ".dqdimacs"))
    good = 0
    for path in files:
        f, fmt = read_file(path)
        g, fmt2 = parse(write(f, fmt))
        good += f == g and fmt == fmt2 and parse(write(f))[0] == f
    assert verdict(8, good == len(files) and good > 0, f"{good}/{len(files)} corpus files")


def test_criterion_9_engine_vs_brute_force(verdict):
    graphs = all_graphs()
    good = 0
    for g in graphs.values():
        assert g.vertex_count <= 14
        good += find_automorphisms(g).order == len(brute_automorphisms(g))
    assert verdict(9, good == len(graphs), f"{good}/{len(graphs)} graphs")
