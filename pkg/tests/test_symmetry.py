import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqbfsym.autom import VertexPermutation
from dqbfsym.formula import Dqbf, Prefix, topological_sort
from dqbfsym.generators import random_dqbf
from dqbfsym.graph import build_graph
from dqbfsym.symmetry import (
    EligibilityVerdict,
    InternalInconsistency,
    LiteralPermutation,
    check_admissible,
    check_syntactic,
    contributes,
    detect,
    extract_literal_permutation,
    filter_eligible,
    generate_group,
)

from conftest import e1, e3, e4, e5

SWAP_E3 = LiteralPermutation.from_mapping(4, {1: 2, 2: 1, 3: 4, 4: 3})
FLIP_E4 = LiteralPermutation.from_mapping(5, {2: -2, 5: -5})


def test_literal_permutation_basics():
    g = LiteralPermutation.from_mapping(3, {-2: 3, 3: -2})
    assert g(2) == -3 and g(-2) == 3 and g(3) == -2
    assert g.then(g.inverse()).is_identity()
    assert g.support() == (2, 3)
    assert str(LiteralPermutation.identity(2)) == "()"
    assert str(SWAP_E3) == "(1 2)(3 4)"
    assert str(FLIP_E4) == "(2 -2)(5 -5)"
    with pytest.raises(ValueError):
        LiteralPermutation((1, 1))


def test_extract_from_e5():
    det = detect(e5())
    assert det.permutations == (LiteralPermutation.from_mapping(3, {1: 2, 2: 1}),)


def test_extract_identity_and_flip():
    g = build_graph(Dqbf(Prefix((1,), ()), ()))
    assert extract_literal_permutation(VertexPermutation.identity(3), g).is_identity()
    flip = extract_literal_permutation(VertexPermutation((0, 2, 1)), g)
    assert flip(1) == -1


def test_extract_rejects_non_literal_images():
    g = build_graph(Dqbf(Prefix((1, 2), ()), ()))
    bad = VertexPermutation((2, 1, 0, 3, 4, 5))  # var node 0 <-> literal node 2
    with pytest.raises(InternalInconsistency):
        extract_literal_permutation(bad, g)


def test_check_admissible_examples():
    p = e3().prefix
    assert check_admissible(p, SWAP_E3)
    assert not check_admissible(p, LiteralPermutation.from_mapping(4, {3: 4, 4: 3}))
    assert check_admissible(p, LiteralPermutation.identity(4))
    # universal mapped to an existential
    assert not check_admissible(p, LiteralPermutation.from_mapping(4, {1: 3, 3: 1}))


def test_check_syntactic_examples():
    f = e5()
    assert check_syntactic(f, LiteralPermutation.from_mapping(3, {1: 2, 2: 1}))
    assert not check_syntactic(f, LiteralPermutation.from_mapping(3, {1: -1}))
    assert check_syntactic(f, LiteralPermutation.identity(3))


def test_filter_eligible_examples():
    assert filter_eligible(e4().prefix, FLIP_E4) == EligibilityVerdict(False, "C3", (2, 1))
    v = filter_eligible(e3().prefix, SWAP_E3)
    assert v.violated_condition == "C1" and v.witness[0] == 1
    assert filter_eligible(e1().prefix, LiteralPermutation.identity(4)).eligible


def test_filter_eligible_c2():
    p = Prefix((1,), ((2, frozenset()), (3, frozenset({1}))))
    g = LiteralPermutation.from_mapping(3, {2: 3, 3: 2})
    assert filter_eligible(p, g).violated_condition == "C2"


def test_verdict_invariant():
    with pytest.raises(ValueError):
        EligibilityVerdict(True, "C1")
    with pytest.raises(ValueError):
        EligibilityVerdict(False)


def test_e4_flip_in_detected_group():
    det = detect(e4())
    group = generate_group(det.permutations, 5)
    assert FLIP_E4 in group
    assert len(group) == det.report.order


def test_contributes():
    assert not contributes(e5().prefix, detect(e5()).permutations[0])
    assert contributes(e4().prefix, FLIP_E4)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_detected_permutations_are_symmetries(seed):
    f = random_dqbf(seed, n=3, k=2, max_dep=2)
    det = detect(f)
    sp, _ = topological_sort(f.prefix)
    for g in det.permutations:
        assert check_admissible(f.prefix, g)
        assert check_syntactic(f, g)
    assert filter_eligible(sp, LiteralPermutation.identity(f.num_vars)).eligible
