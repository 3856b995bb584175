import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from cases import pair, random_model, random_root
from witten_gci import (
    LineBundleSum, bott_tower, check_string_gci, classify_theorem, fano_c1_check,
    projective_product, search_string, witten_of_gci,
)
from witten_gci.conditions import SearchSpaceError, search_space_size, vanishing_reason


def test_cp11_three_quadrics():
    r = check_string_gci(*pair([11], [[2], [2], [2]]))
    assert r.w2_match and r.p1_match and r.x_spin
    assert r.theorem_applicable == "thm-homogeneous"
    assert r.predicts_vanishing
    assert r.to_dict()["witnesses"]["p1_V"] == "12*u^2"


def test_quartic_fails_p1_with_witness():
    r = check_string_gci(*pair([3], [[4]]))
    assert r.w2_match and not r.p1_match
    w = r.to_dict()["witnesses"]
    assert (w["p1_M"], w["p1_V"]) == ("4*u^2", "16*u^2")


def test_points_in_product_of_lines():
    M, V = pair([1, 1], [[2, 0], [0, 2]])
    r = check_string_gci(M, V)
    assert r.string_conditions
    assert r.theorem_applicable == "none"
    assert not r.predicts_vanishing
    assert any("maximal-torus" in n for n in r.notes)


def test_classify_theorem():
    assert classify_theorem(projective_product([11])) == "thm-homogeneous"
    assert classify_theorem(projective_product([1, 1])) == "none"
    M = bott_tower([(1, []), (2, [[1], [0]])])
    assert (M.metadata.b2, M.complex_dimension, M.metadata.torus_dim) == (2, 3, 3)
    assert classify_theorem(M) == "thm-torus"
    assert classify_theorem(bott_tower([(1, []), (1, [[1]])])) == "none"
    fixed = projective_product([1, 1], has_fixed_point=True, maximal_torus_isotropy=True)
    assert classify_theorem(fixed) == "thm-fixed-point"


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_permutation_invariance(seed):
    rng = random.Random(seed)
    M = random_model(rng)
    roots = [random_root(rng, M.ngens) for _ in range(rng.randint(1, 4))]
    a = check_string_gci(M, LineBundleSum.of(roots))
    rng.shuffle(roots)
    b = check_string_gci(M, LineBundleSum.of(roots))
    assert (a.w2_match, a.p1_match, a.p1_V, a.w2_V) == (b.w2_match, b.p1_match, b.p1_V, b.w2_V)


@pytest.mark.parametrize("n", range(1, 13))
def test_single_projective_space_matches_arithmetic(n):
    M = projective_product([n])
    for k in range(1, 4):
        for combo in itertools.combinations_with_replacement(range(1, 5), k):
            r = check_string_gci(M, LineBundleSum.of([[d] for d in combo]))
            assert r.string_conditions == oracle.string_brute_force(n, combo)


def test_search_examples():
    assert ((2,), (2,), (2,)) in [V.roots for V in search_string(projective_product([11]), 2, 3)]
    assert [V.roots for V in search_string(projective_product([3]), 4, 1)] == [((2,),)]
    found = [V.roots for V in search_string(projective_product([1, 1]), 2, 2)]
    assert ((0, 2), (2, 0)) in found


def test_search_is_sorted_and_deterministic():
    M = projective_product([2, 2])
    first = [V.roots for V in search_string(M, 2, 3)]
    assert first == [V.roots for V in search_string(M, 2, 3)]
    assert first == sorted(first, key=lambda r: (len(r), r))
    assert all(list(r) == sorted(r) for r in first)


def test_search_guard():
    M = projective_product([2, 2, 2])
    size = search_space_size(3, 6, 6)
    with pytest.raises(SearchSpaceError) as info:
        search_string(M, 6, 6, limit=1000)
    assert info.value.size == size
    assert str(size) in str(info.value)


SEARCH_MODELS = [
    projective_product([3]),
    projective_product([7]),
    projective_product([2, 2]),
    bott_tower([(1, []), (2, [[1], [0]])]),
    bott_tower([(1, []), (3, [[1], [-1], [2]])]),
    bott_tower([(2, []), (2, [[1], [1]])]),
]


@pytest.mark.parametrize("M", SEARCH_MODELS, ids=lambda M: M.name)
def test_soundness_over_search_output(M):
    label = classify_theorem(M)
    for V in search_string(M, 3, 3):
        res = witten_of_gci(M, V, 3)
        assert res.is_integral
        if label != "none":
            assert res.vanishes, (M.name, V.roots)
            assert vanishing_reason(M, V, res.series) is not None


def test_fano_examples():
    assert fano_c1_check(11, [2, 2, 2]).to_dict() == {
        "c1_coefficient": 6, "fano": True, "exceptional": False}
    assert fano_c1_check(12, [3, 2]).c1_coefficient == 8
    assert fano_c1_check(3, [1, 1, 1, 1]).exceptional
    assert not fano_c1_check(3, [4]).fano
    with pytest.raises(ValueError):
        fano_c1_check(3, [0])
    with pytest.raises(ValueError):
        fano_c1_check(0, [1])


@pytest.mark.parametrize("n", range(2, 17))
def test_fano_consistency(n):
    M = projective_product([n])
    for V in search_string(M, 4, 4):
        degrees = [r[0] for r in V.roots]
        f = fano_c1_check(n, degrees)
        if not f.exceptional:
            assert f.fano


def test_vanishing_reasons():
    M, V = pair([5], [[3], [3]])
    assert vanishing_reason(M, V, witten_of_gci(M, V, 2).series) == "dimension-parity"
    M, V = pair([11], [[2], [2], [2]])
    assert vanishing_reason(M, V, witten_of_gci(M, V, 1).series) == "theorem"
    M, V = pair([3], [[4]])
    assert vanishing_reason(M, V, witten_of_gci(M, V, 1).series) is None
