import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import slow_decompositions
from prymcert.effective import (
    bl_exceptions,
    classify_positivity,
    cone_generators,
    decomposition_box,
    effective_decompositions,
    effective_mask,
    is_ample,
    is_nef,
    is_two_connected,
    minus_one_curves,
)
from prymcert.errors import PositivityError
from prymcert.surfaces import del_pezzo, projective_plane, supported_surfaces


def test_minus_one_examples():
    assert len(minus_one_curves(del_pezzo(3))) == 27
    assert minus_one_curves(del_pezzo(8)) == ((0, 1),)
    assert minus_one_curves(projective_plane()) == ()


@pytest.mark.parametrize("d", range(1, 9))
def test_minus_one_curves_are_effective(d):
    T = del_pezzo(d)
    for E in minus_one_curves(T):
        assert T.square(E) == -1 and T.pair(E, T.canonical) == -1
        assert classify_positivity(T, E).effective


def test_cone_generators():
    assert cone_generators(projective_plane()) == ((1,),)
    assert set(cone_generators(del_pezzo(8))) == {(0, 1), (1, -1)}
    assert len(cone_generators(del_pezzo(2))) == 56


def test_positivity_examples():
    T = del_pezzo(3)
    assert classify_positivity(T, T.anticanonical) == (True, True, True) or all(
        vars(classify_positivity(T, T.anticanonical)).values()
    )
    e1 = classify_positivity(T, T.exceptional(1))
    assert (e1.effective, e1.nef, e1.ample) == (True, False, False)
    A = T.divisor(1, (1, 1, 1, 0, 0, 0))
    assert not classify_positivity(T, A).effective
    assert not classify_positivity(T, (0,) * 7).effective
    P = projective_plane()
    assert is_ample(P, (1,)) and not classify_positivity(P, (-1,)).effective
    F1 = del_pezzo(8)
    assert is_nef(F1, (1, -1)) and not is_ample(F1, (1, -1))


surface_and_vectors = st.sampled_from(supported_surfaces()).flatmap(
    lambda T: st.tuples(
        st.just(T),
        st.lists(st.lists(st.integers(-6, 6), min_size=T.rank, max_size=T.rank), min_size=1, max_size=40),
    )
)


@settings(max_examples=200, deadline=None)
@given(surface_and_vectors)
def test_effective_mask_matches_scalar(arg):
    T, X = arg
    mask = effective_mask(T, np.array(X))
    assert mask.tolist() == [classify_positivity(T, x).effective for x in X]


@settings(max_examples=200, deadline=None)
@given(surface_and_vectors)
def test_positivity_implications(arg):
    T, X = arg
    for x in X:
        f = classify_positivity(T, x)
        if f.ample:
            assert f.nef
        if f.nef and any(x):
            assert f.effective


def test_decompositions_examples():
    P = projective_plane()
    assert list(effective_decompositions(P, (2,))) == [((1,), (1,))]
    assert list(effective_decompositions(P, (3,))) == [((1,), (2,))]
    T = del_pezzo(3)
    pairs = list(effective_decompositions(T, T.anticanonical))
    line, conic = T.divisor(1, (1, 1, 0, 0, 0, 0)), T.divisor(2, (0, 0, 1, 1, 1, 1))
    assert (min(line, conic), max(line, conic)) in pairs
    assert min(T.pair(x, y) for x, y in pairs) == 2
    for x, y in pairs:
        assert x <= y and tuple(a + b for a, b in zip(x, y)) == T.anticanonical
        assert classify_positivity(T, x).effective and classify_positivity(T, y).effective


def test_decompositions_require_effective():
    T = del_pezzo(3)
    with pytest.raises(PositivityError):
        list(effective_decompositions(T, T.divisor(1, (1, 1, 1, 0, 0, 0))))


def test_box_contains_spec_box():
    T = del_pezzo(4)
    C = T.divisor(4, (2, 1, 1, 1, 1))
    (lo, hi), b_ranges = decomposition_box(T, C)
    N = T.pair(C, T.anticanonical)
    assert lo == 0 and hi == 4
    for a in range(lo, hi + 1):
        for blo, bhi in b_ranges(a):
            assert -N <= blo and bhi <= a


@pytest.mark.parametrize(
    "d, C",
    [(4, (2, -1, -1, 0, 0, 0)), (5, (3, -2, -1, -1, 0)), (6, (2, 0, 0, 0)), (7, (3, -1, -2)), (8, (3, -1))],
)
def test_decompositions_match_slow_oracle_non_ample(d, C):
    T = del_pezzo(d)
    assert set(effective_decompositions(T, C)) == slow_decompositions(T, C)


def test_two_connected_examples():
    P = projective_plane()
    v = is_two_connected(P, (2,))
    assert not v.two_connected and [e.code for e in v.bl_exceptions] == ["A2"]
    for n in range(3, 7):
        assert is_two_connected(P, (n,)).two_connected
    T = del_pezzo(3)
    v = is_two_connected(T, T.anticanonical)
    assert v.two_connected and v.witness[2] == 2 and v.predicted


def test_exception_a3_on_degree_one():
    T = del_pezzo(1)
    v = is_two_connected(T, tuple(2 * x for x in T.anticanonical))
    assert not v.two_connected and v.witness[2] == 1
    assert [e.code for e in v.bl_exceptions] == ["A3"] and v.bl_exceptions[0].certain


def test_exception_a4_on_f1():
    T = del_pezzo(8)
    C = T.divisor(3, (2,))  # E1 + 2(H - E1)
    assert is_ample(T, C)
    v = is_two_connected(T, C)
    assert [e.code for e in v.bl_exceptions] == ["A4"]
    assert not v.two_connected
    assert not bl_exceptions(T, T.divisor(3, (1,)))
