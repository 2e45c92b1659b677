import pytest
from hypothesis import given, settings, strategies as st

from prymcert.errors import SurfaceError
from prymcert.lattice import discriminant_data, signature
from prymcert.surfaces import (
    DEL_PEZZO,
    covering_genus,
    del_pezzo,
    fixed_locus_invariants,
    genus_of,
    linear_system_dim,
    make_surface,
    projective_plane,
    pullback_to_k3,
    supported_surfaces,
)


def test_projective_plane():
    P = make_surface("p2")
    assert P.nikulin == (1, 1, 1) and P.branch == (6,) and P.canonical == (-3,)
    assert P.square(P.canonical) == 9


def test_del_pezzo_three():
    T = make_surface("dp3")
    assert T.nikulin == (7, 7, 1)
    assert T.canonical == (-3, 1, 1, 1, 1, 1, 1)
    assert T.basis_names[:2] == ("H", "E1")


@pytest.mark.parametrize("bad", ["dp0", "dp9", "dp-1", "cubic"])
def test_bad_surface_names(bad):
    with pytest.raises(SurfaceError):
        make_surface(bad)


def test_p1xp1_names_the_exclusion():
    with pytest.raises(SurfaceError, match="P1 x P1"):
        make_surface("p1xp1")


def test_del_pezzo_domain():
    with pytest.raises(SurfaceError):
        del_pezzo(0)


@pytest.mark.parametrize("T", supported_surfaces(), ids=lambda T: T.name)
def test_model_invariants(T):
    assert T.square(T.canonical) == T.degree
    assert T.branch == tuple(-2 * x for x in T.canonical)
    fl = fixed_locus_invariants(*T.nikulin)
    assert fl.branch_self_intersection == T.square(T.branch)
    assert fl.supported_model
    assert genus_of(T, T.anticanonical) == 1
    assert signature(T.picard) == (1, T.rank - 1)
    assert signature(T.k3) == (1, T.rank - 1)
    dd = discriminant_data(T.k3)
    assert dd.is_two_elementary and dd.a == T.nikulin[1] and dd.delta == T.nikulin[2]


def test_fixed_locus_examples():
    assert fixed_locus_invariants(10, 10, 0).shape == "Empty"
    two = fixed_locus_invariants(10, 8, 0)
    assert two.shape == "TwoEllipticCurves" and two.branch_self_intersection == 0
    gen = fixed_locus_invariants(7, 7, 1)
    assert (gen.shape, gen.genus, gen.rational_count, gen.branch_self_intersection) == (
        "GenusCurvePlusRationals",
        4,
        0,
        12,
    )
    other = fixed_locus_invariants(6, 2, 0)
    assert (other.genus, other.rational_count, other.supported_model) == (7, 2, False)


@pytest.mark.parametrize("bad", [(3, 5, 1), (20, 20, 1), (4, 1, 1), (1, 1, 2)])
def test_fixed_locus_unrealizable(bad):
    with pytest.raises(SurfaceError):
        fixed_locus_invariants(*bad)


def test_genus_examples():
    P, T3, T4 = projective_plane(), del_pezzo(3), del_pezzo(4)
    assert genus_of(P, (3,)) == 1
    assert genus_of(T3, T3.anticanonical) == 1
    assert genus_of(T4, T4.divisor(4, (2, 1, 1, 1, 1))) == 2


def test_covering_genus_examples():
    P, T2, T3 = projective_plane(), del_pezzo(2), del_pezzo(3)
    assert covering_genus(P, (3,)) == 10
    assert covering_genus(T3, T3.anticanonical) == 4
    C = tuple(2 * x for x in T2.anticanonical)
    assert genus_of(T2, C) == 3 and covering_genus(T2, C) == 9


def test_linear_system_dim():
    P, T3 = projective_plane(), del_pezzo(3)
    assert linear_system_dim(P, (3,)).value == 9 and linear_system_dim(P, (3,)).exact
    assert linear_system_dim(T3, T3.anticanonical).value == 3
    d = linear_system_dim(T3, T3.divisor(4, (2, 1, 1, 1, 1, 1)))
    assert (d.value, d.exact) == (6, True)
    # C.K = 0 and C.K > 0 are only lower bounds
    zero = linear_system_dim(T3, T3.divisor(4, (3, 3, 3, 1, 1, 1)))
    assert not zero.exact and "C.K = 0" in zero.note
    assert not linear_system_dim(T3, T3.divisor(1, (2, 2, 0, 0, 0, 0))).exact


def test_pullback():
    P, T3 = projective_plane(), del_pezzo(3)
    D = pullback_to_k3(P, (3,))
    assert P.k3.square(D) == 18
    assert T3.k3.pair(pullback_to_k3(T3, T3.exceptional(1)), pullback_to_k3(T3, T3.exceptional(2))) == 0
    assert T3.k3.square(pullback_to_k3(T3, T3.exceptional(1))) == -2
    assert T3.k3.square(pullback_to_k3(T3, T3.anticanonical)) == 6
    with pytest.raises(SurfaceError):
        pullback_to_k3(T3, (1, 0))


def test_divisor_convention():
    T = del_pezzo(3)
    C = T.divisor(4, (2, 1, 1, 1, 1, 1))
    assert C == (4, -2, -1, -1, -1, -1, -1)
    assert T.ab(C) == (4, (2, 1, 1, 1, 1, 1))
    assert T.describe(C).startswith("4H - 2E1")
    with pytest.raises(SurfaceError):
        T.divisor(4, (2, 1))
    assert T.kind == DEL_PEZZO


classes = st.sampled_from(supported_surfaces()).flatmap(
    lambda T: st.tuples(st.just(T), st.lists(st.integers(-30, 30), min_size=T.rank, max_size=T.rank))
)


@settings(max_examples=300, deadline=None)
@given(classes)
def test_pullback_doubles_and_prym_identity(arg):
    T, C = arg
    D = pullback_to_k3(T, C)
    assert T.k3.square(D) == 2 * T.square(C)
    assert 2 * (covering_genus(T, C) - genus_of(T, C)) == T.square(C) + T.pair(C, T.branch) // 2
