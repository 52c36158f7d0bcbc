import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz_hodge.intlinalg import mat_mul, mat_vec
from gkz_hodge.toric import (
    IndexOutOfRange,
    NoDecomposition,
    NotFullRank,
    NotSaturated,
    chart_identity_holds,
    chart_matrix,
    check_saturation,
    cprime_decomposition,
    dot,
    facet_normals,
    gorenstein_vector,
    homogenize,
    semigroup_membership,
    sres_contains,
    true_degrees,
)

CUBE_B = [
    [1, 1, 1, 1],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
]

HALF_B = [
    [1, 2, -1, -2],
    [0, 1, 0, 1],
]

TWISTED = [
    [1, 1, 1],
    [0, 1, 2],
]


def test_facet_normals_cube():
    prof = facet_normals(CUBE_B)
    assert sorted(map(tuple, prof.normals)) == [
        (0, 0, 1),
        (0, 1, 0),
        (1, -1, 0),
        (1, 0, -1),
    ]
    assert prof.lineality_rank == 0


def test_facet_normals_half_plane():
    prof = facet_normals(HALF_B)
    assert prof.normals == [[0, 1]]
    assert prof.lineality_rank == 1


def test_facet_normals_twisted():
    prof = facet_normals(TWISTED)
    assert sorted(map(tuple, prof.normals)) == [(0, 1), (2, -1)]
    assert prof.lineality_rank == 0


def test_facet_normals_ray():
    prof = facet_normals([[1]])
    assert prof.normals == [[1]]
    assert prof.lineality_rank == 0


def test_facet_normals_line():
    prof = facet_normals([[1, -1]])
    assert prof.normals == []
    assert prof.lineality_rank == 1


def test_facet_normals_not_full_rank():
    with pytest.raises(NotFullRank):
        facet_normals([[2]])
    with pytest.raises(NotFullRank):
        facet_normals([[1, 0], [0, 2]])


def test_membership_cube():
    res = semigroup_membership(CUBE_B, [2, 1, 1])
    assert res.status == "member"
    assert mat_vec(CUBE_B, res.representation) == [2, 1, 1]
    assert semigroup_membership(CUBE_B, [0, 1, 0]).status == "nonmember"
    assert semigroup_membership(CUBE_B, [-1, 0, 0]).status == "nonmember"
    assert semigroup_membership(CUBE_B, [0, 0, 0]).status == "member"


def test_membership_half_plane():
    # lineality direction is invertible, negatives along it are members
    res = semigroup_membership(HALF_B, [-5, 0])
    assert res.status == "member"
    assert mat_vec(HALF_B, res.representation) == [-5, 0]
    assert semigroup_membership(HALF_B, [0, -1]).status == "nonmember"


def test_saturation_cube_and_half():
    assert check_saturation(CUBE_B).status == "verified-to-bound"
    assert check_saturation(CUBE_B).exhaustive
    assert check_saturation(HALF_B).status == "verified-to-bound"


def test_saturation_refuted():
    res = check_saturation([[1, 1], [0, 2]])
    assert res.status == "refuted"
    assert res.witness == [1, 1]


def test_gorenstein_cube():
    assert gorenstein_vector(CUBE_B) == [2, 1, 1]


def test_gorenstein_half_plane():
    assert gorenstein_vector(HALF_B) == [0, 1]


def test_gorenstein_ray():
    assert gorenstein_vector([[1]]) == [1]


def test_gorenstein_line():
    assert gorenstein_vector([[1, -1]]) == [0]


def test_gorenstein_twisted_none():
    # normals (0,1) and (2,-1) need c with c2 = 1 and 2 c1 - c2 = 1, so
    # 2 c1 = 2, c = (1, 1); interior check: (1, 0) has pairings (0, 2),
    # not interior; c = (1,1) is interior and (2,1)-(1,1)=(1,0) is a member.
    # The twisted cubic cone is in fact Gorenstein with c = (1, 1).
    assert gorenstein_vector(TWISTED) == [1, 1]


def test_gorenstein_not_saturated():
    with pytest.raises(NotSaturated):
        gorenstein_vector([[1, 1], [0, 2]])


def test_cprime_cube():
    dec = cprime_decomposition(CUBE_B, [2, 1, 1])
    assert dec.cprime == [2, 1, 1]
    assert dec.representation == [0, 1, 1, 0]
    assert dec.J2 == ()
    reps = sorted(tuple(k) for k, _ in dec.alternatives)
    assert reps == [(0, 1, 1, 0), (1, 0, 0, 1)]
    assert all(cp == [2, 1, 1] for _, cp in dec.alternatives)


def test_cprime_half_plane():
    dec = cprime_decomposition(HALF_B, [0, 1])
    assert dec.cprime == [1, 1]
    assert dec.representation == [0, 1, 2, 0]
    assert dec.J1 == (1,)
    assert dec.J2 == (2,)
    alts = {(tuple(k), tuple(cp)) for k, cp in dec.alternatives}
    assert alts == {((0, 1, 2, 0), (1, 1)), ((2, 0, 0, 1), (-1, 1))}


def test_cprime_ray():
    dec = cprime_decomposition([[1]], [1])
    assert dec.cprime == [1]
    assert dec.J1 == (0,)


def test_cprime_line_is_zero():
    dec = cprime_decomposition([[1, -1]], [0])
    assert dec.cprime == [0]
    assert dec.J1 == () and dec.J2 == ()


def test_cprime_no_decomposition():
    with pytest.raises(NoDecomposition):
        # (1,0) pairs 0 with the facet normal (0,1), never 1
        cprime_decomposition(HALF_B, [1, 0])


def test_homogenize():
    assert homogenize([]) == [[1]]
    assert homogenize([[1, 2]]) == [[1, 1, 1], [0, 1, 2]]
    assert homogenize([[1, 1], [0, 1]]) == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]


def test_chart_matrix_example():
    A_u, C_u = chart_matrix([[1, 2]], 1)
    assert A_u == [[-1, 1]]
    assert C_u == [[1, 0], [-1, 1]]
    assert chart_identity_holds([[1, 2]], 1)


def test_chart_matrix_zero():
    A_u, _ = chart_matrix([[1, 2]], 0)
    assert A_u == [[1, 2]]
    for u in range(3):
        assert chart_identity_holds([[1, 2]], u)


def test_chart_matrix_square():
    A = [[1, 1], [0, 1]]
    for u in range(3):
        assert chart_identity_holds(A, u)
    A_u, C_u = chart_matrix(A, 2)
    assert A_u == [[-1, 0], [-1, -1]]
    assert C_u == [[1, 0, 0], [-1, 1, 0], [-1, 0, 1]]


def test_chart_index_error():
    with pytest.raises(IndexOutOfRange):
        chart_matrix([[1, 2]], 3)
    with pytest.raises(IndexOutOfRange):
        chart_matrix([[1, 2]], -1)


def test_true_degrees_ray():
    td = true_degrees([[1]], 0, radius=5)
    assert td == [[0]]


def test_sres_ray():
    res = sres_contains([[1]], [-1])
    assert res.contains and res.j == 0 and res.k == 1


def test_sres_ray_negative():
    res = sres_contains([[1]], [1])
    assert not res.contains


def test_sres_cube_negative_generator():
    res = sres_contains(CUBE_B, [-1, 0, 0])
    assert res.contains and res.j == 0 and res.k == 1


def test_sres_cube_semigroup_points_clear():
    # semigroup members are never strongly resonant
    for beta in ([0, 0, 0], [2, 1, 1], [1, 1, 0]):
        res = sres_contains(CUBE_B, beta, bound=6)
        assert not res.contains


small_cols = st.lists(
    st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)),
    min_size=2,
    max_size=4,
)


@given(small_cols)
@settings(max_examples=40, deadline=None)
def test_facet_normals_nonnegative_pairings(cols):
    B = [[c[i] for c in cols] for i in range(2)]
    try:
        prof = facet_normals(B)
    except NotFullRank:
        return
    for v in prof.normals:
        for c in cols:
            assert dot(v, list(c)) >= 0


@given(small_cols, st.lists(st.integers(min_value=0, max_value=2), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_membership_of_generated_points(cols, mults):
    B = [[c[i] for c in cols] for i in range(2)]
    k = mults[: len(cols)]
    x = mat_vec(B, k)
    res = semigroup_membership(B, x, bound=max(12, max(map(abs, x), default=0)))
    assert res.status == "member"
    assert mat_vec(B, res.representation) == x
