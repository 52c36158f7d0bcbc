import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz_hodge.intlinalg import (
    BoundExceeded,
    identity,
    kernel_lattice,
    mat_eq,
    mat_mul,
    mat_vec,
    matrix_from_json,
    matrix_from_text,
    matrix_to_json,
    nonneg_integer_solutions,
    nonneg_integer_solve,
    positivity_functional,
    rank,
    smith_normal_form,
    solve_integer,
    spans_full_lattice,
)

CUBE_B = [
    [1, 1, 1, 1],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
]

TWISTED = [
    [1, 1, 1],
    [0, 1, 2],
]


def det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def det(M):
    # cofactor expansion, fine at these sizes
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        return det3(M)
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * det(minor)
    return total


def check_snf(M):
    C, E, F = smith_normal_form(M)
    assert mat_eq(mat_mul(mat_mul(C, E), F), M)
    assert abs(det(C)) == 1
    assert abs(det(F)) == 1
    p = len(E)
    q = len(E[0]) if p else 0
    diag = [E[i][i] for i in range(min(p, q))]
    for i in range(p):
        for j in range(q):
            if i != j:
                assert E[i][j] == 0
    for i in range(len(diag)):
        assert diag[i] >= 0
    nz = [d for d in diag if d]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    # zero diagonal entries only after all nonzero ones
    seen_zero = False
    for d in diag:
        if d == 0:
            seen_zero = True
        elif seen_zero:
            raise AssertionError("nonzero after zero on diagonal")
    return C, E, F


def test_snf_cube_e_shape():
    _, E, _ = check_snf(CUBE_B)
    assert E == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]


def test_snf_twisted():
    _, E, _ = check_snf(TWISTED)
    assert E == [[1, 0, 0], [0, 1, 0]]


def test_snf_divisibility_nontrivial():
    M = [[2, 0], [0, 3]]
    _, E, _ = check_snf(M)
    assert E == [[1, 0], [0, 6]]


def test_kernel_twisted():
    assert kernel_lattice(TWISTED) == [[1, -2, 1]]


def test_kernel_cube():
    assert kernel_lattice(CUBE_B) == [[1, -1, -1, 1]]


def test_kernel_zero_matrix():
    assert kernel_lattice([[0, 0]]) == [[1, 0], [0, 1]]


def test_kernel_full_rank_square():
    assert kernel_lattice([[1, 0], [0, 1]]) == []


def test_spans_full_lattice():
    assert spans_full_lattice(TWISTED)
    assert spans_full_lattice(CUBE_B)
    assert not spans_full_lattice([[2]])
    assert not spans_full_lattice([[1, 1], [1, 1]])
    assert spans_full_lattice([[1, 0], [0, 1]])


def test_solve_integer():
    x = solve_integer(TWISTED, [2, 2])
    assert mat_vec(TWISTED, x) == [2, 2]
    assert solve_integer([[2]], [3]) is None
    assert solve_integer([[2]], [4]) == [2]


def test_nonneg_solve_examples():
    k = nonneg_integer_solve(TWISTED, [2, 2])
    assert mat_vec(TWISTED, k) == [2, 2]
    assert k in ([1, 0, 1], [0, 2, 0])
    sols, definitive = nonneg_integer_solutions(TWISTED, [2, 2])
    assert definitive
    assert sorted(map(tuple, sols)) == [(0, 2, 0), (1, 0, 1)]


def test_nonneg_solve_infeasible_definitive():
    # columns all have positive first coordinate, target is negative there
    assert nonneg_integer_solve(TWISTED, [-1, 0]) is None


def test_nonneg_solve_no_solution_same_degree():
    assert nonneg_integer_solve([[2]], [3]) is None


def test_nonneg_solve_bound_exceeded():
    # x - y = 1 has solutions at every total degree; no positivity
    # functional exists so a miss within the bound proves nothing
    M = [[1, -1]]
    k = nonneg_integer_solve(M, [1], bound=5)
    assert k == [1, 0]
    with pytest.raises(BoundExceeded):
        nonneg_integer_solve(M, [10**6], bound=5)


def test_positivity_functional_cube():
    y = positivity_functional(CUBE_B)
    assert y is not None
    for j in range(4):
        col = [CUBE_B[i][j] for i in range(3)]
        assert sum(a * b for a, b in zip(y, col)) >= 1


def test_positivity_functional_absent():
    assert positivity_functional([[1, -1]]) is None


def test_json_roundtrip():
    text = matrix_to_json(TWISTED)
    assert matrix_from_json(text) == TWISTED
    assert '"rows":2' in text


def test_text_parse():
    assert matrix_from_text("1 1 1\n0 1 2\n") == TWISTED
    assert matrix_from_text('{"rows":1,"cols":2,"entries":[[3,4]]}') == [[3, 4]]
    with pytest.raises(ValueError):
        matrix_from_text("1 2\n3\n")


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-6, max_value=6), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@given(small_matrices)
@settings(max_examples=120, deadline=None)
def test_snf_property(M):
    check_snf(M)


@given(small_matrices)
@settings(max_examples=120, deadline=None)
def test_kernel_property(M):
    basis = kernel_lattice(M)
    for v in basis:
        assert all(a == 0 for a in mat_vec(M, v))
    assert len(basis) == len(M[0]) - rank(M)


@given(small_matrices, st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_nonneg_solutions_verify(M, kfull):
    k = kfull[: len(M[0])]
    t = mat_vec(M, k)
    try:
        sol = nonneg_integer_solve(M, t, bound=12)
    except BoundExceeded:
        return
    assert sol is not None
    assert mat_vec(M, sol) == t
    assert sum(sol) <= sum(k)


def test_identity():
    assert identity(2) == [[1, 0], [0, 1]]
