"""Exact integer matrix routines: Smith form, kernels, bounded nonnegative solving.

Matrices are plain lists of rows of Python ints, so everything is arbitrary
precision. No floats anywhere in this module.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import NamedTuple, Optional


class BoundExceeded(Exception):
    """Search bound hit without a proof of infeasibility."""


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(M):
    return [row[:] for row in M]


def mat_shape(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def mat_mul(A, B):
    ra, ca = mat_shape(A)
    rb, cb = mat_shape(B)
    if ca != rb:
        raise ValueError("shape mismatch: %dx%d times %dx%d" % (ra, ca, rb, cb))
    out = [[0] * cb for _ in range(ra)]
    for i in range(ra):
        Ai = A[i]
        for k in range(ca):
            a = Ai[k]
            if a == 0:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(cb):
                row[j] += a * Bk[j]
    return out


def mat_vec(M, v):
    rows, cols = mat_shape(M)
    if len(v) != cols:
        raise ValueError("vector length %d does not match %d columns" % (len(v), cols))
    return [sum(M[i][j] * v[j] for j in range(cols)) for i in range(rows)]


def mat_transpose(M):
    rows, cols = mat_shape(M)
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def mat_eq(A, B):
    return mat_shape(A) == mat_shape(B) and all(
        A[i][j] == B[i][j] for i in range(len(A)) for j in range(len(A[0]) if A else 0)
    )


def columns(M):
    rows, cols = mat_shape(M)
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def from_columns(cols_list, rows=None):
    if not cols_list:
        return [[] for _ in range(rows or 0)]
    r = len(cols_list[0])
    return [[c[i] for c in cols_list] for i in range(r)]


class SmithDecomposition(NamedTuple):
    C: list
    E: list
    F: list


class _SnfState(NamedTuple):
    E: list
    C: list
    Cinv: list
    F: list
    Finv: list
    rank: int


def _snf_full(M) -> _SnfState:
    """Diagonalize M with unimodular C, F so that C*E*F = M.

    Pivot selection: smallest absolute value in the working submatrix,
    ties broken by lowest row index then lowest column index.
    Cinv and Finv are carried along so kernels and solves need no extra
    inversion afterwards.
    """
    p, q = mat_shape(M)
    E = mat_copy(M)
    C = identity(p)
    Cinv = identity(p)
    F = identity(q)
    Finv = identity(q)

    def row_add(i, j, k):
        # row_i of E += k * row_j ; keep C*E*F = M
        E[i] = [a + k * b for a, b in zip(E[i], E[j])]
        Cinv[i] = [a + k * b for a, b in zip(Cinv[i], Cinv[j])]
        for r in range(p):
            C[r][j] -= k * C[r][i]

    def row_swap(i, j):
        E[i], E[j] = E[j], E[i]
        Cinv[i], Cinv[j] = Cinv[j], Cinv[i]
        for r in range(p):
            C[r][i], C[r][j] = C[r][j], C[r][i]

    def row_negate(i):
        E[i] = [-a for a in E[i]]
        Cinv[i] = [-a for a in Cinv[i]]
        for r in range(p):
            C[r][i] = -C[r][i]

    def col_add(j, i, k):
        # col_j of E += k * col_i
        for r in range(p):
            E[r][j] += k * E[r][i]
        for r in range(q):
            Finv[r][j] += k * Finv[r][i]
        F[i] = [a - k * b for a, b in zip(F[i], F[j])]

    def col_swap(i, j):
        for r in range(p):
            E[r][i], E[r][j] = E[r][j], E[r][i]
        for r in range(q):
            Finv[r][i], Finv[r][j] = Finv[r][j], Finv[r][i]
        F[i], F[j] = F[j], F[i]

    t = 0
    while t < min(p, q):
        best = None
        for i in range(t, p):
            for j in range(t, q):
                v = abs(E[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)

        dirty = False
        for i in range(t + 1, p):
            if E[i][t]:
                row_add(i, t, -(E[i][t] // E[t][t]))
                if E[i][t]:
                    dirty = True
        for j in range(t + 1, q):
            if E[t][j]:
                col_add(j, t, -(E[t][j] // E[t][t]))
                if E[t][j]:
                    dirty = True
        if dirty:
            continue

        if E[t][t] < 0:
            row_negate(t)

        offender = None
        for i in range(t + 1, p):
            for j in range(t + 1, q):
                if E[i][j] % E[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    # assert mat_eq(mat_mul(mat_mul(C, E), F), M)
    return _SnfState(E, C, Cinv, F, Finv, t)


def smith_normal_form(M) -> SmithDecomposition:
    """Return (C, E, F) with C*E*F = M, C and F unimodular, E diagonal,
    and each diagonal entry dividing the next."""
    st = _snf_full(M)
    return SmithDecomposition(st.C, st.E, st.F)


def rank(M):
    return _snf_full(M).rank


def _first_nonzero(v):
    for i, a in enumerate(v):
        if a:
            return i
    return None


def _vec_sort_key(v):
    i = _first_nonzero(v)
    pos = len(v) if i is None else i
    return (pos, tuple(abs(a) for a in v), tuple(v))


def kernel_lattice(M):
    """Basis of the integer kernel {v : M v = 0}, sign-normalized and sorted."""
    st = _snf_full(M)
    _, q = mat_shape(M)
    basis = []
    for j in range(st.rank, q):
        v = [st.Finv[i][j] for i in range(q)]
        lead = _first_nonzero(v)
        if lead is not None and v[lead] < 0:
            v = [-a for a in v]
        basis.append(v)
    basis.sort(key=_vec_sort_key)
    for v in basis:
        if any(mat_vec(M, v)):
            raise AssertionError("kernel vector fails M v = 0")
    return basis


def spans_full_lattice(M):
    """Whether the columns of M generate all of Z^rows."""
    st = _snf_full(M)
    p, _ = mat_shape(M)
    if st.rank < p:
        return False
    return all(st.E[i][i] == 1 for i in range(p))


def solve_integer(M, b) -> Optional[list]:
    """One integer solution of M x = b, or None when none exists."""
    st = _snf_full(M)
    p, q = mat_shape(M)
    if len(b) != p:
        raise ValueError("rhs length mismatch")
    c = mat_vec(st.Cinv, b)
    y = [0] * q
    for j in range(min(p, q)):
        d = st.E[j][j]
        if d:
            if c[j] % d:
                return None
            y[j] = c[j] // d
        elif c[j]:
            return None
    for j in range(min(p, q), p):
        if c[j]:
            return None
    return mat_vec(st.Finv, y)


def positivity_functional(M):
    """Rational y with <y, column_i> >= 1 for every column, or None.

    Existence certifies that the column cone is pointed with all generators
    on the strict side of a hyperplane, which turns bounded nonnegative
    search into a complete decision procedure (total degree of any solution
    of M k = t is at most y . t).
    """
    p, q = mat_shape(M)
    if q == 0:
        return [Fraction(0)] * p
    cols = columns(M)
    for r in range(p):
        if all(c[r] >= 1 for c in cols):
            return [Fraction(1) if i == r else Fraction(0) for i in range(p)]
    sol = _rational_solve(mat_transpose(M), [Fraction(1)] * q)
    if sol is not None:
        return sol
    if p <= 4:
        span = range(-3, 4)
        best = None
        from itertools import product as _product

        for combo in _product(span, repeat=p):
            if all(a == 0 for a in combo):
                continue
            vals = [sum(combo[r] * c[r] for r in range(p)) for c in cols]
            if all(v >= 1 for v in vals):
                key = sum(abs(a) for a in combo)
                if best is None or key < best[0]:
                    best = (key, [Fraction(a) for a in combo])
        if best is not None:
            return best[1]
    return None


def _rational_solve(M, b):
    """Solve M y = b over the rationals. Returns one solution or None."""
    p, q = mat_shape(M)
    aug = [[Fraction(M[i][j]) for j in range(q)] + [Fraction(b[i])] for i in range(p)]
    pivots = []
    r = 0
    for c in range(q):
        pr = None
        for i in range(r, p):
            if aug[i][c]:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [a / pv for a in aug[r]]
        for i in range(p):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * bb for a, bb in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == p:
            break
    for i in range(r, p):
        if aug[i][q]:
            return None
    y = [Fraction(0)] * q
    for i, c in enumerate(pivots):
        y[c] = aug[i][q]
    return y


def nonneg_integer_solutions(M, t, bound=64):
    """All k >= 0 with M k = t and total degree <= effective bound.

    Returns (solutions, definitive) where solutions are sorted by
    (total degree, lex) and definitive is True when the positivity
    functional made the bounded search exhaustive.
    """
    p, q = mat_shape(M)
    if len(t) != p:
        raise ValueError("target length mismatch")
    if q == 0:
        ok = all(a == 0 for a in t)
        return ([[]] if ok else [], True)
    cols = columns(M)
    y = positivity_functional(M)
    definitive = False
    eff = bound
    if y is not None:
        yt = sum(y[r] * t[r] for r in range(p))
        if yt < 0:
            return [], True
        cap = int(yt)
        if cap <= bound:
            eff = cap
            definitive = True

    # per-suffix sign summaries for pruning: if every remaining column is
    # nonnegative in row r, the residual target must stay nonnegative there
    suffix_nonneg = [[True] * p for _ in range(q + 1)]
    suffix_nonpos = [[True] * p for _ in range(q + 1)]
    for i in range(q - 1, -1, -1):
        for r in range(p):
            suffix_nonneg[i][r] = suffix_nonneg[i + 1][r] and cols[i][r] >= 0
            suffix_nonpos[i][r] = suffix_nonpos[i + 1][r] and cols[i][r] <= 0

    found = []
    k = [0] * q

    def residual_ok(idx, rt):
        for r in range(p):
            if suffix_nonneg[idx][r] and rt[r] < 0:
                return False
            if suffix_nonpos[idx][r] and rt[r] > 0:
                return False
        return True

    def dfs(idx, rt, used):
        if idx == q:
            if all(a == 0 for a in rt):
                found.append(k[:])
            return
        if not residual_ok(idx, rt):
            return
        if idx == q - 1:
            # last column: direct ratio
            c = cols[idx]
            cand = None
            for r in range(p):
                if c[r]:
                    if rt[r] % c[r] or (rt[r] // c[r]) < 0:
                        return
                    cand = rt[r] // c[r]
                    break
            if cand is None:
                cand = 0
                if any(rt):
                    return
            if cand <= eff - used and all(rt[r] == cand * c[r] for r in range(p)):
                k[idx] = cand
                found.append(k[:])
                k[idx] = 0
            return
        cap = eff - used
        if y is not None:
            yr = sum(y[r] * rt[r] for r in range(p))
            if yr < 0:
                return
            cap = min(cap, int(yr))
        c = cols[idx]
        for v in range(cap + 1):
            k[idx] = v
            dfs(idx + 1, [rt[r] - v * c[r] for r in range(p)], used + v)
        k[idx] = 0

    dfs(0, list(t), 0)
    found.sort(key=lambda s: (sum(s), tuple(s)))
    return found, definitive


def nonneg_integer_solve(M, t, bound=64) -> Optional[list]:
    """Least (total degree, then lex) nonnegative integer solution of M k = t.

    None means proven infeasible. BoundExceeded is raised when nothing was
    found and the search was not exhaustive.
    """
    sols, definitive = nonneg_integer_solutions(M, t, bound)
    if sols:
        k = sols[0]
        if mat_vec(M, k) != list(t):
            raise AssertionError("solver returned a non-solution")
        return k
    if definitive:
        return None
    raise BoundExceeded("no solution with total degree <= %d; infeasibility unproven" % bound)


def matrix_to_json(M):
    rows, cols = mat_shape(M)
    return json.dumps({"rows": rows, "cols": cols, "entries": M}, separators=(",", ":"))


def matrix_from_json(text):
    data = json.loads(text)
    if isinstance(data, list):
        M = [[int(a) for a in row] for row in data]
    else:
        M = [[int(a) for a in row] for row in data["entries"]]
        if len(M) != data["rows"] or any(len(r) != data["cols"] for r in M):
            raise ValueError("entry block does not match declared shape")
    widths = {len(r) for r in M}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return M


def matrix_from_text(text):
    """Whitespace matrix: one row per line, JSON accepted as well."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return matrix_from_json(stripped)
    M = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        M.append([int(tok) for tok in line.split()])
    if not M:
        raise ValueError("empty matrix")
    widths = {len(r) for r in M}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return M
