"""Affine semigroup combinatorics: facet normals, saturation, distinguished
interior vectors and their squarefree decompositions, homogenization, charts.

A semigroup is given by an integer matrix B whose columns generate it. All
decisions below are exact; bounded searches say so in their verdicts.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import NamedTuple, Optional

from .intlinalg import (
    _rational_solve,
    columns,
    identity,
    kernel_lattice,
    mat_mul,
    mat_shape,
    mat_vec,
    rank,
    solve_integer,
    spans_full_lattice,
)


class NotFullRank(Exception):
    """Columns do not generate the full ambient lattice."""


class NotSaturated(Exception):
    """Semigroup has a gap inside its cone, or one was not ruled out."""


class NoDecomposition(Exception):
    """No squarefree-compatible representation found within the bound."""


class IndexOutOfRange(Exception):
    """Chart index outside 0..n."""


_NODE_LIMIT = 400_000


class _SearchOverflow(Exception):
    pass


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


class ConeProfile(NamedTuple):
    normals: list
    lineality_rank: int


class MembershipResult(NamedTuple):
    status: str  # "member" | "nonmember" | "unknown"
    representation: Optional[list]


class SaturationResult(NamedTuple):
    status: str  # "verified-to-bound" | "refuted" | "unknown"
    witness: Optional[list]
    exhaustive: bool


class CprimeDecomposition(NamedTuple):
    J1: tuple
    J2: tuple
    cprime: list
    representation: list
    alternatives: list  # all (representation, cprime) pairs at minimal degree


class SresResult(NamedTuple):
    contains: bool
    j: Optional[int]
    k: Optional[int]
    bound: int


def facet_normals(B) -> ConeProfile:
    """Primitive inward normals of the facets of the real cone over B's columns.

    Every returned vector pairs >= 0 with all columns and vanishes on a
    rank (r-1) subset, so each one is a genuine facet. Conversely a facet
    contains r-1 independent generators, so the subset sweep is complete.
    """
    r, s = mat_shape(B)
    if not spans_full_lattice(B):
        raise NotFullRank("columns must generate the full lattice Z^%d" % r)
    cols = columns(B)
    candidates = []
    if r == 1:
        candidates = [[1]]
    else:
        for subset in combinations(range(s), r - 1):
            rows = [cols[j] for j in subset]
            if rank(rows) != r - 1:
                continue
            ker = kernel_lattice(rows)
            if len(ker) == 1:
                candidates.append(ker[0])
    kept = set()
    for v in candidates:
        pairings = [dot(v, c) for c in cols]
        if all(p >= 0 for p in pairings):
            kept.add(tuple(v))
        elif all(p <= 0 for p in pairings):
            kept.add(tuple(-a for a in v))
    normals = sorted(kept)
    if normals:
        lin = r - rank([list(v) for v in normals])
    else:
        lin = r
    return ConeProfile([list(v) for v in normals], lin)


def _max_entry(B):
    return max((abs(e) for row in B for e in row), default=0)


@lru_cache(maxsize=256)
def _reachable(cols_key, cap, limit):
    """All semigroup elements with sup-norm <= cap, with one predecessor each.

    Any representation of a point x can be reordered so that every partial
    sum stays within |x| + 2 r max|b_j| in sup norm (rearrangement bound),
    so for |x| + 2 r max|b_j| <= cap absence from this table refutes
    membership.
    """
    cols = [list(c) for c in cols_key]
    r = len(cols[0]) if cols else 0
    origin = tuple([0] * r)
    parent = {origin: None}
    queue = [origin]
    while queue:
        nxt = []
        for p in queue:
            for j, c in enumerate(cols):
                q = tuple(a + b for a, b in zip(p, c))
                if q in parent:
                    continue
                if any(abs(a) > cap for a in q):
                    continue
                parent[q] = (p, j)
                nxt.append(q)
                if len(parent) > limit:
                    raise _SearchOverflow()
        queue = nxt
    return parent


def _cols_key(B):
    return tuple(tuple(c) for c in columns(B))


def _recover(parent, x, ncols):
    k = [0] * ncols
    cur = tuple(x)
    while parent[cur] is not None:
        prev, j = parent[cur]
        k[j] += 1
        cur = prev
    return k


def semigroup_membership(B, x, bound=20) -> MembershipResult:
    """Decide x in NB. Definitive (member or nonmember) whenever
    sup-norm(x) <= bound; otherwise a miss is reported as unknown."""
    r, s = mat_shape(B)
    x = list(x)
    if len(x) != r:
        raise ValueError("point has wrong dimension")
    xn = max((abs(a) for a in x), default=0)
    cap = bound + (2 * r + 1) * _max_entry(B)
    try:
        parent = _reachable(_cols_key(B), cap, _NODE_LIMIT)
    except _SearchOverflow:
        return MembershipResult("unknown", None)
    if tuple(x) in parent:
        k = _recover(parent, x, s)
        # assert mat_vec(B, k) == x
        return MembershipResult("member", k)
    if xn <= bound:
        return MembershipResult("nonmember", None)
    return MembershipResult("unknown", None)


def _box_points(r, radius):
    pts = [list(p) for p in product(range(-radius, radius + 1), repeat=r)]
    pts.sort(key=lambda p: (sum(abs(a) for a in p), tuple(p)))
    return pts


def _simplicial_pieces(B):
    """Maximal independent column subsets. Their simplicial cones cover the
    whole cone, so rational nonnegative solvability on one of them decides
    real cone membership exactly."""
    r, s = mat_shape(B)
    cols = columns(B)
    rk = rank(B)
    pieces = []
    for subset in combinations(range(s), rk):
        sub = [[cols[j][i] for j in subset] for i in range(r)]
        if rank(sub) == rk:
            pieces.append(sub)
    return pieces


def in_cone(B, x, pieces=None):
    """Whether x lies in the real cone spanned by B's columns."""
    if pieces is None:
        pieces = _simplicial_pieces(B)
    if not pieces:
        return all(a == 0 for a in x)
    for sub in pieces:
        lam = _rational_solve(sub, x)
        if lam is None:
            continue
        if all(v >= 0 for v in lam) and mat_vec(sub, lam) == [int(a) for a in x]:
            return True
    return False


def check_saturation(B, bound=20) -> SaturationResult:
    """Compare NB against its cone's lattice points.

    Scanning the box of radius n*max|entry| is enough for a full verdict:
    any cone lattice point splits as a semigroup element plus a lattice
    point of the zonotope spanned by the columns, so a gap implies a gap
    inside that box.
    """
    r, s = mat_shape(B)
    pieces = _simplicial_pieces(B)
    zonotope_radius = s * _max_entry(B)
    radius = min(zonotope_radius, bound)
    exhaustive = zonotope_radius <= bound
    for x in _box_points(r, radius):
        if not in_cone(B, x, pieces):
            continue
        res = semigroup_membership(B, x, bound=bound)
        if res.status == "nonmember":
            return SaturationResult("refuted", x, exhaustive)
        if res.status == "unknown":
            return SaturationResult("unknown", None, False)
    return SaturationResult("verified-to-bound", None, exhaustive)


def gorenstein_vector(B, bound=20) -> Optional[list]:
    """The canonical interior vector c with <c, v> = 1 for every facet
    normal v, or None when no such lattice vector exists.

    Requires a saturated semigroup; a refuted or failed saturation check
    raises NotSaturated. Among all solutions (they differ by invertible
    semigroup elements) the one minimizing (l1 norm, lex) is returned.
    """
    r, s = mat_shape(B)
    sat = check_saturation(B, bound)
    if sat.status == "refuted":
        raise NotSaturated("gap at %r" % (sat.witness,))
    profile = facet_normals(B)
    if not profile.normals:
        return [0] * r
    V = [list(v) for v in profile.normals]
    ones = [1] * len(V)
    c0 = solve_integer(V, ones)
    if c0 is None:
        return None
    G = kernel_lattice(V)
    best = c0
    if G:
        radius = max(4, sum(abs(a) for a in c0))
        span = range(-radius, radius + 1)
        for combo in product(span, repeat=len(G)):
            cand = c0[:]
            for t, g in zip(combo, G):
                cand = [a + t * b for a, b in zip(cand, g)]
            key = (sum(abs(a) for a in cand), tuple(cand))
            if key < (sum(abs(a) for a in best), tuple(best)):
                best = cand
    c = best
    cn = max(abs(a) for a in c)
    res = semigroup_membership(B, c, bound=max(bound, cn))
    if res.status == "nonmember":
        raise NotSaturated("interior vector %r escapes the semigroup" % (c,))
    # bounded check that c generates the interior: interior lattice points
    # of the scan box must all be c + semigroup
    radius = min(s * _max_entry(B), bound)
    for x in _box_points(r, radius):
        if any(dot(v, x) < 1 for v in profile.normals):
            continue
        shifted = [a - b for a, b in zip(x, c)]
        sn = max((abs(a) for a in shifted), default=0)
        chk = semigroup_membership(B, shifted, bound=max(bound, sn))
        if chk.status == "nonmember":
            raise NotSaturated("interior point %r not reachable from c" % (x,))
    return c


def _degree_reps(B, c, degree):
    """All k >= 0 with B k = c and sum(k) == degree, lex sorted."""
    r, s = mat_shape(B)
    cols = columns(B)
    out = []
    k = [0] * s

    def dfs(idx, residual, left):
        if idx == s:
            if left == 0 and all(a == 0 for a in residual):
                out.append(k[:])
            return
        rest = cols[idx:]
        for row in range(r):
            vals = [cc[row] for cc in rest]
            lo = sum(min(v, 0) for v in vals) * left
            hi = sum(max(v, 0) for v in vals) * left
            if not (lo <= residual[row] <= hi):
                return
        for v in range(left + 1):
            k[idx] = v
            dfs(idx + 1, [residual[row] - v * cols[idx][row] for row in range(r)], left - v)
        k[idx] = 0

    dfs(0, list(c), degree)
    out.sort()
    return out


def cprime_decomposition(B, c, bound=20) -> CprimeDecomposition:
    """Split a representation of c into squarefree part and unit part.

    Representations are tried in (total degree, lex) order. A representation
    is accepted when for every facet exactly one support column pairs 1 with
    multiplicity 1 and the rest of the support pairs 0; then J1 collects the
    support outside the unit group G, J2 the support inside it, and
    c' = sum over J1 and J2 of the columns, each taken once.
    """
    r, s = mat_shape(B)
    c = list(c)
    profile = facet_normals(B)
    in_G = [all(dot(v, col) == 0 for v in profile.normals) for col in columns(B)]
    cols = columns(B)

    def validate(k):
        support = [j for j in range(s) if k[j] > 0]
        for v in profile.normals:
            hits = [j for j in support if dot(v, cols[j]) != 0]
            if len(hits) != 1:
                return None
            j = hits[0]
            if dot(v, cols[j]) != 1 or k[j] != 1:
                return None
        J1 = tuple(j for j in support if not in_G[j])
        J2 = tuple(j for j in support if in_G[j])
        cprime = [0] * r
        for j in J1 + J2:
            cprime = [a + b for a, b in zip(cprime, cols[j])]
        return CprimeDecomposition(J1, J2, cprime, k, [])

    for degree in range(bound + 1):
        reps = _degree_reps(B, c, degree)
        valid = [validate(k) for k in reps]
        valid = [v for v in valid if v is not None]
        if valid:
            first = valid[0]
            alts = [(v.representation, v.cprime) for v in valid]
            return CprimeDecomposition(first.J1, first.J2, first.cprime, first.representation, alts)
    raise NoDecomposition("no compatible representation of %r with degree <= %d" % (c, bound))


def homogenize(A):
    """Prepend the row of ones over an added zeroth zero column."""
    if not A:
        return [[1]]
    d, n = mat_shape(A)
    out = [[1] * (n + 1)]
    for i in range(d):
        out.append([0] + A[i])
    return out


def chart_matrix(A, u):
    """Column differences against column u of (0 | A), plus the base change
    that realizes them on the homogenized matrix.

    Returns (A_u, C_u) where A_u has columns a_i - a_u over i != u in
    {0,...,n} with a_0 = 0, and C_u is unimodular lower triangular with
    C_u * homogenize(A) equal to homogenize(A_u) up to moving column u
    to the front.
    """
    d, n = mat_shape(A)
    if not (0 <= u <= n):
        raise IndexOutOfRange("chart index %d outside 0..%d" % (u, n))
    ext = [[0] * d] + columns(A)  # a_0 = 0 prepended
    au = ext[u]
    Au_cols = [[a - b for a, b in zip(ext[i], au)] for i in range(n + 1) if i != u]
    A_u = [[c[i] for c in Au_cols] for i in range(d)]
    C_u = [[1] + [0] * d]
    for i in range(d):
        C_u.append([-au[i]] + identity(d)[i])
    return A_u, C_u


def chart_identity_holds(A, u):
    """Check C_u * homogenize(A) == homogenize(A_u) modulo the u-to-front
    column swap. Used by tests and the verification pipeline."""
    A_u, C_u = chart_matrix(A, u)
    left = mat_mul(C_u, homogenize(A))
    lcols = columns(left)
    perm = [lcols[u]] + [lcols[i] for i in range(len(lcols)) if i != u]
    right = columns(homogenize(A_u))
    return perm == right


def true_degrees(B, j, radius, bound=20):
    """Semigroup elements x with x - b_j outside the semigroup, within the
    sup-norm radius. These are the degrees where the j-th coordinate
    hyperplane section is nonzero."""
    r, s = mat_shape(B)
    bj = columns(B)[j]
    out = []
    cap = max(radius, bound)
    for x in _box_points(r, radius):
        res = semigroup_membership(B, x, bound=cap)
        if res.status != "member":
            continue
        shifted = [a - b for a, b in zip(x, bj)]
        chk = semigroup_membership(B, shifted, bound=cap)
        if chk.status == "nonmember":
            out.append(x)
    return out


def sres_contains(B, beta, bound=20) -> SresResult:
    """Bounded test whether -beta - k b_j is a true degree of the j-th
    section for some column j and k >= 1."""
    r, s = mat_shape(B)
    beta = list(beta)
    cols = columns(B)
    for k in range(1, bound + 1):
        for j in range(s):
            x = [-b - k * c for b, c in zip(beta, cols[j])]
            xn = max((abs(a) for a in x), default=0)
            mb = max(bound, xn)
            res = semigroup_membership(B, x, bound=mb)
            if res.status != "member":
                continue
            shifted = [a - b for a, b in zip(x, cols[j])]
            chk = semigroup_membership(B, shifted, bound=mb)
            if chk.status == "nonmember":
                return SresResult(True, j, k, bound)
    return SresResult(False, None, None, bound)
