"""Constructors for hypergeometric differential systems.

Every constructor returns a SystemPresentation: an algebra signature, a
list of normally ordered generators (binomial box operators first,
Euler-type operators last) and a ledger of filtration shifts carried by
the construction. Box generating sets are computed from the kernel
lattice of the matrix and certified through a commutative Groebner
saturation check; a lattice basis alone is never trusted, since basis
binomials are well known to under-generate the toric ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Optional

import sympy

from .groebner import DEFAULT_BUDGET, buchberger, normal_form
from .intlinalg import (
    columns,
    kernel_lattice,
    mat_vec,
    nonneg_integer_solve,
    rank,
    spans_full_lattice,
)
from .toric import (
    IndexOutOfRange,
    NoDecomposition,
    NotFullRank,
    NotSaturated,
    chart_matrix,
    cprime_decomposition,
    gorenstein_vector,
)
from .weyl import (
    AlgebraSignature,
    WeylElement,
    fourier_laplace,
    multiply,
    signature,
)


class GenerationUncertified(Exception):
    """The saturation certificate for a box generating set failed."""


class NotGorenstein(Exception):
    """The semigroup lacks the saturation/interior structure needed here."""


class NotLocalized(Exception):
    """Element not expressible in the localized chart ring."""


class NoExponent(Exception):
    """No nonnegative exponent realizes the requested parameter sum."""


BOX_FLAVORS = ("partial_form", "fl_form", "rees_form", "tilde_form")

# per flavor: variable prefix, first index, whether a central z is needed
_FLAVOR_DEFAULTS = {
    "partial_form": ("l", 0, False),
    "fl_form": ("w", 1, False),
    "rees_form": ("l", 0, True),
    "tilde_form": ("l", 1, True),
}


@dataclass
class SystemPresentation:
    signature: AlgebraSignature
    generators: list
    flavor: str
    parameters: dict
    shift_ledger: list
    box_vectors: list
    n_boxes: int
    n_eulers: int

    @property
    def boxes(self):
        return self.generators[: self.n_boxes]

    @property
    def eulers(self):
        return self.generators[len(self.generators) - self.n_eulers :]


@dataclass
class DualityData:
    matrix: list
    c_tilde: tuple
    dual_parameter: tuple
    hodge_shift: int
    exponent: Optional[tuple]
    weight: Optional[int] = None
    certified: bool = False


# -- toric ideal generators ---------------------------------------------


def _tuplize(M):
    return tuple(tuple(int(x) for x in row) for row in M)


@lru_cache(maxsize=None)
def _toric_vectors(mat):
    """Lattice vectors of a certified generating set for the toric ideal.

    Starts from a kernel lattice basis, saturates the basis binomials by
    the product of all variables (the t-trick elimination) and reads the
    vectors off a reduced commutative Groebner basis of the result. The
    reduced basis of a saturated lattice ideal consists of differences of
    monomials; anything else aborts with GenerationUncertified.
    """
    M = [list(row) for row in mat]
    ncols = len(M[0]) if M else 0
    basis = kernel_lattice(M)
    if not basis:
        return ()
    xs = sympy.symbols(["x%d" % i for i in range(ncols)])

    def binomial(vec):
        plus = sympy.Integer(1)
        minus = sympy.Integer(1)
        for i, e in enumerate(vec):
            if e > 0:
                plus *= xs[i] ** e
            elif e < 0:
                minus *= xs[i] ** (-e)
        return plus - minus

    t = sympy.Symbol("t_sat")
    product = reduce(lambda a, b: a * b, xs)
    sat = sympy.groebner(
        [binomial(v) for v in basis] + [t * product - 1], t, *xs, order="lex"
    )
    elim = [p for p in sat.exprs if not p.has(t)]
    if not elim:
        raise GenerationUncertified("saturation eliminated every generator")
    reduced = sympy.groebner(elim, *xs, order="grevlex")
    vectors = []
    seen = set()
    for expr in reduced.exprs:
        terms = sympy.Poly(expr, *xs).terms()
        if len(terms) != 2:
            raise GenerationUncertified("non-binomial element in the saturated basis")
        (e1, c1), (e2, c2) = terms
        if {int(c1), int(c2)} != {1, -1}:
            raise GenerationUncertified("non-unit coefficient in the saturated basis")
        upper = e1 if int(c1) == 1 else e2
        lower = e2 if int(c1) == 1 else e1
        vec = tuple(int(a) - int(b) for a, b in zip(upper, lower))
        if any(mat_vec(M, list(vec))):
            raise GenerationUncertified("saturated basis left the relation lattice")
        for v in vec:
            if v:
                if v < 0:
                    vec = tuple(-a for a in vec)
                break
        if vec not in seen:
            seen.add(vec)
            vectors.append(vec)
    vectors.sort(key=lambda v: (sum(abs(a) for a in v), v))
    return tuple(vectors)


def _scatter(indices, values, width):
    out = [0] * width
    for pos, e in zip(indices, values):
        out[pos] = e
    return tuple(out)


def _box_element(sig, idx, vec, flavor, twist):
    npairs = len(sig.pairs)
    ncentral = len(sig.central)
    plus = tuple(max(v, 0) for v in vec)
    minus = tuple(max(-v, 0) for v in vec)
    zero_pairs = (0,) * npairs
    zero_central = (0,) * ncentral
    if flavor == "partial_form":
        return WeylElement(
            sig,
            {
                (zero_pairs, _scatter(idx, plus, npairs), zero_central): 1,
                (zero_pairs, _scatter(idx, minus, npairs), zero_central): -1,
            },
        )
    if flavor == "fl_form":
        return WeylElement(
            sig,
            {
                (_scatter(idx, plus, npairs), zero_pairs, zero_central): 1,
                (_scatter(idx, minus, npairs), zero_pairs, zero_central): -1,
            },
        )
    zi = sig.central_index("z")
    if flavor == "rees_form":
        zplus = tuple(sum(plus) if j == zi else 0 for j in range(ncentral))
        zminus = tuple(sum(minus) if j == zi else 0 for j in range(ncentral))
        return WeylElement(
            sig,
            {
                (zero_pairs, _scatter(idx, plus, npairs), zplus): 1,
                (zero_pairs, _scatter(idx, minus, npairs), zminus): -1,
            },
        )
    if flavor == "tilde_form":
        return _tilde_box(sig, idx, vec, twist)
    raise ValueError("unknown box flavor %r" % flavor)


def _tilde_box(sig, idx, vec, twist):
    """Box operator of the twisted localized form.

    Untwisted columns contribute lambda^e (z d)^e; twisted columns
    contribute the product of (lambda z d - nu z) for nu = 1..e, which is
    the same theta product with the constant range shifted by one. The
    second term carries the extra prefactor lambda^vec, so it may hold
    negative base exponents; the operator lives in the ring localized at
    the lambda's.
    """
    npairs = len(sig.pairs)
    ncentral = len(sig.central)
    zi = sig.central_index("z")
    zero_pairs = (0,) * npairs

    def zvec(power):
        return tuple(power if j == zi else 0 for j in range(ncentral))

    def theta_factor(pos, nu):
        gamma = tuple(1 if j == pos else 0 for j in range(npairs))
        return WeylElement(
            sig,
            {
                (gamma, gamma, zvec(1)): 1,
                (zero_pairs, zero_pairs, zvec(1)): -Fraction(nu),
            },
        )

    def plain_factor(pos, e):
        gamma = tuple(e if j == pos else 0 for j in range(npairs))
        return WeylElement(sig, {(gamma, gamma, zvec(e)): 1})

    plus_term = WeylElement.one(sig)
    for col, v in enumerate(vec):
        if v <= 0:
            continue
        pos = idx[col]
        if col in twist:
            for nu in range(1, v + 1):
                plus_term = multiply(plus_term, theta_factor(pos, nu))
        else:
            plus_term = multiply(plus_term, plain_factor(pos, v))
    prefactor = WeylElement(
        sig, {(_scatter(idx, vec, npairs), zero_pairs, zvec(0)): 1}
    )
    minus_term = prefactor
    for col, v in enumerate(vec):
        if v >= 0:
            continue
        pos = idx[col]
        if col in twist:
            for nu in range(1, -v + 1):
                minus_term = multiply(minus_term, theta_factor(pos, nu))
        else:
            minus_term = multiply(minus_term, plain_factor(pos, -v))
    return plus_term - minus_term


def toric_box_generators(M, flavor, names=None, twist=(), sig=None):
    """Certified box operators for the toric ideal of M.

    flavor picks the variable placement: derivatives for partial_form,
    base variables for fl_form, z-weighted derivatives for rees_form and
    the localized theta products for tilde_form (twist lists the column
    indices whose constant range is shifted). When sig is given the
    operators are built inside that larger algebra and names must list
    the pair corresponding to each matrix column.
    """
    if flavor not in BOX_FLAVORS:
        raise ValueError("unknown box flavor %r" % flavor)
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    if nrows and rank(M) != nrows:
        raise NotFullRank("matrix must have full row rank")
    vectors = _toric_vectors(_tuplize(M))
    if sig is None:
        prefix, start, wants_z = _FLAVOR_DEFAULTS[flavor]
        if names is None:
            names = tuple("%s%d" % (prefix, start + i) for i in range(ncols))
        sig = signature(names, central=("z",) if wants_z else ())
    elif names is None:
        raise ValueError("names are required together with an explicit signature")
    names = tuple(names)
    if len(names) != ncols:
        raise ValueError("need one variable name per matrix column")
    idx = [sig.pair_index(nm) for nm in names]
    return [_box_element(sig, idx, v, flavor, tuple(twist)) for v in vectors]


# -- presentation helpers ------------------------------------------------


def _validate_beta(beta, length):
    beta = list(beta)
    if len(beta) != length:
        raise ValueError("parameter vector has wrong length")
    for b in beta:
        if not isinstance(b, int):
            raise ValueError("parameter must be an integer vector")
    return beta


def _check_commuting(eulers):
    for a, b in combinations(eulers, 2):
        if not (multiply(a, b) - multiply(b, a)).is_zero():
            raise RuntimeError("euler-type generators fail to commute")


def _theta(sig, name, zpower=0):
    i = sig.pair_index(name)
    npairs = len(sig.pairs)
    gamma = tuple(1 if j == i else 0 for j in range(npairs))
    zeta = [0] * len(sig.central)
    if zpower:
        zeta[sig.central_index("z")] = zpower
    return WeylElement(sig, {(gamma, gamma, tuple(zeta)): 1})


def _dv(sig, name):
    """The normally ordered product d_name * name."""
    i = sig.pair_index(name)
    npairs = len(sig.pairs)
    gamma = tuple(1 if j == i else 0 for j in range(npairs))
    zero = (0,) * len(sig.central)
    return WeylElement(
        sig, {(gamma, gamma, zero): 1, ((0,) * npairs, (0,) * npairs, zero): 1}
    )


def _homogeneous_first_row(M):
    return bool(M) and all(x == 1 for x in M[0])


def build_gkz(A, beta, names=None) -> SystemPresentation:
    """Hypergeometric system of A at an integer parameter.

    Generators are the certified partial_form boxes followed by the Euler
    operators sum_i a_ki l_i d_li - beta_k, one per row. The Euler block
    commutes pairwise on the nose, which the constructor verifies.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    beta = _validate_beta(beta, nrows)
    if names is None:
        names = tuple("l%d" % i for i in range(ncols))
    sig = signature(tuple(names))
    boxes = toric_box_generators(A, "partial_form", names=names, sig=sig)
    eulers = []
    for k in range(nrows):
        op = WeylElement.zero(sig)
        for i, nm in enumerate(names):
            if A[k][i]:
                op = op + A[k][i] * _theta(sig, nm)
        eulers.append(op - beta[k])
    _check_commuting(eulers)
    ledger = []
    if _homogeneous_first_row(A) and not any(beta):
        ledger.append(("order shift of the hypergeometric module", nrows - 1))
    return SystemPresentation(
        signature=sig,
        generators=boxes + eulers,
        flavor="gkz",
        parameters={"matrix": [row[:] for row in A], "beta": tuple(beta)},
        shift_ledger=ledger,
        box_vectors=list(_toric_vectors(_tuplize(A))),
        n_boxes=len(boxes),
        n_eulers=len(eulers),
    )


def build_fl_gkz(B, beta, names=None, flavor="fl_gkz") -> SystemPresentation:
    """Variable-side hypergeometric system of B at an integer parameter.

    Generators are the certified fl_form boxes followed by the Euler
    operators sum_i b_ki d_wi w_i + beta_k.
    """
    nrows = len(B)
    ncols = len(B[0]) if nrows else 0
    beta = _validate_beta(beta, nrows)
    if names is None:
        names = tuple("w%d" % (i + 1) for i in range(ncols))
    sig = signature(tuple(names))
    boxes = toric_box_generators(B, "fl_form", names=names, sig=sig)
    eulers = []
    for k in range(nrows):
        op = WeylElement.zero(sig)
        for i, nm in enumerate(names):
            if B[k][i]:
                op = op + B[k][i] * _dv(sig, nm)
        eulers.append(op + beta[k])
    _check_commuting(eulers)
    ledger = [("order shift of the torus direct image", ncols - nrows)]
    return SystemPresentation(
        signature=sig,
        generators=boxes + eulers,
        flavor=flavor,
        parameters={"matrix": [row[:] for row in B], "beta": tuple(beta)},
        shift_ledger=ledger,
        box_vectors=list(_toric_vectors(_tuplize(B))),
        n_boxes=len(boxes),
        n_eulers=len(eulers),
    )


def build_graph_embedded(B, bound=20) -> SystemPresentation:
    """Graph-embedded system over B extended by its interior column.

    Appends the collapsed decomposition column c' of the interior vector
    as a new last column paired with the variable t, marks t for the
    V-filtration and builds the fl-side system at parameter zero. The
    appended column is a sum of existing columns, so the semigroup is
    unchanged; presentations record the decomposition that witnesses it.
    """
    nrows = len(B)
    ncols = len(B[0]) if nrows else 0
    try:
        c = gorenstein_vector(B, bound)
        dec = cprime_decomposition(B, c, bound)
    except (NotSaturated, NoDecomposition) as exc:
        raise NotGorenstein(str(exc)) from exc
    cprime = list(dec.cprime)
    if not any(cprime):
        raise NotGorenstein("interior column is zero; nothing to embed")
    Bp = [B[k][:] + [cprime[k]] for k in range(nrows)]
    names = tuple("w%d" % (i + 1) for i in range(ncols)) + ("t",)
    sig = signature(names, marked="t")
    boxes = toric_box_generators(Bp, "fl_form", names=names, sig=sig)
    eulers = []
    for k in range(nrows):
        op = WeylElement.zero(sig)
        for i, nm in enumerate(names):
            if Bp[k][i]:
                op = op + Bp[k][i] * _dv(sig, nm)
        eulers.append(op)
    _check_commuting(eulers)
    ledger = [("order shift of the graph-embedded direct image", ncols + 1 - nrows)]
    return SystemPresentation(
        signature=sig,
        generators=boxes + eulers,
        flavor="graph",
        parameters={
            "matrix": [row[:] for row in B],
            "extended_matrix": Bp,
            "cprime": tuple(cprime),
            "representation": tuple(dec.representation),
            "semigroup_unchanged": True,
        },
        shift_ledger=ledger,
        box_vectors=list(_toric_vectors(_tuplize(Bp))),
        n_boxes=len(boxes),
        n_eulers=len(eulers),
    )


# -- charts and gluing ---------------------------------------------------


def _chart_names(n, u):
    return tuple("w%d_%d" % (i, u) for i in range(n + 1) if i != u)


def build_chart_system(A, u) -> SystemPresentation:
    """Chart system at index u: the fl-side system of the chart matrix.

    A lists the nonzero exponent columns; the zero column is prepended
    internally, so chart indices run from 0 to the column count of A.
    """
    d = len(A)
    n = len(A[0]) if d else 0
    Au = chart_matrix(A, u)
    pres = build_fl_gkz(Au, [0] * d, names=_chart_names(n, u), flavor="chart")
    pres.parameters = {"matrix": [row[:] for row in A], "chart": u}
    pres.shift_ledger = [("order shift on the chart", n - d)]
    return pres


def _chart_indices(sig, u):
    out = []
    for nm in sig.pairs:
        stem, _, tail = nm.rpartition("_")
        if not stem.startswith("w") or tail != str(u):
            raise ValueError("signature was not built by build_chart_system")
        out.append(int(stem[1:]))
    return out


def chart_glue(P: WeylElement, u1, u2) -> WeylElement:
    """Transport P from the chart at u1 to the chart at u2.

    Applies the coordinate change of the two charts to every monomial and
    right-multiplies by the gluing power w_{u1,u2}^(n+1). P may carry
    negative exponents on w_{u2,u1} only, since that is the variable
    inverted on the overlap.
    """
    sig = P.signature
    indices = _chart_indices(sig, u1)
    if u2 == u1 or u2 not in indices:
        raise IndexOutOfRange("chart index %r not available" % u2)
    n = len(indices)
    src = {i: pos for pos, i in enumerate(indices)}
    tnames = tuple("w%d_%d" % (i, u2) for i in sorted(indices + [u1]) if i != u2)
    tsig = signature(tnames)
    tgt = {}
    for pos, nm in enumerate(tnames):
        tgt[int(nm[1:].split("_")[0])] = pos
    npairs = n
    for (gamma, delta, _), _c in P.terms.items():
        for pos, i in enumerate(indices):
            if delta[pos] < 0:
                raise NotLocalized("negative derivative exponent")
            if gamma[pos] < 0 and i != u2:
                raise NotLocalized("only w_{%d,%d} may be inverted" % (u2, u1))

    def d_image(i):
        # d_{w_{i,u1}} goes to w_{u1,u2} d_{w_{i,u2}}; the inverted slot
        # goes to minus w_{u1,u2} times the full theta sum of the chart
        if i != u2:
            gamma = tuple(
                1 if pos == tgt[u1] else 0 for pos in range(npairs)
            )
            delta = tuple(1 if pos == tgt[i] else 0 for pos in range(npairs))
            return WeylElement(tsig, {(gamma, delta, ()): 1})
        out = WeylElement.zero(tsig)
        for j in tgt:
            gamma = tuple(
                (1 if pos == tgt[u1] else 0) + (1 if pos == tgt[j] else 0)
                for pos in range(npairs)
            )
            delta = tuple(1 if pos == tgt[j] else 0 for pos in range(npairs))
            out = out - WeylElement(tsig, {(gamma, delta, ()): 1})
        return out

    result = WeylElement.zero(tsig)
    for (gamma, delta, _), coeff in P.terms.items():
        tg = [0] * npairs
        for pos, i in enumerate(indices):
            g = gamma[pos]
            if not g:
                continue
            if i == u2:
                tg[tgt[u1]] -= g
            else:
                tg[tgt[i]] += g
                tg[tgt[u1]] -= g
        acc = WeylElement(tsig, {(tuple(tg), (0,) * npairs, ()): coeff})
        for pos, i in enumerate(indices):
            for _ in range(delta[pos]):
                acc = multiply(acc, d_image(i))
        result = result + acc
    glue_power = tuple(
        (len(indices) + 1) if pos == tgt[u1] else 0 for pos in range(npairs)
    )
    return multiply(
        result, WeylElement(tsig, {(glue_power, (0,) * npairs, ()): 1})
    )


# -- radon kernel --------------------------------------------------------


def build_radon_kernel(A, u) -> SystemPresentation:
    """Kernel presentation on the chart at u times the dual space.

    Generators, in order: the fl_form boxes of the chart matrix in the w
    variables, the mixing relations d_li - w_i d_lu, then the d+1
    commuting Euler-type operators (the chart Euler rows corrected by the
    column grading, and the full theta sum of the dual variables).
    """
    d = len(A)
    n = len(A[0]) if d else 0
    Au = chart_matrix(A, u)
    wnames = _chart_names(n, u)
    lnames = tuple("l%d" % i for i in range(n + 1))
    sig = signature(wnames + lnames)
    boxes = toric_box_generators(Au, "fl_form", names=wnames, sig=sig)
    widx = [i for i in range(n + 1) if i != u]
    mixers = []
    for pos, i in enumerate(widx):
        mixers.append(
            WeylElement.derivative(sig, "l%d" % i)
            - multiply(
                WeylElement.variable(sig, wnames[pos]),
                WeylElement.derivative(sig, "l%d" % u),
            )
        )
    eulers = []
    for k in range(d):
        op = WeylElement.zero(sig)
        for pos, nm in enumerate(wnames):
            if Au[k][pos]:
                op = op + Au[k][pos] * _dv(sig, nm)
        for i in range(1, n + 1):
            if A[k][i - 1]:
                op = op - A[k][i - 1] * _theta(sig, "l%d" % i)
        eulers.append(op)
    total = WeylElement.zero(sig)
    for i in range(n + 1):
        total = total + _theta(sig, "l%d" % i)
    eulers.append(total)
    _check_commuting(eulers)
    return SystemPresentation(
        signature=sig,
        generators=boxes + mixers + eulers,
        flavor="radon_kernel",
        parameters={"matrix": [row[:] for row in A], "chart": u},
        shift_ledger=[("order shift of the radon kernel", n - d)],
        box_vectors=list(_toric_vectors(_tuplize(Au))),
        n_boxes=len(boxes),
        n_eulers=len(eulers),
    )


def _hat_exchange(P, wnames):
    """Exchange sending each chosen base variable to minus its derivative
    and each chosen derivative to the base variable."""
    Q = fourier_laplace(P, wnames)
    sig = Q.signature
    flip = [sig.pair_index(nm) for nm in wnames]
    out = {}
    for (gamma, delta, zeta), coeff in Q.terms.items():
        sign = (-1) ** sum(gamma[i] + delta[i] for i in flip)
        out[(gamma, delta, zeta)] = coeff * sign
    return WeylElement(sig, out)


def radon_kernel_via_transform(A, u) -> SystemPresentation:
    """Kernel presentation obtained from the stacked chart matrix.

    Builds the plain hypergeometric system of the stacked matrix in the
    kernel algebra and pushes every generator through the exchange that
    swaps the w pairs; the resulting ideal agrees with the direct kernel
    presentation.
    """
    d = len(A)
    n = len(A[0]) if d else 0
    Asu = build_As_u(A, u)
    wnames = _chart_names(n, u)
    lnames = tuple("l%d" % i for i in range(n + 1))
    pres = build_gkz(Asu, [0] * (d + 1), names=wnames + lnames)
    images = [_hat_exchange(g, wnames) for g in pres.generators]
    return SystemPresentation(
        signature=pres.signature,
        generators=images,
        flavor="radon_fl",
        parameters={"matrix": [row[:] for row in A], "chart": u},
        shift_ledger=[("order shift of the radon kernel", n - d)],
        box_vectors=pres.box_vectors,
        n_boxes=pres.n_boxes,
        n_eulers=pres.n_eulers,
    )


# -- stacked matrices ----------------------------------------------------


def build_As(A):
    """Stacked (d+2) x (2n+2) matrix: two unit rows splitting the column
    blocks, with the exponent columns repeated under both blocks."""
    d = len(A)
    n = len(A[0]) if d else 0
    rows = [[1] * (n + 1) + [0] * (n + 1), [0] * (n + 1) + [1] * (n + 1)]
    for k in range(d):
        rows.append([0] + list(A[k]) + [0] + list(A[k]))
    return rows


def build_As_u(A, u):
    """Stacked chart matrix (d+1) x (2n+1): the chart columns with a zero
    top entry followed by the exponent columns with a unit top entry."""
    d = len(A)
    n = len(A[0]) if d else 0
    Au = chart_matrix(A, u)
    ext = [[0] * d] + columns(A)
    rows = [[0] * n + [1] * (n + 1)]
    for k in range(d):
        rows.append(list(Au[k]) + [ext[i][k] for i in range(n + 1)])
    return rows


# -- graded z-level system ----------------------------------------------


def build_rees_gkz(At) -> SystemPresentation:
    """Graded z-level system of a homogenized matrix.

    Generators are the rees_form boxes in z-weighted derivatives and the
    operators sum_i a_ki l_i z d_li, one per row. Setting z to 1 recovers
    the plain hypergeometric generators at parameter zero.
    """
    if not _homogeneous_first_row(At):
        raise ValueError("expects a homogenized matrix (first row all ones)")
    nrows = len(At)
    ncols = len(At[0])
    names = tuple("l%d" % i for i in range(ncols))
    sig = signature(names, central=("z",))
    boxes = toric_box_generators(At, "rees_form", names=names, sig=sig)
    eulers = []
    for k in range(nrows):
        op = WeylElement.zero(sig)
        for i, nm in enumerate(names):
            if At[k][i]:
                op = op + At[k][i] * _theta(sig, nm, zpower=1)
        eulers.append(op)
    _check_commuting(eulers)
    return SystemPresentation(
        signature=sig,
        generators=boxes + eulers,
        flavor="rees",
        parameters={"matrix": [row[:] for row in At]},
        shift_ledger=[("z-power twist of the graded module", nrows - 1)],
        box_vectors=list(_toric_vectors(_tuplize(At))),
        n_boxes=len(boxes),
        n_eulers=len(eulers),
    )


# -- duality -------------------------------------------------------------


def duality_data(At, context=None, bound=20, budget=DEFAULT_BUDGET, certify=True):
    """Interior vector, dual parameter and order shift of the dual module.

    The interior vector comes from the facet pairing computation and
    carries its own saturation certificate. When certify is set, the
    right multiplication by the dual exponent is checked: every generator
    of the ideal at parameter minus the interior vector, multiplied by
    the exponent monomial, reduces to zero against a Groebner basis of
    the ideal at parameter zero. context, when given, is the dimension
    triple (k, l, m) of the bundle situation and adds the weight and the
    shape check of the interior vector.
    """
    if not spans_full_lattice(At):
        raise NotGorenstein("columns do not span the full lattice")
    try:
        ct = gorenstein_vector(At, bound)
    except NotSaturated as exc:
        raise NotGorenstein(str(exc)) from exc
    ncols = len(At[0])
    c0 = ct[0]
    hodge_shift = c0 + (ncols - 1)
    exponent = nonneg_integer_solve(At, ct)
    if exponent is None:
        raise NoExponent("interior vector has no nonnegative preimage")
    weight = None
    if context is not None:
        kdim, ldim, mdim = context
        expected = (ldim + 1,) + (0,) * kdim + (1,) * ldim
        if tuple(ct) != expected:
            raise NotGorenstein(
                "interior vector %r does not match the bundle shape %r"
                % (tuple(ct), expected)
            )
        weight = mdim + kdim + 2 * ldim
    certified = False
    if certify:
        certified = _duality_certificate(At, ct, exponent, budget)
    return DualityData(
        matrix=[row[:] for row in At],
        c_tilde=tuple(ct),
        dual_parameter=tuple(-x for x in ct),
        hodge_shift=hodge_shift,
        exponent=tuple(exponent),
        weight=weight,
        certified=certified,
    )


def _duality_certificate(At, ct, exponent, budget):
    nrows = len(At)
    source = build_gkz(At, [-x for x in ct])
    target = build_gkz(At, [0] * nrows)
    gb = buchberger(target.generators, budget=budget)
    sig = target.signature
    npairs = len(sig.pairs)
    dpow = WeylElement(sig, {((0,) * npairs, tuple(exponent), ()): 1})
    for g in source.generators:
        if not normal_form(multiply(g, dpow), gb.basis).is_zero():
            return False
    return True


def duality_morphism(P: WeylElement, data: DualityData) -> WeylElement:
    """Right multiplication by the dual exponent monomial."""
    if data.exponent is None:
        raise NoExponent("duality data carries no exponent")
    sig = P.signature
    if len(sig.pairs) != len(data.exponent):
        raise ValueError("element does not live in the algebra of the matrix")
    npairs = len(sig.pairs)
    zero_central = (0,) * len(sig.central)
    dpow = WeylElement(
        sig, {((0,) * npairs, tuple(data.exponent), zero_central): 1}
    )
    return multiply(P, dpow)


# -- compatibility certificates ------------------------------------------


def euler_multiplication_certificates(pres: SystemPresentation, budget=DEFAULT_BUDGET):
    """Well-definedness of right multiplication by the Euler generators.

    For every box g with lattice vector v and every Euler generator E the
    graded commutation rule predicts an integer constant c with
    g (E + c) - E g inside the box ideal; the residue is reduced against
    a Groebner basis of the boxes. Returns (all_ok, rows) where each row
    is (box index, euler index, constant, reduced to zero).
    """
    if pres.flavor == "gkz":
        M = pres.parameters["matrix"]
        orient = -1
        zweight = False
    elif pres.flavor in ("fl_gkz", "chart"):
        M = pres.parameters["matrix"] if pres.flavor == "fl_gkz" else None
        if M is None:
            M = chart_matrix(pres.parameters["matrix"], pres.parameters["chart"])
        orient = 1
        zweight = False
    elif pres.flavor == "graph":
        M = pres.parameters["extended_matrix"]
        orient = 1
        zweight = False
    elif pres.flavor == "rees":
        M = pres.parameters["matrix"]
        orient = -1
        zweight = True
    elif pres.flavor == "radon_kernel":
        M = chart_matrix(pres.parameters["matrix"], pres.parameters["chart"])
        orient = 1
        zweight = False
    else:
        raise ValueError("no grading rule for flavor %r" % pres.flavor)
    boxes = pres.boxes
    if not boxes:
        return True, []
    gb = buchberger(boxes, budget=budget)
    sig = pres.signature
    rows = []
    all_ok = True
    for bi, (g, vec) in enumerate(zip(boxes, pres.box_vectors)):
        plus = [max(v, 0) for v in vec]
        graded = mat_vec(M, plus)
        for ei, E in enumerate(pres.eulers):
            const = orient * graded[ei] if ei < len(graded) else 0
            celt = WeylElement.constant(sig, const)
            if zweight:
                zi = sig.central_index("z")
                zeta = tuple(
                    1 if j == zi else 0 for j in range(len(sig.central))
                )
                npairs = len(sig.pairs)
                celt = WeylElement(
                    sig, {((0,) * npairs, (0,) * npairs, zeta): Fraction(const)}
                )
            residue = multiply(g, E + celt) - multiply(E, g)
            ok = normal_form(residue, gb.basis).is_zero()
            rows.append((bi, ei, const, ok))
            all_ok = all_ok and ok
    return all_ok, rows
