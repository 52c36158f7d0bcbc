"""Left Groebner bases in the Weyl algebra for the derivative-graded order.

The term order compares (total derivative degree, reversed derivative
tuple, reversed base-and-central tuple); it is additive on exponents, so
leading monomials of products are sums of leading monomials and the usual
Buchberger loop goes through. No pair-skipping criteria are used; at the
scales handled here the plain loop is fast enough and easier to trust.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .weyl import (
    SignatureMismatch,
    WeylElement,
    ZeroElement,
    leading_monomial,
    leading_term,
    monic,
    multiply,
    term_key,
    v_along,
)


class ZeroInput(Exception):
    """S-pair of a zero element requested."""


class ResourceLimit(Exception):
    """Buchberger loop exceeded its reduction budget."""


DEFAULT_BUDGET = 4000


def _divides(small, big):
    (g1, d1, z1), (g2, d2, z2) = small, big
    return (
        all(a <= b for a, b in zip(g1, g2))
        and all(a <= b for a, b in zip(d1, d2))
        and all(a <= b for a, b in zip(z1, z2))
    )


def _lcm_key(k1, k2):
    (g1, d1, z1), (g2, d2, z2) = k1, k2
    return (
        tuple(max(a, b) for a, b in zip(g1, g2)),
        tuple(max(a, b) for a, b in zip(d1, d2)),
        tuple(max(a, b) for a, b in zip(z1, z2)),
    )


def _key_quotient(big, small):
    (g1, d1, z1), (g2, d2, z2) = big, small
    return (
        tuple(a - b for a, b in zip(g1, g2)),
        tuple(a - b for a, b in zip(d1, d2)),
        tuple(a - b for a, b in zip(z1, z2)),
    )


def s_pair(P: WeylElement, Q: WeylElement) -> WeylElement:
    """m1 P - (p/q) m2 Q where m1, m2 lift both leading monomials to their
    componentwise lcm; the leading terms cancel exactly."""
    if P.is_zero() or Q.is_zero():
        raise ZeroInput()
    if P.signature != Q.signature:
        raise SignatureMismatch()
    sig = P.signature
    kp, p = leading_term(P)
    kq, q = leading_term(Q)
    lcm = _lcm_key(kp, kq)
    m1 = _key_quotient(lcm, kp)
    m2 = _key_quotient(lcm, kq)
    left = WeylElement.monomial(sig, m1[0], m1[1], m1[2])
    right = WeylElement.monomial(sig, m2[0], m2[1], m2[2], Fraction(p, 1) / q)
    return multiply(left, P) - multiply(right, Q)


def normal_form(P: WeylElement, basis, track=False):
    """Fully reduce P: while any monomial is divisible by some leading
    monomial of the basis, cancel the largest such monomial. Returns the
    remainder, or (remainder, quotients) with P = sum q_i g_i + remainder."""
    basis = list(basis)
    sig = P.signature
    lms = []
    for g in basis:
        if g.is_zero():
            raise ZeroInput()
        if g.signature != sig:
            raise SignatureMismatch()
        lms.append(leading_term(g))
    quotients = [WeylElement.zero(sig) for _ in basis]
    current = P.copy()
    while True:
        target = None
        for key in sorted(current.terms, key=term_key, reverse=True):
            for i, (lk, lc) in enumerate(lms):
                if _divides(lk, key):
                    target = (key, i, lk, lc)
                    break
            if target:
                break
        if target is None:
            break
        key, i, lk, lc = target
        shift = _key_quotient(key, lk)
        coeff = current.terms[key] / lc
        mult = WeylElement.monomial(sig, shift[0], shift[1], shift[2], coeff)
        current = current - multiply(mult, basis[i])
        if track:
            quotients[i] = quotients[i] + mult
        # assert key not in current.terms
    if track:
        return current, quotients
    return current


class GroebnerResult(NamedTuple):
    basis: list
    pure: bool
    reductions: int


def _select(pairs, basis):
    """Normal strategy: smallest lcm in the term order, ties by index pair."""
    def rank(pair):
        i, j = pair
        lcm = _lcm_key(leading_monomial(basis[i]), leading_monomial(basis[j]))
        return (term_key(lcm), i, j)

    best = min(pairs, key=rank)
    pairs.remove(best)
    return best


def _update(basis, pairs, f):
    basis.append(f)
    j = len(basis) - 1
    for i in range(j):
        pairs.append((i, j))


def _minimalize(basis):
    kept = []
    for g in sorted(basis, key=lambda g: term_key(leading_monomial(g))):
        lm = leading_monomial(g)
        if not any(_divides(leading_monomial(h), lm) for h in kept):
            kept.append(g)
    return kept


def _interreduce(basis):
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        r = normal_form(g, others) if others else g
        if not r.is_zero():
            out.append(monic(r))
    return out


def buchberger(generators, budget=DEFAULT_BUDGET) -> GroebnerResult:
    """Left Groebner basis, minimalized and interreduced, with a flag
    marking whether every basis element is pure for the V-filtration of
    the marked pair (purity of the inputs propagates through S-pairs and
    normal forms, so the flag stays True on pure input)."""
    basis = []
    pairs = []
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return GroebnerResult([], True, 0)
    for g in gens:
        _update(basis, pairs, monic(g))
    reductions = 0
    while pairs:
        if reductions >= budget:
            raise ResourceLimit("budget of %d reductions exhausted" % budget)
        i, j = _select(pairs, basis)
        sp = s_pair(basis[i], basis[j])
        reductions += 1
        if sp.is_zero():
            continue
        r = normal_form(sp, basis)
        if not r.is_zero():
            _update(basis, pairs, monic(r))
    basis = _interreduce(_minimalize(basis))
    basis.sort(key=lambda g: term_key(leading_monomial(g)))
    pure = _all_pure(basis)
    return GroebnerResult(basis, pure, reductions)


def _all_pure(basis):
    sig = basis[0].signature if basis else None
    if sig is None or sig.marked is None:
        return False
    for g in basis:
        _, ok = v_along(g)
        if not ok:
            return False
    return True


def ideal_membership(P: WeylElement, generators, budget=DEFAULT_BUDGET) -> bool:
    """Whether P lies in the left ideal spanned by the generators."""
    if P.is_zero():
        return True
    gb = buchberger(generators, budget=budget)
    if not gb.basis:
        return False
    return normal_form(P, gb.basis).is_zero()
