"""Weyl algebra elements in normal order with exact rational coefficients.

An algebra signature fixes an ordered list of variable/derivative pairs,
an optional list of central (commuting) variables, and optionally one
marked pair used by the V-filtration. Elements are stored as dicts from
exponent keys (gamma, delta, zeta) to coefficients, where gamma holds the
base-variable exponents, delta the derivative exponents and zeta the
central exponents. Normal order means all base and central variables to
the left of all derivatives.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional


class SignatureMismatch(Exception):
    """Operands live in different algebras."""


class ZeroElement(Exception):
    """Degree or leading data of the zero element requested."""


class UnsupportedLocalization(Exception):
    """Localized transform requested on an unsupported variable set."""


class AlgebraSignature(NamedTuple):
    pairs: tuple
    central: tuple = ()
    marked: Optional[str] = None

    def deriv_name(self, name):
        return "d_" + name

    def pair_index(self, name):
        return self.pairs.index(name)

    def central_index(self, name):
        return self.central.index(name)


def signature(pairs, central=(), marked=None) -> AlgebraSignature:
    pairs = tuple(pairs)
    central = tuple(central)
    names = list(pairs) + list(central) + ["d_" + p for p in pairs]
    if len(set(names)) != len(names):
        raise ValueError("colliding variable names in signature")
    if marked is not None and marked not in pairs:
        raise ValueError("marked variable %r is not a pair" % marked)
    return AlgebraSignature(pairs, central, marked)


def _falling(b, j):
    out = 1
    for t in range(j):
        out *= b - t
    return out


class WeylElement:
    __slots__ = ("signature", "terms")

    def __init__(self, sig, terms=None):
        self.signature = sig
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    self.terms[key] = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(sig):
        return WeylElement(sig)

    @staticmethod
    def constant(sig, c):
        npairs = len(sig.pairs)
        key = ((0,) * npairs, (0,) * npairs, (0,) * len(sig.central))
        return WeylElement(sig, {key: Fraction(c)})

    @staticmethod
    def one(sig):
        return WeylElement.constant(sig, 1)

    @staticmethod
    def monomial(sig, gamma, delta, zeta=None, coeff=1):
        gamma = tuple(gamma)
        delta = tuple(delta)
        zeta = tuple(zeta) if zeta is not None else (0,) * len(sig.central)
        if len(gamma) != len(sig.pairs) or len(delta) != len(sig.pairs):
            raise ValueError("exponent tuple length mismatch")
        if len(zeta) != len(sig.central):
            raise ValueError("central exponent length mismatch")
        return WeylElement(sig, {(gamma, delta, zeta): Fraction(coeff)})

    @staticmethod
    def variable(sig, name):
        npairs = len(sig.pairs)
        if name in sig.pairs:
            i = sig.pair_index(name)
            gamma = tuple(1 if j == i else 0 for j in range(npairs))
            return WeylElement.monomial(sig, gamma, (0,) * npairs)
        if name in sig.central:
            i = sig.central_index(name)
            zeta = tuple(1 if j == i else 0 for j in range(len(sig.central)))
            return WeylElement.monomial(sig, (0,) * npairs, (0,) * npairs, zeta)
        raise ValueError("unknown variable %r" % name)

    @staticmethod
    def derivative(sig, name):
        if name not in sig.pairs:
            raise ValueError("no derivative for %r" % name)
        npairs = len(sig.pairs)
        i = sig.pair_index(name)
        delta = tuple(1 if j == i else 0 for j in range(npairs))
        return WeylElement.monomial(sig, (0,) * npairs, delta)

    # -- basic structure ----------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.constant(self.signature, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    def __hash__(self):
        return hash((self.signature, frozenset(self.terms.items())))

    def copy(self):
        return WeylElement(self.signature, dict(self.terms))

    def map_coeff(self, f):
        return WeylElement(self.signature, {k: f(c) for k, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.constant(self.signature, other)
        if self.signature != other.signature:
            raise SignatureMismatch()
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return WeylElement(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coeff(lambda c: -c)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.constant(self.signature, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.map_coeff(lambda c: c * Fraction(other))
        if not isinstance(other, WeylElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.map_coeff(lambda c: Fraction(other) * c)
        return NotImplemented

    def __repr__(self):
        return print_element(self)


def multiply(P: WeylElement, Q: WeylElement) -> WeylElement:
    """Normal-ordered product. Derivatives of the left factor are commuted
    through the base variables of the right factor one pair at a time."""
    if P.signature != Q.signature:
        raise SignatureMismatch()
    sig = P.signature
    npairs = len(sig.pairs)
    out = {}
    for (g1, d1, z1), c1 in P.terms.items():
        for (g2, d2, z2), c2 in Q.terms.items():
            zeta = tuple(a + b for a, b in zip(z1, z2))
            base = c1 * c2
            # spread of contraction exponents per pair
            stack = [((), base)]
            for i in range(npairs):
                a = d1[i]
                b = g2[i]
                jmax = min(a, b) if b >= 0 else a
                new_stack = []
                for js, coeff in stack:
                    for j in range(jmax + 1):
                        f = comb(a, j) * _falling(b, j)
                        if f == 0:
                            continue
                        new_stack.append((js + (j,), coeff * f))
                stack = new_stack
            for js, coeff in stack:
                gamma = tuple(g1[i] + g2[i] - js[i] for i in range(npairs))
                delta = tuple(d1[i] + d2[i] - js[i] for i in range(npairs))
                key = (gamma, delta, zeta)
                acc = out.get(key, Fraction(0)) + coeff
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return WeylElement(sig, out)


# -- filtrations -------------------------------------------------------


class FiltrationSpec(NamedTuple):
    kind: str  # "order" | "v" | "weight"
    weights: Optional[dict] = None
    var: Optional[str] = None


def order_degree(P: WeylElement) -> int:
    """Degree in the filtration by total derivative order."""
    if P.is_zero():
        raise ZeroElement()
    return max(sum(d) for (_, d, _) in P.terms)


def _v_order(sig, key, idx):
    gamma, delta, _ = key
    return gamma[idx] - delta[idx]


def v_along(P: WeylElement, var=None):
    """(degree, is_pure) along the marked pair: the V-order of a monomial is
    its marked-variable exponent minus its marked-derivative exponent, the
    degree of an element is the minimum over its monomials (the filtration
    is descending), and the element is pure when all monomials agree."""
    if P.is_zero():
        raise ZeroElement()
    sig = P.signature
    name = var if var is not None else sig.marked
    if name is None:
        raise ValueError("no marked variable for the V-filtration")
    idx = sig.pair_index(name)
    orders = {_v_order(sig, k, idx) for k in P.terms}
    return min(orders), len(orders) == 1


def weight_degree(P: WeylElement, weights) -> int:
    """Maximal total weight of a monomial; weights maps variable and
    derivative names (and central names) to integers, default 0."""
    if P.is_zero():
        raise ZeroElement()
    return max(_monomial_weight(P.signature, k, weights) for k in P.terms)


def _monomial_weight(sig, key, weights):
    gamma, delta, zeta = key
    total = 0
    for i, name in enumerate(sig.pairs):
        total += gamma[i] * weights.get(name, 0)
        total += delta[i] * weights.get("d_" + name, 0)
    for i, name in enumerate(sig.central):
        total += zeta[i] * weights.get(name, 0)
    return total


def filtration_degree(P: WeylElement, spec: FiltrationSpec):
    if spec.kind == "order":
        return order_degree(P)
    if spec.kind == "v":
        return v_along(P, spec.var)[0]
    if spec.kind == "weight":
        return weight_degree(P, spec.weights or {})
    raise ValueError("unknown filtration kind %r" % spec.kind)


def initial_form(P: WeylElement, spec: FiltrationSpec) -> WeylElement:
    """The part of P living in the top graded piece of the filtration
    (the bottom piece for the descending V-filtration)."""
    if P.is_zero():
        raise ZeroElement()
    sig = P.signature
    if spec.kind == "order":
        top = order_degree(P)
        keep = {k: c for k, c in P.terms.items() if sum(k[1]) == top}
    elif spec.kind == "v":
        name = spec.var if spec.var is not None else sig.marked
        idx = sig.pair_index(name)
        low = min(_v_order(sig, k, idx) for k in P.terms)
        keep = {k: c for k, c in P.terms.items() if _v_order(sig, k, idx) == low}
    elif spec.kind == "weight":
        w = spec.weights or {}
        top = weight_degree(P, w)
        keep = {k: c for k, c in P.terms.items() if _monomial_weight(sig, k, w) == top}
    else:
        raise ValueError("unknown filtration kind %r" % spec.kind)
    return WeylElement(sig, keep)


# -- term order --------------------------------------------------------


def term_key(key):
    """Total order on exponent keys: derivative total degree first, then
    reversed derivative tuple, then reversed base-and-central tuple. Linear
    in the exponents, hence compatible with monomial multiplication."""
    gamma, delta, zeta = key
    return (sum(delta), tuple(reversed(delta)), tuple(reversed(gamma + zeta)))


def leading_monomial(P: WeylElement):
    if P.is_zero():
        raise ZeroElement()
    return max(P.terms, key=term_key)


def leading_term(P: WeylElement):
    k = leading_monomial(P)
    return k, P.terms[k]


def monic(P: WeylElement) -> WeylElement:
    _, c = leading_term(P)
    return P.map_coeff(lambda a: a / c)


# -- transforms --------------------------------------------------------


def fourier_laplace(P: WeylElement, variables, localized_z=None) -> WeylElement:
    """Exchange base variables and derivatives on the chosen pairs.

    Plain mode substitutes x -> d_x and d_x -> -x pairwise and renormal
    orders; applying it twice is the sign involution x -> -x on the chosen
    pairs. Localized mode accepts exactly one pair, replaces it by a new
    pair z with x -> z^2 d_z and d_x -> z^(-1), and clears the negative
    z powers by the minimal left multiplication by a z power.
    """
    sig = P.signature
    variables = tuple(variables)
    for v in variables:
        if v not in sig.pairs:
            raise SignatureMismatch("pair %r not in signature" % v)
    if localized_z is not None:
        if len(variables) != 1:
            raise UnsupportedLocalization("localized mode needs exactly one pair")
        return _fourier_localized(P, variables[0], localized_z)
    flip = [sig.pair_index(v) for v in variables]
    out = WeylElement.zero(sig)
    npairs = len(sig.pairs)
    for (gamma, delta, zeta), coeff in P.terms.items():
        left = WeylElement.monomial(
            sig,
            tuple(0 if i in flip else gamma[i] for i in range(npairs)),
            tuple(gamma[i] if i in flip else 0 for i in range(npairs)),
            zeta,
            coeff,
        )
        sign = (-1) ** sum(delta[i] for i in flip)
        right = WeylElement.monomial(
            sig,
            tuple(delta[i] if i in flip else 0 for i in range(npairs)),
            tuple(0 if i in flip else delta[i] for i in range(npairs)),
            None,
            sign,
        )
        out = out + multiply(left, right)
    return out


def _fourier_localized(P, var, zname):
    sig = P.signature
    idx = sig.pair_index(var)
    new_pairs = tuple(zname if i == idx else p for i, p in enumerate(sig.pairs))
    marked = sig.marked if sig.marked != var else None
    new_sig = signature(new_pairs, sig.central, marked)
    npairs = len(sig.pairs)
    out = WeylElement.zero(new_sig)
    z2dz = WeylElement.monomial(
        new_sig,
        tuple(2 if i == idx else 0 for i in range(npairs)),
        tuple(1 if i == idx else 0 for i in range(npairs)),
    )
    for (gamma, delta, zeta), coeff in P.terms.items():
        a, b = gamma[idx], delta[idx]
        img = WeylElement.constant(new_sig, coeff)
        for _ in range(a):
            img = multiply(img, z2dz)
        if b:
            zneg = WeylElement.monomial(
                new_sig,
                tuple(-b if i == idx else 0 for i in range(npairs)),
                (0,) * npairs,
            )
            img = multiply(img, zneg)
        rest = WeylElement.monomial(
            new_sig,
            tuple(0 if i == idx else gamma[i] for i in range(npairs)),
            tuple(0 if i == idx else delta[i] for i in range(npairs)),
            zeta,
        )
        out = out + multiply(img, rest)
    shortfall = 0
    for (gamma, _, _) in out.terms:
        shortfall = min(shortfall, gamma[idx])
    if shortfall < 0:
        out = z_shift(out, zname, -shortfall)
    return out


def z_shift(P: WeylElement, zname, k) -> WeylElement:
    """Left multiplication by z^k; k may be negative when every monomial
    carries enough z."""
    sig = P.signature
    idx = sig.pair_index(zname)
    out = {}
    for (gamma, delta, zeta), coeff in P.terms.items():
        g = list(gamma)
        g[idx] += k
        out[(tuple(g), delta, zeta)] = coeff
    return WeylElement(sig, out)


def z_strip(P: WeylElement, zname) -> WeylElement:
    """Divide on the left by the largest common z power."""
    if P.is_zero():
        return P
    sig = P.signature
    idx = sig.pair_index(zname)
    low = min(gamma[idx] for (gamma, _, _) in P.terms)
    return z_shift(P, zname, -low) if low else P


def rees_homogenize(P: WeylElement, zname="z") -> WeylElement:
    """Replace every derivative d by z d for a fresh central z. Setting
    z = 1 recovers the element."""
    sig = P.signature
    new_sig = signature(sig.pairs, sig.central + (zname,), sig.marked)
    out = {}
    for (gamma, delta, zeta), coeff in P.terms.items():
        out[(gamma, delta, zeta + (sum(delta),))] = coeff
    return WeylElement(new_sig, out)


def rees_dehomogenize(P: WeylElement, zname="z") -> WeylElement:
    """Set the central z to 1 and drop it from the signature."""
    sig = P.signature
    if zname not in sig.central:
        raise ValueError("%r is not central here" % zname)
    zi = sig.central_index(zname)
    new_central = tuple(c for i, c in enumerate(sig.central) if i != zi)
    new_sig = signature(sig.pairs, new_central, sig.marked)
    out = {}
    for (gamma, delta, zeta), coeff in P.terms.items():
        nz = tuple(e for i, e in enumerate(zeta) if i != zi)
        key = (gamma, delta, nz)
        acc = out.get(key, Fraction(0)) + coeff
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return WeylElement(new_sig, out)


# -- parsing and printing ----------------------------------------------


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^/()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError("bad character %r in operator literal" % ch)
    return tokens


def parse_element(sig, text) -> WeylElement:
    """Operator literal like '3*w1^2*d_w1 - d_w2 + 1/2'. Factors multiply
    in written order, which matters for noncommuting pairs."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of operator literal")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor():
        tok = take()
        if isinstance(tok, int):
            num = tok
            if peek() == "/":
                take()
                den = take()
                if not isinstance(den, int):
                    raise ValueError("bad denominator")
                return WeylElement.constant(sig, Fraction(num, den))
            return WeylElement.constant(sig, num)
        if not isinstance(tok, str) or tok in "+-*^/()":
            raise ValueError("unexpected token %r" % tok)
        if tok.startswith("d_") and tok[2:] in sig.pairs:
            base = WeylElement.derivative(sig, tok[2:])
        else:
            base = WeylElement.variable(sig, tok)
        if peek() == "^":
            take()
            e = take()
            if not isinstance(e, int):
                raise ValueError("bad exponent")
            power = WeylElement.one(sig)
            for _ in range(e):
                power = multiply(power, base)
            return power
        return base

    def parse_term():
        acc = parse_factor()
        while peek() == "*":
            take()
            acc = multiply(acc, parse_factor())
        return acc

    if not tokens:
        raise ValueError("empty operator literal")
    negate = False
    if peek() == "-":
        take()
        negate = True
    elif peek() == "+":
        take()
    total = parse_term()
    if negate:
        total = -total
    while peek() in ("+", "-"):
        op = take()
        t = parse_term()
        total = total - t if op == "-" else total + t
    if pos != len(tokens):
        raise ValueError("trailing tokens in operator literal")
    return total


def _format_monomial(sig, key):
    gamma, delta, zeta = key
    parts = []
    for i, name in enumerate(sig.pairs):
        if gamma[i] == 1:
            parts.append(name)
        elif gamma[i]:
            parts.append("%s^%d" % (name, gamma[i]))
    for i, name in enumerate(sig.central):
        if zeta[i] == 1:
            parts.append(name)
        elif zeta[i]:
            parts.append("%s^%d" % (name, zeta[i]))
    for i, name in enumerate(sig.pairs):
        if delta[i] == 1:
            parts.append("d_" + name)
        elif delta[i]:
            parts.append("d_%s^%d" % (name, delta[i]))
    return "*".join(parts)


def print_element(P: WeylElement) -> str:
    """Deterministic rendering, terms in descending term order."""
    if P.is_zero():
        return "0"
    sig = P.signature
    pieces = []
    for key in sorted(P.terms, key=term_key, reverse=True):
        coeff = P.terms[key]
        mono = _format_monomial(sig, key)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s*%s" % (mag, mono)
        if not pieces:
            pieces.append(body if coeff > 0 else "-" + body)
        else:
            pieces.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(pieces)
