from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz_hodge.weyl import (
    FiltrationSpec,
    SignatureMismatch,
    UnsupportedLocalization,
    WeylElement,
    ZeroElement,
    filtration_degree,
    fourier_laplace,
    initial_form,
    leading_monomial,
    leading_term,
    monic,
    multiply,
    order_degree,
    parse_element,
    print_element,
    rees_dehomogenize,
    rees_homogenize,
    signature,
    term_key,
    v_along,
    weight_degree,
    z_strip,
)

SIG1 = signature(("w",), marked="w")
SIG2 = signature(("w1", "w2"))
SIGZ = signature(("w",), central=("z",))


def el(sig, text):
    return parse_element(sig, text)


def test_canonical_commutator():
    w = WeylElement.variable(SIG1, "w")
    d = WeylElement.derivative(SIG1, "w")
    assert multiply(d, w) - multiply(w, d) == WeylElement.one(SIG1)


def test_higher_leibniz():
    # d^2 w^2 = w^2 d^2 + 4 w d + 2
    assert el(SIG1, "d_w^2*w^2") == el(SIG1, "w^2*d_w^2 + 4*w*d_w + 2")


def test_mixed_pairs_commute():
    assert el(SIG2, "d_w1*w2") == el(SIG2, "w2*d_w1")
    assert el(SIG2, "d_w1*w1*w2") == el(SIG2, "w1*w2*d_w1 + w2")


def test_central_commutes():
    assert el(SIGZ, "d_w*z*w") == el(SIGZ, "z*w*d_w + z")


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        multiply(WeylElement.one(SIG1), WeylElement.one(SIG2))


def test_order_degree():
    assert order_degree(el(SIG1, "w^5*d_w^2 + d_w")) == 2
    assert order_degree(el(SIG1, "w")) == 0
    with pytest.raises(ZeroElement):
        order_degree(WeylElement.zero(SIG1))


def test_v_along_pure():
    deg, pure = v_along(el(SIG1, "w^2*d_w"))
    assert (deg, pure) == (1, True)
    deg, pure = v_along(el(SIG1, "w^2*d_w - 1"))
    assert (deg, pure) == (0, False)
    deg, pure = v_along(el(SIG1, "d_w"))
    assert (deg, pure) == (-1, True)


def test_v_along_products_add():
    p = el(SIG1, "w^2*d_w")
    q = el(SIG1, "w*d_w^2")
    dp, _ = v_along(p)
    dq, _ = v_along(q)
    dpq, pure = v_along(multiply(p, q))
    assert pure and dpq == dp + dq


def test_weight_degree():
    wts = {"w": 1, "d_w": -1}
    assert weight_degree(el(SIG1, "w^3*d_w"), wts) == 2
    assert filtration_degree(el(SIG1, "w^3*d_w"), FiltrationSpec("weight", wts)) == 2


def test_initial_form_order():
    P = el(SIG1, "w*d_w^2 + d_w + w^7")
    assert initial_form(P, FiltrationSpec("order")) == el(SIG1, "w*d_w^2")


def test_initial_form_v():
    P = el(SIG1, "w^2*d_w - 1")
    assert initial_form(P, FiltrationSpec("v")) == el(SIG1, "-1")


def test_leading_term_order():
    P = el(SIG2, "w1*d_w2 + w2^4*d_w1")
    # both have |delta| = 1; reversed delta favors d_w2... reversed of
    # (0,1) is (1,0), reversed of (1,0) is (0,1); (1,0) > (0,1)
    assert leading_monomial(P) == ((1, 0), (0, 1), ())
    key, coeff = leading_term(P)
    assert coeff == 1


def test_monic():
    P = el(SIG1, "2*w*d_w + 4")
    assert monic(P) == el(SIG1, "w*d_w + 2")


def test_fourier_plain():
    P = el(SIG1, "w")
    assert fourier_laplace(P, ["w"]) == el(SIG1, "d_w")
    assert fourier_laplace(el(SIG1, "d_w"), ["w"]) == el(SIG1, "-w")
    # Euler operator picks up the commutator: FL(w d_w) = d_w (-w) = -w d_w - 1
    assert fourier_laplace(el(SIG1, "w*d_w"), ["w"]) == el(SIG1, "-w*d_w - 1")


def test_fourier_involution():
    P = el(SIG2, "3*w1^2*d_w2 + w2*d_w1 - 5")
    twice = fourier_laplace(fourier_laplace(P, ["w1", "w2"]), ["w1", "w2"])
    flipped = WeylElement(
        SIG2,
        {
            (g, d, zt): c * (-1) ** (g[0] + d[0] + g[1] + d[1])
            for (g, d, zt), c in P.terms.items()
        },
    )
    assert twice == flipped


def test_fourier_partial():
    P = el(SIG2, "w1*w2")
    assert fourier_laplace(P, ["w1"]) == el(SIG2, "w2*d_w1")


def test_fourier_localized_euler():
    sig = signature(("l0", "l1"))
    E = el(sig, "l0*d_l0 + l1*d_l1")
    img = fourier_laplace(E, ["l0"], localized_z="z")
    zsig = img.signature
    assert zsig.pairs == ("z", "l1")
    assert img == parse_element(zsig, "z*d_z + l1*d_l1 - 1")


def test_fourier_localized_box():
    # box for the single relation (-1, 2, -1): d0 d2 - d1^2 maps, after
    # clearing one z, to d_l2 - z*d_l1^2 up to ordering of the pair slots
    sig = signature(("l0", "l1", "l2"))
    box = el(sig, "d_l0*d_l2 - d_l1^2")
    img = fourier_laplace(box, ["l0"], localized_z="z")
    zsig = img.signature
    assert img == parse_element(zsig, "d_l2 - z*d_l1^2")


def test_fourier_localized_rejects_many():
    with pytest.raises(UnsupportedLocalization):
        fourier_laplace(el(SIG2, "w1"), ["w1", "w2"], localized_z="z")


def test_rees_roundtrip():
    P = el(SIG1, "w^2*d_w^2 + 3*d_w + w")
    R = rees_homogenize(P)
    assert "z" in R.signature.central
    assert rees_dehomogenize(R) == P


def test_rees_grades_by_order():
    P = el(SIG1, "d_w^2 + d_w")
    R = rees_homogenize(P)
    zs = {zeta[0] for (_, _, zeta) in R.terms}
    assert zs == {1, 2}


def test_z_strip():
    sig = signature(("z", "l1"))
    P = el(sig, "z^2*d_z + z*l1*d_l1")
    S = z_strip(P, "z")
    assert S == el(sig, "z*d_z + l1*d_l1")
    # no common factor: unchanged
    assert z_strip(S, "z") == S


def test_parse_print_roundtrip_manual():
    P = el(SIG2, "3*w1^2*d_w1 - d_w2 + 1/2")
    assert parse_element(SIG2, print_element(P)) == P
    assert print_element(WeylElement.zero(SIG1)) == "0"


def test_parse_order_matters():
    assert el(SIG1, "d_w*w") == el(SIG1, "w*d_w + 1")
    assert el(SIG1, "d_w*w") != el(SIG1, "w*d_w")


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_element(SIG1, "q + 1")
    with pytest.raises(ValueError):
        parse_element(SIG1, "w +")
    with pytest.raises(ValueError):
        parse_element(SIG1, "")


def _random_element(sig, rng_keys):
    terms = {}
    for gamma, delta, coeff in rng_keys:
        terms[(gamma, delta, ())] = Fraction(coeff)
    return WeylElement(sig, terms)


keys2 = st.lists(
    st.tuples(
        st.tuples(st.integers(0, 2), st.integers(0, 2)),
        st.tuples(st.integers(0, 2), st.integers(0, 2)),
        st.integers(-3, 3),
    ),
    min_size=0,
    max_size=3,
)


@given(keys2, keys2, keys2)
@settings(max_examples=60, deadline=None)
def test_multiply_associative(k1, k2, k3):
    P = _random_element(SIG2, k1)
    Q = _random_element(SIG2, k2)
    R = _random_element(SIG2, k3)
    assert multiply(multiply(P, Q), R) == multiply(P, multiply(Q, R))


@given(keys2, keys2, keys2)
@settings(max_examples=60, deadline=None)
def test_multiply_distributive(k1, k2, k3):
    P = _random_element(SIG2, k1)
    Q = _random_element(SIG2, k2)
    R = _random_element(SIG2, k3)
    assert multiply(P, Q + R) == multiply(P, Q) + multiply(P, R)


@given(keys2)
@settings(max_examples=60, deadline=None)
def test_print_parse_roundtrip(k1):
    P = _random_element(SIG2, k1)
    assert parse_element(SIG2, print_element(P)) == P


@given(keys2, keys2)
@settings(max_examples=60, deadline=None)
def test_fl_involution_property(k1, k2):
    P = _random_element(SIG2, k1) + _random_element(SIG2, k2)
    twice = fourier_laplace(fourier_laplace(P, ["w1"]), ["w1"])
    flipped = WeylElement(
        SIG2,
        {(g, d, zt): c * (-1) ** (g[0] + d[0]) for (g, d, zt), c in P.terms.items()},
    )
    assert twice == flipped


@given(keys2, keys2)
@settings(max_examples=40, deadline=None)
def test_term_key_multiplicative(k1, k2):
    P = _random_element(SIG2, k1)
    Q = _random_element(SIG2, k2)
    if P.is_zero() or Q.is_zero():
        return
    R = multiply(P, Q)
    if R.is_zero():
        return
    pm = leading_monomial(P)
    qm = leading_monomial(Q)
    expected = (
        tuple(a + b for a, b in zip(pm[0], qm[0])),
        tuple(a + b for a, b in zip(pm[1], qm[1])),
        (),
    )
    assert leading_monomial(R) == expected
