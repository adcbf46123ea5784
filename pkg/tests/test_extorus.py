from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gencluster.errors import DimensionError, IntegralityError, InversionError
from gencluster.extorus import QSeries, SkewForm, TorusElem, series_inverse, torus_mul, yhat_form, yhat_mul
from gencluster.qcoeff import QCoeff

L2 = SkewForm([[0, 1], [-1, 0]])
E1, E2 = (1, 0), (0, 1)


def mono(form, a, c=1):
    return TorusElem.monomial(form, a, c)


def test_basis_products():
    assert mono(L2, E1) * mono(L2, E2) == mono(L2, (1, 1), QCoeff.q_half(1))
    assert mono(L2, E2) * mono(L2, E1) == mono(L2, (1, 1), QCoeff.q_half(-1))


def test_square_of_sum():
    s = mono(L2, E1) + mono(L2, E2)
    want = mono(L2, (2, 0)) + mono(L2, (1, 1), QCoeff.parse("q^(1/2) + q^(-1/2)")) + mono(L2, (0, 2))
    assert torus_mul(s, s) == want


def test_form_mismatch():
    other = SkewForm([[0, 2], [-2, 0]])
    with pytest.raises(DimensionError):
        torus_mul(mono(L2, E1), mono(other, E1))


def test_non_skew_form_rejected():
    with pytest.raises(Exception):
        SkewForm([[0, 1], [1, 0]])


def test_yhat_products():
    B = [[0, 1], [-1, 0]]
    y1, y2 = mono(L2, E1), mono(L2, E2)
    assert yhat_mul(y1, y2, (1, 1), B) == mono(L2, (1, 1), QCoeff.q_half(1))
    assert yhat_mul(y2, y1, (1, 1), B) == mono(L2, (1, 1), QCoeff.q_half(-1))
    # Y1 Y2 = q Y2 Y1 with D = I
    assert yhat_mul(y1, y2, (1, 1), B) == yhat_mul(y2, y1, (1, 1), B).scale(QCoeff.q_half(2))
    beta = mono(L2, (2, -1))
    assert yhat_mul(beta, beta, (1, 1), B) == mono(L2, (4, -2))


def test_yhat_integrality():
    with pytest.raises(IntegralityError):
        yhat_form((1, "1/2"), [[0, 1], [-1, 0]])


def series(form, items, bound):
    return QSeries(form, dict(items), bound)


def test_geometric_inverse():
    f = SkewForm([[0]])
    a = series(f, {(0,): 1, (1,): 1}, 3)
    want = series(f, {(0,): 1, (1,): -1, (2,): 1, (3,): -1}, 3)
    assert series_inverse(a) == want


def test_inverse_of_one():
    a = QSeries.one(L2, 5)
    assert series_inverse(a) == a


def test_commutative_inverse_with_parameter():
    # (1 + h Y + Y^2)^(-1) = 1 - h Y + (h^2 - 1) Y^2 + O(Y^3)
    f = SkewForm([[0]])
    a = series(f, {(0,): 1, (1,): QCoeff.h(), (2,): 1}, 2)
    want = series(f, {(0,): 1, (1,): -QCoeff.h(), (2,): QCoeff.h(2) - 1}, 2)
    assert series_inverse(a) == want


def test_non_unit_constant():
    a = series(L2, {(0, 0): 2, (1, 0): 1}, 3)
    with pytest.raises(InversionError):
        series_inverse(a)


def test_unit_constant_q_power():
    a = series(L2, {(0, 0): QCoeff.q_half(3), (1, 0): 1, (0, 1): QCoeff.h()}, 4)
    b = series_inverse(a)
    assert a * b == QSeries.one(L2, 4)
    assert b * a == QSeries.one(L2, 4)


def test_truncation_drops_high_degree():
    a = series(L2, {(2, 2): 1, (1, 0): 1}, 3)
    assert a.degree() == 1 and len(a) == 1


# -- properties ----------------------------------------------------------------


@st.composite
def forms(draw, max_dim=4):
    m = draw(st.integers(1, max_dim))
    M = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = draw(st.integers(-3, 3))
            M[i][j], M[j][i] = v, -v
    return SkewForm(M)


def elems(form, nonneg=False, max_terms=6):
    lo = 0 if nonneg else -2
    key = st.tuples(*[st.integers(lo, 2)] * form.dim)
    val = st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=2).map(QCoeff)
    return st.dictionaries(key, val, max_size=max_terms).map(lambda d: TorusElem(form, d))


@st.composite
def triples(draw):
    f = draw(forms())
    e = elems(f)
    return draw(e), draw(e), draw(e)


@given(triples())
def test_associativity(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@given(triples())
def test_distributivity(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c


@st.composite
def pairs(draw):
    f = draw(forms())
    e = elems(f)
    return draw(e), draw(e)


@given(pairs())
def test_q_one_is_commutative_product(ab):
    a, b = ab
    # oracle: plain convolution of exponent vectors with coefficients summed at q = 1
    want = defaultdict(lambda: defaultdict(int))
    for al, ca in a.at_q_one().items():
        for be, cb in b.at_q_one().items():
            key = tuple(x + y for x, y in zip(al, be))
            for i, u in ca.items():
                for j, v in cb.items():
                    want[key][i + j] += u * v
    want = {k: {j: c for j, c in v.items() if c} for k, v in want.items()}
    want = {k: v for k, v in want.items() if v}
    assert (a * b).at_q_one() == want


@st.composite
def unit_series(draw):
    f = draw(forms(3))
    N = draw(st.integers(1, 5))
    rest = draw(elems(f, nonneg=True))
    terms = {a: c for a, c in rest.terms.items() if 0 < sum(a) <= N}
    terms[(0,) * f.dim] = QCoeff.const(1)
    return QSeries(f, terms, N)


@given(unit_series())
def test_inverse_both_sides(a):
    b = series_inverse(a)
    one = QSeries.one(a.form, a.bound)
    assert a * b == one
    assert b * a == one
