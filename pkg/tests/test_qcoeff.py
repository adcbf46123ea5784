import pytest
from hypothesis import given
from hypothesis import strategies as st

from gencluster.errors import InputError
from gencluster.qcoeff import QCoeff, qc_eval_at_one, qc_mul

coeffs = st.dictionaries(
    st.tuples(st.integers(-8, 8), st.integers(0, 2)), st.integers(-5, 5), max_size=5
).map(QCoeff)
pure_q = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(QCoeff)


def test_inverse_pair():
    assert qc_mul(QCoeff.parse("q^(1/2)"), QCoeff.parse("q^(-1/2)")) == 1


def test_difference_of_squares():
    a = QCoeff.parse("1 + q^(1/2)")
    b = QCoeff.parse("1 - q^(1/2)")
    assert qc_mul(a, b) == QCoeff.parse("1 - q")
    # brute force convolution of the two exponent maps
    conv = {}
    for (i, _), ci in a.items():
        for (j, _), cj in b.items():
            conv[i + j] = conv.get(i + j, 0) + ci * cj
    assert qc_mul(a, b) == QCoeff(conv)


def test_zero_absorbs():
    p = qc_mul(0, QCoeff.parse("3*q^(-3/2)"))
    assert p.is_zero() and str(p) == "0"


@pytest.mark.parametrize("text, value", [("1 + q^(1/2) + q", 3), ("q^(-3/2)", 1), ("2 - q^(1/2)", 1)])
def test_eval_at_one(text, value):
    assert qc_eval_at_one(QCoeff.parse(text)) == value


def test_eval_at_one_rejects_h():
    with pytest.raises(InputError):
        qc_eval_at_one(QCoeff.parse("h*q"))
    assert QCoeff.parse("h*q + 2*h^2 - h").at_q_one() == {2: 2}


def test_canonical_text():
    c = QCoeff({0: 1, 1: 2, 6: -1})
    assert str(c) == "1 + 2*q^(1/2) - q^3"
    assert str(QCoeff.parse("q^(-1)*h + q^(3/2)")) == "q^(3/2) + h*q^(-1)"


def test_no_zero_terms_stored():
    c = QCoeff({1: 1}) + QCoeff({1: -1})
    assert c.terms == {}


def test_big_integers_survive():
    c = QCoeff({0: 1, 1: 1}) ** 80
    assert max(v for _, v in c.items()) > 2**63


@pytest.mark.parametrize("bad", ["", "q^^2", "x", "q^(1/3)"])
def test_parse_errors(bad):
    with pytest.raises(InputError):
        QCoeff.parse(bad)


@given(coeffs)
def test_roundtrip(a):
    assert QCoeff.parse(str(a)) == a


@given(pure_q, pure_q)
def test_eval_is_homomorphism(a, b):
    assert qc_eval_at_one(a * b) == qc_eval_at_one(a) * qc_eval_at_one(b)
    assert qc_eval_at_one(a + b) == qc_eval_at_one(a) + qc_eval_at_one(b)


@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@given(coeffs, st.integers(-6, 6))
def test_shift_is_multiplication(a, k):
    assert a.shift(k) == a * QCoeff.q_half(k)


@given(coeffs, coeffs)
def test_substitute_h_is_ring_map(a, b):
    v = QCoeff.parse("q^(1/2) + 2")
    assert (a * b).substitute_h(v) == a.substitute_h(v) * b.substitute_h(v)
