import cmath
import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.algebras.quaternion import Quaternion as SympyQuaternion

from strategies import complex_quaternions, quaternions
from qpostulates.quaternion import ONE, I, J, K, Quaternion, qconj, qexp, qmul, qnorm

MINUS_ONE = Quaternion(-1.0, 0.0, 0.0, 0.0)


def test_defining_relations_exact():
    assert qmul(I, I) == MINUS_ONE
    assert qmul(J, J) == MINUS_ONE
    assert qmul(K, K) == MINUS_ONE
    assert qmul(qmul(I, J), K) == MINUS_ONE


def test_cyclic_products():
    assert qmul(I, J) == K
    assert qmul(J, K) == I
    assert qmul(K, I) == J
    assert qmul(J, I) == -K


def test_identity_is_neutral():
    q = Quaternion(0.3, -1.2, 2.5, 0.7)
    assert qmul(q, ONE) == q
    assert qmul(ONE, q) == q


def test_i_plus_j_times_i_minus_j_against_symbolic_expansion():
    expected = SympyQuaternion(0, 1, 1, 0) * SympyQuaternion(0, 1, -1, 0)
    got = qmul(I + J, I - J)
    assert got.as_tuple() == tuple(float(sympy.N(c)) for c in (expected.a, expected.b, expected.c, expected.d))
    assert got == Quaternion(0.0, 0.0, 0.0, -2.0)


@pytest.mark.parametrize(
    "q, expected",
    [(Quaternion(1, 1, 1, 1), 2.0), (Quaternion(), 0.0), (Quaternion(3, 4, 0, 0), 5.0)],
)
def test_norm_examples(q, expected):
    assert qnorm(q) == expected
    assert abs(q) == expected


@pytest.mark.parametrize("unit", [I, J, K])
def test_exp_quarter_turn(unit):
    got = qexp(unit * (math.pi / 2))
    assert qnorm(got - unit) <= 1e-15


def test_exp_of_zero_is_one():
    assert qexp(Quaternion()) == ONE


def test_exp_small_vector_is_continuous():
    tiny = Quaternion(0.0, 1e-9, -2e-9, 5e-10)
    just_above = Quaternion(0.0, 1e-8, 0.0, 0.0) * 1.0000001
    for q in (tiny, just_above):
        got = qexp(q)
        assert got.a == pytest.approx(1.0, abs=1e-15)
        assert got.b == pytest.approx(q.b, rel=1e-12)
        assert got.c == pytest.approx(q.c, rel=1e-12)
        assert got.d == pytest.approx(q.d, rel=1e-12)


def test_conjugate_negates_vector_part():
    assert qconj(Quaternion(1, 2, 3, 4)) == Quaternion(1, -2, -3, -4)


def test_norm_multiplicative_over_random_pairs(rng):
    data = rng.uniform(-3, 3, size=(10_000, 8))
    worst = 0.0
    for row in data:
        p, q = Quaternion(*row[:4]), Quaternion(*row[4:])
        expected = qnorm(p) * qnorm(q)
        worst = max(worst, abs(qnorm(qmul(p, q)) - expected) / expected)
    assert worst <= 1e-12


@given(quaternions)
def test_norm_nonnegative_and_zero_only_at_origin(q):
    n = qnorm(q)
    assert n >= 0
    assert (n == 0) == (q.as_tuple() == (0.0, 0.0, 0.0, 0.0))


@given(quaternions, quaternions, quaternions)
def test_associativity(p, q, r):
    left = qmul(qmul(p, q), r)
    right = qmul(p, qmul(q, r))
    scale = max(1.0, qnorm(p) * qnorm(q) * qnorm(r))
    assert qnorm(left - right) <= 1e-12 * scale


@given(quaternions)
def test_conjugate_product_is_squared_norm(q):
    product = qmul(q, qconj(q))
    assert product.a == pytest.approx(qnorm(q) ** 2, rel=1e-12, abs=1e-12)
    assert qnorm(product.vector) <= 1e-12 * max(1.0, qnorm(q) ** 2)


@given(complex_quaternions, complex_quaternions)
def test_complex_embedding(p, q):
    assert qmul(p, q) == qmul(q, p) or qnorm(qmul(p, q) - qmul(q, p)) <= 1e-12
    expected = p.to_complex() * q.to_complex()
    got = qmul(p, q)
    assert got.c == 0.0 and got.d == 0.0
    assert got.to_complex() == pytest.approx(expected, rel=1e-12, abs=1e-12)


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_exp_matches_complex_exponential(a, b):
    got = qexp(Quaternion(a, b, 0.0, 0.0))
    assert got.to_complex() == pytest.approx(cmath.exp(complex(a, b)), rel=1e-12, abs=1e-12)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_exp_inverse_for_pure_vectors(b, c, d):
    v = Quaternion(0.0, b, c, d)
    product = qmul(qexp(v), qexp(-v))
    assert qnorm(product - ONE) <= 1e-12


def test_to_complex_rejects_hypercomplex():
    with pytest.raises(ValueError):
        (I + J).to_complex()
