import cmath
from fractions import Fraction
from math import gcd

from hypothesis import given, settings, strategies as st
from sympy import mobius, totient

from artin3.cyclotomic import Cyclotomic, phi


def test_zeta_has_exact_order():
    for n in (1, 2, 3, 4, 6, 9, 12, 36):
        z = Cyclotomic.zeta(n)
        acc = Cyclotomic.rational(1)
        for k in range(1, n + 1):
            acc = acc * z
            assert (acc == 1) == (k == n)


def test_roots_of_unity_sum_to_zero():
    for n in (2, 3, 5, 8, 12):
        total = Cyclotomic.rational(0)
        for k in range(n):
            total = total + Cyclotomic.zeta(n, k)
        assert total == 0


def test_conjugate_is_inverse_power():
    for n in (3, 4, 12, 27):
        for k in range(n):
            assert Cyclotomic.zeta(n, k).conjugate() == Cyclotomic.zeta(n, -k % n)


def test_normalized_trace_is_ramanujan_mean():
    # mean of the primitive n-th roots of unity is mu(n)/phi(n)
    for n in range(1, 40):
        assert Cyclotomic.zeta(n).normalized_trace() == Fraction(int(mobius(n)), int(totient(n)))


def test_phi_matches_totient():
    assert [phi(n) for n in range(1, 50)] == [int(totient(n)) for n in range(1, 50)]


def test_lift_between_fields():
    z3 = Cyclotomic.zeta(3)
    assert z3.lift(12) == Cyclotomic.zeta(12, 4)
    assert z3 + Cyclotomic.zeta(4) == Cyclotomic.zeta(12, 4) + Cyclotomic.zeta(12, 3)


elements = st.tuples(
    st.sampled_from([3, 4, 5, 8, 9, 12]),
    st.lists(st.integers(-5, 5), min_size=12, max_size=12),
)


def make(pair):
    n, coeffs = pair
    return Cyclotomic(n, coeffs[: phi(n)])


@settings(max_examples=80, deadline=None)
@given(elements, elements)
def test_arithmetic_agrees_with_complex_embedding(a, b):
    x, y = make(a), make(b)
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-8
    assert abs(complex(x + y) - (complex(x) + complex(y))) < 1e-8
    assert abs(complex(x.conjugate()) - complex(x).conjugate()) < 1e-8


@settings(max_examples=60, deadline=None)
@given(elements, elements, st.sampled_from([k for k in range(1, 360) if gcd(k, 360) == 1]))
def test_galois_action_is_multiplicative(a, b, k):
    # 360 is a common multiple of every conductor drawn above
    x, y = make(a), make(b)
    assert (x * y).galois(k) == x.galois(k) * y.galois(k)


def test_complex_value_of_zeta():
    for n in (5, 7, 12):
        assert abs(complex(Cyclotomic.zeta(n)) - cmath.exp(2j * cmath.pi / n)) < 1e-12
