from fractions import Fraction

import pytest

from artin3.characters import character_table, fixed_subspace_dim
from artin3.conductor import (ConductorError, FiltrationOrders, RamificationFiltration, artin_exponent,
                              artin_exponent_central, closed_form_exponent, conductor_spectrum,
                              cyclotomic_orders, filtration_for_case, parse_filtration, valid_c)
from artin3.groups import center
from artin3.named import build_named_group
from artin3.verify import CLOSED_FORM_EXTRA_PRIMES, CLOSED_FORM_PRIMES, closed_form_tuples


def vp(x, p):
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def cyclotomic_ramification_oracle(p, N, i):
    """|G_i| for Q_p(zeta_{p^N}) / Q_p, i >= 1, straight from sigma_a(zeta) = zeta^a.

    v_pi(zeta^b - 1) = p^(v_p(b)) for b not divisible by p^N, and sigma_a lies in
    G_i iff v_pi(sigma_a(zeta) - zeta) >= i + 1.
    """
    q = p**N
    count = 0
    for a in range(1, q):
        if a % p == 0:
            continue
        if a == 1:
            count += 1
            continue
        if p ** vp(a - 1, p) >= i + 1:
            count += 1
    return count


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (13, 1)])
def test_cyclotomic_orders_match_galois_action(p, n):
    # Q_p(zeta_{p^(n+1)}) has tame part p - 1 and wild part of order p^n
    orders = cyclotomic_orders(p, n, p - 1)
    assert orders.g(0) == (p - 1) * p**n
    for i in range(1, p ** (n + 1) + 2):
        assert orders.g(i) == cyclotomic_ramification_oracle(p, n + 1, i), i


def test_cyclotomic_orders_small_case():
    assert cyclotomic_orders(5, 1, 4).orders == (20, 5, 5, 5, 5, 1)
    assert cyclotomic_orders(5, 0, 4).orders == (4, 1)


def test_cyclotomic_orders_rejects_bad_tame():
    with pytest.raises(ConductorError):
        cyclotomic_orders(5, 1, 5)
    with pytest.raises(ConductorError):
        cyclotomic_orders(5, 1, 0)
    with pytest.raises(ConductorError):
        cyclotomic_orders(6, 1, 1)


def test_closed_form_examples():
    # c = 1, n = 1 at p = 5: 3 + 3 * 4 / 4 = 6
    assert closed_form_exponent("P1_i", 5, 1, 1) == 6
    assert closed_form_exponent("P1_i", 13, 0, 3) == 3
    assert closed_form_exponent("P3", 13, 1, 2, 2) == 3 + Fraction(3 * 12, 12)
    with pytest.raises(ConductorError):
        closed_form_exponent("P1_ii", 5, 1, 1)  # 12 does not divide 4
    with pytest.raises(ConductorError):
        closed_form_exponent("P3", 13, 1, 5)


def test_valid_c():
    assert valid_c("P1_i", 17) == [1, 2, 4]
    assert valid_c("P1_ii", 13) == [1]
    assert valid_c("P3", 5) == []
    assert valid_c("P3", 13) == [1, 2, 4]


def test_closed_form_equals_filtration_sum_on_grid():
    tuples = list(closed_form_tuples(CLOSED_FORM_PRIMES)) + list(closed_form_tuples(CLOSED_FORM_EXTRA_PRIMES))
    assert len(list(closed_form_tuples(CLOSED_FORM_PRIMES))) == 39
    assert len(tuples) >= 50
    for case, p, n, c, x in tuples:
        lhs = closed_form_exponent(case, p, n, c, x)
        rhs = artin_exponent_central(3, filtration_for_case(case, p, n, c, x))
        assert rhs.integral == (lhs.denominator == 1)
        assert lhs == rhs.value, (case, p, n, c, x)


def test_j_conductor_spectrum():
    J = build_named_group("J")
    C4 = J.subgroup([27])
    assert conductor_spectrum(J, C4, 3) == [2] * 6 + [3] * 2


def test_explicit_chain_equals_codimension_sum():
    J = build_named_group("J")
    C4 = J.subgroup([27])
    filt = RamificationFiltration(J, (C4, J.trivial()))
    for chi in character_table(J):
        assert artin_exponent(chi, filt).value == chi.degree - fixed_subspace_dim(chi, C4)


def test_central_rule_agrees_with_explicit_chain():
    # G_0 = Z(J) x C4 (order 12) > G_1 = Z(J) > 1; on characters where the
    # centre acts by a nontrivial scalar both computations must agree
    J = build_named_group("J")
    Z = center(J)
    G0 = J.subgroup([int(Z.members[1]), 27])
    filt = RamificationFiltration(J, (G0, Z, J.trivial()))
    orders = FiltrationOrders((12, 3, 1))
    hits = 0
    for chi in character_table(J):
        if chi(int(Z.members[1])) != chi.degree:
            assert artin_exponent(chi, filt) == artin_exponent_central(chi.degree, orders)
            hits += 1
    assert hits == 8


def test_non_integral_exponent_is_flagged():
    e = artin_exponent_central(1, FiltrationOrders((4, 2, 1)))
    assert e.value == Fraction(3, 2) and not e.integral
    with pytest.raises(ConductorError):
        int(e)


def test_filtration_validation():
    J = build_named_group("J")
    C4 = J.subgroup([27])
    C2 = J.subgroup([J.power(27, 2)])
    with pytest.raises(ConductorError):
        RamificationFiltration(J, (C2, C4, J.trivial()))  # ascending
    with pytest.raises(ConductorError):
        RamificationFiltration(J, (C4,))  # does not reach 1
    with pytest.raises(ConductorError):
        FiltrationOrders((4, 3, 1))
    # a non-normal G_1 inside G_0 = J
    with pytest.raises(ConductorError):
        RamificationFiltration(J, (J.whole(), C4, J.trivial()))


def test_parse_filtration():
    f = parse_filtration("20 5 5 5 5 1\n")
    assert isinstance(f, FiltrationOrders) and f.g(3) == 5 and f.g(99) == 1
    J = build_named_group("J")
    C4 = J.subgroup([27])
    text = "4 1\n" + " ".join(map(str, C4.members.tolist())) + "\n0\n"
    g = parse_filtration(text, J)
    assert isinstance(g, RamificationFiltration) and g.orders == [4, 1]
    with pytest.raises(ConductorError):
        parse_filtration("")


def test_tame_by_wild_check():
    J = build_named_group("J")
    Z = center(J)
    G0 = J.subgroup([int(Z.members[1]), 27])
    assert RamificationFiltration(J, (G0, Z, J.trivial())).check_tame_by_wild(3)
    assert not RamificationFiltration(J, (G0, Z, J.trivial())).check_tame_by_wild(2)
