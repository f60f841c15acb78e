import cmath
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artin3.characters import (CharacterTable, character_table, count_irreducibles_of_degree,
                               fixed_subspace_dim, induce, inducing_pair, inflate, is_primitive,
                               mackey_decomposition, mackey_irreducible, restrict, tensor,
                               trivial_character)
from artin3.errors import CharacterError
from artin3.groups import center, cyclic_group, derived_subgroup, direct_product, quotient_group, relabel
from artin3.groups import subgroups_of_order, sylow_subgroup
from artin3.named import build_named_group
from artin3.verify import all_named_groups, frobenius_fixtures
from helpers import random_relabel


def complex_inner(G, a, b):
    """<a, b> summed element by element from complex values (independent of class data)."""
    cls = G.classes.class_of
    va, vb = a.complex_values()[cls], b.complex_values()[cls]
    return complex(np.sum(va * np.conj(vb)) / G.order)


@pytest.mark.parametrize("G", list(all_named_groups()), ids=lambda G: G.name)
def test_tables_are_orthonormal(G):
    T = character_table(G)
    assert T.verify()
    assert sum(d * d for d in T.degrees) == G.order
    assert len(T) == len(G.classes)
    assert np.array_equal(T.gram(), G.order * np.eye(len(T), dtype=np.int64))


@pytest.mark.parametrize(
    "name,degrees",
    [
        ("Q8", {1: 4, 2: 1}),
        ("SL2F3", {1: 3, 2: 3, 3: 1}),
        ("Heis3", {1: 9, 3: 2}),
        ("P1", {1: 4, 4: 2}),
        ("P3", {1: 3, 2: 3, 3: 1, 8: 3}),
        ("J", {1: 4, 3: 8, 4: 2}),
        ("C7:C3", {1: 3, 3: 2}),
    ],
)
def test_degree_multisets(name, degrees):
    assert Counter(character_table(build_named_group(name)).degrees) == degrees


def test_cyclic_table_matches_explicit_roots_of_unity():
    n = 12
    G = cyclic_group(n)
    T = character_table(G)

    def key(values):
        return tuple((round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0) for z in values)

    got = {key(chi.complex_values()[G.classes.class_of]) for chi in T}
    want = {key([cmath.exp(2j * cmath.pi * k * g / n) for g in range(n)]) for k in range(n)}
    assert got == want


def test_j_has_eight_degree_three_characters():
    assert count_irreducibles_of_degree(build_named_group("J"), 3) == 8
    assert count_irreducibles_of_degree(build_named_group("P1"), 3) == 0


def test_inner_product_agrees_with_complex_sum():
    G = build_named_group("J")
    T = character_table(G)
    for a in T:
        for b in T:
            z = complex_inner(G, a * b, a)
            assert abs(z - float(tensor(a, b).inner(a))) < 1e-9


@pytest.mark.parametrize("case", range(8))
def test_frobenius_reciprocity(case):
    G, H = frobenius_fixtures()[case]
    T = character_table(G)
    for lam in character_table(H.group):
        ind = induce(lam, H)
        assert ind.degree == lam.degree * H.index()
        for chi in T:
            lhs = ind.inner(chi)
            assert lhs == lam.inner(restrict(chi, H))
            # and with complex arithmetic on G only
            assert abs(complex_inner(G, ind, chi) - float(lhs)) < 1e-9


@pytest.mark.parametrize("name", ["C7:C3", "P1", "J", "SL2F3", "Heis3"])
def test_mackey_criterion_matches_norm_of_induced(name):
    G = build_named_group(name)
    checked = 0
    for m in sorted({d for d in range(2, G.order) if G.order % d == 0}):
        for H in subgroups_of_order(G, m, up_to_conjugacy=True):
            for lam in character_table(H.group):
                if lam.degree != 1:
                    continue
                assert mackey_irreducible(lam, H) == (induce(lam, H).norm() == 1)
                checked += 1
    assert checked > 0


def test_mackey_decomposition_sums_to_restriction_of_induced():
    G = build_named_group("C7:C3")
    H = sylow_subgroup(G, 7)
    K = sylow_subgroup(G, 3)
    for lam in character_table(H.group):
        parts = mackey_decomposition(lam, H, K)
        total = parts[0]
        for p in parts[1:]:
            total = total + p
        assert total == restrict(induce(lam, H), K)


def test_primitivity():
    J = build_named_group("J")
    assert all(is_primitive(chi) for chi in character_table(J).of_degree(3))
    F21 = build_named_group("C7:C3")
    for chi in character_table(F21).of_degree(3):
        assert not is_primitive(chi)
        H, lam = inducing_pair(chi)
        assert H.order == 7 and induce(lam, H) == chi
    P3 = build_named_group("P3")
    assert not is_primitive(character_table(P3).of_degree(3)[0])


def test_fixed_subspace_dimensions_on_c4_of_j():
    J = build_named_group("J")
    C4 = J.subgroup([27])
    dims = sorted(fixed_subspace_dim(chi, C4) for chi in character_table(J).of_degree(3))
    assert dims == [0, 0, 1, 1, 1, 1, 1, 1]


def test_inflation_from_quotient():
    G = build_named_group("SL2F3")
    Z = center(G)
    Q, proj = quotient_group(Z)
    for psi in character_table(Q):
        chi = inflate(psi, G, proj)
        assert chi.is_irreducible()
        assert chi(int(Z.members[1])) == chi.degree


def test_tensor_products_on_direct_product_with_c3():
    # psi x chi over C3 characters psi and degree-3 characters chi of J are
    # 24 distinct irreducibles of J x C3
    J = build_named_group("J")
    C3 = cyclic_group(3)
    P = direct_product(J, C3)
    to_j = np.arange(P.order) // 3
    to_c3 = np.arange(P.order) % 3
    prods = set()
    for chi in character_table(J).of_degree(3):
        for psi in character_table(C3):
            t = tensor(inflate(chi, P, to_j), inflate(psi, P, to_c3))
            assert t.is_irreducible()
            prods.add(t)
    assert len(prods) == 24
    assert set(character_table(P).of_degree(3)) == prods


def test_trivial_character_and_conjugates():
    G = build_named_group("C9:C3")
    T = character_table(G)
    one = trivial_character(G)
    assert one in list(T)
    for chi in T:
        assert chi.conjugate() in list(T)
        assert (chi * chi.conjugate()).inner(one) == 1


def test_json_round_trip():
    G = build_named_group("J")
    T = character_table(G)
    text = T.to_json()
    U = CharacterTable.from_json(text, G)
    assert U.to_json() == text
    with pytest.raises(CharacterError):
        CharacterTable.from_json(text, build_named_group("P1"))


def test_inner_product_refuses_mixed_groups():
    a = trivial_character(build_named_group("Q8"))
    b = trivial_character(cyclic_group(8))
    with pytest.raises(CharacterError):
        a.inner(b)


def test_inner_product_with_rational_result():
    G = build_named_group("P1")
    one = trivial_character(G)
    # sum of d * chi is the regular character
    reg_like = sum((chi.scale(chi.degree) for chi in character_table(G)[1:]), character_table(G)[0])
    assert reg_like.inner(one) == Fraction(1)
    assert reg_like.degree == G.order


@settings(max_examples=8, deadline=None)
@given(st.sampled_from(["SL2F3", "P1", "C9:C3", "Heis3"]), st.integers(0, 10**6))
def test_degrees_are_relabel_invariant(name, seed):
    G = build_named_group(name)
    H = relabel(G, random_relabel(G, seed))
    assert sorted(character_table(G).degrees) == sorted(character_table(H).degrees)


def test_derived_subgroup_is_common_kernel_of_linear_characters():
    G = build_named_group("J")
    lin = character_table(G).of_degree(1)
    D = derived_subgroup(G)
    common = set(range(G.order))
    for chi in lin:
        common &= {g for g in range(G.order) if chi(g) == 1}
    assert common == set(D.members.tolist())
