from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artin3.errors import GroupError
from artin3.groups import (Group, Subgroup, abelian_invariants, center, centralizer, cyclic_group,
                           derived_subgroup, direct_product, dump_group, load_group, matrix_group,
                           quotient_group, relabel, semidirect_product, structure_invariants,
                           subgroups_of_order, sylow_subgroup)
from helpers import all_subgroups_by_closure, random_relabel


def test_cyclic_group_basics():
    G = cyclic_group(12)
    assert G.order == 12 and G.is_abelian and G.exponent == 12
    assert sorted(Counter(G.element_orders.tolist()).items()) == [(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4)]
    assert G.power(5, 12) == 0


def test_table_validation_rejects_non_groups():
    with pytest.raises(GroupError):
        Group([[0, 1], [1, 1]])  # not a Latin square
    with pytest.raises(GroupError):
        Group([[1, 0], [0, 1]])  # identity not at 0
    # a Latin square with identity 0 that is not associative (order-5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    G = Group(loop)  # the constructor only checks the cheap axioms
    with pytest.raises(GroupError):
        G.verify()


def test_direct_product_indexing():
    G, H = cyclic_group(2), cyclic_group(3)
    P = direct_product(G, H)
    for g in range(2):
        for h in range(3):
            for g2 in range(2):
                for h2 in range(3):
                    assert P.mul(g * 3 + h, g2 * 3 + h2) == ((g + g2) % 2) * 3 + (h + h2) % 3


def test_semidirect_product_dihedral():
    # C5 x| C2 by inversion has trivial centre and derived subgroup C5
    N, H = cyclic_group(5), cyclic_group(2)
    action = np.array([np.arange(5), (-np.arange(5)) % 5])
    D = semidirect_product(N, H, action)
    assert D.order == 10 and not D.is_abelian
    assert center(D).order == 1
    assert derived_subgroup(D).order == 5
    assert len(D.classes) == 4


def test_semidirect_product_rejects_non_automorphism():
    N, H = cyclic_group(5), cyclic_group(2)
    bad = np.array([np.arange(5), np.array([0, 2, 1, 3, 4])])
    with pytest.raises(GroupError):
        semidirect_product(N, H, bad)


def test_class_equation_and_centralizers(named):
    for name in ("SL2F3", "P1", "J", "Heis3"):
        G = named(name)
        cls = G.classes
        assert int(cls.sizes.sum()) == G.order
        for rep, size in zip(cls.reps, cls.sizes):
            assert centralizer(G, int(rep)).order * int(size) == G.order


def test_quotient_by_centre_of_heisenberg(named):
    G = named("Heis3")
    Z = center(G)
    Q, proj = quotient_group(Z)
    assert Q.order == 9 and Q.is_abelian and Q.exponent == 3
    for a in range(G.order):
        for b in range(0, G.order, 5):
            assert proj[G.mul(a, b)] == Q.mul(proj[a], proj[b])


def test_quotient_requires_normal(named):
    G = named("SL2F3")
    S3 = sylow_subgroup(G, 3)
    with pytest.raises(GroupError):
        quotient_group(S3)


def test_abelian_invariants():
    assert abelian_invariants(cyclic_group(12)) == [3, 4]
    A = direct_product(cyclic_group(6), cyclic_group(4))
    assert abelian_invariants(A) == [2, 3, 4]


def test_structure_invariants_of_named_groups(named):
    expected = {
        "P1": (36, 1, 9, [4]),
        "P3": (216, 1, 72, [3]),
        "J": (108, 3, 27, [4]),
        "SL2F3": (24, 2, 8, [3]),
        "Heis3": (27, 3, 3, [3, 3]),
        "Q8": (8, 2, 2, [2, 2]),
    }
    for name, (order, z, d, ab) in expected.items():
        G = named(name)
        inv = structure_invariants(G)
        assert (G.order, inv.center.order, inv.derived.order, inv.abelianization) == (order, z, d, ab), name


@pytest.mark.parametrize("name", ["Q8", "SL2F3", "Heis3", "C7:C3", "C3xC3", "P1"])
def test_subgroup_enumeration_against_closure_oracle(named, name):
    G = named(name)
    oracle = all_subgroups_by_closure(G, max_gens=3)
    by_order = Counter(len(s) for s in oracle)
    for m, count in by_order.items():
        found = subgroups_of_order(G, m)
        assert len(found) == count, (name, m)
        assert {frozenset(H.members.tolist()) for H in found} <= oracle
    for m in range(1, G.order + 1):
        if G.order % m == 0 and m not in by_order:
            assert subgroups_of_order(G, m) == []


def test_known_subgroup_counts(named):
    P3 = named("P3")
    assert len(subgroups_of_order(P3, 8)) == 9
    assert subgroups_of_order(named("SL2F3"), 12) == []
    assert subgroups_of_order(named("J"), 36) == []


def test_subgroups_up_to_conjugacy(named):
    G = named("SL2F3")
    reps = subgroups_of_order(G, 3, up_to_conjugacy=True)
    assert len(reps) == 1
    assert len(subgroups_of_order(G, 3)) == 4


def test_sylow_subgroups(named):
    for name in ("P1", "P3", "J", "SL2F3"):
        G = named(name)
        for q in (2, 3):
            S = sylow_subgroup(G, q)
            m = G.order
            while m % q == 0:
                m //= q
            assert S.order == G.order // m


def test_subgroup_rejects_non_closed_sets():
    G = cyclic_group(6)
    with pytest.raises(GroupError):
        Subgroup(G, [0, 1])


def test_matrix_group_is_sl2f3():
    gens = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    G, elems = matrix_group(gens, 3)
    assert G.order == 24
    assert elems[0] == (1, 0, 0, 1)
    assert center(G).order == 2


def test_dump_load_round_trip(named):
    G = named("C7:C3")
    H = load_group(dump_group(G))
    assert np.array_equal(G.table, H.table) and H.name == G.name
    with pytest.raises(GroupError):
        load_group("order 3\n0 1 2\n1 2 0\n")


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["Q8", "SL2F3", "P1", "Heis3", "C9:C3"]), st.integers(0, 10**6))
def test_relabel_preserves_invariants(named, name, seed):
    G = named(name)
    H = relabel(G, random_relabel(G, seed))
    assert H.verify()
    assert sorted(G.classes.sizes.tolist()) == sorted(H.classes.sizes.tolist())
    assert Counter(G.element_orders.tolist()) == Counter(H.element_orders.tolist())
    a, b = structure_invariants(G), structure_invariants(H)
    assert (a.center.order, a.derived.order, a.abelianization) == (b.center.order, b.derived.order, b.abelianization)
