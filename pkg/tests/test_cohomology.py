import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from artin3.characters import character_table
from artin3.cohomology import (Cocycle2, central_subgroup, enumerate_central_extensions, ext_rank,
                               extension_from_cocycle, h2_basis, h2_dim_bruteforce, is_coboundary,
                               projection_splits, schur_multiplier_3rank, sylow_multiplier_argument)
from artin3.errors import BudgetExceeded, CocycleError
from artin3.groups import center, cyclic_group, derived_subgroup, direct_product
from artin3.isomorphism import is_isomorphic
from artin3.named import build_named_group


def small_groups():
    yield cyclic_group(2)
    yield cyclic_group(3)
    yield cyclic_group(9)
    yield cyclic_group(6)
    yield direct_product(cyclic_group(3), cyclic_group(3))
    yield direct_product(cyclic_group(2), cyclic_group(2))
    for name in ("Q8", "SL2F3", "Heis3", "C9:C3", "C7:C3", "P1"):
        yield build_named_group(name)
    yield build_named_group("C12")


@pytest.mark.parametrize("G", list(small_groups()), ids=lambda G: G.name or f"order{G.order}")
def test_h2_against_bruteforce_linear_algebra(G):
    b = h2_basis(G)
    z2, b2, h2 = h2_dim_bruteforce(G)
    assert (b.z2_dim, b.b2_dim, b.h2_dim) == (z2, b2, h2)
    assert b.h2_dim == len(b.representatives)


@pytest.mark.parametrize(
    "name,h2",
    [("C3", 1), ("Q8", 0), ("C3xC3", 3), ("Heis3", 4), ("P1", 1), ("P3", 2), ("J", 0), ("SL2F3", 1)],
)
def test_known_h2_dimensions(name, h2):
    assert h2_basis(build_named_group(name)).h2_dim == h2


def test_universal_coefficient_split():
    # dim H^2(G, F3) = dim Ext(G^ab, F3) + dim Hom(M(G), F3)
    assert ext_rank(build_named_group("C3xC3")) == 2
    assert schur_multiplier_3rank(build_named_group("C3xC3")) == 1
    assert schur_multiplier_3rank(build_named_group("Heis3")) == 2
    assert schur_multiplier_3rank(build_named_group("P1")) == 1
    assert schur_multiplier_3rank(build_named_group("P3")) == 1
    assert schur_multiplier_3rank(build_named_group("Q8")) == 0
    assert schur_multiplier_3rank(build_named_group("SL2F3")) == 0


def test_sylow_argument_rows():
    rows = {r.q: r for r in sylow_multiplier_argument(build_named_group("P3"))}
    assert rows[2].sylow.order == 8 and rows[2].sylow_h2_3rank == 0
    assert rows[3].sylow.order == 27 and rows[3].sylow_h2_3rank == 2


@pytest.mark.parametrize("name", ["C3xC3", "Heis3", "P1", "C9:C3", "J", "P3"])
def test_basis_cocycles_satisfy_identity_exhaustively(name):
    G = build_named_group(name)
    b = h2_basis(G)
    for f in b.representatives:
        assert f.defect_count(exhaustive=True) == 0
        if G.order <= 120:
            assert not is_coboundary(f)


def test_random_cochain_is_rejected():
    G = build_named_group("Q8")
    rng = np.random.default_rng(0)
    t = rng.integers(0, 3, size=(8, 8))
    t[0, :] = 0
    t[:, 0] = 0
    with pytest.raises(CocycleError):
        Cocycle2(G, t)
    with pytest.raises(CocycleError):
        Cocycle2(G, np.ones((8, 8)), check=False)  # not normalized


def test_coboundaries_are_coboundaries():
    G = build_named_group("C9:C3")
    rng = np.random.default_rng(1)
    for _ in range(5):
        g = rng.integers(0, 3, size=G.order)
        g[0] = 0
        f = Cocycle2.coboundary(G, g)
        f.check()
        assert is_coboundary(f)


def test_text_round_trip():
    G = build_named_group("Heis3")
    f = h2_basis(G).representatives[0]
    assert Cocycle2.from_text(f.to_text(), G) == f
    with pytest.raises(CocycleError):
        Cocycle2.from_text(f.to_text(), build_named_group("C9:C3"))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["C3xC3", "P1", "Heis3"]), st.integers(0, 10**6), st.integers(0, 2))
def test_coboundary_perturbation_gives_isomorphic_extension(name, seed, which):
    G = build_named_group(name)
    b = h2_basis(G)
    coeffs = [0] * b.h2_dim
    coeffs[which % b.h2_dim] = 1
    f = b.cocycle(coeffs)
    rng = np.random.default_rng(seed)
    g = rng.integers(0, 3, size=G.order)
    g[0] = 0
    f2 = f + Cocycle2.coboundary(G, g)
    E1 = extension_from_cocycle(G, f)
    E2 = extension_from_cocycle(G, f2)
    assert is_isomorphic(E1, E2)


@pytest.mark.parametrize("name", ["C3xC3", "Q8", "P1", "J", "SL2F3"])
def test_zero_cocycle_gives_direct_product(name):
    G = build_named_group(name)
    E = extension_from_cocycle(G, Cocycle2.zero(G))
    assert E.verify()
    assert is_isomorphic(E, direct_product(G, cyclic_group(3)))
    assert projection_splits(G, Cocycle2.zero(G))


def test_extension_structure():
    G = build_named_group("Heis3")
    f = h2_basis(G).representatives[0]
    E = extension_from_cocycle(G, f)
    assert E.order == 81 and E.verify()
    K = central_subgroup(E)
    assert K.order == 3 and K.mask[center(E).members].sum() == 3


def test_p1_extensions():
    exts = enumerate_central_extensions(build_named_group("P1"))
    assert len(exts) == 2
    split = [e for e in exts if e.split]
    nonsplit = [e for e in exts if not e.split]
    assert len(split) == 1 and len(nonsplit) == 1
    E = nonsplit[0]
    assert E.stem
    assert is_isomorphic(E.group, build_named_group("J"))
    assert character_table(E.group).degrees.count(3) == 8
    assert not projection_splits(build_named_group("P1"), E.cocycle)


def test_elementary_abelian_extensions():
    exts = enumerate_central_extensions(build_named_group("C3xC3"))
    kinds = sorted((e.split, e.stem, e.group.exponent) for e in exts)
    # C3^3, C9 x C3, and the two extraspecial groups of order 27
    assert kinds == [(False, False, 9), (False, True, 3), (False, True, 9), (True, False, 3)]


def test_p3_extension_types():
    exts = enumerate_central_extensions(build_named_group("P3"))
    assert sum(len(e.coefficient_vectors) for e in exts) == 9
    nonsplit = [e for e in exts if not e.split]
    stem = [e for e in nonsplit if e.stem]
    assert len(stem) == 3
    for e in stem:
        assert e.group.order == 648
        assert derived_subgroup(e.group).order == 216
        assert character_table(e.group).degrees.count(3) == 7
    for i, e in enumerate(exts):
        for j in range(len(exts)):
            if i != j:
                assert j in e.separated_by


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        h2_basis(build_named_group("P3"), budget_mb=0.01)
