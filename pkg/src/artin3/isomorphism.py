"""Isomorphism testing and automorphism counting by generator-image search.

A map on generators extends to a homomorphism iff it is consistent along
every edge of the right Cayley graph, so a breadth-first walk from the
identity both builds and checks the candidate map.  Candidate images are
restricted to elements with the same (order, class size) fingerprint.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded
from .groups import Group, GroupHom, center, derived_subgroup, structure_invariants

AUT_BUDGET = 200
ISO_BUDGET = 1000


def generating_set(G: Group) -> list[int]:
    """A short generating set, chosen greedily (high order and small class first)."""
    cls = G.classes
    orders = G.element_orders
    size_of = cls.sizes[cls.class_of]
    cand = sorted(range(1, G.order), key=lambda g: (-int(orders[g]), int(size_of[g]), g))
    gens: list[int] = []
    span = np.zeros(G.order, dtype=bool)
    span[0] = True
    for g in cand:
        if span.all():
            break
        if not span[g]:
            trial = G.closure(gens + [g])
            gens.append(g)
            span[:] = False
            span[trial] = True
    # a second pass drops redundant generators
    i = 0
    while i < len(gens) and len(gens) > 1:
        rest = gens[:i] + gens[i + 1:]
        if G.closure(rest).size == G.order:
            gens = rest
        else:
            i += 1
    return gens


def element_fingerprints(G: Group) -> np.ndarray:
    cls = G.classes
    return G.element_orders * 100_000 + cls.sizes[cls.class_of]


def fingerprint(G: Group, with_degrees: bool = True) -> dict:
    """Ordered isomorphism invariants, cheapest first."""
    fp = element_fingerprints(G)
    inv = structure_invariants(G)
    out = {
        "order": G.order,
        "exponent": G.exponent,
        "element_orders": tuple(sorted(Counter(G.element_orders.tolist()).items())),
        "class_count": len(G.classes),
        "order_class_size": tuple(sorted(Counter(fp.tolist()).items())),
        "center_order": inv.center.order,
        "derived_order": inv.derived.order,
        "abelianization": tuple(inv.abelianization),
    }
    if with_degrees:
        from .characters import character_table

        out["character_degrees"] = tuple(sorted(character_table(G).degrees))
    return out


def separating_invariant(G: Group, H: Group, with_degrees: bool = True) -> str | None:
    """Name of the first fingerprint entry on which G and H differ."""
    a = fingerprint(G, with_degrees)
    b = fingerprint(H, with_degrees)
    for k in a:
        if a[k] != b[k]:
            return k
    return None


class _Search:
    def __init__(self, G: Group, H: Group):
        self.G, self.H = G, H
        self.gt, self.ht = G.rows, H.rows
        self.gens = generating_set(G)
        gfp, hfp = element_fingerprints(G), element_fingerprints(H)
        self.go = G.element_orders.tolist()
        self.ho = H.element_orders.tolist()
        by_fp: dict[int, list[int]] = {}
        for h in range(H.order):
            by_fp.setdefault(int(hfp[h]), []).append(h)
        self.cands = [by_fp.get(int(gfp[g]), []) for g in self.gens]

    def _extend(self, k: int, images: list[int]) -> list[int] | None:
        """Walk <g_1..g_k>; returns the partial map or None on conflict."""
        gt, ht = self.gt, self.ht
        gens = self.gens[:k]
        phi = [-1] * self.G.order
        phi[0] = 0
        used = [False] * self.H.order
        used[0] = True
        queue = [0]
        for x in queue:
            px = phi[x]
            rx, rpx = gt[x], ht[px]
            for g, h in zip(gens, images):
                y = rx[g]
                img = rpx[h]
                cur = phi[y]
                if cur < 0:
                    if used[img]:
                        return None
                    phi[y] = img
                    used[img] = True
                    queue.append(y)
                elif cur != img:
                    return None
        return phi

    def _compatible(self, k: int, h: int, images: list[int]) -> bool:
        # orders of products with earlier generators must match
        g = self.gens[k]
        gt, ht = self.gt, self.ht
        for j in range(k):
            if self.go[gt[g][self.gens[j]]] != self.ho[ht[h][images[j]]]:
                return False
        return True

    def run(self, first_candidates=None) -> Iterator[list[int]]:
        if self.G.order != self.H.order:
            return
        n = len(self.gens)
        images: list[int] = []

        def rec(k: int):
            pool = self.cands[k] if (k or first_candidates is None) else first_candidates
            for h in pool:
                if not self._compatible(k, h, images):
                    continue
                images.append(h)
                phi = self._extend(k + 1, images)
                if phi is not None:
                    if k + 1 == n:
                        yield phi
                    else:
                        yield from rec(k + 1)
                images.pop()

        yield from rec(0)


def find_isomorphism(G: Group, H: Group) -> GroupHom | None:
    """An isomorphism G -> H, or None."""
    if max(G.order, H.order) > ISO_BUDGET:
        raise BudgetExceeded(f"isomorphism search is capped at order {ISO_BUDGET}")
    if G.order != H.order:
        return None
    if fingerprint(G, False) != fingerprint(H, False):
        return None
    s = _Search(G, H)
    if not s.gens:  # trivial group
        return GroupHom(G, H, np.zeros(1, dtype=np.int64))
    # up to inner automorphisms of H the first image can be a class representative
    cls = H.classes
    hfp = element_fingerprints(H)
    g0fp = element_fingerprints(G)[s.gens[0]]
    reps = [int(r) for r in cls.reps if hfp[r] == g0fp]
    for phi in s.run(first_candidates=reps):
        return GroupHom(G, H, np.array(phi, dtype=np.int64))
    return None


def is_isomorphic(G: Group, H: Group, use_degrees: bool = False) -> bool:
    """Fingerprints reject quickly; the backtracking search decides."""
    if G.order != H.order:
        return False
    if use_degrees and separating_invariant(G, H, True) is not None:
        return False
    return find_isomorphism(G, H) is not None


def automorphism_group_order(G: Group) -> int:
    if G.order > AUT_BUDGET:
        raise BudgetExceeded(f"automorphism counting is capped at order {AUT_BUDGET}")
    s = _Search(G, G)
    if not s.gens:
        return 1
    return sum(1 for _ in s.run())


def automorphisms(G: Group) -> Iterator[GroupHom]:
    if G.order > AUT_BUDGET:
        raise BudgetExceeded(f"automorphism enumeration is capped at order {AUT_BUDGET}")
    s = _Search(G, G)
    if not s.gens:
        yield GroupHom(G, G, np.zeros(1, dtype=np.int64))
        return
    for phi in s.run():
        yield GroupHom(G, G, np.array(phi, dtype=np.int64))


__all__ = [
    "generating_set", "fingerprint", "separating_invariant", "find_isomorphism",
    "is_isomorphic", "automorphism_group_order", "automorphisms", "center", "derived_subgroup",
]
