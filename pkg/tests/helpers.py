"""Brute-force oracles shared by the test modules."""

import itertools

import numpy as np

ACCEPTANCE_LINES: list[str] = []


def all_subgroups_by_closure(G, max_gens=3):
    """Every subgroup generated by at most ``max_gens`` elements, as frozensets."""
    found = {frozenset([0])}
    for k in range(1, max_gens + 1):
        for gens in itertools.combinations(range(1, G.order), k):
            found.add(frozenset(G.closure(list(gens)).tolist()))
    return found


def random_relabel(G, seed):
    rng = np.random.default_rng(seed)
    perm = np.concatenate([[0], 1 + rng.permutation(G.order - 1)])
    return perm
