"""H^2(G, F_3) for trivial action, central extensions by C_3, 3-rank of M(G).

Rather than solving the cocycle system on all (|G|-1)^2 normalized
cochains, H^2 is computed from a presentation.  Write G = F/R with F free
on a generating set S.  The five-term sequence for trivial coefficients gives

    H^2(G, A) = Hom(R, A)^G / image of Hom(F, A).

R is free on the Schreier generators, one per non-tree edge of a spanning
tree of the Cayley graph, so Hom(R, A) is A^(non-tree edges).  Invariance
under conjugation by each s in S is a linear condition obtained by
Reidemeister rewriting.  That leaves |G|(|S|-1)+1 unknowns.

A class phi is turned into an explicit normalized cocycle through the tree
section x -> t(x):  f(x, h) = phi(t(x) t(h) t(xh)^-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
import itertools

import numpy as np

from .errors import BudgetExceeded, CocycleError
from .groups import (
    Group, Subgroup, cyclic_group, derived_subgroup, direct_product, structure_invariants, sylow_subgroup,
)
from .modp import RowReducer, nullspace_mod, rank_mod

P = 3
H2_BUDGET = 648
EXHAUSTIVE_LIMIT = 216


# ---------------------------------------------------------------------------
# cocycles


class Cocycle2:
    """A normalized 2-cochain G x G -> F_3 (validated as a cocycle on demand)."""

    def __init__(self, group: Group, table, check: bool = True):
        t = np.mod(np.asarray(table, dtype=np.int64), P).astype(np.int8)
        n = group.order
        if t.shape != (n, n):
            raise CocycleError(f"cochain table must be {n} x {n}")
        if t[0].any() or t[:, 0].any():
            raise CocycleError("cochain is not normalized")
        t.flags.writeable = False
        self.group = group
        self.table = t
        if check:
            self.check()

    @classmethod
    def zero(cls, group: Group) -> "Cocycle2":
        return cls(group, np.zeros((group.order, group.order), dtype=np.int8), check=False)

    @classmethod
    def coboundary(cls, group: Group, g) -> "Cocycle2":
        """(dg)(x, y) = g(x) + g(y) - g(xy), for g with g(1) = 0."""
        g = np.asarray(g, dtype=np.int64) % P
        if g[0]:
            raise CocycleError("1-cochain must vanish at the identity")
        return cls(group, g[:, None] + g[None, :] - g[group.table], check=False)

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.group, self.table.astype(np.int64) + other.table, check=False)

    def scale(self, k: int) -> "Cocycle2":
        return Cocycle2(self.group, self.table.astype(np.int64) * k, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cocycle2) and np.array_equal(self.table, other.table)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.table.any()

    def defect_count(self, exhaustive: bool | None = None, samples: int = 1_000_000, seed: int = 3) -> int:
        """Number of failing triples (exhaustive up to order 216 by default, else sampled)."""
        G = self.group
        n = G.order
        t = G.table
        f = self.table.astype(np.int64)
        if exhaustive is None:
            exhaustive = n <= EXHAUSTIVE_LIMIT
        bad = 0
        if exhaustive:
            ar = np.arange(n)
            for x in range(n):
                xy = t[x]  # indexed by y
                lhs = f[x][:, None] + f[xy][:, ar]
                rhs = f + f[x][t]
                bad += int(np.count_nonzero((lhs - rhs) % P))
            return bad
        rng = np.random.default_rng(seed)
        x, y, z = (rng.integers(0, n, size=samples) for _ in range(3))
        lhs = f[x, y] + f[t[x, y], z]
        rhs = f[y, z] + f[x, t[y, z]]
        return int(np.count_nonzero((lhs - rhs) % P))

    def check(self, exhaustive: bool | None = None) -> None:
        bad = self.defect_count(exhaustive)
        if bad:
            raise CocycleError(f"cocycle identity fails on {bad} triples")

    def to_text(self) -> str:
        G = self.group
        head = [f"group: {G.name or ''}", f"digest: {G.digest}", f"order {G.order}"]
        body = ["".join(str(int(v)) for v in row) for row in self.table]
        return "\n".join(head + body) + "\n"

    @classmethod
    def from_text(cls, text: str, group: Group) -> "Cocycle2":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        meta = {}
        rows = []
        for ln in lines:
            if ln.startswith("group:"):
                meta["group"] = ln[6:].strip()
            elif ln.startswith("digest:"):
                meta["digest"] = ln[7:].strip()
            elif ln.startswith("order"):
                meta["order"] = int(ln.split()[1])
            else:
                rows.append([int(c) for c in ln.replace(" ", "")])
        if meta.get("digest") != group.digest or meta.get("order") != group.order:
            raise CocycleError("serialized cocycle belongs to a different group")
        return cls(group, np.array(rows))


def is_coboundary(f: Cocycle2) -> bool:
    """Direct test: is f = dg for some 1-cochain g?  (dense; for small groups)."""
    G = f.group
    n = G.order
    if n > 120:
        raise BudgetExceeded("direct coboundary test is limited to order 120")
    x, y = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    x, y = x.ravel(), y.ravel()
    xy = G.table[x, y]
    A = np.zeros((x.size, n), dtype=np.int64)
    np.add.at(A, (np.arange(x.size), x), 1)
    np.add.at(A, (np.arange(x.size), y), 1)
    np.add.at(A, (np.arange(x.size), xy), -1)
    A = A[:, 1:] % P
    b = f.table[x, y].astype(np.int64)
    return rank_mod(A, P) == rank_mod(np.hstack([A, b[:, None]]), P)


# ---------------------------------------------------------------------------
# H^2 through a presentation


@dataclass
class _Presentation:
    gens: list[int]
    order: list[int]  # BFS order of vertices
    parent_edge: dict[int, tuple[int, int]]  # vertex -> (parent, generator slot)
    edge_index: np.ndarray  # (n, r): unknown index of edge (w, s_j), or -1 on the tree
    letters: np.ndarray  # (n, r): how often s_j occurs in the tree word t(w)


def _presentation(G: Group, gens: list[int]) -> _Presentation:
    n, r = G.order, len(gens)
    rows = G.rows
    seen = [False] * n
    seen[0] = True
    order = [0]
    parent: dict[int, tuple[int, int]] = {}
    tree = np.zeros((n, r), dtype=bool)
    letters = np.zeros((n, r), dtype=np.int64)
    for w in order:
        for j, s in enumerate(gens):
            y = rows[w][s]
            if not seen[y]:
                seen[y] = True
                parent[y] = (w, j)
                tree[w, j] = True
                letters[y] = letters[w]
                letters[y, j] += 1
                order.append(y)
    if len(order) != n:
        raise CocycleError("generators do not generate the group")
    idx = np.full((n, r), -1, dtype=np.int64)
    nt = ~tree
    idx[nt] = np.arange(int(nt.sum()))
    return _Presentation(gens, order, parent, idx, letters)


@dataclass
class CohomologyBasis:
    group: Group
    z2_dim: int
    b2_dim: int
    h2_dim: int
    hom_dim: int  # dim Hom(G, C_3)
    representatives: list[Cocycle2]
    generators: list[int] = field(default_factory=list)

    def cocycle(self, coeffs) -> Cocycle2:
        """sum of coeffs[i] * representatives[i]."""
        n = self.group.order
        acc = np.zeros((n, n), dtype=np.int64)
        for c, f in zip(coeffs, self.representatives):
            acc += int(c) * f.table
        return Cocycle2(self.group, acc, check=False)

    def classes(self):
        """Coefficient vectors of all 3^h2 classes in lexicographic order."""
        return list(itertools.product(range(P), repeat=self.h2_dim))


def _estimate_bytes(n: int, r: int) -> int:
    ne = n * (r - 1) + 1
    return 8 * (r * n * ne + r * ne * ne) + 4 * n * n


def h2_basis(G: Group, budget_mb: float | None = None, check: bool = True) -> CohomologyBasis:
    """H^2(G, F_3) with explicit representative cocycles."""
    from .isomorphism import generating_set

    n = G.order
    if n > H2_BUDGET:
        raise BudgetExceeded(f"H^2 computation is capped at order {H2_BUDGET}")
    gens = generating_set(G)
    r = len(gens)
    if budget_mb is not None and _estimate_bytes(n, r) > budget_mb * 2**20:
        raise BudgetExceeded(
            f"H^2 for order {n} needs about {_estimate_bytes(n, r) / 2**20:.1f} MB (> {budget_mb} MB)"
        )
    if r == 0:  # trivial group
        return CohomologyBasis(G, 0, 0, 0, 0, [], gens)
    pres = _presentation(G, gens)
    eidx = pres.edge_index
    ne = int(eidx.max()) + 1
    t = G.table

    def unit_rows(ix: np.ndarray) -> np.ndarray:
        out = np.zeros((ix.size, ne), dtype=np.int64)
        ok = ix >= 0
        out[np.nonzero(ok)[0], ix[ok]] = 1
        return out

    # W[y][w] = rewriting of the tree word t(w) read from vertex y, as a linear form
    def rewrite_table(y: int) -> np.ndarray:
        W = np.zeros((n, ne), dtype=np.int64)
        for w in pres.order[1:]:
            p, j = pres.parent_edge[w]
            W[w] = W[p]
            k = eidx[t[y, p], j]
            if k >= 0:
                W[w, k] += 1
        return W % P

    nt_w, nt_j = np.nonzero(eidx >= 0)
    nt_s = np.array(gens)[nt_j]
    own = unit_rows(eidx[nt_w, nt_j])
    blocks = []
    for s in gens:
        W = rewrite_table(s)
        moved = unit_rows(eidx[t[s, nt_w], nt_j])
        blocks.append(W[nt_w] + moved - W[t[nt_w, nt_s]] - own)
    constraints = np.vstack(blocks) % P
    Z = nullspace_mod(constraints, P)  # rows: G-invariant homs R -> F_3
    z_dim = Z.shape[0]

    # image of Hom(F, F_3): psi(s_j) = 1 restricted to the Schreier generators
    L = pres.letters
    img = np.zeros((r, ne), dtype=np.int64)
    for j in range(r):
        vals = L[nt_w, j] + (nt_j == j) - L[t[nt_w, nt_s], j]
        img[j, eidx[nt_w, nt_j]] = vals
    img %= P
    red = RowReducer(ne, P)
    img_rank = red.add(img)
    hom_dim = r - img_rank
    reps_phi = []
    for row in Z:
        if red.add(row[None, :]):
            reps_phi.append(row)
    h2 = len(reps_phi)
    if h2 != z_dim - img_rank:
        raise CocycleError("image of Hom(F, F_3) is not inside the invariant homs (internal error)")
    b2 = (n - 1) - hom_dim

    reps = [_cocycle_from_phi(G, pres, np.asarray(phi), check) for phi in reps_phi]
    return CohomologyBasis(G, h2 + b2, b2, h2, hom_dim, reps, gens)


def _cocycle_from_phi(G: Group, pres: _Presentation, phi: np.ndarray, check: bool) -> Cocycle2:
    n = G.order
    t = G.table
    eidx = pres.edge_index
    E = np.where(eidx >= 0, phi[np.maximum(eidx, 0)], 0)  # (n, r) edge values
    f = np.zeros((n, n), dtype=np.int64)  # f[x, h] = W(x, h)
    for w in pres.order[1:]:
        p, j = pres.parent_edge[w]
        f[:, w] = f[:, p] + E[t[:, p], j]
    return Cocycle2(G, f % P, check=check)


def h2_dim_bruteforce(G: Group) -> tuple[int, int, int]:
    """(z2, b2, h2) from the full normalized cochain system; small groups only."""
    n = G.order
    if n > 40:
        raise BudgetExceeded("brute-force H^2 is limited to order 40")
    m = n - 1
    idx = lambda a, b: (a - 1) * m + (b - 1)  # noqa: E731
    t = G.table
    red = RowReducer(m * m, P)
    for x in range(1, n):
        rows = []
        for y in range(1, n):
            for z in range(1, n):
                row = np.zeros(m * m, dtype=np.int64)
                xy, yz = int(t[x, y]), int(t[y, z])
                row[idx(y, z)] += 1
                if xy:
                    row[idx(xy, z)] -= 1
                if yz:
                    row[idx(x, yz)] += 1
                row[idx(x, y)] -= 1
                rows.append(row)
        red.add(np.array(rows) % P)
    z2 = m * m - red.rank
    # Hom(G, C3) counted directly: 1-cocycles g with g(xy) = g(x) + g(y)
    xs, ys = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    A = np.zeros((xs.size, n), dtype=np.int64)
    np.add.at(A, (np.arange(xs.size), xs), 1)
    np.add.at(A, (np.arange(xs.size), ys), 1)
    np.add.at(A, (np.arange(xs.size), t[xs, ys]), -1)
    hom = m - rank_mod(A[:, 1:] % P, P)
    b2 = m - hom
    return z2, b2, z2 - b2


# ---------------------------------------------------------------------------
# extensions


def extension_from_cocycle(G: Group, f: Cocycle2, check: bool = True, name: str | None = None) -> Group:
    """The group on pairs (g, s), (g,s)(h,t) = (gh, s+t+f(g,h)), stored at 3g + s."""
    if f.group is not G and not np.array_equal(f.group.table, G.table):
        raise CocycleError("cocycle belongs to a different group")
    if check:
        f.check()
    n = G.order
    idx = np.arange(P * n)
    g, s = idx // P, idx % P
    gh = G.table[g[:, None], g[None, :]]
    st = (s[:, None] + s[None, :] + f.table.astype(np.int64)[g[:, None], g[None, :]]) % P
    return Group(P * gh + st, name=name or f"{G.name}.C3")


def central_subgroup(E: Group) -> Subgroup:
    """The kernel {(1, s)} of an extension built by extension_from_cocycle."""
    return Subgroup(E, np.arange(P), _checked=True)


def projection_splits(G: Group, f: Cocycle2) -> bool:
    """Does E -> G have a homomorphic section?  Searches lifts of generators.

    A section sends s_j to (s_j, c_j); it is well defined iff the walk
    a(x s_j) = a(x) + c_j + f(x, s_j) is consistent on the Cayley graph.
    """
    from .isomorphism import generating_set

    gens = generating_set(G)
    rows = G.rows
    ft = f.table.tolist()
    n = G.order
    for lift in itertools.product(range(P), repeat=len(gens)):
        a = [-1] * n
        a[0] = 0
        queue = [0]
        ok = True
        for x in queue:
            for s, c in zip(gens, lift):
                y = rows[x][s]
                v = (a[x] + c + ft[x][s]) % P
                if a[y] < 0:
                    a[y] = v
                    queue.append(y)
                elif a[y] != v:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


@dataclass
class ExtensionClass:
    """One isomorphism type of group among the extensions 1 -> C3 -> E -> G -> 1."""

    group: Group
    split: bool  # E is isomorphic to G x C3
    coefficient_vectors: list[tuple]
    cocycle: Cocycle2
    stem: bool = False  # the kernel C3 lies in the derived subgroup of E
    separated_by: dict[int, str] = field(default_factory=dict)

    def __iter__(self):
        yield self.group
        yield self.split


def enumerate_central_extensions(G: Group, basis: CohomologyBasis | None = None,
                                 use_degrees: bool = True) -> list[ExtensionClass]:
    """One ExtensionClass per isomorphism type of extension group.

    Classes are visited in lexicographic order of their H^2 coordinates.
    Fingerprints (cheapest first, character degrees last) separate what they
    can; backtracking isomorphism search decides the rest.  For every pair of
    distinct types ``separated_by`` names the invariant that told them apart.
    """
    from .isomorphism import find_isomorphism, fingerprint

    basis = basis or h2_basis(G)
    C3 = cyclic_group(3)
    product = direct_product(G, C3, name=f"{G.name}xC3")
    found: list[ExtensionClass] = []
    prints: list[dict] = []
    for coeffs in basis.classes():
        f = basis.cocycle(coeffs)
        E = extension_from_cocycle(G, f, check=False)
        fp = fingerprint(E, with_degrees=use_degrees)
        match = None
        for i, (cls, other) in enumerate(zip(found, prints)):
            if other == fp and find_isomorphism(E, cls.group) is not None:
                match = i
                break
        if match is not None:
            found[match].coefficient_vectors.append(coeffs)
            continue
        E.name = f"{G.name}.C3[{''.join(map(str, coeffs))}]"
        stem = bool(derived_subgroup(E).mask[:P].all())
        cls = ExtensionClass(E, False, [coeffs], f, stem)
        for i, (other_cls, other) in enumerate(zip(found, prints)):
            reason = next((k for k in fp if fp[k] != other[k]), "isomorphism search")
            cls.separated_by[i] = reason
            other_cls.separated_by[len(found)] = reason
        found.append(cls)
        prints.append(fp)
    pfp = fingerprint(product, with_degrees=use_degrees)
    for cls, fp in zip(found, prints):
        cls.split = fp == pfp and find_isomorphism(cls.group, product) is not None
    return found


# ---------------------------------------------------------------------------
# Schur multiplier


def ext_rank(G: Group) -> int:
    """dim Ext(G^ab, C3) = number of abelian invariants divisible by 3."""
    return sum(1 for d in structure_invariants(G).abelianization if d % 3 == 0)


def schur_multiplier_3rank(G: Group, basis: CohomologyBasis | None = None) -> int:
    """dim Hom(M(G), C3) = dim H^2(G, F_3) - dim Ext(G^ab, C3)."""
    basis = basis or h2_basis(G)
    rank = basis.h2_dim - ext_rank(G)
    if rank < 0:
        raise CocycleError("negative multiplier rank: H^2 and abelianization disagree")
    return rank


@dataclass(frozen=True)
class SylowContribution:
    q: int
    sylow: Subgroup
    sylow_h2_3rank: int


def sylow_multiplier_argument(G: Group) -> list[SylowContribution]:
    """3-rank of M(S) for a Sylow q-subgroup S, for every prime q dividing |G|.

    The 3-part of M(G) embeds in M of a Sylow 3-subgroup, and M(S) of a
    q-group S has no 3-part for q != 3, which is what the rows show.
    """
    from sympy import primefactors

    out = []
    for q in primefactors(G.order):
        S = sylow_subgroup(G, q)
        out.append(SylowContribution(int(q), S, schur_multiplier_3rank(S.group)))
    return out


__all__ = [
    "Cocycle2", "CohomologyBasis", "ExtensionClass", "SylowContribution",
    "h2_basis", "h2_dim_bruteforce", "is_coboundary", "extension_from_cocycle",
    "central_subgroup", "projection_splits", "enumerate_central_extensions",
    "ext_rank", "schur_multiplier_3rank", "sylow_multiplier_argument",
]
