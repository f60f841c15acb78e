"""Finite groups stored as full multiplication tables.

Elements are the integers ``0 .. n-1`` with ``0`` the identity.  Everything
here is exhaustive and table driven, which is fine up to order ~1000 and is
what makes the rest of the package verifiable by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
import hashlib

import numpy as np
from sympy import factorint

from .errors import GroupError


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Group:
    """A finite group given by its Cayley table.

    ``table[a, b]`` is the index of ``a*b``.  The constructor checks the cheap
    axioms (square, identity at 0, Latin square); call :meth:`verify` for the
    exhaustive associativity check.
    """

    def __init__(self, table, name: str | None = None, labels=None, check: bool = True):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("multiplication table must be a nonempty square array")
        n = t.shape[0]
        if check:
            ar = np.arange(n)
            if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
                raise GroupError("element 0 is not a two-sided identity")
            if t.min() < 0 or t.max() >= n:
                raise GroupError("table entries out of range")
            srt_rows = np.sort(t, axis=1)
            srt_cols = np.sort(t, axis=0)
            if not (np.all(srt_rows == ar) and np.all(srt_cols == ar[:, None])):
                raise GroupError("table is not a Latin square (inverses not unique)")
        t.flags.writeable = False
        self.table = t
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"Group({self.name or 'unnamed'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for tight scalar loops."""
        return self.table.tolist()

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # the unique column holding 0
        inv.flags.writeable = False
        return inv

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inverse[g]), -k
        out, base = 0, int(g)
        while k:
            if k & 1:
                out = int(self.table[out, base])
            base = int(self.table[base, base])
            k >>= 1
        return out

    def verify(self) -> bool:
        """Exhaustive associativity check; raises GroupError on failure."""
        t = self.table
        n = self.order
        step = max(1, 2_000_000 // (n * n))
        for a0 in range(0, n, step):
            a = np.arange(a0, min(n, a0 + step))
            left = t[t[a][:, :, None], np.arange(n)[None, None, :]]  # (ab)c
            right = t[a[:, None, None], t[None, :, :]]  # a(bc)
            if not np.array_equal(left, right):
                raise GroupError(f"{self!r} is not associative")
        return True

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        t = self.table
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = ar.copy()
        k = 1
        while not orders.all():
            cur = t[cur, ar]
            k += 1
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        orders.flags.writeable = False
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(reduce(_lcm, set(self.element_orders.tolist()), 1))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def classes(self) -> "ConjugacyClasses":
        return ConjugacyClasses.compute(self)

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(self.table.astype(np.int32).tobytes()).hexdigest()[:16]

    def closure(self, gens) -> np.ndarray:
        """Sorted members of the subgroup generated by ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        gens = gens[gens != 0]
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        while frontier.size and gens.size:
            prod = np.unique(self.table[np.ix_(frontier, gens)])
            frontier = prod[~seen[prod]]
            seen[frontier] = True
        return np.nonzero(seen)[0]

    def subgroup(self, gens) -> "Subgroup":
        return Subgroup(self, self.closure(gens))

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.array([0]))

    def conjugate(self, g: int, x: int) -> int:
        """x g x^-1."""
        return int(self.table[self.table[x, g], self.inverse[x]])


@dataclass(frozen=True, eq=False)
class ConjugacyClasses:
    members: tuple  # tuple of sorted index arrays, identity class first
    class_of: np.ndarray
    group_order: int
    element_order: np.ndarray  # per class
    powers: tuple  # powers[t][l] = class of rep_t ** l, l = 0 .. order-1

    @classmethod
    def compute(cls, G: Group) -> "ConjugacyClasses":
        n = G.order
        t = G.table
        inv = G.inverse
        col = np.arange(n)
        class_id = np.full(n, -1, dtype=np.int64)
        found = []
        for g in range(n):
            if class_id[g] >= 0:
                continue
            orbit = np.unique(t[t[col, g], inv])
            class_id[orbit] = len(found)
            found.append(orbit)
        orders = G.element_orders
        keys = [(int(orders[c[0]]), len(c), int(c[0])) for c in found]
        perm = sorted(range(len(found)), key=lambda i: keys[i])
        members = tuple(found[i] for i in perm)
        class_of = np.empty(n, dtype=np.int64)
        for k, c in enumerate(members):
            class_of[c] = k
            c.flags.writeable = False
        class_of.flags.writeable = False
        el_order = np.array([int(orders[c[0]]) for c in members], dtype=np.int64)
        powers = []
        for c in members:
            g = int(c[0])
            row, cur = [], 0
            for _ in range(int(orders[g])):
                row.append(int(class_of[cur]))
                cur = int(t[cur, g])
            powers.append(tuple(row))
        return cls(members, class_of, n, el_order, tuple(powers))

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.members], dtype=np.int64)

    @cached_property
    def reps(self) -> np.ndarray:
        return np.array([int(c[0]) for c in self.members], dtype=np.int64)

    @cached_property
    def inverse_class(self) -> np.ndarray:
        return np.array([p[-1] if len(p) > 1 else 0 for p in self.powers], dtype=np.int64)

    def power_class(self, t: int, l: int) -> int:
        p = self.powers[t]
        return p[l % len(p)]


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subset of a parent group closed under products and inverses."""

    parent: Group
    members: np.ndarray
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        m = np.unique(np.asarray(self.members, dtype=np.int64))
        object.__setattr__(self, "members", m)
        m.flags.writeable = False
        if m.size == 0 or m[0] != 0:
            raise GroupError("subgroup must contain the identity")
        if not self._checked:
            mask = self.mask
            prods = self.parent.table[np.ix_(m, m)]
            if not mask[prods].all():
                raise GroupError("subset is not closed under multiplication")
        if self.parent.order % m.size:
            raise GroupError("Lagrange violated: subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g) -> bool:
        return bool(self.mask[int(g)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(other.members, self.members)
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members.tobytes()))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @cached_property
    def mask(self) -> np.ndarray:
        mk = np.zeros(self.parent.order, dtype=bool)
        mk[self.members] = True
        return mk

    @cached_property
    def local_index(self) -> np.ndarray:
        """Parent index -> index in :attr:`group` (or -1)."""
        loc = np.full(self.parent.order, -1, dtype=np.int64)
        loc[self.members] = np.arange(self.order)
        return loc

    @cached_property
    def group(self) -> Group:
        """This subgroup as a standalone :class:`Group` (members in sorted order)."""
        sub = self.parent.table[np.ix_(self.members, self.members)]
        name = f"{self.parent.name}<{self.order}>" if self.parent.name else None
        return Group(self.local_index[sub], name=name)

    def index(self) -> int:
        return self.parent.order // self.order

    def is_normal(self) -> bool:
        G = self.parent
        t, inv = G.table, G.inverse
        conj = t[t[np.arange(G.order)[:, None], self.members[None, :]], inv[:, None]]
        return bool(self.mask[conj].all())

    def conjugate_by(self, x: int) -> "Subgroup":
        G = self.parent
        conj = G.table[G.table[x, self.members], G.inverse[x]]
        return Subgroup(G, conj, _checked=True)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return other.parent is self.parent and bool(other.mask[self.members].all())


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: Group
    target: Group
    images: np.ndarray

    def __post_init__(self):
        im = np.asarray(self.images, dtype=np.int64)
        object.__setattr__(self, "images", im)
        if im.shape != (self.source.order,):
            raise GroupError("homomorphism needs one image per source element")

    def __call__(self, g: int) -> int:
        return int(self.images[g])

    def is_homomorphism(self) -> bool:
        im = self.images
        s, t = self.source.table, self.target.table
        return bool(im[0] == 0 and np.array_equal(t[im[:, None], im[None, :]], im[s]))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, np.nonzero(self.images == 0)[0])

    def image(self) -> Subgroup:
        return Subgroup(self.target, np.unique(self.images))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and np.unique(self.images).size == self.target.order


# --- constructions --------------------------------------------------------

def cyclic_group(n: int) -> Group:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    ar = np.arange(n)
    return Group((ar[:, None] + ar[None, :]) % n, name=f"C{n}", labels=[str(i) for i in ar])


def direct_product(G: Group, H: Group, name: str | None = None) -> Group:
    """G x H with (g, h) stored at index g*|H| + h."""
    m = H.order
    idx = np.arange(G.order * m)
    g, h = idx // m, idx % m
    table = G.table[g[:, None], g[None, :]] * m + H.table[h[:, None], h[None, :]]
    return Group(table, name=name or f"({G.name})x({H.name})")


def _check_automorphism(N: Group, perm: np.ndarray) -> None:
    n = N.order
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)) or perm[0] != 0:
        raise GroupError("action image is not a permutation fixing the identity")
    t = N.table
    if not np.array_equal(t[perm[:, None], perm[None, :]], perm[t]):
        raise GroupError("action image is not an automorphism")


def semidirect_product(N: Group, H: Group, action, name: str | None = None) -> Group:
    """N x| H where ``action[h]`` is the automorphism of N by which h acts.

    Elements (n, h) are stored at index ``h*|N| + n``, so N occupies the first
    |N| indices.  Multiplication is (n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2).
    """
    act = np.asarray(action, dtype=np.int64)
    if act.shape != (H.order, N.order):
        raise GroupError("action must give one automorphism of N per element of H")
    for h in range(H.order):
        _check_automorphism(N, act[h])
    if not np.array_equal(act[0], np.arange(N.order)):
        raise GroupError("identity of H must act trivially")
    for h1 in range(H.order):
        if not np.array_equal(act[H.table[h1]], act[h1][act]):
            raise GroupError("action is not a homomorphism H -> Aut(N)")
    nn = N.order
    idx = np.arange(nn * H.order)
    n_, h_ = idx % nn, idx // nn
    new_n = N.table[n_[:, None], act[h_[:, None], n_[None, :]]]
    new_h = H.table[h_[:, None], h_[None, :]]
    return Group(new_h * nn + new_n, name=name or f"({N.name}):({H.name})")


def action_from_generators(N: Group, H: Group, gens, automorphisms) -> np.ndarray:
    """Extend generator images to a full action array H -> Aut(N).

    Raises GroupError if the prescription is not a homomorphism.
    """
    auts = [np.asarray(a, dtype=np.int64) for a in automorphisms]
    for a in auts:
        _check_automorphism(N, a)
    act = np.full((H.order, N.order), -1, dtype=np.int64)
    act[0] = np.arange(N.order)
    queue = [0]
    t = H.rows
    for h in queue:
        for g, a in zip(gens, auts):
            hg = t[h][g]
            img = act[h][a]
            if act[hg, 0] < 0:
                act[hg] = img
                queue.append(hg)
            elif not np.array_equal(act[hg], img):
                raise GroupError("generator automorphisms do not define an action")
    if (act[:, 0] < 0).any():
        raise GroupError("generators do not generate H")
    return act


def quotient_group(N: Subgroup, name: str | None = None) -> tuple[Group, np.ndarray]:
    """G/N for normal N.  Returns the quotient and the projection array."""
    if not N.is_normal():
        raise GroupError("quotient by a non-normal subgroup")
    G = N.parent
    cosets = G.table[:, N.members]  # row g is the coset gN
    key = cosets.min(axis=1)
    reps, proj = np.unique(key, return_inverse=True)
    table = proj[G.table[np.ix_(reps, reps)]]
    return Group(table, name=name), proj


def relabel(G: Group, perm) -> Group:
    """Isomorphic copy in which new element i is old element perm[i]."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm[0] != 0:
        raise GroupError("relabelling must keep the identity at 0")
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)
    return Group(inv[G.table[np.ix_(perm, perm)]], name=G.name)


def matrix_group(gens, p: int, name: str | None = None) -> tuple[Group, list[tuple]]:
    """Closure of invertible d x d matrices over F_p, as a table group.

    Returns the group and its elements (as flattened tuples); the identity
    comes first and the rest are in lexicographic order.
    """
    gens = [np.asarray(g, dtype=np.int64) % p for g in gens]
    d = gens[0].shape[0]
    ident = tuple(np.eye(d, dtype=np.int64).ravel())
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            xm = np.array(x).reshape(d, d)
            for g in gens:
                y = tuple(((xm @ g) % p).ravel())
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = [ident] + sorted(seen - {ident})
    return _table_from_elements(elems, d, p, name), elems


def _table_from_elements(elems, d, p, name):
    index = {e: i for i, e in enumerate(elems)}
    mats = np.array(elems, dtype=np.int64).reshape(-1, d, d)
    prod = np.einsum("aij,bjk->abik", mats, mats) % p
    flat = prod.reshape(len(elems), len(elems), d * d)
    table = np.empty((len(elems), len(elems)), dtype=np.int64)
    for a in range(len(elems)):
        for b in range(len(elems)):
            table[a, b] = index[tuple(flat[a, b])]
    return Group(table, name=name)


# --- structure ------------------------------------------------------------

def conjugacy_classes(G: Group) -> list[np.ndarray]:
    """The conjugacy classes of G, identity class first."""
    return list(G.classes.members)


def center(G: Group) -> Subgroup:
    t = G.table
    central = np.nonzero(np.all(t == t.T, axis=0))[0]
    return Subgroup(G, central, _checked=True)


def centralizer(G: Group, g: int) -> Subgroup:
    t = G.table
    return Subgroup(G, np.nonzero(t[g, :] == t[:, g])[0], _checked=True)


def derived_subgroup(G: Group) -> Subgroup:
    t, inv = G.table, G.inverse
    n = G.order
    ar = np.arange(n)
    comms = np.unique(t[t[t[inv[:, None], inv[None, :]], ar[:, None]], ar[None, :]])
    return Subgroup(G, G.closure(comms), _checked=True)


def abelian_invariants(A: Group) -> list[int]:
    """Elementary divisors (prime powers, sorted) of an abelian group."""
    if not A.is_abelian:
        raise GroupError("abelian_invariants needs an abelian group")
    orders = A.element_orders
    out = []
    for q, e in factorint(A.order).items():
        prev = 0
        ranks = []
        for k in range(1, e + 1):
            cnt = int(np.count_nonzero((q**k) % orders == 0))
            s = round(np.log(cnt) / np.log(q))
            ranks.append(s - prev)
            prev = s
        # ranks[k-1] = number of cyclic factors of exponent >= k
        for k in range(1, e + 1):
            at_least = ranks[k - 1]
            beyond = ranks[k] if k < e else 0
            out.extend([q**k] * (at_least - beyond))
    return sorted(out)


@dataclass(frozen=True)
class StructureInvariants:
    center: Subgroup
    derived: Subgroup
    abelianization: list
    exponent: int


def structure_invariants(G: Group) -> StructureInvariants:
    D = derived_subgroup(G)
    ab, _ = quotient_group(D)
    return StructureInvariants(center(G), D, abelian_invariants(ab), G.exponent)


def sylow_subgroup(G: Group, q: int) -> Subgroup:
    """A Sylow q-subgroup, grown greedily from q-elements."""
    target = 1
    n = G.order
    while n % q == 0:
        n //= q
        target *= q
    if target == 1:
        return G.trivial()
    orders = G.element_orders
    qelems = [g for g in range(1, G.order) if _is_power_of(int(orders[g]), q)]
    cur = np.array([0])
    while cur.size < target:
        mask = np.zeros(G.order, dtype=bool)
        mask[cur] = True
        for g in qelems:
            if mask[g]:
                continue
            cand = G.closure(list(cur) + [g])
            if _is_power_of(cand.size, q):
                cur = cand
                break
        else:  # pragma: no cover - impossible by Sylow theory
            raise GroupError("failed to grow a q-subgroup")
    return Subgroup(G, cur, _checked=True)


def _is_power_of(m: int, q: int) -> bool:
    while m % q == 0:
        m //= q
    return m == 1


def _conjugacy_key(G: Group, S: np.ndarray) -> bytes:
    t, inv = G.table, G.inverse
    conj = np.sort(t[t[:, S], inv[:, None]], axis=1)
    order = np.lexsort(conj.T[::-1])
    return conj[order[0]].tobytes()


def subgroups_of_order(G: Group, m: int, up_to_conjugacy: bool = False,
                       limit: int = 20000) -> list[Subgroup]:
    """Subgroups of order m, found by joining cyclic subgroups.

    Every subgroup of order m is reached through a chain of subgroups whose
    orders divide m, so the search only keeps subgroups with order | m.  With
    ``up_to_conjugacy`` one representative per conjugacy class is returned;
    the pruning is sound because conjugating a chain gives a chain.
    """
    if G.order % m:
        return []
    orders = G.element_orders
    elems = [g for g in range(G.order) if m % int(orders[g]) == 0]
    key = (lambda S: _conjugacy_key(G, S)) if up_to_conjugacy else (lambda S: S.tobytes())
    seen: dict[bytes, np.ndarray] = {}
    layer = []
    for g in elems:
        c = G.closure([g])
        k = key(c)
        if k not in seen:
            seen[k] = c
            layer.append(c)
    while layer:
        nxt = []
        for S in layer:
            if S.size == m:
                continue
            mask = np.zeros(G.order, dtype=bool)
            mask[S] = True
            gens = _small_gens(G, S)
            for g in elems:
                if mask[g]:
                    continue
                T = G.closure(gens + [g])
                # <S, s g^k s'> = <S, g> whenever k is prime to the order of g
                o = int(orders[g])
                pw = [G.power(g, k) for k in range(1, o) if gcd(k, o) == 1]
                dc = G.table[G.table[S[:, None], np.array(pw)[None, :]].ravel()[:, None], S[None, :]]
                mask[dc.ravel()] = True
                if m % T.size:
                    continue
                k = key(T)
                if k not in seen:
                    seen[k] = T
                    nxt.append(T)
                    if len(seen) > limit:
                        from .errors import BudgetExceeded

                        raise BudgetExceeded("too many subgroups to enumerate")
        layer = nxt
    return [Subgroup(G, S, _checked=True) for S in seen.values() if S.size == m]


def _small_gens(G: Group, S: np.ndarray) -> list[int]:
    gens: list[int] = []
    cur = np.array([0])
    for g in S[::-1]:
        if g not in set(cur.tolist()):
            gens.append(int(g))
            cur = G.closure(gens)
            if cur.size == S.size:
                break
    return gens


# --- serialization --------------------------------------------------------

def dump_group(G: Group) -> str:
    lines = []
    if G.name:
        lines.append(f"name: {G.name}")
    lines.append(f"order {G.order}")
    for row in G.table:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def load_group(text: str) -> Group:
    name = None
    order = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("name:"):
            name = line[5:].strip() or None
        elif line.startswith("order"):
            order = int(line.split()[1])
        else:
            rows.append([int(x) for x in line.split()])
    if order is None:
        raise GroupError("missing 'order n' line")
    if len(rows) != order or any(len(r) != order for r in rows):
        raise GroupError(f"expected {order} rows of {order} entries")
    return Group(rows, name=name)


def element_iter(G: Group):
    return range(G.order)


__all__ = [
    "Group", "Subgroup", "GroupHom", "ConjugacyClasses", "StructureInvariants",
    "cyclic_group", "direct_product", "semidirect_product", "action_from_generators",
    "quotient_group", "relabel", "matrix_group", "conjugacy_classes", "center",
    "centralizer", "derived_subgroup", "abelian_invariants", "structure_invariants",
    "sylow_subgroup", "subgroups_of_order", "dump_group", "load_group",
]
