"""Exact character theory.

Character tables come from the class algebra: the central characters
omega_chi(C_r) = |C_r| chi(g_r) / chi(1) are the common eigenvectors of the
class-multiplication matrices.  Those are split over a prime field F_q with
q = 1 mod exp(G).  Each value is then lifted back to Z[zeta_e] through its
eigenvalue multiplicities, which are small integers and so are recovered
exactly from their residues mod q.

Character values are int64 coefficient arrays in the power basis of
Q(zeta_N) (see :mod:`artin3.cyclotomic`), one row per conjugacy class.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
import json

import numpy as np
from sympy import isprime, primitive_root

from .cyclotomic import Cyclotomic, cconj, clift, cmul, phi, power_table, to_complex
from .errors import BudgetExceeded, CharacterError
from .groups import Group, Subgroup, subgroups_of_order
from .modp import inv_mod, nullspace_mod, rref_mod

TABLE_BUDGET = 1000


def _same_group(a: Group, b: Group) -> bool:
    return a is b or (a.order == b.order and np.array_equal(a.table, b.table))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Character:
    """A class function with values in Z[zeta_N] (usually a genuine character)."""

    __slots__ = ("group", "values", "n")

    def __init__(self, group: Group, values, n: int):
        v = np.asarray(values, dtype=np.int64)
        k = len(group.classes)
        if v.shape != (k, phi(n)):
            raise CharacterError(f"expected values of shape {(k, phi(n))}, got {v.shape}")
        v.flags.writeable = False
        self.group = group
        self.values = v
        self.n = n

    # -- basic access --------------------------------------------------
    @property
    def degree(self) -> int:
        d = self.values[0]
        if d[1:].any():
            raise CharacterError("value at the identity is not rational")
        return int(d[0])

    def value(self, t: int) -> Cyclotomic:
        """Exact value on class t."""
        return Cyclotomic.from_int_vector(self.values[t], self.n)

    def __call__(self, g: int) -> Cyclotomic:
        return self.value(int(self.group.classes.class_of[g]))

    def complex_values(self) -> np.ndarray:
        return to_complex(self.values, self.n)

    def lift(self, n: int) -> "Character":
        if n == self.n:
            return self
        return Character(self.group, clift(self.values, self.n, n), n)

    def _pair(self, other: "Character") -> tuple["Character", "Character"]:
        if not isinstance(other, Character):
            raise TypeError("expected a Character")
        if not _same_group(self.group, other.group):
            raise CharacterError("characters live on different groups")
        n = _lcm(self.n, other.n)
        return self.lift(n), other.lift(n)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        return Character(a.group, a.values + b.values, a.n)

    def __sub__(self, other):
        a, b = self._pair(other)
        return Character(a.group, a.values - b.values, a.n)

    def __neg__(self):
        return Character(self.group, -self.values, self.n)

    def scale(self, k: int) -> "Character":
        return Character(self.group, self.values * int(k), self.n)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        a, b = self._pair(other)
        return Character(a.group, cmul(a.values, b.values, a.n), a.n)

    __rmul__ = __mul__

    def conjugate(self) -> "Character":
        return Character(self.group, cconj(self.values, self.n), self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character) or not _same_group(self.group, other.group):
            return False
        a, b = self._pair(other)
        return bool(np.array_equal(a.values, b.values))

    def __hash__(self) -> int:
        return hash((self.group.order, self.degree, len(self.values)))

    def __repr__(self) -> str:
        return f"Character(deg={self.values[0, 0]}, group={self.group.name or self.group.order})"

    # -- inner products ------------------------------------------------
    def inner(self, other: "Character") -> Fraction:
        a, b = self._pair(other)
        sizes = a.group.classes.sizes
        prod = cmul(a.values, cconj(b.values, a.n), a.n)
        tot = (sizes[:, None] * prod).sum(axis=0)
        if tot[1:].any():
            raise CharacterError("inner product is not rational (not a pair of class functions of characters)")
        return Fraction(int(tot[0]), a.group.order)

    def norm(self) -> Fraction:
        return self.inner(self)

    def is_irreducible(self) -> bool:
        return self.norm() == 1 and self.values[0, 0] > 0

    def kernel_classes(self) -> np.ndarray:
        deg = self.values[0]
        return np.nonzero(np.all(self.values == deg, axis=1))[0]

    def is_faithful(self) -> bool:
        return self.kernel_classes().tolist() == [0]

    def to_list(self) -> list:
        return self.values.tolist()


def inner_product(a: Character, b: Character) -> Fraction:
    return a.inner(b)


def tensor(a: Character, b: Character) -> Character:
    return a * b


def conjugate(a: Character) -> Character:
    return a.conjugate()


def trivial_character(G: Group) -> Character:
    v = np.zeros((len(G.classes), 1), dtype=np.int64)
    v[:, 0] = 1
    return Character(G, v, 1)


def restrict(chi: Character, H: Subgroup) -> Character:
    """Res to H; the result lives on ``H.group``."""
    if not _same_group(chi.group, H.parent):
        raise CharacterError("subgroup does not belong to the character's group")
    Hg = H.group
    parent_cls = chi.group.classes.class_of[H.members[Hg.classes.reps]]
    return Character(Hg, chi.values[parent_cls], chi.n)


def induce(lam: Character, H: Subgroup) -> Character:
    """Ind from H to ``H.parent`` of a character on ``H.group``.

    Uses Ind(g_t) = |G| / (|H| |C_t|) * sum of lam over C_t intersected with H.
    """
    if not _same_group(lam.group, H.group):
        raise CharacterError("character is not defined on this subgroup")
    G = H.parent
    cls = G.classes
    local_cls = lam.group.classes.class_of  # local element -> H-class
    parent_cls = cls.class_of[H.members]
    acc = np.zeros((len(cls), lam.values.shape[1]), dtype=np.int64)
    np.add.at(acc, parent_cls, lam.values[local_cls])
    num = acc * G.order
    den = (H.order * cls.sizes)[:, None]
    if np.any(num % den):
        raise CharacterError("induced values are not algebraic integers (corrupt input)")
    return Character(G, num // den, lam.n)


def inflate(chi: Character, G: Group, projection) -> Character:
    """Pull a character of a quotient Q back along ``projection: G -> Q``."""
    proj = np.asarray(projection, dtype=np.int64)
    Q = chi.group
    qcls = Q.classes.class_of[proj[G.classes.reps]]
    return Character(G, chi.values[qcls], chi.n)


def character_arith(op: str, *args):
    """Dispatcher over restrict / tensor / inner_product / conjugate / induce."""
    ops = {
        "restrict": restrict,
        "tensor": tensor,
        "inner_product": inner_product,
        "conjugate": conjugate,
        "induce": induce,
    }
    if op not in ops:
        raise CharacterError(f"unknown operation {op!r}")
    return ops[op](*args)


# ---------------------------------------------------------------------------
# character tables


class CharacterTable:
    """Irreducible characters of a group, sorted by degree then by values."""

    def __init__(self, group: Group, characters: list[Character], prime: int | None = None):
        self.group = group
        self.characters = sorted(characters, key=lambda c: (c.degree, c.values.ravel().tolist()))
        self.prime = prime
        self.n = self.characters[0].n if self.characters else 1

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, i) -> Character:
        return self.characters[i]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.characters]

    @property
    def class_sizes(self) -> list[int]:
        return self.group.classes.sizes.tolist()

    @property
    def class_reps(self) -> list[int]:
        return self.group.classes.reps.tolist()

    def of_degree(self, d: int) -> list[Character]:
        return [c for c in self.characters if c.degree == d]

    def values_array(self) -> np.ndarray:
        return np.stack([c.lift(self.n).values for c in self.characters])

    def gram(self) -> np.ndarray:
        """Exact n * <chi_i, chi_j> as an integer matrix (checks rationality)."""
        X = self.values_array()
        sizes = self.group.classes.sizes
        return _rational_part(_exact_einsum("t,ita,jtb->ijab", sizes, X, cconj(X, self.n)), self.n)

    def column_gram(self) -> np.ndarray:
        X = self.values_array()
        return _rational_part(_exact_einsum("isa,itb->stab", X, cconj(X, self.n)), self.n)

    def verify(self) -> bool:
        """Exact row and column orthogonality, sum of squared degrees, class count."""
        G = self.group
        k = len(G.classes)
        if len(self) != k:
            raise CharacterError(f"{len(self)} irreducibles but {k} classes")
        if sum(d * d for d in self.degrees) != G.order:
            raise CharacterError("sum of squared degrees differs from |G|")
        if not np.array_equal(self.gram(), G.order * np.eye(k, dtype=np.int64)):
            raise CharacterError("row orthogonality fails")
        expected = np.diag(G.order // G.classes.sizes)
        if not np.array_equal(self.column_gram(), expected):
            raise CharacterError("column orthogonality fails")
        return True

    def to_json(self) -> str:
        doc = {
            "group": self.group.name,
            "digest": self.group.digest,
            "order": self.group.order,
            "field": self.n,
            "class_sizes": self.class_sizes,
            "class_reps": self.class_reps,
            "characters": [c.lift(self.n).values.tolist() for c in self.characters],
        }
        return json.dumps(doc, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str, group: Group) -> "CharacterTable":
        doc = json.loads(text)
        if doc["digest"] != group.digest:
            raise CharacterError("character table belongs to a different group")
        if doc["class_reps"] != group.classes.reps.tolist():
            raise CharacterError("class ordering mismatch")
        chars = [Character(group, v, doc["field"]) for v in doc["characters"]]
        return cls(group, chars)



def _exact_einsum(subscripts: str, *ops: np.ndarray) -> np.ndarray:
    """Integer einsum, routed through float64 BLAS when provably exact."""
    bound = 1.0
    for op in ops:
        bound *= float(np.abs(op).max(initial=0)) + 1.0
    terms = 1
    ins, out = subscripts.split("->")
    letters = {c for c in ins if c.isalpha()}
    dims = {}
    for sub, op in zip(ins.split(","), ops):
        dims.update(zip(sub, op.shape))
    for c in letters - set(out):
        terms *= dims[c]
    if bound * terms < 2.0**52:
        res = np.einsum(subscripts, *(op.astype(np.float64) for op in ops), optimize=True)
        return np.rint(res).astype(np.int64)
    return np.einsum(subscripts, *ops, optimize=True)


def _rational_part(W: np.ndarray, n: int) -> np.ndarray:
    """Contract (..., a, b) coefficient products with the multiplication tensor."""
    from .cyclotomic import _mul_tensor

    G_ = np.tensordot(W, _mul_tensor(n), axes=([-2, -1], [0, 1]))
    if G_[..., 1:].any():
        raise CharacterError("orthogonality sums are not rational")
    return G_[..., 0]


def _choose_prime(e: int, n: int) -> int:
    q = e + 1
    while not (isprime(q) and q > 2 * isqrt(n) + 1):
        q += e
    return q


def class_matrix(G: Group, r: int) -> np.ndarray:
    """M[s, t] = #{x in C_r : x^-1 z_t in C_s} for fixed z_t in C_t."""
    cls = G.classes
    k = len(cls)
    xs = cls.members[r]
    ys = G.table[G.inverse[xs][:, None], cls.reps[None, :]]
    s = cls.class_of[ys]
    M = np.zeros((k, k), dtype=np.int64)
    np.add.at(M, (s, np.broadcast_to(np.arange(k), s.shape)), 1)
    return M


def _normalize_columns(B: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    R, piv = rref_mod(B.T, q)
    return R.T.copy(), piv


def _eigen_split(A: np.ndarray, q: int, rng) -> list[np.ndarray]:
    """Eigenspaces (column bases) of a diagonalizable A over F_q."""
    d = A.shape[0]
    lam_all = np.arange(q, dtype=np.int64)
    roots: set[int] = set()
    spaces: dict[int, np.ndarray] = {}
    total = 0
    starts = [rng.integers(0, q, size=d) for _ in range(3)] + list(np.eye(d, dtype=np.int64))
    for v in starts:
        K = np.empty((d, d + 1), dtype=np.int64)
        K[:, 0] = v % q
        for j in range(d):
            K[:, j + 1] = (A @ K[:, j]) % q
        R, piv = rref_mod(K, q)
        j = next(c for c in range(d + 1) if c not in piv)
        # A^j v = sum c_i A^i v with coefficients read from column j
        coeffs = np.zeros(j + 1, dtype=np.int64)
        coeffs[j] = 1
        for row, c in enumerate(piv):
            if c < j:
                coeffs[c] = (-R[row, j]) % q
        val = np.zeros(q, dtype=np.int64)
        for c in coeffs[::-1]:
            val = (val * lam_all + c) % q
        for lam in np.nonzero(val == 0)[0].tolist():
            if lam in roots:
                continue
            roots.add(lam)
            U = nullspace_mod((A - lam * np.eye(d, dtype=np.int64)) % q, q)
            spaces[lam] = U.T
            total += U.shape[0]
        if total == d:
            break
    if total != d:
        raise CharacterError("class matrix is not diagonalizable over F_q (internal error)")
    return [spaces[lam] for lam in sorted(spaces)]


def _central_characters(G: Group, q: int) -> list[np.ndarray]:
    k = len(G.classes)
    rng = np.random.default_rng(20240917)
    pending = [(np.eye(k, dtype=np.int64), list(range(k)))]
    done: list[np.ndarray] = []
    for r in range(1, k):
        if not pending:
            break
        M = class_matrix(G, r) % q
        nxt = []
        for B, piv in pending:
            A = (M @ B)[piv] % q
            parts = _eigen_split(A, q, rng)
            for U in parts:
                nb, npiv = _normalize_columns((B @ U) % q, q)
                (done if nb.shape[1] == 1 else nxt).append((nb, npiv) if nb.shape[1] > 1 else nb[:, 0])
        pending = nxt
    if pending:
        raise CharacterError("class matrices failed to separate the characters")
    out = []
    for v in done:
        out.append((v * inv_mod(int(v[0]), q)) % q)
    return out


def _abelian_table(G: Group) -> list[Character]:
    from .isomorphism import generating_set

    e = G.exponent
    n = G.order
    gens = generating_set(G)
    rows = G.rows
    orders = G.element_orders
    pt = power_table(e)
    chars: list[Character] = []

    def walk(imgs):
        # additive exponents a(x) with zeta_e^a(x) the value at x, on <gens[:len(imgs)]>
        a = [-1] * n
        a[0] = 0
        queue = [0]
        for x in queue:
            for g, v in zip(gens, imgs):
                y = rows[x][g]
                w = (a[x] + v) % e
                if a[y] < 0:
                    a[y] = w
                    queue.append(y)
                elif a[y] != w:
                    return None
        return a

    def rec(imgs):
        i = len(imgs)
        if i == len(gens):
            a = np.array(walk(imgs))
            chars.append(Character(G, pt[a[G.classes.reps]], e))
            return
        o = int(orders[gens[i]])
        for m in range(o):
            trial = imgs + [m * (e // o)]
            if walk(trial) is not None:
                rec(trial)

    if not gens:
        return [trivial_character(G)]
    rec([])
    return chars


def _dixon_table(G: Group) -> tuple[list[Character], int]:
    n = G.order
    cls = G.classes
    k = len(cls)
    e = G.exponent
    q = _choose_prime(e, n)
    z = pow(int(primitive_root(q)), (q - 1) // e, q)
    inv_size = np.array([inv_mod(int(h), q) for h in cls.sizes], dtype=np.int64)
    W = np.array(_central_characters(G, q), dtype=np.int64)  # (chars, classes)
    S = (W * W[:, cls.inverse_class] % q * inv_size % q).sum(axis=1) % q
    degrees = []
    for s in S.tolist():
        target = (n * inv_mod(s, q)) % q
        ds = [d for d in range(1, isqrt(n) + 1) if (d * d - target) % q == 0]
        if len(ds) != 1:
            raise CharacterError("could not determine a character degree (internal error)")
        degrees.append(ds[0])
    deg = np.array(degrees, dtype=np.int64)
    chi_q = deg[:, None] * W % q * inv_size[None, :] % q
    pt = power_table(e)
    vals = np.zeros((len(deg), k, phi(e)), dtype=np.int64)
    for t in range(k):
        o = int(cls.element_order[t])
        zo = pow(z, e // o, q)
        jl = np.outer(np.arange(o), np.arange(o)) % o
        Z = np.array([pow(zo, (-x) % o, q) for x in range(o)], dtype=np.int64)[jl]
        # multiplicity of eigenvalue zeta_o^j, recovered exactly from its residue
        mult = (chi_q[:, list(cls.powers[t])] @ Z.T) % q * inv_mod(o, q) % q
        if np.any(mult > deg[:, None]) or np.any(mult.sum(axis=1) != deg):
            raise CharacterError("eigenvalue multiplicities inconsistent with the degree")
        vals[:, t, :] = mult @ pt[(np.arange(o) * (e // o)) % e]
    return [Character(G, v, e) for v in vals], q


def character_table(G: Group) -> CharacterTable:
    """Exact character table (cached on the group)."""
    cached = G._cache.get("character_table")
    if cached is not None:
        return cached
    if G.order > TABLE_BUDGET:
        raise BudgetExceeded(f"character tables are capped at order {TABLE_BUDGET}")
    if G.is_abelian:
        tab = CharacterTable(G, _abelian_table(G))
    else:
        chars, q = _dixon_table(G)
        tab = CharacterTable(G, chars, prime=q)
    tab.verify()
    G._cache["character_table"] = tab
    return tab


def count_irreducibles_of_degree(G: Group, d: int) -> int:
    return sum(1 for c in character_table(G) if c.degree == d)


# ---------------------------------------------------------------------------
# Mackey theory, fixed points, primitivity


def double_cosets(K: Subgroup, H: Subgroup) -> list[int]:
    """Representatives of K \\ G / H."""
    G = K.parent
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    for g in range(G.order):
        if seen[g]:
            continue
        reps.append(g)
        dc = G.table[G.table[K.members, g][:, None], H.members[None, :]]
        seen[dc.ravel()] = True
    return reps


def _conjugated_on_intersection(lam: Character, H: Subgroup, K: Subgroup, s: int):
    """(K_s, lam^s) with K_s = K meet sHs^-1 inside K.group, lam^s(y) = lam(s^-1 y s)."""
    G = H.parent
    t, inv = G.table, G.inverse
    sHs = t[t[s, H.members], inv[s]]
    mask = np.zeros(G.order, dtype=bool)
    mask[sHs] = True
    inter = K.members[mask[K.members]]
    Kg = K.group
    Ks = Subgroup(Kg, K.local_index[inter], _checked=True)
    Ksg = Ks.group
    # for each class rep of Ks.group: local -> K-local -> parent -> conjugate back into H
    parent = inter[Ksg.classes.reps]
    back = t[t[inv[s], parent], s]
    h_local = H.local_index[back]
    vals = lam.values[lam.group.classes.class_of[h_local]]
    return Ks, Character(Ksg, vals, lam.n)


def mackey_decomposition(lam: Character, H: Subgroup, K: Subgroup) -> list[Character]:
    """Summands of Res_K Ind_H lam, one per double coset K s H."""
    out = []
    for s in double_cosets(K, H):
        Ks, lam_s = _conjugated_on_intersection(lam, H, K, s)
        out.append(induce(lam_s, Ks))
    return out


def mackey_irreducible(lam: Character, H: Subgroup) -> bool:
    """Mackey's criterion for a linear character: Ind lam is irreducible iff
    lam^s and lam differ on H meet sHs^-1 for every s outside H."""
    if lam.degree != 1:
        raise CharacterError("Mackey's criterion is applied to linear characters here")
    for s in double_cosets(H, H):
        if H.mask[s]:
            continue
        Hs, lam_s = _conjugated_on_intersection(lam, H, H, s)
        own = restrict(lam, Subgroup(H.group, Hs.members, _checked=True))
        if own == lam_s:
            return False
    return True


def fixed_subspace_dim(chi: Character, H: Subgroup) -> int:
    """dim V^H = (1/|H|) sum_{h in H} chi(h)."""
    if not _same_group(chi.group, H.parent):
        raise CharacterError("subgroup does not belong to the character's group")
    cnt = np.bincount(chi.group.classes.class_of[H.members], minlength=len(chi.group.classes))
    tot = (cnt[:, None] * chi.values).sum(axis=0)
    if tot[1:].any() or tot[0] % H.order or tot[0] < 0:
        raise CharacterError("average over the subgroup is not a non-negative integer")
    return int(tot[0] // H.order)


def inducing_pair(chi: Character) -> tuple[Subgroup, Character] | None:
    """A proper subgroup H and irreducible lam on H with Ind lam = chi, if any.

    Only indices dividing the degree can occur.  By Frobenius reciprocity an
    irreducible lam of degree deg(chi)/[G:H] inside Res_H chi induces to chi.
    """
    G = chi.group
    d = chi.degree
    for m in sorted(x for x in range(2, d + 1) if d % x == 0 and G.order % x == 0):
        for H in subgroups_of_order(G, G.order // m, up_to_conjugacy=True):
            res = restrict(chi, H)
            for lam in character_table(H.group):
                if lam.degree == d // m and lam.inner(res) > 0:
                    return H, lam
    return None


def is_primitive(chi: Character) -> bool:
    """True iff chi is not induced from a proper subgroup (linear chars: True)."""
    if chi.degree == 1:
        return True
    return inducing_pair(chi) is None


__all__ = [
    "Character", "CharacterTable", "character_table", "count_irreducibles_of_degree",
    "inner_product", "tensor", "conjugate", "restrict", "induce", "inflate",
    "character_arith", "trivial_character", "class_matrix", "double_cosets",
    "mackey_decomposition", "mackey_irreducible", "fixed_subspace_dim",
    "inducing_pair", "is_primitive",
]

