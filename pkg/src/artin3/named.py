"""Catalogue of the concrete groups used throughout the package.

``build_named_group(name, params)`` accepts

``Cn`` (params ``[n]``, or written ``C12``), ``C3xC3``, ``Q8``, ``SL2F3``,
``Heis3``, ``P1``, ``P2``, ``P3``, ``J``, ``B`` (params ``[a]``), plus the
test fixtures ``C9:C3``, ``C7:C3`` and ``W`` (params ``[k, m]``).
"""

from __future__ import annotations

from functools import lru_cache
import itertools
import re

import numpy as np

from .errors import GroupError
from .groups import (
    Group,
    _table_from_elements,
    action_from_generators,
    cyclic_group,
    direct_product,
    semidirect_product,
    sylow_subgroup,
)

# rotation (x, y) -> (-y, x); order 4, no nonzero fixed vector
ROTATION = ((0, 2), (1, 0))
# another order-4 fixed-point-free matrix, conjugate to ROTATION in GL2(F3)
ROTATION_ALT = ((1, 1), (1, 2))


def elementary_abelian_3x3() -> Group:
    """C3 x C3 with the vector (x, y) stored at index x + 3y."""
    idx = np.arange(9)
    x, y = idx % 3, idx // 3
    tx = (x[:, None] + x[None, :]) % 3
    ty = (y[:, None] + y[None, :]) % 3
    return Group(tx + 3 * ty, name="C3xC3")


def vector_automorphism(matrix, p: int = 3) -> np.ndarray:
    """Permutation of F_p^2 (index x + p*y) induced by a 2x2 matrix."""
    m = np.asarray(matrix, dtype=np.int64) % p
    idx = np.arange(p * p)
    v = np.stack([idx % p, idx // p])
    w = (m @ v) % p
    return w[0] + p * w[1]


def _matrix_order(m, p: int = 3) -> int:
    m = np.asarray(m, dtype=np.int64) % p
    cur = m.copy()
    k = 1
    while not np.array_equal(cur, np.eye(2, dtype=np.int64)):
        cur = (cur @ m) % p
        k += 1
        if k > 100:
            raise GroupError("matrix is not invertible")
    return k


def sl2f3() -> tuple[Group, list[tuple]]:
    """SL2(F3) from all determinant-one matrices (identity first)."""
    ident = (1, 0, 0, 1)
    mats = [
        e for e in itertools.product(range(3), repeat=4)
        if (e[0] * e[3] - e[1] * e[2]) % 3 == 1 and e != ident
    ]
    elems = [ident] + sorted(mats)
    return _table_from_elements(elems, 2, 3, "SL2F3"), elems


def p1_group(matrix=ROTATION) -> Group:
    m = np.asarray(matrix) % 3
    if _matrix_order(m) != 4:
        raise GroupError("P1 needs an automorphism of order 4")
    if np.any(vector_automorphism(m)[1:] == np.arange(1, 9)):
        raise GroupError("P1 needs a fixed-point-free action")
    N = elementary_abelian_3x3()
    H = cyclic_group(4)
    act = action_from_generators(N, H, [1], [vector_automorphism(m)])
    return semidirect_product(N, H, act, name="P1")


def p3_group() -> Group:
    N = elementary_abelian_3x3()
    H, elems = sl2f3()
    act = np.array([vector_automorphism(np.array(e).reshape(2, 2)) for e in elems])
    return semidirect_product(N, H, act, name="P3")


def p2_group() -> Group:
    """(C3 x C3) x| Q8, taken inside P3 (N together with a Sylow 2-subgroup)."""
    P3 = build_named_group("P3")
    S = sylow_subgroup(P3, 2)
    sub = P3.subgroup(list(range(1, 9)) + S.members.tolist())
    G = sub.group
    G.name = "P2"
    return G


def heisenberg3() -> Group:
    """Exponent-3 group of order 27.

    Element (v, z) with v in F3^2, z in F3 lives at index v1 + 3 v2 + 9 z;
    the product adds a symplectic correction to z.
    """
    idx = np.arange(27)
    v1, v2, z = idx % 3, (idx // 3) % 3, idx // 9
    w = 2 * (v1[:, None] * v2[None, :] - v2[:, None] * v1[None, :])
    a = (v1[:, None] + v1[None, :]) % 3
    b = (v2[:, None] + v2[None, :]) % 3
    c = (z[:, None] + z[None, :] + w) % 3
    return Group(a + 3 * b + 9 * c, name="Heis3")


def heis_automorphism(matrix) -> np.ndarray:
    """(v, z) -> (A v, det(A) z), an automorphism for any A in GL2(F3)."""
    m = np.asarray(matrix, dtype=np.int64) % 3
    det = int(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) % 3
    idx = np.arange(27)
    v = np.stack([idx % 3, (idx // 3) % 3])
    z = idx // 9
    w = (m @ v) % 3
    return w[0] + 3 * w[1] + 9 * ((det * z) % 3)


def j_group() -> Group:
    N = heisenberg3()
    H = cyclic_group(4)
    act = action_from_generators(N, H, [1], [heis_automorphism(ROTATION)])
    return semidirect_product(N, H, act, name="J")


def b_group(a: int) -> Group:
    """(C_{3^(a+1)} x C3) x| C3 with generator acting by (x, y) -> (x + 3^a y, y)."""
    if a < 0:
        raise GroupError("B needs a >= 0")
    q = 3 ** (a + 1)
    n = 3 * q
    idx = np.arange(n)
    x, y = idx % q, idx // q
    N = Group(((x[:, None] + x[None, :]) % q) + q * ((y[:, None] + y[None, :]) % 3), name=f"C{q}xC3")
    sigma = ((x + 3**a * y) % q) + q * y
    act = action_from_generators(N, cyclic_group(3), [1], [sigma])
    return semidirect_product(N, cyclic_group(3), act, name=f"B({a})")


def metacyclic(n: int, m: int, r: int, name: str | None = None) -> Group:
    """C_n x| C_m with the generator acting by x -> r x."""
    if pow(r, m, n) != 1 % n:
        raise GroupError(f"x -> {r}x does not have order dividing {m} on C{n}")
    N = cyclic_group(n)
    act = action_from_generators(N, cyclic_group(m), [1], [(np.arange(n) * r) % n])
    return semidirect_product(N, cyclic_group(m), act, name=name or f"C{n}:C{m}")


def witness_group(k: int, m: int) -> Group:
    """(C3 x C3) x| (C_{2^k} x C_m), acting through a C4 quotient of C_{2^k}."""
    if k < 2 or m < 1 or m % 2 == 0:
        raise GroupError("witness group needs k >= 2 and odd m >= 1")
    N = elementary_abelian_3x3()
    H = direct_product(cyclic_group(2**k), cyclic_group(m), name=f"C{2**k}xC{m}")
    gens = [m] + ([1] if m > 1 else [])  # (1,0) and (0,1) in H's indexing
    auts = [vector_automorphism(ROTATION)] + ([np.arange(9)] if m > 1 else [])
    act = action_from_generators(N, H, gens, auts)
    return semidirect_product(N, H, act, name=f"W({k},{m})")


_PARAMLESS = {
    "C3xC3": elementary_abelian_3x3,
    "Q8": lambda: _q8(),
    "SL2F3": lambda: sl2f3()[0],
    "Heis3": heisenberg3,
    "P1": p1_group,
    "P2": p2_group,
    "P3": p3_group,
    "J": j_group,
    "C9:C3": lambda: metacyclic(9, 3, 4, "C9:C3"),
    "C7:C3": lambda: metacyclic(7, 3, 2, "C7:C3"),
}

NAMED_GROUPS = ("Cn", "C3xC3", "Q8", "SL2F3", "Heis3", "P1", "P2", "P3", "J", "B", "C9:C3", "C7:C3", "W")


def _q8() -> Group:
    from .groups import matrix_group

    G, _ = matrix_group([ROTATION, ROTATION_ALT], 3, name="Q8")
    return G


@lru_cache(maxsize=None)
def _build(name: str, params: tuple) -> Group:
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        if params:
            raise GroupError(f"{name} takes no parameters")
        return cyclic_group(int(m.group(1)))
    if name == "Cn":
        if len(params) != 1 or params[0] < 1:
            raise GroupError("Cn needs one parameter n >= 1")
        return cyclic_group(params[0])
    if name == "B":
        if len(params) != 1:
            raise GroupError("B needs one parameter a >= 0")
        return b_group(params[0])
    if name == "W":
        if len(params) != 2:
            raise GroupError("W needs parameters k, m")
        return witness_group(*params)
    if name in _PARAMLESS:
        if params:
            raise GroupError(f"{name} takes no parameters")
        return _PARAMLESS[name]()
    raise GroupError(f"unknown group name {name!r}; known: {', '.join(NAMED_GROUPS)}")


def build_named_group(name: str, params=()) -> Group:
    """Build a catalogued group.  Results are cached, so treat them as read-only."""
    return _build(name, tuple(int(p) for p in params))


def parse_group_spec(text: str) -> Group:
    """``"B[2]"``, ``"W[2,1]"``, ``"C12"``, ``"P1"`` -> Group."""
    m = re.fullmatch(r"\s*([A-Za-z0-9:]+)\s*(?:\[([0-9,\s]*)\])?\s*", text)
    if not m:
        raise GroupError(f"cannot parse group name {text!r}")
    params = [int(x) for x in (m.group(2) or "").split(",") if x.strip()]
    return build_named_group(m.group(1), params)
