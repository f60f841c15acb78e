"""Artin conductor exponents from (lower-numbered) ramification filtrations.

The p-exponent of the conductor of a representation with character chi is

    sum_{i >= 0} (g_i / g_0) * (chi(1) - dim V^{G_i}).

Filtrations come either as explicit subgroup chains of a finite group or
as bare order patterns (for towers of cyclotomic fields, where only the
orders g_i are known).  For order patterns the fixed dimension
is supplied by the "central rule": every nontrivial G_i contains a central
element acting by a nontrivial scalar, so dim V^{G_i} = 0 there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors, isprime

from .characters import Character, character_table, fixed_subspace_dim
from .errors import ArtinError, GroupError
from .groups import Group, Subgroup


class ConductorError(ArtinError, ValueError):
    """Invalid filtration data or parameters."""


@dataclass(frozen=True)
class RamificationFiltration:
    """G_0 >= G_1 >= ... >= G_N = 1 inside ``group``; G_i = 1 beyond the list."""

    group: Group
    chain: tuple

    def __post_init__(self):
        chain = tuple(self.chain)
        object.__setattr__(self, "chain", chain)
        if not chain:
            raise ConductorError("filtration needs at least G_0")
        for H in chain:
            if H.parent is not self.group:
                raise ConductorError("filtration subgroups must lie in the given group")
        for a, b in zip(chain, chain[1:]):
            if not b.is_subgroup_of(a):
                raise ConductorError("filtration is not descending")
        if chain[-1].order != 1:
            raise ConductorError("filtration must end in the trivial subgroup")
        G0 = chain[0]
        for H in chain[1:]:
            conj = self.group.table[self.group.table[G0.members[:, None], H.members[None, :]],
                                    self.group.inverse[G0.members][:, None]]
            if not H.mask[conj].all():
                raise ConductorError("every G_i must be normal in G_0")

    @property
    def orders(self) -> list[int]:
        return [H.order for H in self.chain]

    def check_tame_by_wild(self, p: int) -> bool:
        """G_1 is a normal p-subgroup of G_0 with cyclic-order quotient prime to p."""
        if len(self.chain) < 2:
            return True
        g0, g1 = self.chain[0].order, self.chain[1].order
        m = g1
        while m % p == 0:
            m //= p
        return m == 1 and (g0 // g1) % p != 0


@dataclass(frozen=True)
class FiltrationOrders:
    """Orders g_0, g_1, ... of a filtration; g_i = 1 past the end of ``orders``."""

    orders: tuple
    p: int | None = None
    n: int | None = None
    tame: int | None = None

    def __post_init__(self):
        o = tuple(int(x) for x in self.orders)
        object.__setattr__(self, "orders", o)
        if not o or any(x < 1 for x in o):
            raise ConductorError("orders must be positive integers")
        if any(b > a or a % b for a, b in zip(o, o[1:])):
            raise ConductorError("orders must be weakly decreasing and each must divide the previous")

    def g(self, i: int) -> int:
        return self.orders[i] if i < len(self.orders) else 1

    def nontrivial_ratios(self) -> list[Fraction]:
        g0 = self.orders[0]
        return [Fraction(g, g0) for g in self.orders if g != 1]


def cyclotomic_orders(p: int, n: int, tame: int) -> FiltrationOrders:
    """g_0 = tame * p^n and g_i = p^k for p^(n-k) <= i <= p^(n-k+1) - 1."""
    if not isprime(p):
        raise ConductorError(f"{p} is not prime")
    if n < 0:
        raise ConductorError("depth n must be >= 0")
    if tame < 1 or tame % p == 0:
        raise ConductorError("tame order must be a positive integer prime to p")
    orders = [tame * p**n]
    for i in range(1, p**n):
        k = n - (len(_digits(i, p)) - 1)
        orders.append(p**k)
    orders.append(1)
    return FiltrationOrders(tuple(orders), p, n, tame)


def _digits(i: int, p: int) -> list[int]:
    out = []
    while i:
        out.append(i % p)
        i //= p
    return out


@dataclass(frozen=True)
class ConductorExponent:
    value: Fraction
    integral: bool

    def __int__(self) -> int:
        if not self.integral:
            raise ConductorError(f"conductor exponent {self.value} is not an integer")
        return int(self.value)


def _result(v: Fraction) -> ConductorExponent:
    return ConductorExponent(v, v.denominator == 1)


def artin_exponent(chi: Character, filt: RamificationFiltration) -> ConductorExponent:
    """Sum of (g_i / g_0) * codim V^{G_i} over the chain."""
    if chi.group is not filt.group:
        raise ConductorError("character and filtration live on different groups")
    d = chi.degree
    g0 = filt.chain[0].order
    total = Fraction(0)
    for H in filt.chain:
        if H.order == 1:
            break
        total += Fraction(H.order, g0) * (d - fixed_subspace_dim(chi, H))
    return _result(total)


def artin_exponent_central(degree: int, orders: FiltrationOrders) -> ConductorExponent:
    """Order-only version under the central rule (dim V^{G_i} = 0 for G_i != 1)."""
    return _result(sum((r * degree for r in orders.nontrivial_ratios()), Fraction(0)))


CASES = ("P1_i", "P1_ii", "P3")


def case_tame_factor(case: str, x: int = 1) -> int:
    return {"P1_i": 4, "P1_ii": 12, "P3": 3 * x}[case]


def valid_c(case: str, p: int) -> list[int]:
    """Admissible c for a case: c | (p-1)/4, (p-1)/12 or (p-1)/3 respectively."""
    den = {"P1_i": 4, "P1_ii": 12, "P3": 3}[case]
    if (p - 1) % den:
        return []
    return [int(c) for c in divisors((p - 1) // den)]


def closed_form_exponent(case: str, p: int, n: int, c: int, x: int = 1) -> Fraction:
    """3 + 3n(p-1)/(4c), 3 + 3n(p-1)/(12c) or 3 + 3n(p-1)/(3cx)."""
    if case not in CASES:
        raise ConductorError(f"unknown case {case!r}; expected one of {CASES}")
    if not isprime(p) or n < 0:
        raise ConductorError("need a prime p and n >= 0")
    if c not in valid_c(case, p):
        raise ConductorError(f"c = {c} is not admissible for case {case} at p = {p}")
    if case == "P3" and x not in (1, 2):
        raise ConductorError("x must be 1 or 2")
    if case != "P3":
        x = 1
    return 3 + Fraction(3 * n * (p - 1), case_tame_factor(case, x) * c)


def filtration_for_case(case: str, p: int, n: int, c: int, x: int = 1) -> FiltrationOrders:
    return cyclotomic_orders(p, n, case_tame_factor(case, x if case == "P3" else 1) * c)


def conductor_spectrum(G: Group, tame: Subgroup, degree: int) -> list[Fraction]:
    """Exponents of all irreducibles of the given degree for the chain tame > 1."""
    if tame.parent is not G:
        raise GroupError("tame subgroup must belong to G")
    chain = (tame, G.trivial()) if tame.order > 1 else (tame,)
    filt = RamificationFiltration(G, chain)
    vals = [artin_exponent(chi, filt).value for chi in character_table(G) if chi.degree == degree]
    return sorted(vals)


def parse_filtration(text: str, group: Group | None = None):
    """``g0 g1 g2 ...`` on the first line, optionally followed by one member list per G_i.

    Returns a RamificationFiltration when member lists and a group are given,
    otherwise a FiltrationOrders.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ConductorError("empty filtration")
    orders = tuple(int(x) for x in lines[0].split())
    if len(lines) == 1:
        return FiltrationOrders(orders)
    if group is None:
        raise ConductorError("subgroup member lists need a group")
    chain = []
    for ln in lines[1:]:
        members = [int(x) for x in ln.split()]
        chain.append(Subgroup(group, members))
    if len(chain) != len(orders) or [H.order for H in chain] != list(orders):
        raise ConductorError("member lists do not match the order line")
    if chain[-1].order != 1:
        chain.append(group.trivial())
    return RamificationFiltration(group, tuple(chain))


__all__ = [
    "RamificationFiltration", "FiltrationOrders", "ConductorExponent", "ConductorError",
    "cyclotomic_orders", "artin_exponent", "artin_exponent_central", "closed_form_exponent",
    "filtration_for_case", "valid_c", "conductor_spectrum", "parse_filtration", "CASES",
]
