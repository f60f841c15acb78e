"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are coefficient vectors over the power basis 1, z, ..., z^(phi(N)-1)
of Q(zeta_N), i.e. polynomials reduced modulo the N-th cyclotomic
polynomial.  Character values are algebraic integers, so character tables
keep them as int64 arrays and use the vectorized helpers at the bottom of
this module; :class:`Cyclotomic` is the exact scalar type handed to users.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols, totient
from sympy.functions.combinatorial.numbers import mobius

_x = symbols("x")


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    coeffs = Poly(cyclotomic_poly(n, _x), _x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def power_table(n: int) -> np.ndarray:
    """Row m is z^m reduced to the power basis, for m = 0 .. n-1."""
    d = phi(n)
    phi_c = np.array(cyclotomic_coeffs(n), dtype=np.int64)
    out = np.zeros((n, d), dtype=np.int64)
    cur = np.zeros(d, dtype=np.int64)
    cur[0] = 1
    for m in range(n):
        out[m] = cur
        # multiply by z: shift up, then reduce the z^d overflow with phi_c
        top = cur[-1]
        cur = np.roll(cur, 1)
        cur[0] = 0
        cur = cur - top * phi_c[:d]
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def _mul_tensor(n: int) -> np.ndarray:
    d = phi(n)
    pt = power_table(n)
    idx = (np.arange(d)[:, None] + np.arange(d)[None, :]) % n
    return pt[idx]  # (d, d, d)


@lru_cache(maxsize=None)
def _conj_matrix(n: int) -> np.ndarray:
    pt = power_table(n)
    return pt[(-np.arange(phi(n))) % n]


@lru_cache(maxsize=None)
def _lift_matrix(m: int, n: int) -> np.ndarray:
    if n % m:
        raise ValueError(f"cannot embed Q(zeta_{m}) in Q(zeta_{n})")
    return power_table(n)[(np.arange(phi(m)) * (n // m)) % n]


@lru_cache(maxsize=None)
def _galois_matrix(n: int, k: int) -> np.ndarray:
    if gcd(k, n) != 1:
        raise ValueError("Galois exponent must be a unit mod N")
    return power_table(n)[(np.arange(phi(n)) * k) % n]


@lru_cache(maxsize=None)
def _normalized_traces(n: int) -> tuple[Fraction, ...]:
    # Tr(z^k) / phi(n) is the Ramanujan sum divided by phi(n); it does not
    # depend on which Q(zeta_N) the element is viewed in.
    out = []
    for k in range(phi(n)):
        g = gcd(k, n)
        q = n // g
        out.append(Fraction(int(mobius(q)), phi(q)))
    return tuple(out)


# vectorized integer helpers ---------------------------------------------

def cmul(u: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    """Elementwise product of coefficient arrays of shape (..., phi(n))."""
    outer = u[..., :, None] * v[..., None, :]
    return np.einsum("...ab,abc->...c", outer, _mul_tensor(n))


def cconj(u: np.ndarray, n: int) -> np.ndarray:
    return u @ _conj_matrix(n)


def clift(u: np.ndarray, m: int, n: int) -> np.ndarray:
    if m == n:
        return u
    return u @ _lift_matrix(m, n)


def cgalois(u: np.ndarray, k: int, n: int) -> np.ndarray:
    return u @ _galois_matrix(n, k % n)


def to_complex(u: np.ndarray, n: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(phi(n)) / n)
    return u @ z


class Cyclotomic:
    """An element of Q(zeta_N) with exact rational coefficients.

    >>> z = Cyclotomic.zeta(3)
    >>> 1 + z + z * z == 0
    True
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        if n < 1:
            raise ValueError("conductor must be positive")
        d = phi(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > d:
            # arbitrary length polynomial in z: reduce modulo Phi_n
            pt = power_table(n)
            acc = [Fraction(0)] * d
            for m, c in enumerate(cs):
                if c:
                    row = pt[m % n]
                    for j in range(d):
                        if row[j]:
                            acc[j] += c * int(row[j])
            cs = acc
        cs += [Fraction(0)] * (d - len(cs))
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls(1, [q])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        return cls(n, power_table(n)[k % n].tolist())

    @classmethod
    def from_int_vector(cls, vec, n: int) -> "Cyclotomic":
        return cls(n, [int(c) for c in vec])

    def lift(self, n: int) -> "Cyclotomic":
        if n == self.n:
            return self
        if n % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) in Q(zeta_{n})")
        mat = _lift_matrix(self.n, n)
        d = phi(n)
        acc = [Fraction(0)] * d
        for a, c in enumerate(self.coeffs):
            if c:
                for j in range(d):
                    if mat[a, j]:
                        acc[j] += c * int(mat[a, j])
        return Cyclotomic(n, acc)

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        n = self.n * other.n // gcd(self.n, other.n)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                q = Fraction(other)
            except TypeError:
                return NotImplemented
            return Cyclotomic(self.n, [c * q for c in self.coeffs])
        a, b = self._common(other)
        n, d = a.n, phi(a.n)
        prod = [Fraction(0)] * (2 * d)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise NotImplementedError("division by irrational cyclotomics")
            other = other.to_rational()
        q = Fraction(other)
        return Cyclotomic(self.n, [c / q for c in self.coeffs])

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic(self.n, _apply_int_matrix(self.coeffs, _conj_matrix(self.n)))

    def galois(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self.n, _apply_int_matrix(self.coeffs, _galois_matrix(self.n, k % self.n)))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self == self.conjugate()

    def normalized_trace(self) -> Fraction:
        tr = _normalized_traces(self.n)
        return sum((c * t for c, t in zip(self.coeffs, tr)), Fraction(0))

    def __complex__(self) -> complex:
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / self.n) for k, c in enumerate(self.coeffs)),
            0j,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(Fraction(other))
            except TypeError:
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = f"z{self.n}" + (f"^{k}" if k > 1 else "")
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(terms) if terms else "0"


def _apply_int_matrix(coeffs, mat: np.ndarray) -> list[Fraction]:
    d = mat.shape[1]
    acc = [Fraction(0)] * d
    for a, c in enumerate(coeffs):
        if c:
            row = mat[a]
            for j in range(d):
                if row[j]:
                    acc[j] += c * int(row[j])
    return acc
