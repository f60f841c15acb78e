"""Closed-form counting formulas and the bounds assembled from them.

Integer-valued quantities (r-counts, a_m, the (n, c) oracle) are exact.
Bounds that involve pi or logarithms are float64 and are rounded up (one
ulp toward +inf) when reported.  Analytic inputs such as class-number caps
are parameters with the customary defaults and may be overridden.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd, inf, log, nextafter, pi
import json

from sympy import divisors, isprime

from .errors import ArtinError


class CountingError(ArtinError, ValueError):
    """Bad parameters for a counting formula."""


# ---------------------------------------------------------------------------
# r_{a,b}


def r_count(a: int, b: int, x: int) -> int:
    """Number of (C_a)^b quotients of an abelian group of a-rank x (exact)."""
    if not isprime(a):
        raise CountingError(f"{a} is not prime")
    if b not in (1, 2):
        raise CountingError("b must be 1 or 2")
    if x < 0 or int(x) != x:
        raise CountingError("rank must be a non-negative integer")
    x = int(x)
    if b == 1:
        return (a**x - 1) // (a - 1)
    num = (a**x - 1) * (a**x - a)
    den = (a * a - 1) * (a * a - a)
    if num % den:
        raise CountingError("r_{a,2} is not integral (internal error)")
    return num // den


def r_real(a: int, b: int, x: float) -> float:
    """The same rational expression evaluated at a real rank x."""
    ax = float(a) ** x
    if b == 1:
        return (ax - 1) / (a - 1)
    return (ax - 1) * (ax - a) / ((a * a - 1) * (a * a - a))


def r_envelope(a: int, b: int, x: float) -> float:
    """Leading monomial a^(bx) / a^(b^2) of r_{a,b}(x)."""
    return float(a) ** (b * x - b * b)


def subspace_count_bruteforce(a: int, b: int, x: int) -> int:
    """Count b-dimensional subspaces of F_a^x as distinct spans of b vectors."""
    import itertools

    vecs = list(itertools.product(range(a), repeat=x))
    coeffs = list(itertools.product(range(a), repeat=b))
    spans = set()
    for combo in itertools.combinations(vecs, b):
        span = frozenset(
            tuple(sum(c * v[i] for c, v in zip(cs, combo)) % a for i in range(x)) for cs in coeffs
        )
        if len(span) == a**b:
            spans.add(span)
    return len(spans)


# ---------------------------------------------------------------------------
# imprimitive representations


def _check_p(p: int) -> None:
    if not isprime(p):
        raise CountingError(f"{p} is not prime")
    if p in (2, 3):
        raise CountingError("p must be at least 5")


def theorem1_bound(p: int, m: int) -> Fraction:
    """2 p^(m-1) / 3, counting conductors dividing p^m (Galois cubic L)."""
    _check_p(p)
    if m < 1:
        raise CountingError("m must be >= 1")
    return Fraction(2 * p ** (m - 1), 3)


def d_m_bound(p: int, m: int, h_L) -> Fraction:
    """4 h_L p^(m-1) (p-1): characters of conductor dividing p^m."""
    return Fraction(4) * Fraction(h_L) * p ** (m - 1) * (p - 1)


def mp_sum(p: int, m: int) -> int:
    """sum over a1 + a2 = m - 1 of (p^a1 - 1)(p^a2 - 1)."""
    return sum((p**a - 1) * (p ** (m - 1 - a) - 1) for a in range(m))


@dataclass(frozen=True)
class BoundParams:
    """Analytic inputs.  ``h_L`` and ``n_p_third`` override the p-scaled caps."""

    hl_const: float = 22.2  # h_L < hl_const * p / pi^3
    np_const: float = 11.1  # n_p / 3 < np_const * p / pi^2
    h3_const: float = 22.2  # 3-part of h_L < h3_const * p^3 / pi^4
    clk_const: float = 22.2  # |Cl(K)| < clk_const * p^8 / pi^12
    clf_const: float = 22.2  # 3-part of Cl(F_0) < clf_const * p^16 (or p^20) / pi^24
    h_L: float | None = None
    n_p_third: float | None = None

    @classmethod
    def from_mapping(cls, data: dict) -> "BoundParams":
        known = {f for f in cls.__dataclass_fields__}
        bad = set(data) - known
        if bad:
            raise CountingError(f"unknown parameter(s): {', '.join(sorted(bad))}")
        return cls(**{k: float(v) for k, v in data.items()})


def imprimitive_nongalois_bound(p: int, m: int, h_L=None, n_p_cap=None,
                                params: BoundParams = BoundParams()) -> dict:
    """c_m cap 4 h_L m p^(m-1), times the cap on n_p / 3."""
    _check_p(p)
    h = h_L if h_L is not None else (params.h_L if params.h_L is not None else params.hl_const * p / pi**3)
    npc = n_p_cap if n_p_cap is not None else (
        params.n_p_third if params.n_p_third is not None else params.np_const * p / pi**2)
    c_cap = 4 * (Fraction(h) if isinstance(h, (int, Fraction)) else h) * m * p ** (m - 1)
    total = float(c_cap) * float(npc)
    printed = 985.7 * m * p ** (m + 1) / pi**5
    return {"c_m_cap": c_cap, "total": total, "printed": printed, "ratio": total / printed}


THEOREM2_CONSTANT = 985.7


def theorem2_constant(params: BoundParams = BoundParams()) -> float:
    return 4 * params.hl_const * params.np_const


def induced_conductor_exponent(case: str, inner) -> int:
    """galois: v(chi) + 2; nongalois: a1 + a2 + 1."""
    if case == "galois":
        v = int(inner)
        if v < 0:
            raise CountingError("exponent must be >= 0")
        return v + 2
    if case == "nongalois":
        a1, a2 = (int(t) for t in inner)
        if a1 < 0 or a2 < 0:
            raise CountingError("exponents must be >= 0")
        return a1 + a2 + 1
    raise CountingError("case must be 'galois' or 'nongalois'")


# ---------------------------------------------------------------------------
# primitive representations with projective image P1

_DEN = {"i": 4, "ii": 12}


def a_m(case: str, p: int, m: int) -> int:
    """Representations with conductor exactly p^m for a fixed P1-field.

    With m = 3k + 3 and D = (p-1)/4 (case i) or (p-1)/12 (case ii),
    a_m = 8 * sum over j | gcd(D, k) of p^(k/j) * D / j.  The summand for j
    is the pair n = k/j, c = D/j.
    """
    if case not in _DEN:
        raise CountingError("case must be 'i' or 'ii'")
    _check_p(p)
    if m < 3 or m % 3:
        return 0
    den = _DEN[case]
    if (p - 1) % den:
        return 0
    D = (p - 1) // den
    k = (m - 3) // 3
    d = gcd(D, k)
    total = 0
    for j in divisors(d):
        if D % j:
            raise CountingError("non-integral summand")
        total += p ** (k // j) * (D // j)
    return 8 * total


def a_m_printed(case: str, p: int, m: int) -> Fraction:
    """The sum exactly as typeset: d = gcd((p-1)/4, k) in both cases.

    In case ii this can produce fractions; a_m above is the integral count.
    """
    if (p - 1) % 4:
        raise CountingError("p must be 1 mod 4")
    if m < 3 or m % 3:
        return Fraction(0)
    k = (m - 3) // 3
    d = gcd((p - 1) // 4, k)
    den = _DEN[case]
    return 8 * sum((Fraction(p ** (k // j) * (p - 1), den * j) for j in divisors(d)), Fraction(0))


def a_m_oracle(case: str, p: int, m: int) -> int:
    """Enumerate (n, c) with c | D, n >= 0, n(p-1)/(den c) = k; add 8 p^n c."""
    den = _DEN[case]
    if m < 3 or m % 3 or (p - 1) % den:
        return 0
    k = (m - 3) // 3
    D = (p - 1) // den
    total = 0
    for c in range(1, D + 1):
        if D % c:
            continue
        for n in range(0, k + 1):
            if Fraction(n * (p - 1), den * c) == k:
                total += 8 * p**n * c
    return total


def extension_multiplicity(case: str) -> int:
    """Candidate kernels per (M, F): one in case i, two in case ii."""
    return {"i": 1, "ii": 2}[case]


def A_m_F(case: str, p: int, m: int) -> int:
    """Conductor dividing p^m: multiplicity * sum of a_m' over m' <= m."""
    return extension_multiplicity(case) * sum(a_m(case, p, mm) for mm in range(3, m + 1))


def asymptotic_A(case: str, p: int, m: int) -> dict:
    lead = {"i": 2.0, "ii": 4.0 / 3.0}[case] * p ** (m / 3)
    part = A_m_F(case, p, m)
    return {"partial_sum": part, "leading": lead, "ratio": part / lead}


THEOREM4_CONSTANT = 4928.4
THEOREM4_P_SHIFT = 9


def theorem4_bound(p: int, m: int, params: BoundParams = BoundParams()) -> dict:
    """(2 + 4/3) p^(m/3) r_{3,2}(R), R = log_3(h3_const p^3 / pi^4).

    ``composed`` uses r_{3,2} at real R, ``leading`` is its large-p form
    (10/3) h3^2 / 48 / pi^8 * p^(m/3 + 6), ``printed`` is
    4928.4 / (3^5 pi^8) * p^(m/3 + 9).  The printed constant equals
    (10/3) h3^2 / 3^4, i.e. the composition with the a^(2x)/a^4 envelope.
    """
    _check_p(p)
    R = log(params.h3_const * p**3 / pi**4, 3)
    A = (2 + Fraction(4, 3)) * p ** (m / 3)
    composed = float(A) * r_real(3, 2, R)
    enveloped = float(A) * r_envelope(3, 2, R)
    leading = 10 / 3 * params.h3_const**2 / 48 / pi**8 * p ** (m / 3 + 6)
    printed = THEOREM4_CONSTANT / (3**5 * pi**8) * p ** (m / 3 + THEOREM4_P_SHIFT)
    return {
        "R": R,
        "composed": composed,
        "enveloped": enveloped,
        "leading": leading,
        "printed": printed,
        "ratio_composed_leading": composed / leading,
        "ratio_composed_printed": composed / printed,
    }


def theorem4_constant_recomposed(params: BoundParams = BoundParams()) -> float:
    """(2 + 4/3) * h3^2 / 3^4 * 3^5: the numerator of the printed constant."""
    return (2 + 4 / 3) * params.h3_const**2 / 3**4 * 3**5


# ---------------------------------------------------------------------------
# projective image P3

THEOREM5_CONSTANT = 605134.5
THEOREM5_PI_POWER = 50


def p3_pipeline(p: int, m: int, params: BoundParams = BoundParams()) -> dict:
    """Every intermediate quantity of the P3 count.

    ``leading_composed`` multiplies the x = 2 family count with the
    ramified-F_0 choices and the r_{3,2} cap, using envelopes.  The
    ``as_typeset`` variant takes the 2-rank cap log2(p) - 1 literally, the
    other uses log2(p), which is what reproduces the printed constant.
    """
    _check_p(p)
    beta = log(2**12 * params.clk_const * p**8 / pi**12, 2)
    k2 = log(p, 2) - 1
    l_unram = log(params.clf_const * p**16 / pi**24, 3)
    l_ram = log(params.clf_const * p**20 / pi**24, 3)
    f0_unram = r_real(2, 1, beta) * r_real(2, 2, k2)
    f0_ram = (r_real(2, 1, 4 + beta) - r_real(2, 1, beta)) * r_real(2, 2, k2)
    f0_unram_floor = r_count(2, 1, int(beta)) * r_count(2, 2, max(int(k2), 0))
    f0_ram_floor = (r_count(2, 1, int(4 + beta)) - r_count(2, 1, int(beta))) * r_count(2, 2, max(int(k2), 0))
    if m % 3 == 0 and m >= 3:
        k = (m - 3) // 3
        per_F = {x: Fraction(7 * p**k * (p - 1), 3 * x) for x in (1, 2)}
    else:
        k = None
        per_F = {1: Fraction(0), 2: Fraction(0)}
    out = {
        "beta": beta,
        "k2_cap": k2,
        "l_cap_unramified": l_unram,
        "l_cap_ramified": l_ram,
        "F0_choices_unramified": f0_unram,
        "F0_choices_ramified": f0_ram,
        "F0_choices_unramified_floor": f0_unram_floor,
        "F0_choices_ramified_floor": f0_ram_floor,
        "per_F_x1": per_F[1],
        "per_F_x2": per_F[2],
        "theorem5": THEOREM5_CONSTANT * p ** (m / 3 + 50) / pi**THEOREM5_PI_POWER,
    }
    if k is not None:
        lead_x2 = Fraction(7, 6) * p ** (k + 1)
        ram_env = 15 * 2**beta
        r32 = r_envelope(3, 2, l_ram)
        out["leading_printed"] = THEOREM5_CONSTANT * p ** (k + 51) / pi**THEOREM5_PI_POWER
        out["leading_composed_as_typeset"] = float(lead_x2) * ram_env * r_envelope(2, 2, k2) * r32
        out["leading_composed"] = float(lead_x2) * ram_env * r_envelope(2, 2, k2 + 1) * r32
    return out


def theorem5_constant_recomposed(params: BoundParams = BoundParams()) -> dict:
    """Constant, p-power and pi-power of the composed leading term.

    7/6 * 15 * 2^12 * clk * (1/2^4) * clf^2 / 3^4, with p^(k+51) and
    pi^-(12 + 48) = pi^-60.
    """
    const = Fraction(7, 6) * 15 * 2**12 / 2**4 / 3**4
    return {
        "constant": float(const) * params.clk_const * params.clf_const**2,
        "p_shift": 1 + 8 + 2 + 40,
        "pi_power": 12 + 48,
    }


# ---------------------------------------------------------------------------
# report


def _up(x: float) -> float:
    return nextafter(float(x), inf)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return _up(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


COMPARISON_NOTE = (
    "two-dimensional counts with projective image A4 or S4 are of order "
    "C p^(2m - eps) log^4(p^m) with eps in {1/6, 1/8, 1/12}; static comparison, not computed"
)


@dataclass
class BoundReport:
    p: int
    m: int
    values: dict
    notes: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        rows = []

        def walk(prefix, v):
            if isinstance(v, dict):
                for k in sorted(v):
                    walk(f"{prefix}.{k}" if prefix else str(k), v[k])
            else:
                rows.append((prefix, v))

        d = self.to_dict()
        walk("", d["values"])
        width = max(len(k) for k, _ in rows)
        out = [f"BoundReport p={self.p} m={self.m}"]
        out += [f"  {k.ljust(width)}  {v}" for k, v in rows]
        out += [f"  note: {n}" for n in self.notes]
        out += [f"  flag: {f}" for f in self.flags]
        return "\n".join(out) + "\n"


def bound_report(p: int, m: int, params: BoundParams = BoundParams()) -> BoundReport:
    _check_p(p)
    imp = imprimitive_nongalois_bound(p, m, params=params)
    t4 = theorem4_bound(p, m, params) if (p - 1) % 4 == 0 else None
    p3 = p3_pipeline(p, m, params)
    p1_ok = (p - 1) % 4 == 0
    values = {
        "theorem1": theorem1_bound(p, m),
        "theorem2": {"composed": imp["total"], "printed": imp["printed"], "c_m_cap": imp["c_m_cap"]},
        "a_m_i": a_m("i", p, m) if p1_ok else 0,
        "a_m_ii": a_m("ii", p, m) if p1_ok else 0,
        "A_m_F_i": A_m_F("i", p, m) if p1_ok else 0,
        "A_m_F_ii": A_m_F("ii", p, m) if p1_ok else 0,
        "theorem4": t4 if t4 is not None else "n/a (needs p = 1 mod 4)",
        "theorem5": {k: v for k, v in p3.items() if k.startswith(("theorem5", "leading"))},
        "beta": p3["beta"],
        "rank_caps": {
            "R": log(params.h3_const * p**3 / pi**4, 3),
            "k2": p3["k2_cap"],
            "l_unramified": p3["l_cap_unramified"],
            "l_ramified": p3["l_cap_ramified"],
        },
    }
    notes = [
        "theorem1, theorem2, A_m_F_*, theorem4, theorem5 count conductors dividing p^m",
        "a_m_i, a_m_ii count conductors equal to p^m",
        "real-valued entries are float64 rounded up by one ulp",
        COMPARISON_NOTE,
    ]
    flags = []
    c2 = theorem2_constant(params)
    if c2 > THEOREM2_CONSTANT:
        flags.append(f"theorem2 constant recomposes to {c2:.4f} > {THEOREM2_CONSTANT}")
    if t4 is not None:
        flags.append("theorem4: composed form grows like p^(m/3+6); printed exponent is m/3+9")
    flags.append("theorem5: composed leading term carries pi^-60; printed power is pi^-50")
    flags.append("theorem5: printed constant matches the 2-rank cap log2(p), not log2(p)-1")
    if not p1_ok:
        notes.append("P1 counts are 0: they need p = 1 mod 4")
    return BoundReport(p, m, values, notes, flags)


__all__ = [
    "r_count", "r_real", "r_envelope", "subspace_count_bruteforce", "theorem1_bound",
    "d_m_bound", "mp_sum", "BoundParams", "imprimitive_nongalois_bound", "theorem2_constant",
    "induced_conductor_exponent", "a_m", "a_m_printed", "a_m_oracle", "A_m_F", "asymptotic_A",
    "theorem4_bound", "theorem4_constant_recomposed", "p3_pipeline",
    "theorem5_constant_recomposed", "BoundReport", "bound_report",
]
