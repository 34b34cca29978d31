"""Right-hand sides of the Spivey-type recurrences and the verification engine.

Each ``rhs_*`` evaluates one recurrence exactly as printed. The left-hand
side is always built from the closed forms in :mod:`probbell.bell`, which
share nothing with the recurrence code beyond the moment provider.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from . import numeric
from .bell import bell_bivariate, bell_bivariate_shifted, bell_univariate
from .moments import (
    DistributionSpec,
    MomentProvider,
    joint_moment,
    make_provider,
    parse_distribution,
    shifted_joint_moment,
)
from .numeric import BivarPoly, falling_factorial, multinomial
from .stirling import UNIT, stirling2

__all__ = [
    "IdentityId",
    "IdentityReport",
    "rhs_thm22",
    "rhs_thm24",
    "rhs_thm25",
    "rhs_thm26",
    "rhs_thm27",
    "rhs_classical",
    "lhs",
    "verify",
    "sweep",
]


class IdentityId(str, enum.Enum):
    THM22 = "thm22"
    THM24 = "thm24"
    THM25 = "thm25"
    THM26 = "thm26"
    THM27 = "thm27"
    EQ4_SPIVEY = "eq4_spivey"
    EQ5_GOULD_QUAINTANCE = "eq5_gould_quaintance"
    EQ9_ZHENG_LI = "eq9_zheng_li"
    EQ10_ZHENG_LI = "eq10_zheng_li"
    COR22_Y1 = "cor22_y1"
    COR24_Y1 = "cor24_y1"
    COR25_Y1 = "cor25_y1"
    COR27_Y1 = "cor27_y1"

    @property
    def short(self) -> str:
        """Name used on the command line (``eq4``, ``cor22``, ...)."""
        return self.value.split("_")[0]

    @classmethod
    def lookup(cls, name: str) -> "IdentityId":
        if isinstance(name, cls):
            return name
        for ident in cls:
            if name in (ident.value, ident.short):
                return ident
        raise ValueError(f"unknown identity {name!r}")

    @property
    def classical(self) -> bool:
        return not self.value.startswith("thm")

    @property
    def uses_r(self) -> bool:
        return self.short in ("thm24", "thm25", "thm26", "thm27", "eq10", "cor24", "cor25", "cor27")


CLASSICAL_IDS = tuple(i for i in IdentityId if i.classical)

NOTES = {
    IdentityId.COR27_Y1: (
        "printed reduction labels the left side phi_{m+n}(x) and omits the multinomial "
        "factor in its middle line; verified as "
        "sum C(n,i) x^k phi_i(x) S_r(m+r,k+r) (k+r)^(n-i) = phi_{m+n,r}(x)"
    ),
}

# Indirection so tests can swap in a reordered enumeration.
_compositions = numeric.compositions

_WEIGHTS: dict = {}


def clear_caches() -> None:
    _WEIGHTS.clear()


def _weight(provider: MomentProvider, k: int, j: int, a: int, r: int | None = None) -> Fraction:
    """``sum over compositions l of j into k parts of multinomial(j; l) * E[...]``.

    The expectation is ``E[S_k^a prod Y_i^{l_i}]``, or ``E[(S_k + r)^a ...]``
    when ``r`` is given.
    """
    key = (provider, k, j, a, r)
    w = _WEIGHTS.get(key)
    if w is not None:
        return w
    w = Fraction(0)
    for l in _compositions(j, k):
        if r is None:
            e = joint_moment(provider, k, a, l)
        else:
            e = shifted_joint_moment(provider, k, a, l, r)
        if e:
            w += multinomial(j, l) * e
    _WEIGHTS[key] = w
    return w


def _pow(base: int, e: int) -> Fraction:
    return Fraction(base) ** e  # 0^0 == 1


def _xk_yk(k: int) -> BivarPoly:
    return falling_factorial(k) * BivarPoly.monomial(1, 0, k)


def _x_pow(k: int) -> BivarPoly:
    return BivarPoly.monomial(1, k, 0)


# -- probabilistic theorems -------------------------------------------------


def rhs_thm22(provider: MomentProvider, m: int, n: int) -> BivarPoly:
    acc = BivarPoly()
    for k in range(n + 1):
        inner = BivarPoly()
        for j in range(m + 1):
            c = comb(m, j) * _weight(provider, k, n, m - j) / factorial(k)
            if c:
                inner = inner + bell_bivariate_shifted(provider, j, 0, k).scale(c)
        if not inner.is_zero():
            acc = acc + inner * _xk_yk(k)
    return acc


def _r_weight(provider, m, k, a, r, shifted: bool) -> Fraction:
    # sum_{j=k}^{m} C(m, j) r^(m-j) * composition weight over j
    total = Fraction(0)
    for j in range(k, m + 1):
        rp = _pow(r, m - j)
        if rp:
            total += comb(m, j) * rp * _weight(provider, k, j, a, r if shifted else None)
    return total / factorial(k)


def _rhs_r_family(provider, m, n, r, *, inner_r: int, shifted: bool, bivariate: bool) -> BivarPoly:
    acc = BivarPoly()
    for k in range(m + 1):
        inner = BivarPoly()
        for i in range(n + 1):
            c = comb(n, i) * _r_weight(provider, m, k, n - i, r, shifted)
            if not c:
                continue
            if bivariate:
                bell = bell_bivariate_shifted(provider, i, inner_r, k)
            else:
                bell = bell_univariate(provider, i, inner_r)
            inner = inner + bell.scale(c)
        if not inner.is_zero():
            acc = acc + inner * (_xk_yk(k) if bivariate else _x_pow(k))
    return acc


def rhs_thm24(provider: MomentProvider, m: int, n: int, r: int) -> BivarPoly:
    return _rhs_r_family(provider, m, n, r, inner_r=r, shifted=False, bivariate=True)


def rhs_thm25(provider: MomentProvider, m: int, n: int, r: int) -> BivarPoly:
    return _rhs_r_family(provider, m, n, r, inner_r=0, shifted=True, bivariate=True)


def rhs_thm26(provider: MomentProvider, m: int, n: int, r: int) -> BivarPoly:
    return _rhs_r_family(provider, m, n, r, inner_r=r, shifted=False, bivariate=False)


def rhs_thm27(provider: MomentProvider, m: int, n: int, r: int) -> BivarPoly:
    return _rhs_r_family(provider, m, n, r, inner_r=0, shifted=True, bivariate=False)


# -- classical (Y = 1) forms ------------------------------------------------


def _phi(i: int, r: int = 0) -> BivarPoly:
    return bell_univariate(UNIT, i, r)


def _phi_xy_shifted(i: int, r: int, k: int) -> BivarPoly:
    return bell_bivariate_shifted(UNIT, i, r, k)


def rhs_classical(ident: IdentityId | str, m: int, n: int, r: int = 0) -> BivarPoly:
    """Evaluate one of the classical recurrences or ``Y = 1`` corollaries as printed.

    For ``eq4``/``eq5`` the first index (``l`` in the usual notation) is ``m``.
    """
    ident = IdentityId.lookup(ident)
    acc = BivarPoly()
    if ident in (IdentityId.EQ4_SPIVEY, IdentityId.EQ5_GOULD_QUAINTANCE):
        for k in range(m + 1):
            for i in range(n + 1):
                c = _pow(k, n - i) * comb(n, i) * stirling2(m, k)
                if not c:
                    continue
                if ident is IdentityId.EQ4_SPIVEY:
                    acc = acc + BivarPoly.const(c * _phi(i)(1))
                else:
                    acc = acc + (_phi(i) * _x_pow(k)).scale(c)
        return acc
    if ident in (IdentityId.EQ9_ZHENG_LI, IdentityId.EQ10_ZHENG_LI, IdentityId.COR24_Y1):
        rr = 0 if ident is IdentityId.EQ9_ZHENG_LI else r
        for k in range(m + 1):
            for i in range(n + 1):
                c = _pow(k, n - i) * comb(n, i) * stirling2(m, k, rr)
                if c:
                    acc = acc + (_phi_xy_shifted(i, rr, k) * _xk_yk(k)).scale(c)
        return acc
    if ident is IdentityId.COR22_Y1:
        for k in range(n + 1):
            for j in range(m + 1):
                c = comb(m, j) * stirling2(n, k) * _pow(k, m - j)
                if c:
                    acc = acc + (_phi_xy_shifted(j, 0, k) * _xk_yk(k)).scale(c)
        return acc
    if ident is IdentityId.COR25_Y1:
        for i in range(n + 1):
            for k in range(m + 1):
                c = comb(n, i) * stirling2(m, k, r) * _pow(r + k, n - i)
                if c:
                    acc = acc + (_xk_yk(k) * _phi_xy_shifted(i, 0, k)).scale(c)
        return acc
    if ident is IdentityId.COR27_Y1:
        for i in range(n + 1):
            for k in range(m + 1):
                c = comb(n, i) * stirling2(m, k, r) * _pow(k + r, n - i)
                if c:
                    acc = acc + (_x_pow(k) * _phi(i)).scale(c)
        return acc
    raise ValueError(f"{ident.value} is not a classical identity")


# -- verification -----------------------------------------------------------


def lhs(ident: IdentityId | str, provider: MomentProvider, m: int, n: int, r: int = 0) -> BivarPoly:
    """Closed-form left-hand side ``phi_{m+n}`` of the selected family."""
    ident = IdentityId.lookup(ident)
    if ident.classical:
        provider = UNIT
    rr = r if ident.uses_r else 0
    if ident is IdentityId.EQ4_SPIVEY:
        return BivarPoly.const(bell_univariate(UNIT, m + n, 0)(1))
    if ident.short in ("thm26", "thm27", "cor27", "eq5"):
        return bell_univariate(provider, m + n, rr)
    return bell_bivariate(provider, m + n, rr)


def rhs(ident: IdentityId | str, provider: MomentProvider, m: int, n: int, r: int = 0) -> BivarPoly:
    ident = IdentityId.lookup(ident)
    if ident.classical:
        return rhs_classical(ident, m, n, r)
    if ident is IdentityId.THM22:
        return rhs_thm22(provider, m, n)
    return {
        IdentityId.THM24: rhs_thm24,
        IdentityId.THM25: rhs_thm25,
        IdentityId.THM26: rhs_thm26,
        IdentityId.THM27: rhs_thm27,
    }[ident](provider, m, n, r)


@dataclass(frozen=True)
class IdentityReport:
    identity: IdentityId
    m: int
    n: int
    r: int
    distribution: DistributionSpec
    lhs: BivarPoly
    rhs: BivarPoly
    equal: bool
    elapsed_ms: float = field(default=0.0, compare=False)
    note: str = field(default="", compare=False)

    FIELDS = ("identity", "m", "n", "r", "dist", "lhs", "rhs", "equal", "elapsed_ms")

    def to_dict(self) -> dict:
        """Wire form; key order is the json/csv column order."""
        return {
            "identity": self.identity.short,
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "dist": str(self.distribution),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityReport":
        ident = IdentityId.lookup(d["identity"])
        return cls(
            identity=ident,
            m=int(d["m"]),
            n=int(d["n"]),
            r=int(d["r"]),
            distribution=parse_distribution(d["dist"]),
            lhs=BivarPoly.parse(d["lhs"]),
            rhs=BivarPoly.parse(d["rhs"]),
            equal=bool(d["equal"]),
            elapsed_ms=float(d["elapsed_ms"]),
            note=NOTES.get(ident, ""),
        )


def _check_params(ident: IdentityId, m: int, n: int, r: int) -> None:
    if min(m, n, r) < 0:
        raise ValueError("m, n and r must be nonnegative")
    if r and not ident.uses_r:
        raise ValueError(f"{ident.short} has no r parameter; use r = 0")


def verify(
    ident: IdentityId | str,
    spec: DistributionSpec | str,
    m: int,
    n: int,
    r: int = 0,
) -> IdentityReport:
    """Compute both sides of one identity and compare them exactly.

    Inequality is returned in the report, never raised.
    """
    ident = IdentityId.lookup(ident)
    if isinstance(spec, str):
        spec = parse_distribution(spec)
    _check_params(ident, m, n, r)
    if ident.classical:
        spec = UNIT.spec
    provider = make_provider(spec)
    t0 = time.perf_counter()
    left = lhs(ident, provider, m, n, r)
    right = rhs(ident, provider, m, n, r)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return IdentityReport(
        identity=ident,
        m=m,
        n=n,
        r=r,
        distribution=spec,
        lhs=left,
        rhs=right,
        equal=left == right,
        elapsed_ms=elapsed,
        note=NOTES.get(ident, ""),
    )


def _verify_cell(args) -> IdentityReport:
    return verify(*args)


def sweep_cells(max_total: int, r_values: Sequence[int]) -> list[tuple[int, int, int]]:
    if max_total < 0:
        raise ValueError("max_total must be >= 0")
    return [
        (m, n, r)
        for m in range(max_total + 1)
        for n in range(max_total + 1 - m)
        for r in r_values
    ]


def sweep(
    ident: IdentityId | str,
    spec: DistributionSpec | str,
    max_total: int,
    r_values: Iterable[int] = (0,),
    jobs: int = 1,
) -> list[IdentityReport]:
    """Verify every ``(m, n, r)`` with ``m + n <= max_total``.

    Reports come back ordered by m, then n, then r, whatever ``jobs`` is.
    """
    ident = IdentityId.lookup(ident)
    if isinstance(spec, str):
        spec = parse_distribution(spec)
    cells = sweep_cells(max_total, list(r_values))
    for m, n, r in cells:
        _check_params(ident, m, n, r)
    args = [(ident, spec, m, n, r) for m, n, r in cells]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_verify_cell, args))
    return [_verify_cell(a) for a in args]
