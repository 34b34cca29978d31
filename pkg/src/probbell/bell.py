"""Probabilistic (bivariate, r-) Bell polynomials.

Every family is one of two builders parameterized by a moment provider and
``r``; the classical polynomials come from ``provider = det:1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .moments import MomentProvider, egf_truncation
from .numeric import BivarPoly, falling_factorial, homogenized_falling
from .stirling import UNIT, prob_stirling2

__all__ = [
    "BellFamily",
    "bell_univariate",
    "bell_bivariate",
    "bell_bivariate_shifted",
    "scaled_limit",
    "gf_oracle",
]

_UNI: dict = {}
_BI: dict = {}
_SHIFTED: dict = {}


def clear_caches() -> None:
    for table in (_UNI, _BI, _SHIFTED):
        table.clear()


def bell_univariate(provider: MomentProvider, n: int, r: int = 0) -> BivarPoly:
    """``sum_k {n+r brace k+r}_{r,Y} x^k``."""
    key = (provider, n, r)
    p = _UNI.get(key)
    if p is None:
        p = BivarPoly({(k, 0): prob_stirling2(provider, n, k, r) for k in range(n + 1)})
        _UNI[key] = p
    return p


def bell_bivariate(provider: MomentProvider, n: int, r: int = 0) -> BivarPoly:
    """``sum_k {n+r brace k+r}_{r,Y} (x)_k y^k``."""
    key = (provider, n, r)
    p = _BI.get(key)
    if p is None:
        p = BivarPoly()
        for k in range(n + 1):
            s = prob_stirling2(provider, n, k, r)
            if s:
                p = p + falling_factorial(k) * BivarPoly.monomial(s, 0, k)
        _BI[key] = p
    return p


def bell_bivariate_shifted(provider: MomentProvider, n: int, r: int, k: int) -> BivarPoly:
    """``bell_bivariate(provider, n, r)`` evaluated at ``(x - k, y)``."""
    key = (provider, n, r, k)
    p = _SHIFTED.get(key)
    if p is None:
        p = bell_bivariate(provider, n, r).shift_x(-k)
        _SHIFTED[key] = p
    return p


def scaled_limit(provider: MomentProvider, n: int, r: int = 0) -> BivarPoly:
    """``lim_{y -> 0}`` of the bivariate polynomial at ``(x/y, y)``.

    ``(x/y)_k y^k`` is the polynomial ``prod_{j<k} (x - j y)``, so the limit
    is an exact substitution ``y = 0`` once the sum is rewritten with it.
    """
    acc = BivarPoly()
    for k in range(n + 1):
        s = prob_stirling2(provider, n, k, r)
        if s:
            acc = acc + homogenized_falling(k).scale(s)
    return acc.subs_y(0)


def _series_mul(a: list, b: list, order: int) -> list:
    out = [BivarPoly() for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(order + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + ai * b[j]
    return out


def gf_oracle(provider: MomentProvider, n_max: int, x_int: int, r: int = 0) -> list[BivarPoly]:
    """Coefficients of ``t^n/n!`` in ``(1 + y(E[e^{tY}] - 1))^x_int * e^{rt}``.

    Truncated power series in t with polynomial-in-y coefficients; entry n is
    returned already multiplied by ``n!``.
    """
    if x_int < 0:
        raise ValueError("gf_oracle needs a nonnegative integer x")
    egf = egf_truncation(provider, n_max)
    base = [BivarPoly.const(1)] + [BivarPoly.monomial(c, 0, 1) for c in egf[1:]]
    series = [BivarPoly.const(1)] + [BivarPoly() for _ in range(n_max)]
    for _ in range(x_int):
        series = _series_mul(series, base, n_max)
    if r:
        shift = [BivarPoly.const(Fraction(r) ** n / factorial(n)) for n in range(n_max + 1)]
        series = _series_mul(series, shift, n_max)
    return [c.scale(factorial(n)) for n, c in enumerate(series)]


@dataclass(frozen=True)
class BellFamily:
    """Selects one of the eight Bell families.

    ``probabilistic=False`` means ``Y = 1`` and ignores ``provider``.
    """

    probabilistic: bool = True
    bivariate: bool = False
    r: int = 0
    provider: Optional[MomentProvider] = None

    def resolved_provider(self) -> MomentProvider:
        if not self.probabilistic:
            return UNIT
        if self.provider is None:
            raise ValueError("probabilistic family needs a moment provider")
        return self.provider

    def __call__(self, n: int) -> BivarPoly:
        build = bell_bivariate if self.bivariate else bell_univariate
        return build(self.resolved_provider(), n, self.r)
