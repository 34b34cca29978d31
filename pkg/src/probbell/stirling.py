"""Probabilistic (r-)Stirling numbers of the second kind.

The classical numbers are the ``Y = 1`` specialization; there is no second
code path for them.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .moments import MomentProvider, make_provider, sum_moment

__all__ = ["prob_stirling2", "stirling2", "shifted_sum_moment", "UNIT"]

UNIT = make_provider("det:1")

_TABLE: dict = {}


def clear_caches() -> None:
    _TABLE.clear()


def shifted_sum_moment(provider: MomentProvider, j: int, n: int, r: int) -> Fraction:
    """``E[(S_j + r)^n]``."""
    r = Fraction(r)
    return sum(
        (comb(n, i) * r ** (n - i) * sum_moment(provider, j, i) for i in range(n + 1)),
        Fraction(0),
    )


def prob_stirling2(provider: MomentProvider, n: int, k: int, r: int = 0) -> Fraction:
    """Probabilistic r-Stirling number of the second kind associated with Y.

    ``(1/k!) * sum_j C(k, j) (-1)^(k-j) E[(S_j + r)^n]``. With ``r = 0`` this
    is the plain probabilistic Stirling number. Zero whenever ``k > n``.
    """
    if n < 0 or k < 0 or r < 0:
        raise ValueError("prob_stirling2 requires n, k, r >= 0")
    if k > n:
        return Fraction(0)
    key = (provider, n, k, r)
    try:
        return _TABLE[key]
    except KeyError:
        pass
    acc = Fraction(0)
    for j in range(k + 1):
        term = comb(k, j) * shifted_sum_moment(provider, j, n, r)
        acc += term if (k - j) % 2 == 0 else -term
    value = acc / factorial(k)
    _TABLE[key] = value
    return value


def stirling2(n: int, k: int, r: int = 0) -> Fraction:
    """Classical r-Stirling number ``{n+r brace k+r}_r`` (``r = 0``: ``{n brace k}``)."""
    return prob_stirling2(UNIT, n, k, r)
