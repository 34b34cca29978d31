"""Moment providers for Y, moments of the partial sums S_k, and joint moments.

Distribution strings follow a small grammar shared with the command line::

    det:<c>  bernoulli:<p>  discrete:(a1,p1);(a2,p2);...  poisson:<lam>

where every number is an integer or a ``num/den`` literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .numeric import format_rational, multinomial, parse_rational, weak_compositions

__all__ = [
    "DistributionError",
    "DistributionSpec",
    "MomentProvider",
    "parse_distribution",
    "make_provider",
    "sum_moment",
    "joint_moment",
    "shifted_joint_moment",
    "egf_truncation",
    "clear_caches",
]

KINDS = ("deterministic", "bernoulli", "finite_discrete", "poisson")


class DistributionError(ValueError):
    """A distribution string or spec failed to parse or validate."""


@dataclass(frozen=True)
class DistributionSpec:
    """Validated description of a built-in law.

    ``params`` holds ``(c,)`` for deterministic, ``(p,)`` for bernoulli,
    ``((a1, p1), (a2, p2), ...)`` for finite_discrete and ``(lam,)`` for poisson.
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DistributionError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "finite_discrete":
            atoms = tuple((Fraction(a), Fraction(p)) for a, p in self.params)
            if not atoms:
                raise DistributionError("discrete distribution needs at least one atom")
            if any(p < 0 for _, p in atoms):
                raise DistributionError("discrete probabilities must be nonnegative")
            total = sum(p for _, p in atoms)
            if total != 1:
                raise DistributionError(
                    f"discrete probabilities sum to {format_rational(total)}, not 1"
                )
            object.__setattr__(self, "params", atoms)
            return
        if len(self.params) != 1:
            raise DistributionError(f"{self.kind} takes exactly one parameter")
        (v,) = (Fraction(self.params[0]),)
        if self.kind == "bernoulli" and not 0 <= v <= 1:
            raise DistributionError(f"bernoulli p must lie in [0, 1], got {format_rational(v)}")
        if self.kind == "poisson" and v < 0:
            raise DistributionError(f"poisson rate must be >= 0, got {format_rational(v)}")
        object.__setattr__(self, "params", (v,))

    def __str__(self) -> str:
        if self.kind == "finite_discrete":
            atoms = ";".join(
                f"({format_rational(a)},{format_rational(p)})" for a, p in self.params
            )
            return f"discrete:{atoms}"
        prefix = {"deterministic": "det", "bernoulli": "bernoulli", "poisson": "poisson"}
        return f"{prefix[self.kind]}:{format_rational(self.params[0])}"


_ATOM = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


def parse_distribution(text: str) -> DistributionSpec:
    """Parse a distribution string such as ``discrete:(0,1/3);(2,2/3)``."""
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise DistributionError(f"missing ':' in distribution {text!r}")
    head = head.strip().lower()
    try:
        if head == "discrete":
            chunks = [c.strip() for c in body.split(";")]
            atoms = []
            for chunk in chunks:
                m = _ATOM.fullmatch(chunk)
                if m is None:
                    raise DistributionError(f"malformed discrete atom {chunk!r}")
                atoms.append((parse_rational(m.group(1)), parse_rational(m.group(2))))
            return DistributionSpec("finite_discrete", tuple(atoms))
        kind = {"det": "deterministic", "bernoulli": "bernoulli", "poisson": "poisson"}.get(head)
        if kind is None:
            raise DistributionError(f"unknown distribution kind {head!r}")
        return DistributionSpec(kind, (parse_rational(body),))
    except DistributionError:
        raise
    except ValueError as exc:
        raise DistributionError(str(exc)) from exc


class MomentProvider:
    """Source of the moments ``E[Y^n]`` of a random variable Y.

    Subclasses implement :meth:`_moment`; :meth:`moment` memoizes it. Custom
    laws can be plugged in by subclassing, provided every moment is a finite
    rational and ``_moment(0) == 1``.
    """

    name = "Y"

    def _moment(self, n: int) -> Fraction:
        raise NotImplementedError

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment order must be >= 0")
        key = (self, n)
        try:
            return _MOMENT_CACHE[key]
        except KeyError:
            pass
        value = Fraction(self._moment(n))
        _MOMENT_CACHE[key] = value
        return value

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


@dataclass(frozen=True, repr=False)
class BuiltinProvider(MomentProvider):
    spec: DistributionSpec

    @property
    def name(self) -> str:
        return str(self.spec)

    def _moment(self, n: int) -> Fraction:
        kind, params = self.spec.kind, self.spec.params
        if kind == "deterministic":
            return params[0] ** n
        if kind == "bernoulli":
            return Fraction(1) if n == 0 else params[0]
        if kind == "finite_discrete":
            return sum((p * a**n for a, p in params), Fraction(0))
        # poisson: mu_{n+1} = lam * sum_k C(n, k) mu_k
        if n == 0:
            return Fraction(1)
        lam = params[0]
        return lam * sum(comb(n - 1, k) * self.moment(k) for k in range(n))


def make_provider(spec: DistributionSpec | str) -> MomentProvider:
    if isinstance(spec, str):
        spec = parse_distribution(spec)
    return BuiltinProvider(spec)


# Memo tables. Values are pure functions of their keys, so concurrent
# writers can only race to store identical entries.
_MOMENT_CACHE: dict = {}
_SUM_CACHE: dict = {}
_JOINT_CACHE: dict = {}


def clear_caches() -> None:
    _MOMENT_CACHE.clear()
    _SUM_CACHE.clear()
    _JOINT_CACHE.clear()


def sum_moment(provider: MomentProvider, k: int, n: int) -> Fraction:
    """``E[S_k^n]`` for the sum of k i.i.d. copies of Y (``S_0 = 0``)."""
    if k < 0 or n < 0:
        raise ValueError("sum_moment requires k, n >= 0")
    if k == 0:
        return Fraction(1) if n == 0 else Fraction(0)
    key = (provider, k, n)
    try:
        return _SUM_CACHE[key]
    except KeyError:
        pass
    value = sum(
        (comb(n, j) * provider.moment(j) * sum_moment(provider, k - 1, n - j) for j in range(n + 1)),
        Fraction(0),
    )
    _SUM_CACHE[key] = value
    return value


def joint_moment(provider: MomentProvider, k: int, a: int, l: Sequence[int]) -> Fraction:
    """``E[S_k^a * prod_i Y_i^{l_i}]`` via the multinomial expansion of ``S_k^a``."""
    l = tuple(l)
    if len(l) != k:
        raise ValueError(f"joint_moment: expected {k} exponents, got {len(l)}")
    if a < 0 or any(e < 0 for e in l):
        raise ValueError("joint_moment exponents must be >= 0")
    if k == 0:
        return Fraction(1) if a == 0 else Fraction(0)
    key = (provider, a, l)
    try:
        return _JOINT_CACHE[key]
    except KeyError:
        pass
    mu = provider.moment
    total = Fraction(0)
    for split in weak_compositions(a, k):
        term = Fraction(multinomial(a, split))
        for ai, li in zip(split, l):
            term *= mu(ai + li)
            if not term:
                break
        total += term
    _JOINT_CACHE[key] = total
    return total


def shifted_joint_moment(
    provider: MomentProvider, k: int, a: int, l: Sequence[int], r: int
) -> Fraction:
    """``E[(S_k + r)^a * prod_i Y_i^{l_i}]`` by the binomial theorem in ``r``."""
    return sum(
        (comb(a, b) * Fraction(r) ** (a - b) * joint_moment(provider, k, b, l) for b in range(a + 1)),
        Fraction(0),
    )


def egf_truncation(provider: MomentProvider, order: int) -> list[Fraction]:
    """Coefficients ``mu_n / n!`` of the moment generating function up to ``t^order``."""
    out = []
    fact = 1
    for n in range(order + 1):
        if n:
            fact *= n
        out.append(provider.moment(n) / fact)
    return out
