"""Exact scalars, sparse bivariate polynomials and combinatorial primitives.

Scalars are :class:`fractions.Fraction` throughout (aliased as ``Rational``);
nothing in this package ever touches a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "BivarPoly",
    "binomial",
    "multinomial",
    "compositions",
    "weak_compositions",
    "falling_factorial",
    "homogenized_falling",
    "poly_eval",
    "parse_rational",
    "format_rational",
]


def parse_rational(text: str) -> Fraction:
    """Parse an integer or ``num/den`` literal. Decimal literals are rejected."""
    text = text.strip()
    if not text or any(c in text for c in ".eE_ "):
        raise ValueError(f"not an integer or num/den rational literal: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an integer or num/den rational literal: {text!r}") from exc


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class BivarPoly:
    """Sparse polynomial in ``x`` and ``y`` with rational coefficients.

    Terms live in a dict mapping ``(i, j)`` (the exponents of x and y) to a
    nonzero :class:`Fraction`. Zero coefficients are never stored, so two
    polynomials are equal exactly when their term maps are equal. Instances
    are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term {(i, j)}")
                c = Fraction(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[tuple[int, int], Fraction]) -> "BivarPoly":
        # caller guarantees canonical (zero-free) terms
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Scalar, i: int = 0, j: int = 0) -> "BivarPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @property
    def terms(self) -> Mapping[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, i: int, j: int = 0) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "BivarPoly":
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BivarPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return BivarPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivarPoly._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "BivarPoly":
        if not c:
            return BivarPoly()
        return BivarPoly._wrap({k: v * c for k, v in self._terms.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = BivarPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -----------------------------------------------------

    def shift_x(self, c: Scalar) -> "BivarPoly":
        """Return ``p(x + c, y)`` by exact binomial expansion."""
        if not c:
            return self
        c = Fraction(c)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), coef in self._terms.items():
            for t in range(i + 1):
                key = (t, j)
                out[key] = out.get(key, 0) + coef * comb(i, t) * c ** (i - t)
        return BivarPoly._wrap({k: v for k, v in out.items() if v})

    def subs_x(self, x0: Scalar) -> "BivarPoly":
        """Substitute ``x = x0``; the result is a polynomial in y alone."""
        x0 = Fraction(x0)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), coef in self._terms.items():
            key = (0, j)
            out[key] = out.get(key, 0) + coef * x0**i
        return BivarPoly._wrap({k: v for k, v in out.items() if v})

    def subs_y(self, y0: Scalar) -> "BivarPoly":
        """Substitute ``y = y0``; the result is a polynomial in x alone."""
        y0 = Fraction(y0)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), coef in self._terms.items():
            key = (i, 0)
            out[key] = out.get(key, 0) + coef * y0**j  # Fraction(0)**0 == 1
        return BivarPoly._wrap({k: v for k, v in out.items() if v})

    def __call__(self, x0: Scalar, y0: Scalar = 0) -> Fraction:
        return poly_eval(self, x0, y0)

    # -- rendering --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Terms in rendering order: y-degree ascending, then x-degree descending."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], -kv[0][0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for n, ((i, j), c) in enumerate(self.sorted_terms()):
            factors = []
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(mag)] + factors)
            if n == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"BivarPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "BivarPoly":
        """Inverse of ``str``: read ``1/2*x*y - x^2 + 3`` style text."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        terms: dict[tuple[int, int], Fraction] = {}
        for m in _TERM.finditer(s):
            if not m.group(0):
                continue
            sign, body = m.group(1), m.group(2)
            coef, i, j = Fraction(1), 0, 0
            for factor in body.split("*"):
                var, _, exp = factor.partition("^")
                if var == "x":
                    i += int(exp or 1)
                elif var == "y":
                    j += int(exp or 1)
                else:
                    coef *= parse_rational(factor)
            if sign == "-":
                coef = -coef
            terms[(i, j)] = terms.get((i, j), 0) + coef
        if "".join(m.group(0) for m in _TERM.finditer(s)) != s:
            raise ValueError(f"malformed polynomial text: {text!r}")
        return cls(terms)


_TERM = re.compile(r"([+-])([^+-]+)")


def poly_eval(p: BivarPoly, x0: Scalar, y0: Scalar) -> Fraction:
    x0, y0 = Fraction(x0), Fraction(y0)
    total = Fraction(0)
    for (i, j), c in p.items():
        total += c * x0**i * y0**j
    return total


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """``n! / prod(part!)``; ``parts`` must sum to ``n``."""
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be nonnegative: {parts!r}")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts {parts!r} do not sum to {n}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``k``-tuples of positive integers summing to ``n``, lexicographically.

    ``compositions(0, 0)`` yields the single empty tuple.
    """
    if n < 0 or k < 0:
        raise ValueError("compositions requires n, k >= 0")
    if k == 0:
        if n == 0:
            yield ()
        return
    if k > n:
        return
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first, *rest)


def weak_compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``k``-tuples of nonnegative integers summing to ``n``."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in weak_compositions(n - first, k - 1):
            yield (first, *rest)


@lru_cache(maxsize=None)
def falling_factorial(k: int) -> BivarPoly:
    """``(x)_k = x(x-1)...(x-k+1)`` as a polynomial in x."""
    if k < 0:
        raise ValueError("falling_factorial requires k >= 0")
    p = BivarPoly.const(1)
    for j in range(k):
        p = p * BivarPoly({(1, 0): 1, (0, 0): -j})
    return p


@lru_cache(maxsize=None)
def homogenized_falling(k: int) -> BivarPoly:
    """``prod_{j<k} (x - j*y)``, i.e. ``(x/y)_k * y^k`` cleared of denominators."""
    if k < 0:
        raise ValueError("homogenized_falling requires k >= 0")
    p = BivarPoly.const(1)
    for j in range(k):
        p = p * BivarPoly({(1, 0): 1, (0, 1): -j})
    return p
