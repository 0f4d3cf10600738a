"""Hyperbolic binary forms cutting out the apolar point set of a monomial.

For an all-odd exponent sequence the pair form for (i, j) is the product of
``x_i^2 - t^(2k) x_j^2`` over a symmetric-ish window of k.  Even exponents are
handled by dropping them to the odd number below and multiplying in the
corresponding variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .exactpoly import MultiPoly, to_fraction

__all__ = [
    "ExponentSeq",
    "OddizedSeq",
    "GeneratorSet",
    "as_exponents",
    "parity_flag",
    "oddize",
    "factor_window",
    "build_F",
    "build_G",
    "build_J",
    "apolar_membership",
    "vanishes_on",
]


@dataclass(frozen=True)
class ExponentSeq:
    """Exponents (a_0, ..., a_n) of the target monomial, all positive, n >= 1."""

    a: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if len(a) < 2:
            raise ValueError(f"need at least two exponents, got {a}")
        if any(x < 1 for x in a):
            raise ValueError(f"exponents must be positive integers, got {a}")
        object.__setattr__(self, "a", a)

    @classmethod
    def parse(cls, text: str) -> "ExponentSeq":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad exponent list {text!r}: {exc}") from exc

    @property
    def n(self) -> int:
        return len(self.a) - 1

    @property
    def nvars(self) -> int:
        return len(self.a)

    @property
    def degree(self) -> int:
        return sum(self.a)

    @property
    def perm(self) -> tuple:
        """perm[k] is the original index of the k-th largest exponent (stable)."""
        return tuple(sorted(range(len(self.a)), key=lambda i: -self.a[i]))

    def descending(self) -> "ExponentSeq":
        return ExponentSeq(tuple(self.a[i] for i in self.perm))

    def is_descending(self) -> bool:
        return all(x >= y for x, y in zip(self.a, self.a[1:]))

    def __iter__(self):
        return iter(self.a)

    def __len__(self):
        return len(self.a)

    def __getitem__(self, k):
        return self.a[k]

    def __str__(self):
        return ",".join(map(str, self.a))


def as_exponents(a) -> tuple:
    """Plain tuple of positive ints from an ExponentSeq or any sequence."""
    if isinstance(a, ExponentSeq):
        return a.a
    a = tuple(int(x) for x in a)
    if any(x < 1 for x in a):
        raise ValueError(f"exponents must be positive integers, got {a}")
    return a


def parity_flag(p: int) -> int:
    """1 for even p, 0 for odd p."""
    return 1 if p % 2 == 0 else 0


@dataclass(frozen=True)
class OddizedSeq:
    aprime: tuple
    eps: tuple


def oddize(a) -> OddizedSeq:
    a = as_exponents(a)
    eps = tuple(parity_flag(x) for x in a)
    return OddizedSeq(tuple(x - e for x, e in zip(a, eps)), eps)


def factor_window(ai: int, aj: int) -> range:
    """Range of k with a factor ``x_i^2 - t^(2k) x_j^2`` for odd a_i, a_j."""
    return range(-(ai // 4) - (aj + 2) // 4, (ai + 2) // 4 + aj // 4 + 1)


def _check_t(t) -> Fraction:
    t = to_fraction(t)
    if t == 0:
        raise ValueError("the parameter t must be nonzero")
    return t


def build_F(aodd: Sequence[int], i: int, j: int, t) -> MultiPoly:
    """Product of ``x_i^2 - t^(2k) x_j^2`` over :func:`factor_window`."""
    t = _check_t(t)
    aodd = tuple(int(x) for x in aodd)
    if any(x % 2 == 0 or x < 1 for x in aodd):
        raise ValueError(f"all exponents must be odd and positive, got {aodd}")
    n = len(aodd)
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < {n}, got ({i}, {j})")
    # expand as a binary form in (x_i^2, x_j^2): coefficients c[d] of x_i^(2(N-d)) x_j^(2d)
    coeffs = [Fraction(1)]
    for k in factor_window(aodd[i], aodd[j]):
        r = t ** (2 * k)
        nxt = coeffs + [Fraction(0)]
        for d in range(1, len(nxt)):
            nxt[d] -= r * coeffs[d - 1]
        coeffs = nxt
    N = len(coeffs) - 1
    terms = {}
    for d, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = 2 * (N - d)
            e[j] = 2 * d
            terms[tuple(e)] = c
    return MultiPoly(terms, n)


def _clear_denominators(p: MultiPoly) -> MultiPoly:
    s = 1
    for _, c in p.items():
        s = lcm(s, c.denominator)
    return p * s


def build_G(a, i: int, j: int, t, clear_denominators: bool = False) -> MultiPoly:
    """``x_i^eps_i x_j^eps_j`` times the odd-part pair form for (i, j)."""
    a = as_exponents(a)
    odd = oddize(a)
    F = build_F(odd.aprime, i, j, t)
    e = [0] * len(a)
    e[i] = odd.eps[i]
    e[j] = odd.eps[j]
    G = F.mul_term(tuple(e), 1)
    return _clear_denominators(G) if clear_denominators else G


@dataclass(frozen=True)
class GeneratorSet:
    gens: dict = field(compare=True)
    t: Fraction = Fraction(2)

    def polys(self) -> list:
        return [self.gens[k] for k in sorted(self.gens)]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.polys())


def build_J(a, t, clear_denominators: bool = False) -> GeneratorSet:
    """All pair generators G_{i,j}, i < j, at the given t."""
    a = as_exponents(a)
    t = _check_t(t)
    gens = {}
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            gens[(i, j)] = build_G(a, i, j, t, clear_denominators)
    return GeneratorSet(gens, t)


def apolar_membership(p: MultiPoly, a) -> bool:
    """True iff every term of p lies in (x_0^(a_0+1), ..., x_n^(a_n+1))."""
    a = as_exponents(a)
    if p.nvars != len(a):
        raise ValueError(f"polynomial has {p.nvars} variables, exponents give {len(a)}")
    for exps, _ in p.items():
        if not any(e > ai for e, ai in zip(exps, a)):
            return False
    return True


def vanishes_on(polys: Iterable[MultiPoly], points: Iterable[Sequence]) -> bool:
    pts = list(points)
    return all(g.evaluate(p) == 0 for g in polys for p in pts)
