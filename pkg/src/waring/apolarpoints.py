"""Exact enumeration of the zero set of the pair generators.

Points are tuples of Fractions.  For all-odd exponents every point is, up to
scaling, ``(±t^b_0, ..., ±t^b_(n-1), t^b_n)`` with each b_i in a short
integer window; even exponents split the set along ``x_l = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

from .exactpoly import to_fraction
from .generators import as_exponents

__all__ = [
    "ApolarPointSet",
    "count_formula",
    "exponent_window",
    "base_odd_points",
    "enumerate_points",
    "projective_key",
    "point_to_json",
    "point_from_json",
]


def count_formula(a) -> int:
    """(prod(a_i + 1) - prod(a_i - 1)) / 2."""
    a = as_exponents(a)
    return (prod(x + 1 for x in a) - prod(x - 1 for x in a)) // 2


def exponent_window(ai: int) -> tuple[int, int]:
    """Inclusive bounds for the t-exponent of a coordinate with odd exponent ai."""
    return -(ai // 4), (ai + 2) // 4


def _valid_t(t) -> Fraction:
    t = to_fraction(t)
    if t == 0 or abs(t) == 1:
        raise ValueError(f"t must satisfy t != 0 and |t| != 1, got {t}")
    return t


def _odd_points(aodd: tuple, t: Fraction) -> list:
    if not aodd:
        return []
    s = abs(t)
    windows = [exponent_window(x) for x in aodd]
    reps = []
    for bs in product(*(range(lo, hi + 1) for lo, hi in windows)):
        if any(b == lo for b, (lo, _) in zip(bs, windows)):
            reps.append(tuple(s**b for b in bs))
    n = len(aodd) - 1
    signs = list(product((1, -1), repeat=n))
    return [tuple(c * sg for c, sg in zip(rep, signs_ + (1,))) for rep in reps for signs_ in signs]


def base_odd_points(aodd, t) -> list:
    """Points for an all-odd sequence: gauge-fixed exponent patterns times sign flips.

    A representative has at least one exponent at its lower bound; signs are
    applied to every coordinate but the last.
    """
    aodd = tuple(int(x) for x in aodd)
    if any(x < 1 or x % 2 == 0 for x in aodd):
        raise ValueError(f"all exponents must be odd and positive, got {aodd}")
    return _odd_points(aodd, _valid_t(t))


def _enumerate(a: tuple, t: Fraction) -> list:
    evens = [i for i, x in enumerate(a) if x % 2 == 0]
    if not evens:
        return _odd_points(a, t)
    l = evens[-1]
    dropped = a[:l] + a[l + 1 :]
    lowered = a[:l] + (a[l] - 1,) + a[l + 1 :]
    zero = Fraction(0)
    on_hyperplane = [p[:l] + (zero,) + p[l:] for p in _enumerate(dropped, t)]
    return on_hyperplane + _enumerate(lowered, t)


@dataclass
class ApolarPointSet:
    points: list
    a: tuple
    t: Fraction

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        return self.points[k]

    def distinct_count(self) -> int:
        return len({projective_key(p) for p in self.points})

    def to_json(self) -> list:
        return [point_to_json(p) for p in self.points]


def enumerate_points(a, t, check: bool = True) -> ApolarPointSet:
    """Zero set of the pair generators at t.

    Picks the last even exponent a_l and returns the points on ``x_l = 0``
    (from the sequence with a_l deleted) followed by those of a - e_l.
    ``check=False`` skips the t validation, which is only useful for
    demonstrating degenerate parameters.
    """
    a = as_exponents(a) if a else ()
    t = _valid_t(t) if check else to_fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return ApolarPointSet(_enumerate(tuple(a), t), tuple(a), t)


def projective_key(p: Sequence) -> tuple:
    """Representative with last nonzero coordinate equal to 1."""
    last = next((c for c in reversed(p) if c != 0), None)
    if last is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(Fraction(c) / last for c in p)


def point_to_json(p: Sequence) -> list:
    return [str(Fraction(c)) for c in p]


def point_from_json(items: Sequence[str]) -> tuple:
    return tuple(Fraction(s) for s in items)
