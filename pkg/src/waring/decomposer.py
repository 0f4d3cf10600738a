"""Exact Waring decompositions of monomials over the apolar point sets.

Solves ``sum_i lambda_i L_i^d = X^a`` where L_i is the linear form whose
coefficients are the i-th point, then re-expands the sum to check it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import factorial, gcd, prod
from typing import Callable, Iterator, Sequence

from .apolarpoints import count_formula, enumerate_points, point_from_json, point_to_json
from .exactpoly import INCONSISTENT, MultiPoly, monomials_of_degree, solve_with_rank, to_fraction
from .generators import ExponentSeq, as_exponents

__all__ = [
    "LinearSystem",
    "WaringDecomposition",
    "DecompositionFailed",
    "multinomial",
    "expand_power",
    "assemble_system",
    "solve_rational_system",
    "verify_decomposition",
    "t_schedule",
    "decompose_monomial",
]

log = logging.getLogger(__name__)


def multinomial(d: int, alpha: Sequence[int]) -> int:
    if sum(alpha) != d:
        raise ValueError(f"{alpha} does not sum to {d}")
    return factorial(d) // prod(factorial(k) for k in alpha)


def _powers(c: Fraction, d: int) -> list:
    out = [Fraction(1)]
    for _ in range(d):
        out.append(out[-1] * c)
    return out


def expand_power(linform: Sequence, d: int) -> MultiPoly:
    """(sum_j c_j X_j)^d with exact multinomial coefficients."""
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")
    cs = [to_fraction(c) for c in linform]
    if not cs:
        raise ValueError("empty linear form")
    pw = [_powers(c, d) for c in cs]
    terms = {}
    for alpha in monomials_of_degree(len(cs), d):
        v = multinomial(d, alpha) * prod(pw[j][k] for j, k in enumerate(alpha))
        if v:
            terms[alpha] = v
    return MultiPoly(terms, len(cs))


@dataclass
class LinearSystem:
    rows: list          # exponent vectors, grevlex-descending
    matrix: list        # len(rows) x len(points)
    rhs: list
    points: list

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.points)


def assemble_system(a, pts) -> LinearSystem:
    """Rows: degree-d monomials; columns: points; entry multinomial * p^alpha."""
    a = as_exponents(a)
    pts = [tuple(to_fraction(c) for c in p) for p in pts]
    d = sum(a)
    for p in pts:
        if len(p) != len(a):
            raise ValueError(f"point {p} has {len(p)} coordinates, expected {len(a)}")
    rows = monomials_of_degree(len(a), d)
    pw = [[_powers(c, d) for c in p] for p in pts]
    matrix = []
    rhs = []
    for alpha in rows:
        m = multinomial(d, alpha)
        matrix.append([m * prod(pp[j][k] for j, k in enumerate(alpha)) for pp in pw])
        rhs.append(Fraction(1 if alpha == a else 0))
    return LinearSystem(rows, matrix, rhs, pts)


def solve_rational_system(sys: LinearSystem, fast: bool = True):
    """Particular solution (free variables zero), or INCONSISTENT."""
    return solve_with_rank(sys.matrix, sys.rhs, fast)[0]


@dataclass
class WaringDecomposition:
    a: tuple
    t: Fraction
    points: list
    lambdas: list
    rank: int | None = None
    rank_exact: bool | None = None
    verified: bool = False

    @property
    def degree(self) -> int:
        return sum(self.a)

    @property
    def terms(self) -> list:
        return list(zip(self.lambdas, self.points))

    @property
    def term_count(self) -> int:
        return sum(1 for lam in self.lambdas if lam != 0)

    @property
    def bound(self) -> int:
        return count_formula(self.a)

    def pruned(self) -> "WaringDecomposition":
        keep = [(lam, p) for lam, p in self.terms if lam != 0]
        return WaringDecomposition(
            self.a, self.t, [p for _, p in keep], [lam for lam, _ in keep],
            self.rank, self.rank_exact, self.verified,
        )

    def to_json(self) -> dict:
        out = {
            "exponents": list(self.a),
            "degree": self.degree,
            "t": str(self.t),
            "points": [point_to_json(p) for p in self.points],
            "lambdas": [str(lam) for lam in self.lambdas],
            "term_count": self.term_count,
            "bound": self.bound,
            "verified": self.verified,
        }
        if self.rank is not None:
            out["rank"] = self.rank
            out["rank_exact"] = self.rank_exact
        return out

    @classmethod
    def from_json(cls, data: dict) -> "WaringDecomposition":
        try:
            a = as_exponents(data["exponents"])
            pts = [point_from_json(p) for p in data["points"]]
            lams = [Fraction(s) for s in data["lambdas"]]
            t = Fraction(data["t"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed decomposition: {exc}") from exc
        if len(pts) != len(lams):
            raise ValueError(f"{len(pts)} points but {len(lams)} lambdas")
        if "degree" in data and data["degree"] != sum(a):
            raise ValueError(f"degree {data['degree']} does not match exponents {a}")
        # "verified" is deliberately not trusted from the file
        return cls(a, t, pts, lams, data.get("rank"), data.get("rank_exact"), False)


def verify_decomposition(dec: WaringDecomposition) -> bool:
    """True iff sum lambda_i L_i^d expands to exactly X^a."""
    a = tuple(dec.a)
    d = sum(a)
    total: dict = {}
    for lam, p in dec.terms:
        if lam == 0:
            continue
        if len(p) != len(a):
            return False
        for e, c in expand_power(p, d).items():
            v = total.get(e, 0) + lam * c
            if v:
                total[e] = v
            else:
                total.pop(e, None)
    return total == {a: 1}


def t_schedule() -> Iterator[Fraction]:
    """2, 3, 5, 7, then p/q for q = 2, 3, ... with 0 < p < 4q, gcd(p, q) = 1."""
    for t in (2, 3, 5, 7):
        yield Fraction(t)
    for q in count(2):
        for p in range(1, 4 * q):
            if gcd(p, q) == 1:
                yield Fraction(p, q)


class DecompositionFailed(RuntimeError):
    def __init__(self, a, attempts: list):
        self.a = a
        self.attempts = attempts
        tried = ", ".join(str(t) for t in attempts)
        super().__init__(f"no verified decomposition of X^{list(a)} for t in [{tried}]")


def _attempt(a: tuple, t: Fraction, progress) -> WaringDecomposition | None:
    pts = enumerate_points(a, t).points
    progress(f"t={t}: {len(pts)} points, assembling")
    sys = assemble_system(a, pts)
    progress(f"t={t}: solving {sys.shape[0]}x{sys.shape[1]} system")
    x, r, exact = solve_with_rank(sys.matrix, sys.rhs)
    if x is INCONSISTENT:
        progress(f"t={t}: inconsistent")
        return None
    dec = WaringDecomposition(a, t, pts, x, r, exact)
    progress(f"t={t}: verifying")
    dec.verified = verify_decomposition(dec)
    return dec if dec.verified else None


def decompose_monomial(
    a,
    t_hint=None,
    max_attempts: int = 8,
    prune: bool = False,
    progress: Callable[[str], None] | None = None,
) -> WaringDecomposition:
    """Verified decomposition of X^a, retrying over t on failure.

    The hint (default 2) is tried first, then the remaining values of
    :func:`t_schedule`.  Raises :class:`DecompositionFailed` listing every
    attempted t once ``max_attempts`` is used up.
    """
    a = ExponentSeq(as_exponents(a)).a
    if max_attempts < 1:
        raise ValueError("max_attempts must be at least 1")
    progress = progress or log.debug
    first = to_fraction(t_hint) if t_hint is not None else Fraction(2)
    if first == 0 or abs(first) == 1:
        raise ValueError(f"t must satisfy t != 0 and |t| != 1, got {first}")
    candidates = [first] + [t for t in _take(t_schedule(), max_attempts + 1) if t != first]
    attempts = []
    for t in candidates[:max_attempts]:
        attempts.append(t)
        dec = _attempt(a, t, progress)
        if dec is not None:
            return dec.pruned() if prune else dec
    raise DecompositionFailed(a, attempts)


def _take(it, k):
    return [next(it) for _ in range(k)]
