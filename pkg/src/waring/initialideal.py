"""Monomial ideals predicted to be the grevlex initial ideal of the pair ideal.

Includes the lattice-simplex indexing of the predicted generators, standard
monomial / Hilbert function counting, and an end-to-end validation report
that cross-checks points, apolarity, Groebner leading terms and Hilbert
function stabilisation for one (a, t).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .apolarpoints import count_formula, enumerate_points, projective_key
from .exactpoly import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    MultiPoly,
    buchberger_basis,
    grevlex_key,
    monomials_of_degree,
    rank,
    to_fraction,
)
from .generators import ExponentSeq, apolar_membership, as_exponents, build_J

__all__ = [
    "LatticeSimplex",
    "MonomialIdeal",
    "HilbertTable",
    "ValidationReport",
    "simplex_points",
    "beta_map",
    "build_M",
    "staircase_degree",
    "recursive_initial_ideal",
    "hilbert_function_at",
    "hilbert_table",
    "groebner_initial_ideal",
    "validate_theorem_pipeline",
]

# cap on (rows x columns) of a single Hilbert-function rank computation
HF_MATRIX_BUDGET = 2_000_000


def _divides(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal kept as its minimal generating set."""

    gens: frozenset
    nvars: int

    def __init__(self, gens: Iterable[Sequence[int]], nvars: int | None = None):
        gens = [tuple(int(x) for x in g) for g in gens]
        if nvars is None:
            if not gens:
                raise ValueError("nvars is required for the zero ideal")
            nvars = len(gens[0])
        if any(len(g) != nvars for g in gens):
            raise ValueError(f"all generators must have {nvars} exponents")
        minimal = []
        for g in sorted(set(gens), key=sum):
            if not any(_divides(h, g) for h in minimal):
                minimal.append(g)
        object.__setattr__(self, "gens", frozenset(minimal))
        object.__setattr__(self, "nvars", nvars)

    def sorted_gens(self) -> list:
        return sorted(self.gens, key=grevlex_key, reverse=True)

    def contains(self, m: Sequence[int]) -> bool:
        return any(_divides(g, m) for g in self.gens)

    def __contains__(self, m):
        return self.contains(m)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.nvars != self.nvars:
            raise ValueError("ideals live in different rings")
        return MonomialIdeal(list(self.gens) + list(other.gens), self.nvars)

    def add_monomial(self, m: Sequence[int]) -> "MonomialIdeal":
        return MonomialIdeal(list(self.gens) + [tuple(m)], self.nvars)

    def times_var(self, k: int) -> "MonomialIdeal":
        out = []
        for g in self.gens:
            g = list(g)
            g[k] += 1
            out.append(tuple(g))
        return MonomialIdeal(out, self.nvars)

    def embed(self, nvars: int) -> "MonomialIdeal":
        """Same generators in a ring with extra trailing variables."""
        return MonomialIdeal([g + (0,) * (nvars - self.nvars) for g in self.gens], nvars)

    def involves(self, k: int) -> bool:
        return any(g[k] for g in self.gens)

    def __len__(self):
        return len(self.gens)

    def to_polys(self) -> list:
        return [MultiPoly({g: 1}, self.nvars) for g in self.sorted_gens()]

    def to_str(self) -> str:
        return ", ".join(MultiPoly({g: 1}, self.nvars).to_str() for g in self.sorted_gens())


def simplex_points(lam: int, dim: int) -> list:
    """Non-negative integer vectors of length dim summing to lam (lex-descending)."""
    if dim == 0:
        return [()] if lam == 0 else []
    if dim == 1:
        return [(lam,)]
    return [(k,) + rest for k in range(lam, -1, -1) for rest in simplex_points(lam - k, dim - 1)]


@dataclass(frozen=True)
class LatticeSimplex:
    lam: int
    dim: int
    points: tuple

    @classmethod
    def for_exponents(cls, a) -> "LatticeSimplex":
        a = _descending_odd_last(a)
        lam = (a[-1] + 1) // 2
        n = len(a) - 1
        return cls(lam, n, tuple(simplex_points(lam, n)))


def _descending_odd_last(a) -> tuple:
    a = as_exponents(a)
    if len(a) < 2:
        raise ValueError(f"need at least two exponents, got {a}")
    if any(x < y for x, y in zip(a, a[1:])):
        raise ValueError(f"exponents must be in descending order, got {a}")
    if a[-1] % 2 == 0:
        raise ValueError(f"the last (smallest) exponent must be odd, got {a}")
    return a


def beta_map(a, i: Sequence[int]) -> tuple:
    """Exponent vector (length n, no x_n slot) indexed by a simplex point i."""
    a = _descending_odd_last(a)
    n = len(a) - 1
    lam = (a[-1] + 1) // 2
    i = tuple(int(x) for x in i)
    if len(i) != n or any(x < 0 for x in i) or sum(i) != lam:
        raise ValueError(f"{i} is not a lattice point of the simplex of size {lam} in dimension {n}")
    out = []
    partial = 0
    for k in range(n):
        out.append(0 if i[k] == 0 else a[k] - 1 - 2 * partial + 2 * i[k])
        partial += i[k]
    return tuple(out)


def build_M(a) -> MonomialIdeal:
    """Monomial ideal generated by x^beta(a, i) over the simplex, in n+1 variables."""
    a = _descending_odd_last(a)
    simplex = LatticeSimplex.for_exponents(a)
    return MonomialIdeal([beta_map(a, i) + (0,) for i in simplex.points], len(a))


def _standard_count(M: MonomialIdeal, d: int) -> int:
    mons = monomials_of_degree(M.nvars, d)
    if not M.gens:
        return len(mons)
    arr = np.array(mons, dtype=np.int64)
    gens = np.array(sorted(M.gens), dtype=np.int64)
    inside = np.zeros(len(mons), dtype=bool)
    for g in gens:
        inside |= np.all(arr >= g, axis=1)
    return int(len(mons) - inside.sum())


def _finite_complement(M: MonomialIdeal) -> int | None:
    """|{monomials in x_0..x_(n-1) outside M}| when no generator uses x_n and it is finite."""
    n = M.nvars - 1
    if n < 1 or M.involves(n):
        return None
    bounds = []
    for k in range(n):
        pure = [g[k] for g in M.gens if g[k] and sum(g) == g[k]]
        if not pure:
            return None
        bounds.append(min(pure))
    gens = [g[:n] for g in M.gens]
    count = 0
    for m in product(*(range(b) for b in bounds)):
        if not any(_divides(g, m) for g in gens):
            count += 1
    return count


@dataclass
class HilbertTable:
    values: dict = field(default_factory=dict)
    stable_value: int | None = None
    stable_from: int | None = None


def _stabilize(hf, start: int, nvars: int, max_degree: int) -> HilbertTable:
    need = nvars + 1  # n + 2 consecutive equal values, n = nvars - 1
    table = HilbertTable()
    run = 0
    prev = None
    for d in range(start, max_degree + 1):
        v = hf(d)
        table.values[d] = v
        run = run + 1 if v == prev else 1
        prev = v
        if run >= need:
            table.stable_value = v
            table.stable_from = d - need + 1
            return table
    raise ValueError(f"Hilbert function did not stabilise by degree {max_degree}")


def staircase_degree(M: MonomialIdeal, max_degree: int | None = None) -> int:
    """Degree of T/M, i.e. its constant Hilbert polynomial.

    Ideals shaped like M_a (pure powers of x_0..x_(n-1), no x_n) are counted
    directly through their finite complement; anything else goes through
    Hilbert-function stabilisation.
    """
    direct = _finite_complement(M)
    if direct is not None:
        return direct
    start = max((sum(g) for g in M.gens), default=0)
    if max_degree is None:
        max_degree = start + sum(max((g[k] for g in M.gens), default=0) for k in range(M.nvars)) + M.nvars + 2
    return _stabilize(lambda d: _standard_count(M, d), start, M.nvars, max_degree).stable_value


def recursive_initial_ideal(a) -> MonomialIdeal:
    """Predicted grevlex initial ideal of the pair ideal.

    Odd last exponent: M_a.  Even last exponent: the prediction for
    (a_0, ..., a_(n-1)) together with x_n * M_(a - e_n).  Unsorted input is
    sorted descending first (stable), so the result lives in the relabelled
    variables x_k <- x_perm[k].
    """
    seq = a if isinstance(a, ExponentSeq) else ExponentSeq(as_exponents(a))
    return _rec_initial(seq.descending().a)


def _rec_initial(a: tuple) -> MonomialIdeal:
    n = len(a) - 1
    if a[-1] % 2 == 1:
        return build_M(a)
    if n == 1:
        return MonomialIdeal([(a[0] + a[1] - 1, 1)], 2)
    head = _rec_initial(a[:-1]).embed(n + 1)
    tail = build_M(a[:-1] + (a[-1] - 1,)).times_var(n)
    return head + tail


def _is_monomial(p: MultiPoly) -> bool:
    return len(p) == 1


def hilbert_function_at(I_gens: Sequence[MultiPoly], d: int, budget: int = HF_MATRIX_BUDGET) -> int:
    """dim of the degree-d part of T/I for homogeneous generators.

    Monomial generators are handled by counting standard monomials;
    otherwise HF = #monomials - rank of the degree-d multiples of the
    generators, with the rank computed exactly.
    """
    gens = [g for g in I_gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    nvars = gens[0].nvars
    if any(not g.is_homogeneous() for g in gens):
        raise ValueError("generators must be homogeneous")
    if all(_is_monomial(g) for g in gens):
        return _standard_count(MonomialIdeal([g.leading_monomial() for g in gens], nvars), d)
    cols = monomials_of_degree(nvars, d)
    index = {m: k for k, m in enumerate(cols)}
    nrows = sum(comb(d - g.total_degree() + nvars - 1, nvars - 1) for g in gens if g.total_degree() <= d)
    if nrows * len(cols) > budget:
        raise BudgetExhausted(budget, nrows * len(cols), "matrix entries")
    rows = []
    for g in gens:
        e = g.total_degree()
        if e > d:
            continue
        for m in monomials_of_degree(nvars, d - e):
            row = [Fraction(0)] * len(cols)
            for ge, c in g.items():
                row[index[tuple(x + y for x, y in zip(ge, m))]] = c
            rows.append(row)
    r = rank(rows) if rows else 0
    return len(cols) - r


def hilbert_table(I_gens: Sequence[MultiPoly], max_degree: int | None = None, budget: int = HF_MATRIX_BUDGET) -> HilbertTable:
    """Scan HF from the top generator degree until it repeats n+2 times."""
    gens = [g for g in I_gens if not g.is_zero()]
    nvars = gens[0].nvars
    start = max(g.total_degree() for g in gens)
    if max_degree is None:
        max_degree = start * nvars + 10
    return _stabilize(lambda d: hilbert_function_at(gens, d, budget), start, nvars, max_degree)


def groebner_initial_ideal(gens: Sequence[MultiPoly], budget: int = DEFAULT_BUDGET) -> MonomialIdeal:
    basis = buchberger_basis(list(gens), "grevlex", budget)
    return MonomialIdeal([g.leading_monomial() for g in basis], basis[0].nvars)


@dataclass
class ValidationReport:
    exponents: list
    sorted_exponents: list
    t: str
    count_formula: int
    point_count: int | None = None
    points_match: bool | None = None
    generators_vanish: bool | None = None
    generators_apolar: bool | None = None
    groebner_initial: list | None = None
    predicted_initial: list | None = None
    initial_ideal_match: bool | None = None
    staircase_degree: int | None = None
    hilbert_values: dict = field(default_factory=dict)
    hilbert_stable: int | None = None
    hilbert_match: bool | None = None
    partial: bool = False
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        steps = (self.points_match, self.generators_vanish, self.generators_apolar,
                 self.initial_ideal_match, self.hilbert_match)
        return not self.partial and all(s is True for s in steps)

    def failed_steps(self) -> list:
        names = ["points", "vanishing", "apolarity", "initial_ideal", "hilbert"]
        steps = (self.points_match, self.generators_vanish, self.generators_apolar,
                 self.initial_ideal_match, self.hilbert_match)
        return [nm for nm, s in zip(names, steps) if s is False]

    def to_json(self) -> dict:
        out = asdict(self)
        out["hilbert_values"] = {str(k): v for k, v in self.hilbert_values.items()}
        out["passed"] = self.passed
        out["failed_steps"] = self.failed_steps()
        return out


def validate_theorem_pipeline(
    a, t, budget: int = DEFAULT_BUDGET, hf_budget: int = HF_MATRIX_BUDGET
) -> ValidationReport:
    """Cross-check the construction for one exponent sequence and one t.

    Steps: distinct point count vs the closed formula; generators vanish on
    the points; generators are apolar; Groebner leading monomials vs the
    predicted initial ideal (on the descending relabelling); stabilised
    Hilbert function vs the point count.  t = +-1 is accepted so that its
    failure can be observed; t = 0 is rejected.
    """
    a = as_exponents(a)
    t = to_fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    seq = ExponentSeq(a)
    desc = seq.descending().a
    report = ValidationReport(list(a), list(desc), str(t), count_formula(a))

    clock = time.perf_counter()
    pts = enumerate_points(a, t, check=False)
    distinct = {projective_key(p) for p in pts}
    report.point_count = len(distinct)
    report.points_match = len(distinct) == report.count_formula
    if abs(t) == 1:
        report.notes.append("|t| = 1 makes the t-power coordinates collide")
    report.timings["points"] = time.perf_counter() - clock

    clock = time.perf_counter()
    J = build_J(a, t).polys()
    report.generators_vanish = all(g.evaluate(p) == 0 for g in J for p in pts)
    report.generators_apolar = all(apolar_membership(g, a) for g in J)
    report.timings["generators"] = time.perf_counter() - clock

    Jd = build_J(desc, t).polys()
    clock = time.perf_counter()
    try:
        got = groebner_initial_ideal(Jd, budget)
        want = recursive_initial_ideal(desc)
        report.groebner_initial = [list(g) for g in got.sorted_gens()]
        report.predicted_initial = [list(g) for g in want.sorted_gens()]
        report.initial_ideal_match = got == want
        report.staircase_degree = staircase_degree(want)
    except BudgetExhausted as exc:
        report.partial = True
        report.notes.append(f"groebner: {exc}")
    report.timings["groebner"] = time.perf_counter() - clock

    clock = time.perf_counter()
    try:
        table = hilbert_table(Jd, budget=hf_budget)
        report.hilbert_values = dict(table.values)
        report.hilbert_stable = table.stable_value
        report.hilbert_match = table.stable_value == report.point_count
    except BudgetExhausted as exc:
        report.partial = True
        report.notes.append(f"hilbert: {exc}")
    except ValueError as exc:
        report.hilbert_match = False
        report.notes.append(f"hilbert: {exc}")
    report.timings["hilbert"] = time.perf_counter() - clock
    return report
