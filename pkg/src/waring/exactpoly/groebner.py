"""Multivariate division and Buchberger's algorithm under grevlex."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, grevlex_key

__all__ = [
    "BudgetExhausted",
    "DEFAULT_BUDGET",
    "poly_reduce",
    "normal_form",
    "spoly",
    "buchberger_basis",
    "leading_monomials",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000
GREVLEX = "grevlex"


class BudgetExhausted(RuntimeError):
    """Raised when an exact computation exceeds its work budget."""

    def __init__(self, budget: int, done: int, unit: str = "S-pair reductions"):
        super().__init__(f"budget exhausted: {done} {unit} (budget {budget})")
        self.budget = budget
        self.done = done


def _check_order(order):
    if order != GREVLEX:
        raise ValueError(f"unsupported monomial order {order!r}; only 'grevlex' is available")


def _divides(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _lead(terms: dict):
    return max(terms, key=grevlex_key)


def poly_reduce(p: MultiPoly, divisors: Sequence[MultiPoly], order: str = GREVLEX):
    """Multivariate division of ``p`` by ``divisors``.

    Returns ``(quotients, remainder)`` with ``p = sum(q_i * d_i) + remainder``
    and no term of the remainder divisible by any leading monomial.  The
    first divisor (in list order) whose leading monomial divides the current
    leading term is used.
    """
    _check_order(order)
    if any(d.is_zero() for d in divisors):
        raise ValueError("division by the zero polynomial")
    for d in divisors:
        if d.nvars != p.nvars:
            raise ValueError(f"variable count mismatch: {p.nvars} vs {d.nvars}")
    n = p.nvars
    leads = [(d.leading_monomial(), d.leading_coefficient(), list(d.items())) for d in divisors]
    quot = [dict() for _ in divisors]
    rem: dict = {}
    work = dict(p.items())
    while work:
        lm = _lead(work)
        lc = work[lm]
        for k, (dm, dc, dterms) in enumerate(leads):
            if _divides(dm, lm):
                shift = tuple(a - b for a, b in zip(lm, dm))
                f = lc / dc
                quot[k][shift] = quot[k].get(shift, 0) + f
                for e, c in dterms:
                    ee = tuple(a + b for a, b in zip(e, shift))
                    v = work.get(ee, 0) - f * c
                    if v:
                        work[ee] = v
                    else:
                        work.pop(ee, None)
                break
        else:
            rem[lm] = lc
            del work[lm]
    quotients = [MultiPoly({e: c for e, c in q.items() if c}, n) for q in quot]
    return quotients, MultiPoly(rem, n)


def normal_form(p: dict, basis: list) -> dict:
    """Remainder of a term dict modulo ``basis`` (a list of (lm, monic term list))."""
    rem: dict = {}
    work = dict(p)
    while work:
        lm = _lead(work)
        lc = work[lm]
        for bm, bterms in basis:
            if _divides(bm, lm):
                shift = tuple(a - b for a, b in zip(lm, bm))
                for e, c in bterms:
                    ee = tuple(a + b for a, b in zip(e, shift))
                    v = work.get(ee, 0) - lc * c
                    if v:
                        work[ee] = v
                    else:
                        work.pop(ee, None)
                break
        else:
            rem[lm] = lc
            del work[lm]
    return rem


def _monic_entry(terms: dict):
    lm = _lead(terms)
    inv = 1 / terms[lm]
    return lm, [(e, c * inv) for e, c in terms.items()]


def spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """S-polynomial of f and g."""
    fm, gm = f.leading_monomial(), g.leading_monomial()
    l = tuple(max(a, b) for a, b in zip(fm, gm))
    sf = f.mul_term(tuple(a - b for a, b in zip(l, fm)), 1 / f.leading_coefficient())
    sg = g.mul_term(tuple(a - b for a, b in zip(l, gm)), 1 / g.leading_coefficient())
    return sf - sg


def buchberger_basis(
    gens: Sequence[MultiPoly], order: str = GREVLEX, budget: int = DEFAULT_BUDGET
) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first) and
    pruned with Buchberger's coprime and chain criteria.  Raises
    :class:`BudgetExhausted` after ``budget`` S-pair reductions.
    """
    _check_order(order)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("buchberger_basis needs at least one nonzero generator")
    n = gens[0].nvars
    for g in gens:
        if g.nvars != n:
            raise ValueError("generators live in different rings")

    basis: list = []  # (lm, monic term list)
    pairs: set = set()
    done = 0

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(basis[i][0], basis[j][0]))

    def add(terms: dict):
        entry = _monic_entry(terms)
        basis.append(entry)
        k = len(basis) - 1
        for i in range(k):
            pairs.add((i, k))

    for g in gens:
        r = normal_form(dict(g.items()), basis)
        if r:
            add(r)

    processed: set = set()
    while pairs:
        i, j = min(pairs, key=lambda p: (grevlex_key(lcm_of(*p)), p[1], p[0]))
        pairs.discard((i, j))
        processed.add((i, j))
        mi, ti = basis[i]
        mj, tj = basis[j]
        l = lcm_of(i, j)
        # first criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue
        # second (chain) criterion
        chain = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    chain = True
                    break
        if chain:
            continue
        if done >= budget:
            raise BudgetExhausted(budget, done)
        done += 1
        s: dict = {}
        si = tuple(a - b for a, b in zip(l, mi))
        sj = tuple(a - b for a, b in zip(l, mj))
        for e, c in ti:
            ee = tuple(a + b for a, b in zip(e, si))
            s[ee] = s.get(ee, 0) + c
        for e, c in tj:
            ee = tuple(a + b for a, b in zip(e, sj))
            s[ee] = s.get(ee, 0) - c
        s = {e: c for e, c in s.items() if c}
        r = normal_form(s, basis)
        if r:
            add(r)
    log.debug("buchberger: %d S-pair reductions, %d basis elements", done, len(basis))
    return _reduce_basis(basis, n)


def _reduce_basis(basis: list, n: int) -> list[MultiPoly]:
    # minimal basis: drop elements whose lm is divisible by another lm
    entries = sorted(basis, key=lambda b: grevlex_key(b[0]))
    minimal = []
    for lm, terms in entries:
        if any(_divides(m, lm) for m, _ in minimal):
            continue
        minimal.append((lm, terms))
    out = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [b for k, b in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in terms if e != lm}
        red = normal_form(tail, others)
        red[lm] = Fraction(1)
        out.append(MultiPoly(red, n))
    out.sort(key=lambda p: grevlex_key(p.leading_monomial()), reverse=True)
    return out


def leading_monomials(basis: Sequence[MultiPoly]) -> list[tuple]:
    return [g.leading_monomial() for g in basis]
