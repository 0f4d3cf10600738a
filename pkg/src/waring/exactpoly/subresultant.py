"""Degree-dropping combinations ``u*f + v*g`` from Sylvester submatrices."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .linalg import bareiss_det
from .poly import MultiPoly

__all__ = ["SubresultantPair", "subresultant_pair", "sylvester_block", "univariate_coeffs"]


class SubresultantPair(NamedTuple):
    u: MultiPoly
    v: MultiPoly
    h: MultiPoly


def univariate_coeffs(p: MultiPoly) -> list[Fraction]:
    """Coefficients of a one-variable polynomial, highest degree first."""
    if p.nvars != 1:
        raise ValueError(f"expected a univariate polynomial, got {p.nvars} variables")
    deg = p.total_degree()
    return [p.coeff((deg - k,)) for k in range(deg + 1)]


def _from_coeffs(coeffs_desc: list) -> MultiPoly:
    deg = len(coeffs_desc) - 1
    return MultiPoly({(deg - k,): c for k, c in enumerate(coeffs_desc) if c}, 1)


def sylvester_block(f: MultiPoly, g: MultiPoly, i: int) -> list[list[Fraction]]:
    """The (n+m-i+1) x (n+m-2i+2) matrix of ``(A, B) -> A f + B g``.

    Columns hold the shifted coefficient vectors of f (m-i+1 of them) then
    of g (n-i+1 of them); rows run from degree n+m-i down to 0.
    """
    a, b = univariate_coeffs(f), univariate_coeffs(g)
    n, m = len(a) - 1, len(b) - 1
    rows = n + m - i + 1
    cols = []
    for s in range(m - i + 1):
        cols.append([Fraction(0)] * s + a + [Fraction(0)] * (rows - s - n - 1))
    for s in range(n - i + 1):
        cols.append([Fraction(0)] * s + b + [Fraction(0)] * (rows - s - m - 1))
    return [[col[r] for col in cols] for r in range(rows)]


def subresultant_pair(f: MultiPoly, g: MultiPoly, i: int) -> SubresultantPair:
    """Polynomials u, v with deg u <= m-i, deg v <= n-i and deg(u f + v g) <= i-1.

    Here n = deg f >= m = deg g >= i >= 1.  The coefficient vector of (u, v)
    is the signed maximal-minor vector of the top n+m-2i+1 rows of the
    Sylvester block, which annihilates those rows.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("subresultant of a zero polynomial")
    n, m = f.total_degree(), g.total_degree()
    if n < m:
        raise ValueError(f"need deg f >= deg g, got {n} < {m}")
    if not 1 <= i <= m:
        raise ValueError(f"index i={i} out of range 1..{m}")
    big = sylvester_block(f, g, i)
    top = big[: n + m - 2 * i + 1]
    ncols = n + m - 2 * i + 2
    x = []
    for j in range(ncols):
        minor = [row[:j] + row[j + 1 :] for row in top]
        x.append((-1) ** j * bareiss_det(minor))
    u = _from_coeffs(x[: m - i + 1])
    v = _from_coeffs(x[m - i + 1 :])
    h = u * f + v * g
    return SubresultantPair(u, v, h)


def remainder_by_minors(f: MultiPoly, g: MultiPoly, i: int) -> MultiPoly:
    """``(-1)^(n+m-2i+1) * sum_k det(M_k) x^(i-1-k)``, M_k = top block plus row n+m-2i+1+k."""
    n, m = f.total_degree(), g.total_degree()
    big = sylvester_block(f, g, i)
    top = big[: n + m - 2 * i + 1]
    sign = (-1) ** (n + m - 2 * i + 1)
    terms = {}
    for k in range(i):
        d = bareiss_det(top + [big[n + m - 2 * i + 1 + k]])
        if d:
            terms[(i - 1 - k,)] = sign * d
    return MultiPoly(terms, 1)
