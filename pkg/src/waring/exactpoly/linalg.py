"""Exact linear algebra over the rationals.

Matrices are lists of rows.  Rows are scaled to integers up front and all
elimination is fraction-free, so the only Fractions created are in the
final back substitution.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

import numpy as np

__all__ = [
    "INCONSISTENT",
    "bareiss_det",
    "integer_rows",
    "rank",
    "solve_particular",
    "solve_with_rank",
    "modular_pivots",
]


class _Inconsistent:
    """Marker returned when a linear system has no solution."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INCONSISTENT"

    def __bool__(self):
        return False


INCONSISTENT = _Inconsistent()

# largest prime below 2**31: products of two residues fit in int64
_PRIME = 2147483647


def integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators.

    Returns the integer rows and the per-row scale factors.
    """
    out, scales = [], []
    for row in rows:
        fr = [Fraction(x) for x in row]
        s = 1
        for x in fr:
            s = lcm(s, x.denominator)
        out.append([int(x * s) for x in fr])
        scales.append(s)
    return out, scales


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    rows, scales = integer_rows(matrix)
    denom = 1
    for s in scales:
        denom *= s
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], denom)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _echelon(rows: list[list[int]], ncols: int):
    """Fraction-free row echelon form; returns (rows, pivot columns).

    Pivots are chosen as the first row with a nonzero entry in the current
    column.  Each eliminated row is divided by its content to curb growth.
    """
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    m = len(a)
    for c in range(ncols):
        if r >= m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                ri = a[i]
                a[i] = _primitive([pv * x - f * y for x, y in zip(ri, pr)])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    if not matrix:
        return 0
    ncols = len(matrix[0])
    rows, _ = integer_rows(matrix)
    rows = [_primitive(r) for r in rows if any(r)]
    return len(_echelon(rows, ncols)[1])


def modular_pivots(rows: Sequence[Sequence[int]], ncols: int, prime: int = _PRIME):
    """Row-echelon pivots of an integer matrix reduced mod ``prime``.

    Returns (pivot rows, pivot columns) in the original indexing.  Rows
    independent mod p are independent over Q, so the selection is always a
    valid set of independent rows, though a bad prime may find fewer.
    """
    m = len(rows)
    if m == 0 or ncols == 0:
        return [], []
    a = np.array([[x % prime for x in r] for r in rows], dtype=np.int64)
    order = list(range(m))
    piv_rows, piv_cols = [], []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
            order[r], order[p] = order[p], order[r]
        inv = pow(int(a[r, c]), prime - 2, prime)
        a[r] = (a[r] * inv) % prime
        below = a[r + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            a[idx] = (a[idx] - (below[mask, None] * a[r][None, :]) % prime) % prime
        piv_rows.append(order[r])
        piv_cols.append(c)
        r += 1
    return piv_rows, piv_cols


def _square_solve(a: list[list[int]], b: list[int]) -> list[Fraction] | None:
    """Solve a nonsingular integer system by Bareiss elimination.

    Works on numpy object arrays so each elimination step is one vectorised
    update; returns None when the matrix turns out singular.
    """
    n = len(a)
    m = np.empty((n, n + 1), dtype=object)
    for i in range(n):
        m[i, :n] = a[i]
        m[i, n] = b[i]
    prev = 1
    for k in range(n):
        if m[k, k] == 0:
            nz = [i for i in range(k + 1, n) if m[i, k] != 0]
            if not nz:
                return None
            m[[k, nz[0]]] = m[[nz[0], k]]
        if k + 1 < n:
            akk = m[k, k]
            sub = m[k + 1 :, k + 1 :]
            sub *= akk
            sub -= np.outer(m[k + 1 :, k], m[k, k + 1 :])
            # exact: Bareiss guarantees divisibility
            m[k + 1 :, k + 1 :] = sub // prev
            m[k + 1 :, k] = 0
            prev = akk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i, n])
        row = m[i]
        for j in range(i + 1, n):
            if row[j]:
                s -= row[j] * x[j]
        x[i] = s / row[i]
    return x


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.2e9
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in (2, 3, 5, 7):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(start: int):
    n = start
    while n > 2:
        if _is_prime(n):
            yield n
        n -= 1


def _solve_mod(a: np.ndarray, b: np.ndarray, p: int):
    """Gauss-Jordan solve of a square system mod p; None if singular mod p."""
    n = a.shape[0]
    m = np.concatenate([a % p, (b % p)[:, None]], axis=1)
    for k in range(n):
        nz = np.nonzero(m[k:, k])[0]
        if nz.size == 0:
            return None
        piv = k + int(nz[0])
        if piv != k:
            m[[k, piv]] = m[[piv, k]]
        m[k] = (m[k] * pow(int(m[k, k]), p - 2, p)) % p
        col = m[:, k].copy()
        col[k] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            m[rows] = (m[rows] - (col[rows, None] * m[k][None, :]) % p) % p
    return m[:, n]


def _ratrec(u: int, mod: int):
    """Rational p/q = u (mod mod) with |p|, q <= sqrt(mod/2), or None."""
    bound = isqrt(mod // 2)
    r0, r1, s0, s1 = mod, u % mod, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(s1, mod) != 1:
        return None
    return Fraction(r1, s1)


def _multimodular_solve(a: list[list[int]], b: list[int], check, max_primes: int):
    """Solve a square integer system by CRT over word-size primes.

    After each prime the residues are lifted to rationals; once the lift is
    stable across two rounds it is handed to ``check`` (an exact test).
    Returns None if no verified answer appears within ``max_primes``.
    """
    # residues of the big integers are taken in Python, then work in int64
    x_mod, modulus = None, 1
    last = None
    used = 0
    for p in _primes_below(_PRIME):
        if used >= max_primes:
            return None
        rows_mod = np.array([[v % p for v in r] for r in a], dtype=np.int64)
        rhs_mod = np.array([v % p for v in b], dtype=np.int64)
        sol = _solve_mod(rows_mod, rhs_mod, p)
        used += 1
        if sol is None:
            continue
        sol = [int(v) for v in sol]
        if x_mod is None:
            x_mod, modulus = sol, p
        else:
            inv = pow(modulus, -1, p)
            x_mod = [x + modulus * (((r - x) * inv) % p) for x, r in zip(x_mod, sol)]
            modulus *= p
        lifted = [_ratrec(v, modulus) for v in x_mod]
        if any(v is None for v in lifted):
            last = None
            continue
        if lifted == last and check(lifted):
            return lifted
        last = lifted
    return None


def _hadamard_primes(a: list[list[int]], b: list[int]) -> int:
    # enough 31-bit primes to pin down numerators and denominators by Cramer
    bits = sum(max((abs(v) for v in r), default=0).bit_length() for r in a)
    bits += isqrt(len(a)).bit_length() * len(a) + max((abs(v) for v in b), default=0).bit_length()
    return 2 * bits // 30 + 4


def _check(rows, b, x) -> bool:
    for row, bi in zip(rows, b):
        acc = Fraction(0)
        for aij, xj in zip(row, x):
            if aij and xj:
                acc += aij * xj
        if acc != bi:
            return False
    return True


def solve_particular(matrix: Sequence[Sequence], rhs: Sequence, fast: bool = True):
    """Particular solution of ``matrix @ x = rhs`` with free variables at zero.

    Returns a list of Fractions, or ``INCONSISTENT``.  With ``fast`` the
    pivot structure is first found modulo a large prime; the square pivot
    subsystem is then solved exactly and the answer is checked against every
    row.  Any failure of that path falls back to full exact elimination, so
    the result never depends on the prime.
    """
    return solve_with_rank(matrix, rhs, fast)[0]


def solve_with_rank(matrix: Sequence[Sequence], rhs: Sequence, fast: bool = True):
    """Like :func:`solve_particular` but returns ``(x, rank, rank_is_exact)``.

    On the modular path the rank is the size of a pivot block proven
    nonsingular over Q, hence a lower bound; it is exact when it equals the
    row or column count.  The exact path always gives the true rank.
    """
    m = len(matrix)
    ncols = len(matrix[0]) if m else 0
    if len(rhs) != m:
        raise ValueError(f"rhs has {len(rhs)} entries, matrix has {m} rows")
    aug, _ = integer_rows([list(r) + [rhs[i]] for i, r in enumerate(matrix)])
    a = [r[:-1] for r in aug]
    b = [r[-1] for r in aug]
    if ncols == 0:
        return ([] if not any(b) else INCONSISTENT), 0, True

    if fast:
        prow, pcol = modular_pivots(a, ncols)
        if prow:
            sub = [[a[i][j] for j in pcol] for i in prow]
            sub_b = [b[i] for i in prow]

            def expand(xs):
                x = [Fraction(0)] * ncols
                for j, v in zip(pcol, xs):
                    x[j] = v
                return x

            xs = _multimodular_solve(sub, sub_b, lambda xs: _check(a, b, expand(xs)), _hadamard_primes(sub, sub_b))
            if xs is None:
                xs = _square_solve(sub, sub_b)
            if xs is not None:
                x = expand(xs)
                if _check(a, b, x):
                    r = len(pcol)
                    return x, r, r in (m, ncols)

    rows = [_primitive(r) for r in aug]
    ech, pivots = _echelon(rows, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return INCONSISTENT, len(pivots) - 1, True
    x = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = ech[r]
        s = Fraction(row[ncols])
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x, len(pivots), True
