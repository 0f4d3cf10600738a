"""Sparse multivariate polynomials over the rationals.

Exponent vectors are plain tuples of non-negative ints, coefficients are
``fractions.Fraction``.  Terms are ordered by graded reverse lexicographic
order whenever an ordering is needed (leading terms, printing).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "MultiPoly",
    "grevlex_cmp",
    "grevlex_key",
    "poly_product",
    "parse_poly",
    "to_fraction",
    "monomials_of_degree",
]

Monomial = tuple


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(value)


def grevlex_key(exps: Sequence[int]):
    """Sort key such that larger keys are larger monomials in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def grevlex_cmp(u: Sequence[int], v: Sequence[int]) -> int:
    """Compare two exponent vectors in grevlex; returns -1, 0 or 1."""
    if len(u) != len(v):
        raise ValueError(f"exponent vectors of different length: {len(u)} vs {len(v)}")
    du, dv = sum(u), sum(v)
    if du != dv:
        return 1 if du > dv else -1
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return 1 if a < b else -1
    return 0


def monomials_of_degree(nvars: int, d: int):
    """All exponent vectors of total degree d in nvars variables, grevlex-descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, k):
        if k == nvars - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    rec((), d, 0)
    out.sort(key=grevlex_key, reverse=True)
    return out


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int | None = None):
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if nvars is None:
                    nvars = len(exps)
                if len(exps) != nvars:
                    raise ValueError(f"monomial {exps} does not have {nvars} variables")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = to_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        if nvars is None:
            raise ValueError("nvars is required for the zero polynomial")
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        c = to_fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MultiPoly":
        return cls({tuple(exps): coeff})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    # inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def sorted_terms(self):
        """Terms as (exponents, coefficient), grevlex-descending."""
        return sorted(self._terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def leading_monomial(self) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [to_fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self._terms.items():
            v = c
            for x, e in zip(pt, exps):
                if e:
                    v *= x**e
            total += v
        return total

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return poly_product(self, other)
        c = to_fraction(other)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw({e: v * c for e, v in self._terms.items()}, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_fraction(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exps: Sequence[int], coeff) -> "MultiPoly":
        """Multiply by the single term ``coeff * x^exps``."""
        coeff = to_fraction(coeff)
        if not coeff:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self._terms.items()},
            self.nvars,
        )

    def monic(self) -> "MultiPoly":
        return self * (1 / self.leading_coefficient())

    def substitute_vars(self, perm: Sequence[int], nvars: int | None = None) -> "MultiPoly":
        """Send variable i to variable ``perm[i]``."""
        nvars = self.nvars if nvars is None else nvars
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[perm[i]] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return MultiPoly({k: v for k, v in out.items() if v}, nvars)

    # comparison / display ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def to_str(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = []
            for k, e in enumerate(exps):
                if e == 1:
                    factors.append(f"{var}{k}")
                elif e > 1:
                    factors.append(f"{var}{k}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if i == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r}, nvars={self.nvars})"


def poly_product(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product of two polynomials in the same ring."""
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    out: dict = {}
    qi = list(q.items())
    for e1, c1 in p.items():
        for e2, c2 in qi:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return MultiPoly._raw({e: c for e, c in out.items() if c}, p.nvars)


_FACTOR_RE = re.compile(r"^([A-Za-z]+)_?(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse the text form produced by :meth:`MultiPoly.to_str`.

    Accepts terms such as ``-21/4*x0^4*x1^2`` joined by ``+``/``-``.  Any
    single-letter prefix is accepted for the variables (``x0`` or ``X0``).
    When ``nvars`` is omitted it is inferred from the largest index seen.
    """
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial text")
    raw_terms = []
    # split on +/- that are not part of an exponent or a fraction
    buf = ""
    sign = 1
    for ch in src:
        if ch in "+-" and buf and not buf.endswith("^") and not buf.endswith("/"):
            raw_terms.append((sign, buf))
            buf = ""
            sign = 1 if ch == "+" else -1
        elif ch in "+-" and not buf:
            sign = sign * (1 if ch == "+" else -1)
        else:
            buf += ch
    if buf:
        raw_terms.append((sign, buf))
    parsed = []
    top = -1
    for sign, body in raw_terms:
        coeff = Fraction(sign)
        exps = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"malformed term {body!r}")
            m = _FACTOR_RE.match(factor)
            if m:
                idx = int(m.group(2))
                exps[idx] = exps.get(idx, 0) + int(m.group(3) or 1)
                top = max(top, idx)
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ValueError(f"malformed factor {factor!r}") from exc
        parsed.append((coeff, exps))
    n = top + 1 if nvars is None else nvars
    if top >= n:
        raise ValueError(f"variable index {top} exceeds nvars={n}")
    terms: dict = {}
    for coeff, exps in parsed:
        key = tuple(exps.get(i, 0) for i in range(n))
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly({k: v for k, v in terms.items() if v}, n)


def linear_form(coeffs: Iterable) -> MultiPoly:
    coeffs = [to_fraction(c) for c in coeffs]
    n = len(coeffs)
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
    return MultiPoly(terms, n)
