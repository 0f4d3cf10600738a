import random
from fractions import Fraction

import pytest

from waring.exactpoly import MultiPoly, parse_poly, remainder_by_minors, subresultant_pair, sylvester_block
from waring.exactpoly.subresultant import univariate_coeffs


def det_laplace(m):
    # cofactor expansion along the first row; independent of the library's Bareiss
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j, v in enumerate(m[0]):
        if v:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * v * det_laplace(minor)
    return total


def det_gauss(m):
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def upoly(coeffs_desc):
    d = len(coeffs_desc) - 1
    return MultiPoly({(d - k,): c for k, c in enumerate(coeffs_desc) if c}, 1)


def random_upoly(rng, deg):
    c = [rng.randint(-5, 5) for _ in range(deg + 1)]
    c[0] = rng.choice([-3, -2, -1, 1, 2, 3])
    return upoly(c)


def test_quadratic_and_linear():
    f, g = parse_poly("x0^2"), parse_poly("x0 + 1")
    u, v, h = subresultant_pair(f, g, 1)
    assert u * f + v * g == h
    assert h.total_degree() <= 0
    # x^2 + (1 - x)(x + 1) = 1
    assert u == MultiPoly.constant(1, 1)
    assert v == parse_poly("-x0 + 1")
    assert h == MultiPoly.constant(1, 1)


def test_cubic_against_extended_euclid():
    f, g = parse_poly("x0^3 + 1"), parse_poly("x0^2 - 1")
    u, v, h = subresultant_pair(f, g, 1)
    assert h.total_degree() <= 0
    assert u.total_degree() <= 1 and v.total_degree() <= 2
    # gcd(f, g) = x + 1, so f and g have a common root and the degree-0 combination must vanish
    assert h.is_zero()


def test_coprime_gives_resultant_multiple():
    f, g = parse_poly("x0^3 + 2"), parse_poly("x0^2 - 1")
    _, _, h = subresultant_pair(f, g, 1)
    # resultant of x^3 + 2 and x^2 - 1 is (1 + 2)(-1 + 2) = 3 up to sign
    assert abs(h.coeff((0,))) == 3


@pytest.mark.parametrize("i", [0, 3])
def test_index_out_of_range(i):
    with pytest.raises(ValueError):
        subresultant_pair(parse_poly("x0^3 + 1"), parse_poly("x0^2 - 1"), i)


def test_zero_and_order_errors():
    with pytest.raises(ValueError):
        subresultant_pair(MultiPoly.zero(1), parse_poly("x0"), 1)
    with pytest.raises(ValueError):
        subresultant_pair(parse_poly("x0"), parse_poly("x0^2"), 1)
    with pytest.raises(ValueError):
        univariate_coeffs(parse_poly("x0*x1"))


def explicit_submatrices(f, g, i):
    """Build the square matrices of the construction directly from the coefficient lists."""
    a, b = univariate_coeffs(f), univariate_coeffs(g)
    n, m = len(a) - 1, len(b) - 1
    size = n + m - i + 1
    # column k of the block multiplies x^(m-i-k) f (k <= m-i) or x^(n-i-k') g
    cols = []
    for s in range(m - i + 1):
        col = [Fraction(0)] * size
        for r, c in enumerate(a):
            col[s + r] = Fraction(c)
        cols.append(col)
    for s in range(n - i + 1):
        col = [Fraction(0)] * size
        for r, c in enumerate(b):
            col[s + r] = Fraction(c)
        cols.append(col)
    rows = [[col[r] for col in cols] for r in range(size)]
    return rows, n, m


def test_sylvester_block_shape():
    f, g = parse_poly("x0^4 + x0 + 1"), parse_poly("2*x0^2 - 3")
    blk = sylvester_block(f, g, 1)
    assert len(blk) == 4 + 2 - 1 + 1 and len(blk[0]) == 4 + 2 - 2 + 2


def test_random_pairs_degree_and_determinant_contracts():
    rng = random.Random(20240611)
    for _ in range(100):
        n = rng.randint(2, 6)
        m = rng.randint(1, n)
        f, g = random_upoly(rng, n), random_upoly(rng, m)
        i = rng.randint(1, m)
        u, v, h = subresultant_pair(f, g, i)
        assert u.is_zero() or u.total_degree() <= m - i
        assert v.is_zero() or v.total_degree() <= n - i
        assert h == u * f + v * g
        assert h.is_zero() or h.total_degree() <= i - 1

        rows, _, _ = explicit_submatrices(f, g, i)
        top = rows[: n + m - 2 * i + 1]
        ncols = n + m - 2 * i + 2
        # coefficient j of (u, v) is (-1)^j times the minor without column j
        coeffs = [(-1) ** j * det_gauss([r[:j] + r[j + 1 :] for r in top]) for j in range(ncols)]
        want_u = upoly(coeffs[: m - i + 1]) if any(coeffs[: m - i + 1]) else MultiPoly.zero(1)
        want_v = upoly(coeffs[m - i + 1 :]) if any(coeffs[m - i + 1 :]) else MultiPoly.zero(1)
        assert u == want_u and v == want_v
        # h as the signed sum of bordered determinants
        sign = (-1) ** (n + m - 2 * i + 1)
        want_h = {}
        for k in range(i):
            d = det_laplace(top + [rows[n + m - 2 * i + 1 + k]]) if ncols <= 6 else det_gauss(top + [rows[n + m - 2 * i + 1 + k]])
            if d:
                want_h[(i - 1 - k,)] = sign * d
        assert h == MultiPoly(want_h, 1)
        assert remainder_by_minors(f, g, i) == h
